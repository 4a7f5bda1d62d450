"""JSON schemas for the CLI's machine-readable outputs."""

import json
from importlib import resources

NAMES = ("table", "beta_report", "angmom_report", "verify_summary")


def load(name: str) -> dict:
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text())
