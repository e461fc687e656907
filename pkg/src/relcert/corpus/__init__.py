"""Bundled example inputs and their expected-report golden files.

Each entry is a relative category in the JSON interchange format; each has
one golden report whose serialized evidence re-verifies from the file
alone.
"""

from __future__ import annotations

import json
from importlib import resources

from .. import serialize
from ..errors import InputParse
from ..relcat import RelCat

NAMES = ("pt", "arrow", "walkiso", "bz2", "c2of3", "shape_-1_2", "htac_fail")


def _root():
    return resources.files(__package__)


def names() -> tuple:
    return NAMES


def path(name: str):
    if name not in NAMES:
        raise InputParse(f"unknown corpus entry {name!r}; choose from {NAMES}")
    return _root() / f"{name}.json"


def load(name: str) -> RelCat:
    with path(name).open("r", encoding="utf-8") as fh:
        return serialize.relcat_from_input_data(json.load(fh))


def golden_path(name: str):
    if name not in NAMES:
        raise InputParse(f"unknown corpus entry {name!r}; choose from {NAMES}")
    return _root() / "golden" / f"{name}.json"


def load_golden(name: str):
    with golden_path(name).open("r", encoding="utf-8") as fh:
        return serialize.loads(fh.read())
