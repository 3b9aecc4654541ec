"""Loading of the printed tables shipped as JSON under ``tables/``.

Set PENTACYCLE_FIXTURES to a directory to load tables from there instead
(files are looked up by the same names).
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .exact import BiPoly, UniPoly


def _fixture_dir():
    return os.environ.get("PENTACYCLE_FIXTURES")


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    override = _fixture_dir()
    if override:
        with open(os.path.join(override, name), encoding="utf-8") as fh:
            return json.load(fh)
    text = resources.files("pentacycle").joinpath("tables", name).read_text(encoding="utf-8")
    return json.loads(text)


def poly(text: str) -> UniPoly:
    return UniPoly.from_text(text)


def bipoly(rows) -> BiPoly:
    return BiPoly.from_rows(list(rows))


def frac(s) -> Fraction:
    return Fraction(str(s))
