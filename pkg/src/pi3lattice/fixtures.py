"""Presentations used as regression fixtures and in the test suite."""

from __future__ import annotations

import json
from importlib import resources

from .groups import FiniteGroup, enumerate_group


def cyclic(m: int) -> str:
    return f"gens: x ; rels: x^{m}"


def cyclic_with_dummy(m: int) -> str:
    """``<x, y | x^m, y>``: same group and the same pi2 rank."""
    return f"gens: x, y ; rels: x^{m}, y"


def cyclic_doubled(m: int) -> str:
    """``<x | x^m, x^m>``: one extra relator, so pi2 gains a free summand."""
    return f"gens: x ; rels: x^{m}, x^{m}"


PRESENTATIONS: dict[str, str] = {
    "trivial": "gens: x ; rels: x",
    **{f"C{m}": cyclic(m) for m in range(2, 8)},
    "S3": "gens: x, y ; rels: x^3, y^2, x*y*x*y",
    "Q8": "gens: x, y ; rels: x^2=y^2, x*y*x=y",
}

# groups the decomposition suite runs over
DECOMPOSITION_GROUPS = ("C2", "C3", "C4", "C5", "C6", "C7", "S3", "Q8")


def group(name: str) -> FiniteGroup:
    return enumerate_group(PRESENTATIONS[name])


def data_text(filename: str) -> str:
    return resources.files(__package__).joinpath("data", filename).read_text(encoding="utf-8")


def expected(name: str) -> dict:
    """Expected invariants of a shipped fixture (``"c3"`` or ``"q8"``)."""
    return json.loads(data_text(f"{name}.json"))


def shipped_fixtures() -> tuple[str, ...]:
    return ("c3", "q8")
