"""Exact arithmetic in the group rings ZG and QG."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .groups import FiniteGroup, GroupMismatchError
from .intmat import zeros


def _scalar(x, ring: str):
    if ring == "Z":
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integral coefficient {x} in ZG")
            return int(x.numerator)
        if isinstance(x, (int, np.integer)):
            return int(x)
    elif ring == "Q":
        if isinstance(x, (int, np.integer, Fraction)):
            return Fraction(x)
    raise TypeError(f"inexact or unsupported scalar {x!r}")


@dataclass(frozen=True, eq=False)
class GroupRingElement:
    """Finitely supported map ``element index -> exact coefficient``.

    ``ring`` is ``"Z"`` or ``"Q"``; zero coefficients are never stored.
    """

    group: FiniteGroup
    coeffs: tuple[tuple[int, int | Fraction], ...]
    ring: str = "Z"

    def __init__(self, group: FiniteGroup, coeffs=None, ring: str = "Z"):
        if ring not in ("Z", "Q"):
            raise ValueError(f"unknown ring {ring!r}")
        acc: dict[int, int | Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        for g, c in items:
            g = int(g)
            if not 0 <= g < group.order:
                raise IndexError(f"element index {g} out of range")
            acc[g] = acc.get(g, 0) + _scalar(c, ring)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(sorted((g, c) for g, c in acc.items() if c != 0)))

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, group: FiniteGroup, ring: str = "Z") -> GroupRingElement:
        return cls(group, (), ring)

    @classmethod
    def element(cls, group: FiniteGroup, g: int, coeff=1, ring: str = "Z") -> GroupRingElement:
        return cls(group, ((g, coeff),), ring)

    @classmethod
    def from_vector(cls, group: FiniteGroup, vec, ring: str = "Z") -> GroupRingElement:
        return cls(group, enumerate(vec), ring)

    # -- access -------------------------------------------------------------
    def __getitem__(self, g: int):
        return dict(self.coeffs).get(g, 0)

    def vector(self) -> np.ndarray:
        out = np.empty(self.group.order, dtype=object)
        out.fill(0)
        for g, c in self.coeffs:
            out[g] = c
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def augmentation(self):
        return sum((c for _, c in self.coeffs), 0)

    def conjugate(self) -> GroupRingElement:
        """Image under the involution ``g -> g^-1``."""
        inv = self.group.inverses
        return GroupRingElement(self.group, ((int(inv[g]), c) for g, c in self.coeffs), self.ring)

    def to_ring(self, ring: str) -> GroupRingElement:
        return GroupRingElement(self.group, self.coeffs, ring)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: GroupRingElement) -> None:
        if other.group != self.group:
            raise GroupMismatchError("group ring elements over different groups")
        if other.ring != self.ring:
            raise GroupMismatchError(f"ring mismatch: {self.ring}G vs {other.ring}G")

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check(other)
        return GroupRingElement(self.group, self.coeffs + other.coeffs, self.ring)

    def __neg__(self):
        return GroupRingElement(self.group, ((g, -c) for g, c in self.coeffs), self.ring)

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            t = self.group.table
            prod: dict[int, int | Fraction] = {}
            for g, a in self.coeffs:
                row = t[g]
                for h, b in other.coeffs:
                    k = int(row[h])
                    prod[k] = prod.get(k, 0) + a * b
            return GroupRingElement(self.group, prod, self.ring)
        if isinstance(other, (int, np.integer, Rational)):
            s = _scalar(other, self.ring)
            return GroupRingElement(self.group, ((g, c * s) for g, c in self.coeffs), self.ring)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer, Rational)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for g, c in self.coeffs:
            name = self.group.name(g)
            if c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c}{name}")
        return " + ".join(terms).replace("+ -", "- ")

    def left_matrix(self) -> np.ndarray:
        """Integer matrix of ``v -> self * v`` on ZG with basis the elements.

        Left multiplication commutes with the right regular action, so this is
        the matrix of a ZG-linear endomorphism of the free module ZG.
        """
        if self.ring != "Z":
            raise ValueError("only integral elements expand to integer matrices")
        n = self.group.order
        out = zeros(n, n)
        t = self.group.table
        for g, c in self.coeffs:
            out[t[g], np.arange(n)] += c
        return out


def ring_arithmetic(a: GroupRingElement, b, kind: str) -> GroupRingElement:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        if not isinstance(b, GroupRingElement):
            raise TypeError("mul takes two group ring elements")
        return a * b
    if kind == "scalar-mul":
        if isinstance(b, GroupRingElement):
            raise TypeError("scalar-mul takes an exact scalar")
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def sigma(G: FiniteGroup, ring: str = "Z") -> GroupRingElement:
    """The sum of all group elements."""
    return GroupRingElement(G, ((g, 1) for g in range(G.order)), ring)


@dataclass(frozen=True, eq=False)
class ZGMatrix:
    """Matrix with group ring entries over one group and one ring."""

    entries: tuple[tuple[GroupRingElement, ...], ...]
    group: FiniteGroup
    cols: int

    def __init__(self, entries, group: FiniteGroup, cols: int | None = None):
        rows = tuple(tuple(r) for r in entries)
        if cols is None:
            if not rows:
                raise ValueError("column count needed for an empty matrix")
            cols = len(rows[0])
        rings = set()
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged ZG-matrix")
            for x in r:
                if x.group != group:
                    raise GroupMismatchError("entry over a different group")
                rings.add(x.ring)
        if len(rings) > 1:
            raise GroupMismatchError("entries over different rings")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "cols", cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def T(self) -> ZGMatrix:
        return ZGMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.group,
            self.rows,
        )

    def __matmul__(self, other: ZGMatrix) -> ZGMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if other.group != self.group:
            raise GroupMismatchError("ZG-matrices over different groups")
        ring = self.entries[0][0].ring if self.rows and self.cols else "Z"
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = GroupRingElement.zero(self.group, ring)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ZGMatrix(out, self.group, other.cols)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def map_entries(self, f) -> ZGMatrix:
        return ZGMatrix([[f(x) for x in r] for r in self.entries], self.group, self.cols)


def expand_to_integer_matrix(m: ZGMatrix) -> np.ndarray:
    """Replace every entry by its ``n x n`` left-multiplication block.

    Functorial: ``expand(A @ B) == expand(A) @ expand(B)``.
    """
    n = m.group.order
    out = zeros(m.rows * n, m.cols * n)
    for i, row in enumerate(m.entries):
        for j, x in enumerate(row):
            if x.ring != "Z":
                raise ValueError("rational entries cannot be expanded over Z")
            if not x.is_zero():
                out[i * n:(i + 1) * n, j * n:(j + 1) * n] = x.left_matrix()
    return out
