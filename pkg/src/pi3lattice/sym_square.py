"""Symmetric squares of ZG-lattices and quadratic maps out of them.

For a base lattice with Z-basis ``a_1..a_k`` the symmetric square has basis

* ``diag(i) = a_i (x) a_i`` for ``i`` ascending, then
* ``pair(i, j) = a_i (x) a_j + a_j (x) a_i`` for ``i < j`` lexicographically.

The third homotopy module of a presentation complex is computed as the
symmetric square of its second homotopy module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import intmat
from .certificates import Certificate, check
from .lattice import LatticeHom, ZGLattice, verify_hom

_SAFE = 2**30


def sym_index(k: int) -> list[tuple[int, int]]:
    """Basis positions as ``(i, j)`` pairs, ``i == j`` for diagonals."""
    return [(i, i) for i in range(k)] + [(i, j) for i in range(k) for j in range(i + 1, k)]


def sym_square_matrix(A) -> np.ndarray:
    """Matrix of ``S^2(f)`` in symmetric bases, for ``f`` with matrix ``A``.

    ``A`` is ``m x k``; the result is ``m(m+1)/2 x k(k+1)/2``.
    """
    A = intmat.as_matrix(A)
    m, k = A.shape
    rows = sym_index(m)
    cols = sym_index(k)
    if not rows or not cols:
        return intmat.zeros(len(rows), len(cols))
    ra = np.array([r[0] for r in rows])
    rb = np.array([r[1] for r in rows])
    ci = np.array([c[0] for c in cols])
    cj = np.array([c[1] for c in cols])
    work = A.astype(np.int64) if intmat.max_abs(A) < _SAFE else A
    # T[r, c] = A[a, i] A[b, j] + A[a, j] A[b, i]
    T = work[np.ix_(ra, ci)] * work[np.ix_(rb, cj)] + work[np.ix_(ra, cj)] * work[np.ix_(rb, ci)]
    T = T.astype(object)
    T[:, :k] = T[:, :k] // 2
    return T


@dataclass(frozen=True, eq=False)
class SymSquare:
    base: ZGLattice
    lattice: ZGLattice
    index: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def position(self, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        k = self.base.rank
        if i == j:
            return i
        # pairs with first index < i come first
        return k + i * k - i * (i + 1) // 2 + (j - i - 1)

    def to_json(self) -> dict:
        doc = self.lattice.to_json()
        doc["index"] = [["diag", i] if i == j else ["pair", i, j] for i, j in self.index]
        doc["base"] = self.base.to_json()
        return doc

    @classmethod
    def from_json(cls, doc: dict, group) -> SymSquare:
        base = ZGLattice.from_json(doc["base"], group)
        lat = ZGLattice.from_json(doc, group)
        index = tuple((e[1], e[1]) if e[0] == "diag" else (e[1], e[2]) for e in doc["index"])
        if index != tuple(sym_index(base.rank)):
            raise ValueError("index map does not match the base rank")
        return cls(base, lat, index)


def sym_square(J: ZGLattice) -> SymSquare:
    gens = [sym_square_matrix(a) for a in J.generators]
    label = f"S2({J.label})" if J.label else "S2"
    return SymSquare(J, ZGLattice(J.group, gens, label), tuple(sym_index(J.rank)))


def sym_square_hom(h: LatticeHom, src: SymSquare | None = None, dst: SymSquare | None = None) -> LatticeHom:
    """``S^2(h): S^2(source) -> S^2(target)``."""
    src = src or sym_square(h.source)
    dst = dst or sym_square(h.target)
    return LatticeHom(src.lattice, dst.lattice, sym_square_matrix(h.matrix))


def q_map(S: SymSquare, alpha) -> np.ndarray:
    """Coordinates of ``alpha (x) alpha``."""
    a = intmat.as_vector(alpha)
    if len(a) != S.base.rank:
        raise ValueError("coordinate vector does not match the base rank")
    return np.array([a[i] * a[j] for i, j in S.index], dtype=object)


def whitehead_pairing(S: SymSquare, alpha, beta) -> np.ndarray:
    """``[a, b] = q(a + b) - q(a) - q(b)``, computed bilinearly."""
    a = intmat.as_vector(alpha)
    b = intmat.as_vector(beta)
    return np.array(
        [2 * a[i] * b[i] if i == j else a[i] * b[j] + a[j] * b[i] for i, j in S.index],
        dtype=object,
    )


def norm(J: ZGLattice, alpha) -> int:
    a = intmat.as_vector(alpha)
    if len(a) != J.rank:
        raise ValueError("coordinate vector does not match the lattice rank")
    return int(sum(abs(x) for x in a))


@dataclass(frozen=True, eq=False)
class QuadraticMapTable:
    """Values of a map on the basis vectors and on sums of two of them.

    ``diag[:, i]`` holds ``f(a_i)`` and ``pair[(i, j)]`` holds
    ``f(a_i + a_j)`` for ``i < j``, all as target coordinates.
    """

    source: ZGLattice
    target: ZGLattice
    diag: np.ndarray
    pair: dict[tuple[int, int], np.ndarray]

    @classmethod
    def tabulate(cls, f: Callable[[np.ndarray], np.ndarray], source: ZGLattice, target: ZGLattice) -> QuadraticMapTable:
        k = source.rank
        I = intmat.identity(k)
        diag = intmat.zeros(target.rank, k)
        for i in range(k):
            diag[:, i] = intmat.as_vector(f(I[:, i]))
        pair = {(i, j): intmat.as_vector(f(I[:, i] + I[:, j]))
                for i in range(k) for j in range(i + 1, k)}
        return cls(source, target, diag, pair)


def extend_quadratic(S: SymSquare, f: QuadraticMapTable) -> LatticeHom:
    """The Z-linear ``phi: S^2(J) -> M`` with ``phi q = f`` on the table.

    ``phi(diag i) = f(a_i)`` and ``phi(pair(i, j)) = f(a_i + a_j) - f(a_i) - f(a_j)``.
    Equivariance is not assumed; check the result with :func:`verify_hom`.
    """
    k = S.base.rank
    if f.source.rank != k or f.diag.shape != (f.target.rank, k):
        raise ValueError("quadratic map table does not match the symmetric square")
    if f.source.group != S.base.group:
        raise ValueError("quadratic map table is over a different group")
    m = intmat.zeros(f.target.rank, S.rank)
    for c, (i, j) in enumerate(S.index):
        if i == j:
            m[:, c] = f.diag[:, i]
        else:
            m[:, c] = f.pair[(i, j)] - f.diag[:, i] - f.diag[:, j]
    return LatticeHom(S.lattice, f.target, m, "phi")


def parallelogram_defect(f: Callable, a, b) -> np.ndarray:
    """``f(a+b) + f(a-b) - 2 f(a) - 2 f(b)``; zero for quadratic maps."""
    a = intmat.as_vector(a)
    b = intmat.as_vector(b)
    return (intmat.as_vector(f(a + b)) + intmat.as_vector(f(a - b))
            - 2 * intmat.as_vector(f(a)) - 2 * intmat.as_vector(f(b)))


def check_extension(phi: LatticeHom, S: SymSquare, f: Callable, samples, claim: str = "phi o q = f") -> Certificate:
    """Equivariance of ``phi`` plus ``phi(q(a)) == f(a)`` on sample points."""
    eq = verify_hom(phi)
    if not eq.equivariant:
        return check(claim, False, witness={"equivariance": eq.witness})
    for a in samples:
        if not intmat.equal(phi(q_map(S, a)), intmat.as_vector(f(a))):
            return check(claim, False, witness={"sample": [int(x) for x in a]})
    return check(claim, True)
