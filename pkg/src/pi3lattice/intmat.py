"""Exact integer matrix algebra.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so nothing
ever overflows.  Products fall back to int64 kernels only when a magnitude
bound proves the result fits.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

_INT64_SAFE = 2**62


def as_matrix(a, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``a`` to a 2-D object array of Python ints."""
    if isinstance(a, np.ndarray) and a.dtype != object:
        if a.dtype.kind not in "iub":
            raise TypeError(f"expected an integer array, got dtype {a.dtype}")
        out = a.astype(object)
    else:
        out = np.array(a, dtype=object)
        if out.size:
            flat = [_to_int(x) for x in out.flat]
            out = np.array(flat, dtype=object).reshape(out.shape)
    if shape is not None:
        out = out.reshape(shape)
    if out.ndim == 1:
        out = out.reshape(-1, 1) if shape is None else out
    if out.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {out.shape}")
    return out


def as_vector(v) -> np.ndarray:
    arr = np.array(v, dtype=object).reshape(-1)
    return np.array([_to_int(x) for x in arr], dtype=object)


def _to_int(x) -> int:
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise TypeError(f"non-integer entry {x!r}")


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def _as_int64(a: np.ndarray) -> np.ndarray | None:
    """``a`` as int64, or None when some entry does not fit."""
    if a.dtype != object:
        return a.astype(np.int64, copy=False)
    try:
        return a.astype(np.int64)
    except OverflowError:
        return None


def max_abs(a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    small = _as_int64(a)
    if small is None:
        return int(np.abs(a).max())
    return max(int(small.max()), -int(small.min()))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of integer matrices (or matrix times vector)."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if a.size == 0 or b.size == 0 or inner == 0:
        shape = a.shape[:-1] + b.shape[1:]
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out
    a64, b64 = _as_int64(a), _as_int64(b)
    if a64 is not None and b64 is not None:
        bound = max(int(a64.max()), -int(a64.min())) * max(int(b64.max()), -int(b64.min())) * inner
        if bound < _INT64_SAFE:
            return (a64 @ b64).astype(object)
    return np.asarray(a, dtype=object).dot(np.asarray(b, dtype=object))


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    a = np.asarray(a)
    b = np.asarray(b)
    return a.shape == b.shape and bool(np.all(a == b))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=object), np.asarray(b, dtype=object))


def block_diag(blocks) -> np.ndarray:
    blocks = [np.asarray(b, dtype=object) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


# ---------------------------------------------------------------------------
# Hermite normal form (column style)
# ---------------------------------------------------------------------------


class HermiteForm(NamedTuple):
    """``H = M @ U`` with ``U`` unimodular and ``V = U^{-1}``.

    The first ``rank`` columns of ``H`` are a basis of the column lattice of
    ``M`` in echelon form: pivot rows strictly increase, pivots are
    positive, and entries left of a pivot lie in ``[0, pivot)``.  Columns
    ``rank:`` of ``H`` vanish, so ``U[:, rank:]`` is a saturated kernel basis.
    """

    H: np.ndarray
    U: np.ndarray
    V: np.ndarray
    rank: int
    pivot_rows: tuple[int, ...]


def hermite_form(m) -> HermiteForm:
    H = as_matrix(m).copy()
    rows, cols = H.shape
    U = identity(cols)
    V = identity(cols)

    def addcol(j: int, k: int, c: int) -> None:
        # col_j += c * col_k
        if c == 0:
            return
        H[:, j] = H[:, j] + c * H[:, k]
        U[:, j] = U[:, j] + c * U[:, k]
        V[k, :] = V[k, :] - c * V[j, :]

    def swap(j: int, k: int) -> None:
        if j == k:
            return
        H[:, [j, k]] = H[:, [k, j]]
        U[:, [j, k]] = U[:, [k, j]]
        V[[j, k], :] = V[[k, j], :]

    def negate(j: int) -> None:
        H[:, j] = -H[:, j]
        U[:, j] = -U[:, j]
        V[j, :] = -V[j, :]

    piv = 0
    pivot_rows = []
    for i in range(rows):
        if piv == cols:
            break
        while True:
            nz = [j for j in range(piv, cols) if H[i, j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(H[i, j]))
            swap(piv, j0)
            p = H[i, piv]
            clean = True
            for j in range(piv + 1, cols):
                if H[i, j] != 0:
                    addcol(j, piv, -(H[i, j] // p))
                    if H[i, j] != 0:
                        clean = False
            if clean:
                break
        if H[i, piv] == 0:
            continue
        if H[i, piv] < 0:
            negate(piv)
        p = H[i, piv]
        for j in range(piv):
            addcol(j, piv, -(H[i, j] // p))
        pivot_rows.append(i)
        piv += 1
    return HermiteForm(H, U, V, piv, tuple(pivot_rows))


def lattice_basis(generators) -> np.ndarray:
    """Canonical (Hermite) basis of the lattice spanned by the columns."""
    hf = hermite_form(generators)
    return hf.H[:, :hf.rank].copy()


def same_lattice(a, b) -> bool:
    """Column lattices of ``a`` and ``b`` coincide (canonical-form test)."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] != b.shape[0]:
        return False
    return equal(lattice_basis(a), lattice_basis(b))


def kernel_basis(m) -> tuple[np.ndarray, np.ndarray]:
    """Saturated basis ``K`` of ``{x : m x = 0}`` and a left inverse ``L``.

    ``L @ K`` is the identity, so ``L @ v`` gives kernel coordinates of any
    kernel vector ``v``.
    """
    hf = hermite_form(m)
    return hf.U[:, hf.rank:].copy(), hf.V[hf.rank:, :].copy()


def lattice_coordinates(basis, vectors) -> np.ndarray | None:
    """Integer ``C`` with ``basis @ C == vectors``; ``None`` if impossible.

    ``basis`` must have independent columns.
    """
    basis = as_matrix(basis)
    vectors = as_matrix(vectors)
    hf = hermite_form(basis)
    if hf.rank != basis.shape[1]:
        raise ValueError("basis columns are linearly dependent")
    r = hf.rank
    Y = zeros(r, vectors.shape[1])
    for col in range(vectors.shape[1]):
        v = vectors[:, col]
        for k, prow in enumerate(hf.pivot_rows):
            acc = v[prow] - sum(hf.H[prow, l] * Y[l, col] for l in range(k))
            q, rem = divmod(acc, hf.H[prow, k])
            if rem:
                return None
            Y[k, col] = q
    if not equal(matmul(hf.H[:, :r], Y), vectors):
        return None
    return matmul(hf.U[:, :r], Y)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


class SmithForm(NamedTuple):
    """``D = P @ M @ Q`` with ``P``, ``Q`` unimodular and ``D`` diagonal."""

    D: np.ndarray
    P: np.ndarray
    Q: np.ndarray

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        k = min(self.D.shape)
        return tuple(int(self.D[i, i]) for i in range(k) if self.D[i, i] != 0)


def smith_form(m) -> SmithForm:
    D = as_matrix(m).copy()
    rows, cols = D.shape
    P = identity(rows)
    Q = identity(cols)

    def rowop(i: int, k: int, c: int) -> None:
        D[i, :] = D[i, :] + c * D[k, :]
        P[i, :] = P[i, :] + c * P[k, :]

    def colop(j: int, k: int, c: int) -> None:
        D[:, j] = D[:, j] + c * D[:, k]
        Q[:, j] = Q[:, j] + c * Q[:, k]

    def rswap(i: int, k: int) -> None:
        if i != k:
            D[[i, k], :] = D[[k, i], :]
            P[[i, k], :] = P[[k, i], :]

    def cswap(j: int, k: int) -> None:
        if j != k:
            D[:, [j, k]] = D[:, [k, j]]
            Q[:, [j, k]] = Q[:, [k, j]]

    for t in range(min(rows, cols)):
        sub = [(abs(D[i, j]), i, j) for i in range(t, rows) for j in range(t, cols) if D[i, j] != 0]
        if not sub:
            break
        _, i0, j0 = min(sub)
        rswap(t, i0)
        cswap(t, j0)
        while True:
            p = D[t, t]
            for i in range(t + 1, rows):
                if D[i, t]:
                    rowop(i, t, -(D[i, t] // p))
            for j in range(t + 1, cols):
                if D[t, j]:
                    colop(j, t, -(D[t, j] // p))
            line = [(abs(D[i, t]), i, t) for i in range(t + 1, rows) if D[i, t]]
            line += [(abs(D[t, j]), t, j) for j in range(t + 1, cols) if D[t, j]]
            if line:
                _, i1, j1 = min(line)
                rswap(t, i1)
                cswap(t, j1)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i, j] % p),
                None,
            )
            if bad is None:
                break
            rowop(t, bad, 1)
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            P[t, :] = -P[t, :]
    return SmithForm(D, P, Q)


def normal_forms(m) -> tuple[HermiteForm, SmithForm]:
    """Hermite and Smith forms of ``m``, each with its transforms checked."""
    m = as_matrix(m)
    hf = hermite_form(m)
    sf = smith_form(m)
    assert equal(matmul(m, hf.U), hf.H)
    assert equal(matmul(hf.U, hf.V), identity(m.shape[1]))
    assert equal(matmul(matmul(sf.P, m), sf.Q), sf.D)
    return hf, sf


# ---------------------------------------------------------------------------
# determinants, rank, inverses
# ---------------------------------------------------------------------------


_PRIME_TOP = 2**31


@functools.lru_cache(maxsize=None)
def _prime(i: int) -> int:
    """The ``i``-th prime below 2^31, counting down."""
    c = _PRIME_TOP - 1 if i == 0 else _prime(i - 1) - 2
    while not _is_prime(c):
        c -= 2
    return c


def _is_prime(c: int) -> bool:
    if c % 2 == 0:
        return c == 2
    return all(c % d for d in range(3, math.isqrt(c) + 1, 2))


def _det_mod(a: np.ndarray, p: int) -> int:
    """Determinant of an int64 matrix modulo the prime ``p`` (entries reduced)."""
    a = a % p
    n = a.shape[0]
    d = 1
    for k in range(n):
        nz = np.flatnonzero(a[k:, k])
        if nz.size == 0:
            return 0
        r = k + int(nz[0])
        if r != k:
            a[[k, r]] = a[[r, k]]
            d = -d
        piv = int(a[k, k])
        d = d * piv % p
        inv = pow(piv, -1, p)
        f = a[k + 1:, k] * inv % p
        # (f * row) stays below 2^62 since both factors are below 2^31
        a[k + 1:, k:] = (a[k + 1:, k:] - np.outer(f, a[k, k:]) % p) % p
    return d % p


def _det_multimodular(m: np.ndarray) -> int:
    """Exact determinant by CRT over primes until the Hadamard bound is passed."""
    norms = [sum(int(x) * int(x) for x in row) for row in m]
    if 0 in norms:
        return 0
    # log2 of the Hadamard bound prod |row|, with slack for rounding
    bits = math.ceil(sum(math.log2(s) for s in norms) / 2) + 2
    mod = 1
    value = 0
    i = 0
    while mod.bit_length() <= bits + 1:
        p = _prime(i)
        i += 1
        r = _det_mod(np.array([[int(x) % p for x in row] for row in m], dtype=np.int64), p)
        # combine value (mod mod) with r (mod p)
        t = (r - value) * pow(mod, -1, p) % p
        value += mod * t
        mod *= p
    return value - mod if value > mod // 2 else value


def det(m) -> int:
    """Exact determinant: Bareiss for small matrices, multimodular otherwise."""
    m = as_matrix(m)
    n = m.shape[0]
    if n == 0:
        return 1
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n > 12:
        return _det_multimodular(m)
    return _det_bareiss(m)


def _det_bareiss(m: np.ndarray) -> int:
    """Bareiss fraction-free elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m) -> int:
    m = as_matrix(m)
    if m.size == 0:
        return 0
    # rank of the narrower orientation keeps the unimodular transform small
    if m.shape[0] < m.shape[1]:
        m = m.T
    return hermite_form(m).rank


def is_unimodular(m) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and det(m) in (1, -1)


def unimodular_inverse(m) -> np.ndarray:
    m = as_matrix(m)
    if not is_unimodular(m):
        raise ValueError("matrix is not unimodular")
    hf = hermite_form(m)
    # the Hermite form of a unimodular matrix is the identity, so M @ U = I
    return hf.U


def rational_inverse(m) -> list[list[Fraction]]:
    """Exact inverse over Q by Gauss-Jordan elimination."""
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
