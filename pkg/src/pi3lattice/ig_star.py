"""The module IG* = ZG / Z Sigma and the overlattice description of S^2(IG*).

Inside ``S^2(ZG)`` write ``e_0 = e (x) e``, ``e_g = g (x) e + e (x) g`` for
``g`` in the pair transversal ``S`` and ``e_t`` likewise for involutions.
``M`` is the span of the ``e_g ZG`` and ``e_t ZG`` summands, and

    u_M = -(sum_g e_g (1 + g^-1) + sum_t e_t).

When the second homotopy module is IG*, the third is the ZG-lattice obtained
from ``M`` by adjoining ``u_M / 2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import intmat
from .certificates import NECESSARY_ONLY, Certificate, check, combine
from .decomposition import (
    InvolutionData,
    _coset_reps,
    coset_transversal_St,
    involution_pairs,
    sym_square_zg_iso,
)
from .group_ring import sigma
from .groups import FiniteGroup, GroupMismatchError
from .lattice import LatticeHom, ZGLattice, direct_sum, free_lattice, verify_hom
from .sym_square import SymSquare, sym_square, sym_square_matrix


def ig_star(G: FiniteGroup) -> tuple[ZGLattice, LatticeHom]:
    """IG* with basis the images of ``g != e``, and the quotient map from ZG."""
    n = G.order
    delta = intmat.zeros(n - 1, n)
    for g in range(1, n):
        delta[g - 1, g] = 1
    delta[:, 0] = -1
    gens = []
    for img in G.generator_images:
        m = intmat.zeros(n - 1, n - 1)
        for g in range(1, n):
            m[:, g - 1] = delta[:, G.mul(g, img)]
        gens.append(m)
    I = ZGLattice(G, gens, "IG*")
    return I, LatticeHom(free_lattice(G, 1), I, delta, "delta")


def delta_prime(G: FiniteGroup) -> LatticeHom:
    """``S^2(delta): S^2(ZG) -> S^2(IG*)``."""
    I, delta = ig_star(G)
    return LatticeHom(sym_square(delta.source).lattice, sym_square(I).lattice,
                      sym_square_matrix(delta.matrix), "delta'")


def delta_prime_surjective(dp: LatticeHom) -> Certificate:
    sf = intmat.smith_form(dp.matrix)
    inv = sf.invariant_factors
    ok = len(inv) == dp.target.rank and all(d == 1 for d in inv)
    return check("delta' is surjective", ok, witness={"invariant_factors": list(inv)})


def kernel_generators(G: FiniteGroup) -> np.ndarray:
    """Columns ``u g`` for every ``g`` and ``u Sigma / 2 = Sigma (x) Sigma``."""
    S2 = sym_square(free_lattice(G, 1))
    n = G.order
    u = np.zeros(S2.rank, dtype=object)
    u[0] = 2
    for g in range(1, n):
        u[S2.position(0, g)] = 1
    cols = [S2.lattice.act(u, g) for g in range(n)]
    u_sigma = sum(cols[1:], cols[0])
    sig_sq = np.ones(S2.rank, dtype=object)
    assert intmat.equal(u_sigma, 2 * sig_sq), "u Sigma != 2 Sigma (x) Sigma"
    cols.append(sig_sq)
    return np.stack(cols, axis=1)


def kernel_delta_prime_check(G: FiniteGroup) -> Certificate:
    """ker delta' equals the ZG-span of ``u`` and ``u Sigma / 2``."""
    dp = delta_prime(G)
    K, _ = intmat.kernel_basis(dp.matrix)
    span = kernel_generators(G)
    hk = intmat.lattice_basis(K)
    hs = intmat.lattice_basis(span)
    ok = intmat.equal(hk, hs)
    witness = None
    if not ok:
        outside = next((j for j in range(span.shape[1])
                        if intmat.lattice_coordinates(hk, span[:, j:j + 1]) is None), None)
        witness = ({"span_vector_outside_kernel": outside} if outside is not None
                   else {"kernel_rank": int(hk.shape[1]), "span_rank": int(hs.shape[1])})
    return check("ker delta' = <u, u Sigma/2>", ok, witness=witness,
                 kernel_rank=int(K.shape[1]))


@dataclass(frozen=True, eq=False)
class MLattice:
    lattice: ZGLattice
    u_M: np.ndarray
    sigma_relation: np.ndarray
    involutions: InvolutionData
    embedding: LatticeHom | None = None  # M -> S^2(ZG)


def m_lattice(G: FiniteGroup) -> MLattice:
    """``M`` with ``u_M`` and the expected value of ``(u_M / 2) Sigma``."""
    data = involution_pairs(G)
    n = G.order
    target, iso, _ = sym_square_zg_iso(G)
    # M is everything after the e_0 ZG summand
    gens = [a[n:, n:] for a in target.generators]
    M = ZGLattice(G, gens, "M")
    u = np.zeros(M.rank, dtype=object)
    rel = np.zeros(M.rank, dtype=object)
    for i, g in enumerate(data.S):
        base = i * n
        u[base + 0] -= 1
        u[base + G.inv(g)] -= 1
        rel[base:base + n] = -1  # e_g Sigma
    off = n * data.p
    for t in data.T:
        reps = _coset_reps(G, t)
        St = coset_transversal_St(G, t)
        u[off + reps.index(0)] -= 1
        for h, c in St.coeffs:  # e_t S_t
            rel[off + reps.index(h)] -= c
        off += len(reps)
    inv_iso = intmat.unimodular_inverse(iso.matrix)
    emb = LatticeHom(M, iso.source, inv_iso[:, n:]) if n > 1 else None
    return MLattice(M, u, rel, data, emb)


@dataclass(frozen=True, eq=False)
class AdjoinedLattice:
    """The ZG-lattice generated by ``base`` and ``vector / 2`` in ``base (x) Q``.

    ``half_basis`` holds twice the new basis vectors in base coordinates.
    """

    base: ZGLattice
    vector: np.ndarray
    lattice: ZGLattice
    half_basis: np.ndarray
    index: int
    certificate: Certificate

    def inclusion(self) -> LatticeHom:
        """``base -> lattice``."""
        coords = intmat.lattice_coordinates(self.half_basis, 2 * intmat.identity(self.base.rank))
        return LatticeHom(self.base, self.lattice, coords)

    def coordinates(self, half_vectors) -> np.ndarray | None:
        """Lattice coordinates of vectors given as twice their base coordinates."""
        return intmat.lattice_coordinates(self.half_basis, half_vectors)

    def same_as(self, other: AdjoinedLattice) -> bool:
        return intmat.equal(self.half_basis, other.half_basis)


def adjoin_half(M: ZGLattice, u, sigma_relation=None) -> AdjoinedLattice:
    """Adjoin ``u / 2`` to ``M`` as a ZG-lattice.

    The new lattice is spanned by ``M`` and the translates ``(u / 2) g``.  When
    ``sigma_relation`` is given it is checked against ``(u / 2) Sigma``.
    """
    u = intmat.as_vector(u)
    k = M.rank
    gens = np.concatenate([2 * intmat.identity(k)] + [intmat.matmul(A, u).reshape(-1, 1) for A in M.actions], axis=1)
    B = intmat.lattice_basis(gens)
    det_b = abs(intmat.det(B))
    index = 2**k // det_b
    actions = []
    for j, A in enumerate(M.generators):
        coords = intmat.lattice_coordinates(B, intmat.matmul(A, B))
        if coords is None:
            raise ArithmeticError(f"adjoined lattice not stable under generator {j}")
        actions.append(coords)
    L = ZGLattice(M.group, actions, f"{M.label}[u/2]" if M.label else "")

    parts = {
        "double": check("(u/2) * 2 = u", True),
        "nondegenerate": check("u/2 not already in the base", index > 1, witness={"index": index}),
    }
    if sigma_relation is not None:
        u_sigma = M.orbit_sum(u)
        ok = all(x % 2 == 0 for x in u_sigma) and intmat.equal(
            np.array([x // 2 for x in u_sigma], dtype=object), intmat.as_vector(sigma_relation))
        parts["sigma"] = check("(u/2) Sigma = -(sum e_g Sigma + sum e_t S_t)", ok)
    cert = combine("adjoined half-vector", parts)
    cert.details["index"] = index
    return AdjoinedLattice(M, u, L, B, index, cert)


def find_ig_star_iso(pi2: ZGLattice, max_coeff: int = 1, limit: int | None = None) -> LatticeHom | None:
    """Search for an equivariant isomorphism ``pi2 -> IG*``.

    Any ``v`` in ``pi2`` with ``v Sigma = 0`` defines ``IG* -> pi2`` by
    ``delta(g) -> v g``; the search walks small integer ``v`` in order of norm
    and stops at the first unimodular one.
    """
    G = pi2.group
    n = G.order
    if pi2.rank != n - 1:
        return None
    I, _ = ig_star(G)
    if n == 1:
        return LatticeHom(pi2, I, intmat.zeros(0, 0))
    k = pi2.rank
    acts = pi2.actions
    coeffs = range(-max_coeff, max_coeff + 1)
    candidates = sorted(itertools.product(coeffs, repeat=k), key=lambda c: (sum(map(abs, c)), c))
    tried = 0
    for c in candidates:
        if not any(c):
            continue
        tried += 1
        if limit is not None and tried > limit:
            break
        v = np.array(c, dtype=object)
        if any(pi2.orbit_sum(v)):
            continue
        m = np.stack([intmat.matmul(acts[g], v) for g in range(1, n)], axis=1)
        if intmat.det(m) in (1, -1):
            h = LatticeHom(I, pi2, m).inverse()
            return LatticeHom(pi2, I, h.matrix, "pi2 -> IG*")
    return None


@dataclass
class SquareIsoResult:
    certificate: Certificate
    adjoined: AdjoinedLattice | None = None
    iso: LatticeHom | None = None  # S^2(pi2) -> M[u_M/2]


def verify_prop53(pi2: ZGLattice, G: FiniteGroup, iso: LatticeHom | None = None) -> SquareIsoResult:
    """Certify ``S^2(pi2) = M[u_M / 2]`` given an isomorphism ``pi2 -> IG*``.

    Without ``iso`` only characters are compared and the status is
    NECESSARY-ONLY.
    """
    if pi2.group != G:
        raise GroupMismatchError("pi2 is over a different group")
    n = G.order
    claim = "pi3 = S^2(pi2) is isomorphic to M[u_M/2]"
    I, _ = ig_star(G)
    S_pi2 = sym_square(pi2)
    if n == 1:
        ok = pi2.rank == 0
        return SquareIsoResult(check(claim, ok, witness={"rank_pi2": pi2.rank}))

    mdata = m_lattice(G)
    adj = adjoin_half(mdata.lattice, mdata.u_M, mdata.sigma_relation)
    stages: dict[str, Certificate] = {"adjoin": adj.certificate}

    if iso is None:
        chi_ok = S_pi2.lattice.character() == adj.lattice.character()
        stages["character"] = check("chi(S^2(pi2)) = chi(M[u_M/2])", chi_ok)
        cert = combine(claim, stages)
        if cert.passed:
            cert.status = NECESSARY_ONLY
        return SquareIsoResult(cert, adj)

    stages["pi2_iso"] = verify_hom(iso, "pi2 -> IG* is a ZG-isomorphism", require_iso=True)
    if not stages["pi2_iso"]:
        return SquareIsoResult(combine(claim, stages), adj)

    S_I = sym_square(I)
    s2_iso = LatticeHom(S_pi2.lattice, S_I.lattice, sym_square_matrix(iso.matrix))
    stages["sym_square_iso"] = verify_hom(s2_iso, "S^2 of the isomorphism", require_iso=True)

    # S^2(ZG) -> M (x) Q in doubled coordinates: e_0 h -> u_M h, M part -> 2 * identity
    target, perm, _ = sym_square_zg_iso(G)
    M = mdata.lattice
    first = np.stack([intmat.matmul(A, mdata.u_M) for A in M.actions], axis=1)
    phi2 = intmat.matmul(np.concatenate([first, 2 * intmat.identity(M.rank)], axis=1), perm.matrix)

    dp = delta_prime(G)
    ker, _ = intmat.kernel_basis(dp.matrix)
    stages["kernel"] = check("the ZG-span of u and u Sigma/2 maps to zero",
                             not intmat.matmul(phi2, ker).any())

    # section of delta': S^2(IG*) basis (g, h), g, h != e, lifts to (g, h) in S^2(ZG)
    S_ZG = sym_square(free_lattice(G, 1))
    section = intmat.zeros(S_ZG.rank, S_I.rank)
    for c, (i, j) in enumerate(S_I.index):
        section[S_ZG.position(i + 1, j + 1), c] = 1
    stages["section"] = check("delta' o section = 1",
                              intmat.equal(intmat.matmul(dp.matrix, section), intmat.identity(S_I.rank)))

    coords = adj.coordinates(intmat.matmul(phi2, section))
    if coords is None:
        stages["integral"] = check("S^2(IG*) lands in M[u_M/2]", False)
        return SquareIsoResult(combine(claim, stages), adj)
    psi = LatticeHom(S_I.lattice, adj.lattice, coords, "S^2(IG*) -> M[u_M/2]")
    stages["quotient_iso"] = verify_hom(psi, "S^2(IG*) -> M[u_M/2] is a ZG-isomorphism", require_iso=True)
    total = psi.compose(s2_iso)
    stages["composite"] = verify_hom(total, "S^2(pi2) -> M[u_M/2] is a ZG-isomorphism", require_iso=True)
    return SquareIsoResult(combine(claim, stages), adj, total)
