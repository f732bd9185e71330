"""Structure of symmetric squares under direct sums and free modules.

All transversal choices take the element of smallest index, so every
isomorphism built here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import intmat
from .certificates import FAIL, PASS, Certificate, check, combine
from .group_ring import GroupRingElement, sigma
from .groups import FiniteGroup, GroupMismatchError
from .lattice import (
    Character,
    LatticeHom,
    ZGLattice,
    direct_sum,
    free_lattice,
    regular_character,
    tensor_over_Z,
    verify_hom,
    zero_character,
)
from .sym_square import sym_index, sym_square


@dataclass(frozen=True)
class InvolutionData:
    """``p`` inverse pairs, the involutions ``T`` and a pair transversal ``S``."""

    p: int
    T: tuple[int, ...]
    S: tuple[int, ...]


def involution_pairs(G: FiniteGroup) -> InvolutionData:
    S = []
    T = []
    for g in range(1, G.order):
        gi = G.inv(g)
        if gi == g:
            T.append(g)
        elif g < gi:
            S.append(g)
    data = InvolutionData(len(S), tuple(T), tuple(S))
    assert 2 * data.p + len(data.T) == G.order - 1
    return data


def _coset_reps(G: FiniteGroup, t: int) -> list[int]:
    """Smallest-index representative of each pair ``{h, t h}``."""
    return [h for h in range(G.order) if h < G.mul(t, h)]


def ideal_lattice(G: FiniteGroup, t: int) -> ZGLattice:
    """The right ideal ``(1 + t) ZG`` with basis ``(1 + t) h``, ``h < t h``."""
    if t == 0 or G.mul(t, t) != 0:
        raise ValueError("element is not an involution")
    reps = _coset_reps(G, t)
    pos = {h: i for i, h in enumerate(reps)}
    for h in reps:
        pos[G.mul(t, h)] = pos[h]
    gens = []
    for img in G.generator_images:
        m = intmat.zeros(len(reps), len(reps))
        for i, h in enumerate(reps):
            m[pos[G.mul(h, img)], i] = 1
        gens.append(m)
    return ZGLattice(G, gens, f"(1+{G.name(t)})ZG")


def ideal_inclusion(G: FiniteGroup, t: int) -> LatticeHom:
    """``(1 + t) ZG -> ZG``."""
    V = ideal_lattice(G, t)
    m = intmat.zeros(G.order, V.rank)
    for i, h in enumerate(_coset_reps(G, t)):
        m[h, i] += 1
        m[G.mul(t, h), i] += 1
    return LatticeHom(V, free_lattice(G, 1), m)


def v_g(G: FiniteGroup) -> ZGLattice:
    """Direct sum of the ideals ``(1 + t) ZG`` over the involutions ``t``."""
    T = involution_pairs(G).T
    total, _ = direct_sum([ideal_lattice(G, t) for t in T], group=G)
    return ZGLattice(G, total.generators, "V_G")


def coset_transversal_St(G: FiniteGroup, t: int) -> GroupRingElement:
    """``S_t``: one representative per pair ``{g, t g}``; ``(1 + t) S_t = Sigma``."""
    if t == 0 or G.mul(t, t) != 0:
        raise ValueError(f"{G.name(t)} is not an involution")
    St = GroupRingElement(G, ((h, 1) for h in _coset_reps(G, t)))
    one_t = GroupRingElement(G, ((0, 1), (t, 1)))
    if one_t * St != sigma(G):
        raise AssertionError("(1 + t) S_t != Sigma")
    return St


# ---------------------------------------------------------------------------
# explicit decomposition isomorphisms
# ---------------------------------------------------------------------------


def _permutation_hom(src: ZGLattice, dst: ZGLattice, targets: list[int]) -> LatticeHom:
    m = intmat.zeros(dst.rank, src.rank)
    for c, r in enumerate(targets):
        m[r, c] = 1
    return LatticeHom(src, dst, m)


def sym_square_sum_iso(parts, group: FiniteGroup | None = None) -> tuple[ZGLattice, LatticeHom]:
    """``S^2(A_1 + ... + A_m) -> sum S^2(A_i) + sum_{i<j} A_i (x) A_j``.

    Symmetric tensors of two basis vectors from different summands go to the
    corresponding elementary tensor.
    """
    parts = list(parts)
    total, _ = direct_sum(parts, group)
    S = sym_square(total)
    squares = [sym_square(a) for a in parts]
    tensors = [tensor_over_Z(parts[i], parts[j])
               for i in range(len(parts)) for j in range(i + 1, len(parts))]
    rhs, _ = direct_sum([s.lattice for s in squares] + tensors, total.group)

    owner = []
    local = []
    for i, a in enumerate(parts):
        owner += [i] * a.rank
        local += list(range(a.rank))
    sq_offset = np.cumsum([0] + [s.rank for s in squares]).tolist()
    tensor_offset = {}
    off = sq_offset[-1]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            tensor_offset[(i, j)] = off
            off += parts[i].rank * parts[j].rank

    targets = []
    for a, b in S.index:
        pa, pb = owner[a], owner[b]
        if pa == pb:
            targets.append(sq_offset[pa] + squares[pa].position(local[a], local[b]))
        else:
            targets.append(tensor_offset[(pa, pb)] + local[a] * parts[pb].rank + local[b])
    return rhs, _permutation_hom(S.lattice, rhs, targets)


def tensor_free_iso(A: ZGLattice) -> tuple[ZGLattice, LatticeHom]:
    """``A (x)_Z ZG -> ZG^k`` sending ``a_i g (x) g`` to ``g`` in summand ``i``."""
    G = A.group
    n = G.order
    k = A.rank
    ZG = free_lattice(G, 1)
    AZ = tensor_over_Z(A, ZG)
    free = free_lattice(G, k)
    # inverse direction first: (i, g) -> sum_a A(g)[a, i] e_a (x) g
    m = intmat.zeros(k * n, k * n)
    for g in range(n):
        Ag_inv = A.actions[G.inv(g)]
        for i in range(k):
            for a in range(k):
                m[i * n + g, a * n + g] = Ag_inv[i, a]
    return free, LatticeHom(AZ, free, m)


def sym_square_zg_iso(G: FiniteGroup) -> tuple[ZGLattice, LatticeHom, InvolutionData]:
    """``S^2(ZG) -> ZG^{1+p} + V_G`` from the three basis families

    ``(e(x)e) h``, ``(e(x)g + g(x)e) h`` for ``g`` in ``S`` and
    ``(e(x)t + t(x)e) h`` for involutions ``t`` and ``h < t h``.
    """
    n = G.order
    data = involution_pairs(G)
    S2 = sym_square(free_lattice(G, 1))
    ideals = [ideal_lattice(G, t) for t in data.T]
    target, _ = direct_sum([free_lattice(G, 1 + data.p)] + ideals, G)
    s_pos = {g: i for i, g in enumerate(data.S)}
    v_offset = n * (1 + data.p)
    t_offsets = {}
    off = v_offset
    t_rep_pos = {}
    for t, V in zip(data.T, ideals):
        t_offsets[t] = off
        for i, h in enumerate(_coset_reps(G, t)):
            t_rep_pos[(t, h)] = i
        off += V.rank

    targets = []
    for a, b in S2.index:
        if a == b:
            targets.append(a)
            continue
        g = G.mul(b, G.inv(a))  # b = g a
        if g in s_pos:
            targets.append(n * (1 + s_pos[g]) + a)
        elif G.inv(g) in s_pos:
            targets.append(n * (1 + s_pos[G.inv(g)]) + b)
        else:
            h = min(a, b)
            targets.append(t_offsets[g] + t_rep_pos[(g, h)])
    assert n * (n + 1) // 2 == n * (1 + data.p) + len(data.T) * n // 2
    return target, _permutation_hom(S2.lattice, target, targets), data


# ---------------------------------------------------------------------------
# stabilization exponents and rational checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StableExponents:
    a: int
    b: int
    k: int
    k_prime: int
    n: int
    p: int
    exponent_q: int
    exponent_r: int


def _exponent(a: int, p: int, k: int, n: int) -> int:
    # a (1 + p + k + n (a - 1) / 2), kept integral
    return a * (1 + p + k) + n * a * (a - 1) // 2


def stable_exponents(a: int, b: int, k: int, k_prime: int, G: FiniteGroup) -> StableExponents:
    if a < 0 or b < 0:
        raise ValueError("stabilization counts must be nonnegative")
    p = involution_pairs(G).p
    n = G.order
    return StableExponents(a, b, k, k_prime, n, p, _exponent(a, p, k, n), _exponent(b, p, k_prime, n))


def minimal_stabilization(k: int, k_prime: int, n: int) -> tuple[int, int]:
    """Smallest ``a, b >= 0`` with ``k + n a == k' + n b``."""
    diff = k_prime - k
    if diff % n:
        raise ValueError(f"ranks {k} and {k_prime} differ by a non-multiple of {n}")
    return (diff // n, 0) if diff >= 0 else (0, -diff // n)


def _stabilized(pi3: ZGLattice, q: int, a: int, V: ZGLattice) -> ZGLattice:
    total, _ = direct_sum([pi3, free_lattice(pi3.group, q)] + [V] * a, pi3.group)
    return total


@dataclass
class StableComparison:
    exponents: StableExponents
    rank_lhs: int
    rank_rhs: int
    character_lhs: Character
    character_rhs: Character
    odd_order: bool
    certificate: Certificate
    iso_certificate: Certificate | None = None

    def to_dict(self) -> dict:
        e = self.exponents
        return {
            "a": e.a, "b": e.b, "k": e.k, "k_prime": e.k_prime,
            "exponent_q": e.exponent_q, "exponent_r": e.exponent_r,
            "rank_lhs": self.rank_lhs, "rank_rhs": self.rank_rhs,
            "character_lhs": list(self.character_lhs.values),
            "character_rhs": list(self.character_rhs.values),
            "odd_order": self.odd_order,
            "certificate": self.certificate.to_dict(),
            "iso_certificate": self.iso_certificate.to_dict() if self.iso_certificate else None,
        }


def stable_compare(pi3_X: ZGLattice, pi3_Xp: ZGLattice, k: int, k_prime: int, a: int, b: int,
                   G: FiniteGroup, iso=None) -> StableComparison:
    """Necessary conditions for ``pi3(X) + ZG^q + V^a ~ pi3(X') + ZG^r + V^b``.

    Compares Z-ranks and characters of both sides.  A supplied ``iso``
    (matrix from the left side to the right side) is certified in full.
    """
    for L in (pi3_X, pi3_Xp):
        if L.group != G:
            raise GroupMismatchError("lattices must be over the comparison group")
    ex = stable_exponents(a, b, k, k_prime, G)
    V = v_g(G)
    lhs = _stabilized(pi3_X, ex.exponent_q, a, V)
    rhs = _stabilized(pi3_Xp, ex.exponent_r, b, V)
    chi_l, chi_r = lhs.character(), rhs.character()
    odd = G.order % 2 == 1
    parts = {
        "rank": check("Z-ranks agree", lhs.rank == rhs.rank,
                      witness={"lhs": lhs.rank, "rhs": rhs.rank}),
        "character": check("characters agree", chi_l == chi_r,
                           witness=chi_l.first_difference(chi_r)),
    }
    if odd:
        parts["odd_order"] = check("odd order: V_G = 0", V.rank == 0)
    iso_cert = None
    if iso is not None:
        h = iso if isinstance(iso, LatticeHom) else LatticeHom(lhs, rhs, iso)
        iso_cert = verify_hom(h, "supplied stable isomorphism", require_iso=True)
    cert = combine("stable-equivalence necessary conditions (rank, character)", parts)
    return StableComparison(ex, lhs.rank, rhs.rank, chi_l, chi_r, odd, cert, iso_cert)


def is_rationally_free(L: ZGLattice) -> tuple[bool, int]:
    """Whether ``L (x) Q`` is free over QG, with its rank ``m`` when it is."""
    chi = L.character()
    n = L.group.order
    if any(chi[g] != 0 for g in range(1, n)) or chi[0] % n:
        return False, 0
    return True, chi[0] // n


def candidate_a(rank_pi2: int, n: int) -> int:
    """``a`` with ``rank pi2 = (n - 1) + n a``."""
    a, rem = divmod(rank_pi2 - (n - 1), n)
    if rem or a < 0:
        raise ValueError(f"pi2 of rank {rank_pi2} is not rationally IG* + QG^a for |G| = {n}")
    return a


def theorem52_check(pi3: ZGLattice, a: int, G: FiniteGroup) -> Certificate:
    """``chi(pi3) == (p + q) chi_reg + (a + 1) chi(V_G)`` with ``q`` from ``k = n - 1``."""
    if pi3.group != G:
        raise GroupMismatchError("pi3 is over a different group")
    n = G.order
    p = involution_pairs(G).p
    q = _exponent(a, p, n - 1, n)
    V = v_g(G)
    expected = (p + q) * regular_character(G) + (a + 1) * (V.character() if V.rank else zero_character(G))
    chi = pi3.character()
    diff = chi.first_difference(expected)
    details = {"p": p, "q": q, "a": a, "free_rank": p + q, "v_multiplicity": a + 1}
    if diff is not None:
        return Certificate("pi3 (x) Q = QG^(p+q) + (V_G (x) Q)^(a+1)", FAIL,
                           {"element": diff, "got": chi[diff], "expected": expected[diff]}, details)
    cert = Certificate("pi3 (x) Q = QG^(p+q) + (V_G (x) Q)^(a+1)", PASS, None, details)
    if n % 2 == 1:
        free, m = is_rationally_free(pi3)
        details["rationally_free"] = free
        details["multiplicity"] = m
        if not free:
            cert.status = FAIL
            cert.witness = "odd order but not rationally free"
    return cert
