import itertools

import numpy as np
import pytest

from pi3lattice import fixtures, intmat
from pi3lattice.certificates import FAIL, NECESSARY_ONLY
from pi3lattice.groups import GroupMismatchError
from pi3lattice.ig_star import (
    adjoin_half,
    delta_prime,
    delta_prime_surjective,
    find_ig_star_iso,
    ig_star,
    kernel_delta_prime_check,
    m_lattice,
    verify_prop53,
)
from pi3lattice.lattice import (
    LatticeHom,
    free_lattice,
    regular_character,
    verify_hom,
)
from pi3lattice.sym_square import sym_square

from conftest import group_for, pi2_for

GROUPS = ["trivial", "C2", "C3", "C4", "C5", "S3", "Q8"]


def G_(name):
    return group_for(fixtures.PRESENTATIONS[name])


@pytest.mark.parametrize("name", GROUPS)
def test_ig_star_invariants(name):
    G = G_(name)
    I, delta = ig_star(G)
    n = G.order
    assert I.rank == n - 1
    assert I.character().values == (n - 1,) + (-1,) * (n - 1)
    assert verify_hom(delta).equivariant
    if n > 1:
        # delta kills Sigma and is onto
        assert not delta(np.ones(n, dtype=object)).any()
        assert set(intmat.smith_form(delta.matrix).invariant_factors) == {1}
        e_image = delta(np.eye(n, dtype=int)[:, 0])
        assert e_image.tolist() == [-1] * (n - 1)


def test_ig_star_matches_pi2_character(c3):
    assert ig_star(c3)[0].character() == pi2_for(fixtures.PRESENTATIONS["C3"]).character()
    assert ig_star(c3)[0].character().values == (2, -1, -1)


@pytest.mark.parametrize("name", GROUPS)
def test_delta_prime(name):
    G = G_(name)
    n = G.order
    dp = delta_prime(G)
    assert dp.source.rank == n * (n + 1) // 2
    assert dp.target.rank == n * (n - 1) // 2
    assert verify_hom(dp).equivariant
    assert delta_prime_surjective(dp).passed
    K, _ = intmat.kernel_basis(dp.matrix)
    assert K.shape[1] == n


def test_delta_prime_examples(trivial, c3):
    dp = delta_prime(trivial)
    assert dp.target.rank == 0 and dp.matrix.shape == (0, 1)
    dp = delta_prime(c3)
    assert dp.matrix.shape == (3, 6)


@pytest.mark.parametrize("name", GROUPS)
def test_rational_identity(name):
    G = G_(name)
    s_ig = sym_square(ig_star(G)[0]).lattice.character()
    s_zg = sym_square(free_lattice(G, 1)).lattice.character()
    assert s_ig + regular_character(G) == s_zg


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "S3", "Q8"])
def test_kernel_of_delta_prime(name):
    cert = kernel_delta_prime_check(G_(name))
    assert cert.passed
    assert cert.details["kernel_rank"] == G_(name).order


def test_m_lattice_c3(c3):
    md = m_lattice(c3)
    assert md.lattice.rank == 3
    # M = e_x ZG, u_M = -e_x (1 + x^2)
    assert md.u_M.tolist() == [-1, 0, -1]
    assert md.involutions.S == (1,)


def test_m_lattice_c2(c2):
    md = m_lattice(c2)
    assert md.lattice.rank == 1 and md.u_M.tolist() == [-1]


def test_m_lattice_q8(q8):
    md = m_lattice(q8)
    assert md.lattice.rank == 28
    blocks = [md.u_M[8 * i:8 * (i + 1)] for i in range(3)]
    for g, block in zip(md.involutions.S, blocks):
        expected = np.zeros(8, dtype=object)
        expected[0] -= 1
        expected[q8.inv(g)] -= 1
        assert intmat.equal(block, expected)
    assert md.u_M[24:].tolist() == [-1, 0, 0, 0]


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "S3", "Q8"])
def test_u_m_in_symmetric_square_coordinates(name):
    G = G_(name)
    md = m_lattice(G)
    S2 = sym_square(free_lattice(G, 1))

    def pair(a, b):
        v = np.zeros(S2.rank, dtype=object)
        v[S2.position(a, b)] = 1
        return v

    expected = np.zeros(S2.rank, dtype=object)
    for g in md.involutions.S:
        eg = pair(0, g)
        expected -= eg + S2.lattice.act(eg, G.inv(g))
    for t in md.involutions.T:
        expected -= pair(0, t)
    assert verify_hom(md.embedding).equivariant
    assert intmat.equal(md.embedding(md.u_M), expected)


def orbit_index_oracle(M, u):
    """2^(dimension over F_2 of the span of the orbit of u mod 2)."""
    rows = [[int(x) % 2 for x in M.act(u, g)] for g in range(M.group.order)]
    rank = 0
    rows = [r for r in rows]
    cols = M.rank
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return 2**rank


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "S3", "Q8"])
def test_adjoin_half(name):
    G = G_(name)
    md = m_lattice(G)
    adj = adjoin_half(md.lattice, md.u_M, md.sigma_relation)
    assert adj.certificate.passed, adj.certificate.to_dict()
    assert adj.lattice.rank == md.lattice.rank
    inc = adj.inclusion()
    assert verify_hom(inc).equivariant
    assert abs(intmat.det(inc.matrix)) == adj.index == orbit_index_oracle(md.lattice, md.u_M)
    # u_M / 2 lies in the result
    assert adj.coordinates(md.u_M.reshape(-1, 1)) is not None


def test_adjoin_half_index_is_not_always_two(c2, c3):
    md = m_lattice(c2)
    assert adjoin_half(md.lattice, md.u_M).index == 2
    md = m_lattice(c3)
    adj = adjoin_half(md.lattice, md.u_M)
    assert adj.index == 4
    # the Z-span of M and u_M/2 alone has index 2 but is not a ZG-lattice
    zspan = intmat.lattice_basis(np.concatenate([2 * intmat.identity(3), md.u_M.reshape(-1, 1)], axis=1))
    assert abs(intmat.det(zspan)) == 4
    moved = intmat.matmul(md.lattice.generators[0], zspan)
    assert intmat.lattice_coordinates(zspan, moved) is None


def test_c3_result_is_zg_adjoin_half_of_one_plus_x(c3):
    md = m_lattice(c3)
    ZG = free_lattice(c3, 1)
    assert all(intmat.equal(a, b) for a, b in zip(md.lattice.generators, ZG.generators))
    ours = adjoin_half(md.lattice, md.u_M)
    expected = adjoin_half(ZG, [1, 1, 0])  # 1 + x
    assert ours.same_as(expected)


def test_q8_adjoined_rank(q8):
    md = m_lattice(q8)
    adj = adjoin_half(md.lattice, md.u_M, md.sigma_relation)
    assert adj.lattice.rank == 28


def test_zero_vector_is_degenerate(c3):
    md = m_lattice(c3)
    adj = adjoin_half(md.lattice, np.zeros(3, dtype=object))
    assert adj.index == 1
    assert not adj.certificate.passed
    assert adj.certificate.witness == "nondegenerate"


def test_sigma_relation_failure_reported(q8):
    md = m_lattice(q8)
    wrong = md.sigma_relation.copy()
    wrong[0] += 1
    adj = adjoin_half(md.lattice, md.u_M, wrong)
    assert not adj.certificate.passed and adj.certificate.witness == "sigma"


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "C5", "Q8"])
def test_ig_star_square_full_certificate(name):
    G = G_(name)
    pi2 = pi2_for(fixtures.PRESENTATIONS[name])
    iso = find_ig_star_iso(pi2)
    assert iso is not None
    res = verify_prop53(pi2, G, iso)
    assert res.certificate.passed, res.certificate.to_dict()
    assert verify_hom(res.iso, require_iso=True).passed
    assert res.iso.source.rank == res.iso.target.rank == pi2.rank * (pi2.rank + 1) // 2


def test_ig_star_square_c3_lands_on_zg_adjoin_half(c3):
    pi2 = pi2_for(fixtures.PRESENTATIONS["C3"])
    res = verify_prop53(pi2, c3, find_ig_star_iso(pi2))
    expected = adjoin_half(free_lattice(c3, 1), [1, 1, 0])
    assert res.adjoined.same_as(expected)
    assert res.iso.target.to_json()["generators"] == expected.lattice.to_json()["generators"]


def test_ig_star_square_rejects_non_equivariant_candidate(c3):
    pi2 = pi2_for(fixtures.PRESENTATIONS["C3"])
    I, _ = ig_star(c3)
    good = find_ig_star_iso(pi2)
    # search for a unimodular matrix that is not equivariant
    for m in itertools.product((-1, 0, 1), repeat=4):
        h = LatticeHom(pi2, I, np.array(m, dtype=object).reshape(2, 2))
        c = verify_hom(h)
        if c.iso and not c.equivariant:
            break
    res = verify_prop53(pi2, c3, h)
    assert res.certificate.status == FAIL
    assert res.certificate.witness == "pi2_iso"
    assert verify_prop53(pi2, c3, good).certificate.passed


def test_ig_star_square_without_iso_is_necessary_only(q8):
    pi2 = pi2_for(fixtures.PRESENTATIONS["Q8"])
    res = verify_prop53(pi2, q8)
    assert res.certificate.status == NECESSARY_ONLY
    assert res.iso is None


def test_ig_star_square_trivial_group(trivial):
    pi2 = pi2_for(fixtures.PRESENTATIONS["trivial"])
    assert verify_prop53(pi2, trivial, find_ig_star_iso(pi2)).certificate.passed


def test_ig_star_square_group_mismatch(c3, q8):
    with pytest.raises(GroupMismatchError):
        verify_prop53(pi2_for(fixtures.PRESENTATIONS["C3"]), q8)


def test_no_iso_for_wrong_rank():
    pi2 = pi2_for(fixtures.cyclic_doubled(3))
    assert pi2.rank == 5
    assert find_ig_star_iso(pi2) is None
