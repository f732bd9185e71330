import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pi3lattice import fixtures, intmat
from pi3lattice.decomposition import sym_square_zg_iso
from pi3lattice.ig_star import find_ig_star_iso, ig_star
from pi3lattice.lattice import LatticeHom, ZGLattice, free_lattice, trivial_lattice, verify_hom
from pi3lattice.sym_square import (
    QuadraticMapTable,
    SymSquare,
    check_extension,
    extend_quadratic,
    norm,
    parallelogram_defect,
    q_map,
    sym_index,
    sym_square,
    sym_square_hom,
    whitehead_pairing,
)

from conftest import group_for, pi2_for

BASES = [
    ("C3", "pi2"), ("C3", "ZG"), ("Q8", "pi2"), ("Q8", "ZG"), ("S3", "pi2"), ("C2", "ZG2"),
]


def base_lattice(name, kind):
    G = group_for(fixtures.PRESENTATIONS[name])
    if kind == "pi2":
        return pi2_for(fixtures.PRESENTATIONS[name])
    return free_lattice(G, 2 if kind == "ZG2" else 1)


def symmetric_action_oracle(A):
    """Act on symmetric tensors as matrices ``X -> A X A^T`` and read off coordinates."""
    k = A.shape[0]
    idx = sym_index(k)
    out = intmat.zeros(len(idx), len(idx))
    for c, (i, j) in enumerate(idx):
        X = intmat.zeros(k, k)
        X[i, j] += 1
        if i != j:
            X[j, i] += 1
        Y = intmat.matmul(intmat.matmul(A, X), A.T)
        assert intmat.equal(Y, Y.T)
        out[:, c] = [Y[a, b] for a, b in idx]
    return out


@pytest.mark.parametrize("name,kind", BASES)
def test_sym_square_action_matches_tensor_oracle(name, kind):
    J = base_lattice(name, kind)
    S = sym_square(J)
    k = J.rank
    assert S.rank == k * (k + 1) // 2
    for A, B in zip(J.generators, S.lattice.generators):
        assert intmat.equal(symmetric_action_oracle(A), B)


@pytest.mark.parametrize("name,kind", BASES)
def test_character_identity(name, kind):
    J = base_lattice(name, kind)
    G = J.group
    chi, chi2 = J.character(), sym_square(J).lattice.character()
    for g in range(G.order):
        assert 2 * chi2[g] == chi[g] ** 2 + chi[G.mul(g, g)]


def test_trivial_group_square():
    G = group_for(fixtures.PRESENTATIONS["trivial"])
    S = sym_square(trivial_lattice(G, 4))
    assert S.rank == 10
    assert intmat.equal(S.lattice.generators[0], intmat.identity(10))


def test_reference_ranks(c3):
    assert sym_square(free_lattice(c3, 1)).rank == 6
    target, iso, _ = sym_square_zg_iso(c3)
    assert target.rank == 6 and verify_hom(iso, require_iso=True).passed
    assert sym_square(pi2_for(fixtures.PRESENTATIONS["C3"])).rank == 3


def test_position_matches_index():
    J = base_lattice("Q8", "pi2")
    S = sym_square(J)
    for c, (i, j) in enumerate(S.index):
        assert S.position(i, j) == c == S.position(j, i)


def test_q_map_examples():
    J = base_lattice("C3", "pi2")
    S = sym_square(J)
    assert q_map(S, [1, 0]).tolist() == [1, 0, 0]
    assert q_map(S, [0, 1]).tolist() == [0, 1, 0]
    assert q_map(S, [1, 1]).tolist() == [1, 1, 1]
    with pytest.raises(ValueError):
        q_map(S, [1, 2, 3])


def test_norm_examples():
    J = base_lattice("C3", "pi2")
    assert norm(J, [0, 0]) == 0
    assert norm(J, [1, 0]) == 1
    assert norm(J, [2, -1]) == 3


vec7 = st.lists(st.integers(-6, 6), min_size=7, max_size=7)


@settings(max_examples=200, deadline=None)
@given(vec7, vec7, vec7, st.integers(0, 7))
def test_q_is_g_quadratic(a, b, c, g):
    J = base_lattice("Q8", "pi2")
    S = sym_square(J)
    a, b, c = (np.array(v, dtype=object) for v in (a, b, c))
    q = lambda v: q_map(S, v)
    assert intmat.equal(q(-a), q(a))
    assert intmat.equal(q(a + b + c), q(a + b) + q(a + c) + q(b + c) - q(a) - q(b) - q(c))
    assert intmat.equal(q(J.act(a, g)), S.lattice.act(q(a), g))
    assert not parallelogram_defect(q, a, b).any()
    assert not q(0 * a).any()


@settings(max_examples=200, deadline=None)
@given(vec7, vec7, vec7)
def test_whitehead_pairing(a, b, c):
    S = sym_square(base_lattice("Q8", "pi2"))
    a, b, c = (np.array(v, dtype=object) for v in (a, b, c))
    w = lambda x, y: whitehead_pairing(S, x, y)
    assert intmat.equal(w(a, b), w(b, a))
    assert intmat.equal(w(a + b, c), w(a, c) + w(b, c))
    assert intmat.equal(w(a, a), 2 * q_map(S, a))
    assert not w(a, 0 * a).any()
    assert intmat.equal(w(a, b), q_map(S, a + b) - q_map(S, a) - q_map(S, b))


def random_equivariant(S: ZGLattice, T: ZGLattice, rnd) -> np.ndarray:
    """Average a random integer matrix over the group: sum_h A_T(h^-1) X A_S(h)."""
    G = S.group
    X = intmat.as_matrix([[rnd.randint(-2, 2) for _ in range(S.rank)] for _ in range(T.rank)])
    psi = intmat.zeros(T.rank, S.rank)
    for h in range(G.order):
        psi = psi + intmat.matmul(intmat.matmul(T.actions[G.inv(h)], X), S.actions[h])
    return psi


@pytest.mark.parametrize("name,kind", BASES[:4])
def test_extension_recovers_random_equivariant_maps(name, kind):
    J = base_lattice(name, kind)
    S = sym_square(J)
    ZG = free_lattice(J.group, 1)
    rnd = random.Random(7)
    for _ in range(10):
        psi = LatticeHom(S.lattice, ZG, random_equivariant(S.lattice, ZG, rnd))
        assert verify_hom(psi).equivariant
        f = lambda a: psi(q_map(S, a))
        phi = extend_quadratic(S, QuadraticMapTable.tabulate(f, J, ZG))
        assert intmat.equal(phi.matrix, psi.matrix)
        samples = [[rnd.randint(-3, 3) for _ in range(J.rank)] for _ in range(5)]
        assert check_extension(phi, S, f, samples).passed


def test_extension_of_q_is_identity():
    J = base_lattice("C3", "pi2")
    S = sym_square(J)
    phi = extend_quadratic(S, QuadraticMapTable.tabulate(lambda a: q_map(S, a), J, S.lattice))
    assert intmat.equal(phi.matrix, intmat.identity(S.rank))


def test_perturbed_table_is_detected():
    J = base_lattice("Q8", "pi2")
    S = sym_square(J)
    ZG = free_lattice(J.group, 1)
    psi = LatticeHom(S.lattice, ZG, random_equivariant(S.lattice, ZG, random.Random(2)))
    table = QuadraticMapTable.tabulate(lambda a: psi(q_map(S, a)), J, ZG)
    bad_diag = table.diag.copy()
    bad_diag[0, 0] += 1
    bad = QuadraticMapTable(J, ZG, bad_diag, table.pair)
    phi = extend_quadratic(S, bad)
    assert not verify_hom(phi).equivariant
    # the perturbed map is no longer quadratic: the parallelogram law catches it
    e0 = np.zeros(J.rank, dtype=object)
    e0[0] = 1
    e1 = np.roll(e0, 1)

    def f_bad(a):
        v = psi(q_map(S, a))
        if intmat.equal(intmat.as_vector(a), e0):
            v[0] += 1
        return v

    assert parallelogram_defect(f_bad, e0, e1).any()
    assert not parallelogram_defect(lambda a: psi(q_map(S, a)), e0, e1).any()


def test_extension_shape_mismatch():
    J = base_lattice("C3", "pi2")
    S = sym_square(J)
    other = free_lattice(J.group, 1)
    table = QuadraticMapTable.tabulate(lambda a: np.zeros(3, dtype=object), other, other)
    with pytest.raises(ValueError):
        extend_quadratic(S, table)


@pytest.mark.parametrize("name", ["C3", "Q8"])
def test_sym_square_of_an_iso_is_an_iso(name):
    pi2 = pi2_for(fixtures.PRESENTATIONS[name])
    h = find_ig_star_iso(pi2)
    assert verify_hom(h, require_iso=True).passed
    s = sym_square_hom(h)
    assert verify_hom(s, require_iso=True).passed


def test_sym_square_json_roundtrip(q8):
    S = sym_square(pi2_for(fixtures.PRESENTATIONS["Q8"]))
    doc = json.loads(json.dumps(S.to_json()))
    back = SymSquare.from_json(doc, q8)
    assert back.index == S.index
    assert back.lattice.to_json() == S.lattice.to_json()
    doc["index"] = doc["index"][:-1]
    with pytest.raises(ValueError):
        SymSquare.from_json(doc, q8)
