import json
import random

import numpy as np
import pytest

from pi3lattice import fixtures, intmat
from pi3lattice.decomposition import v_g
from pi3lattice.groups import GroupMismatchError
from pi3lattice.ig_star import ig_star
from pi3lattice.lattice import (
    LatticeError,
    LatticeHom,
    ZGLattice,
    character,
    direct_sum,
    free_lattice,
    kernel_lattice,
    regular_character,
    sublattice,
    tensor_over_Z,
    trivial_lattice,
    verify_hom,
)

from conftest import group_for, pi2_for

GROUPS = ["trivial", "C2", "C3", "C4", "S3", "Q8"]


def fixture_lattices(G):
    out = [free_lattice(G, 1), free_lattice(G, 2), ig_star(G)[0], v_g(G), trivial_lattice(G, 2)]
    for text in fixtures.PRESENTATIONS.values():
        if group_for(text) is G:
            out.append(pi2_for(text))
    return out


@pytest.mark.parametrize("name", GROUPS)
def test_lattice_invariants(name):
    G = group_for(fixtures.PRESENTATIONS[name])
    rnd = random.Random(1)
    for L in fixture_lattices(G):
        acts = L.actions
        assert intmat.equal(acts[0], intmat.identity(L.rank))
        for A in L.generators:
            assert intmat.det(A) in (1, -1)
        gens = G.generator_images
        pairs = [(g, h) for g in gens for h in gens]
        pairs += [(rnd.randrange(G.order), rnd.randrange(G.order)) for _ in range(1000)]
        assert L.check_anti_homomorphism(pairs)
        chi = L.character()
        assert chi.is_class_function()
        assert chi[0] == L.rank


def test_kernel_of_shipped_fixtures():
    assert pi2_for(fixtures.PRESENTATIONS["C3"]).rank == 2
    assert pi2_for(fixtures.PRESENTATIONS["Q8"]).rank == 7


def test_kernel_of_zero_map_is_everything(c3):
    ZG = free_lattice(c3, 1)
    K, inc = kernel_lattice(intmat.zeros(1, 3), ZG)
    assert K.rank == 3
    assert intmat.same_lattice(inc.matrix, intmat.identity(3))
    assert verify_hom(inc).equivariant


@pytest.mark.parametrize("name", ["C3", "S3", "Q8"])
def test_kernel_inclusion_is_pure_and_equivariant(name):
    from pi3lattice.chain_complex import second_homotopy
    from conftest import complex_for
    pi2, inc = second_homotopy(complex_for(fixtures.PRESENTATIONS[name]))
    assert verify_hom(inc).equivariant
    assert set(intmat.smith_form(inc.matrix).invariant_factors) == {1}


def test_kernel_not_stable_is_rejected(q8):
    ZG = free_lattice(q8, 1)
    # kills a single coordinate, which is not a ZG-submodule
    m = intmat.zeros(1, 8)
    m[0, 0] = 1
    with pytest.raises(LatticeError):
        kernel_lattice(m, ZG)


def test_direct_sum_examples(c3):
    empty, inj = direct_sum([], c3)
    assert empty.rank == 0 and inj == []
    ZG = free_lattice(c3, 1)
    two, inj = direct_sum([ZG, ZG])
    assert two.rank == 6
    assert intmat.equal(two.generators[0], intmat.block_diag([ZG.generators[0]] * 2))
    assert all(verify_hom(i).equivariant for i in inj)
    mixed, _ = direct_sum([ig_star(c3)[0], ZG])
    assert mixed.rank == 5


def test_direct_sum_group_mismatch(c3, q8):
    with pytest.raises(GroupMismatchError):
        direct_sum([free_lattice(c3, 1), free_lattice(q8, 1)])


def test_tensor_examples(c3):
    zero = ZGLattice(c3, [intmat.zeros(0, 0)])
    assert tensor_over_Z(zero, free_lattice(c3, 1)).rank == 0
    ZG = free_lattice(c3, 1)
    T = tensor_over_Z(ZG, ZG)
    assert T.rank == 9
    T.validate()
    assert intmat.equal(T.generators[0], intmat.kron(ZG.generators[0], ZG.generators[0]))


@pytest.mark.parametrize("name", ["C3", "S3", "Q8"])
def test_character_additive_and_multiplicative(name):
    G = group_for(fixtures.PRESENTATIONS[name])
    A, B = ig_star(G)[0], v_g(G) if v_g(G).rank else free_lattice(G, 1)
    s, _ = direct_sum([A, B])
    assert s.character() == A.character() + B.character()
    assert tensor_over_Z(A, B).character() == A.character() * B.character()


def test_free_lattice_examples(c3, q8):
    assert free_lattice(c3, 0).rank == 0
    L = free_lattice(c3, 1)
    assert L.rank == 3 and character(L).values == (3, 0, 0)
    L2 = free_lattice(q8, 2)
    assert L2.rank == 16 and L2.character() == 2 * regular_character(q8)


def test_character_examples(c2, c3):
    assert ig_star(c3)[0].character().values == (2, -1, -1)
    assert v_g(c2).character().values == (1, 1)


def test_verify_hom_examples(c3, q8):
    ZG = free_lattice(c3, 1)
    ident = verify_hom(LatticeHom(ZG, ZG, intmat.identity(3)))
    assert ident.equivariant and ident.iso and ident.passed
    shift = verify_hom(LatticeHom(ZG, ZG, ZG.generators[0]))
    assert shift.equivariant and shift.iso
    ZQ = free_lattice(q8, 1)
    rnd = np.random.default_rng(0)
    m = rnd.integers(-2, 3, size=(8, 8))
    cert = verify_hom(LatticeHom(ZQ, ZQ, m))
    assert not cert.equivariant
    assert cert.witness["failed_generator"] in (0, 1)


def test_verify_hom_determinant_witness(c3):
    ZG = free_lattice(c3, 1)
    cert = verify_hom(LatticeHom(ZG, ZG, 2 * intmat.identity(3)), require_iso=True)
    assert cert.equivariant and not cert.iso and cert.witness == "determinant"


def test_invalid_actions_rejected(c3):
    with pytest.raises(LatticeError):
        ZGLattice(c3, [intmat.as_matrix([[2]])])
    with pytest.raises(LatticeError):
        ZGLattice(c3, [intmat.as_matrix([[-1]])])  # x^3 would act as -1
    with pytest.raises(LatticeError):
        ZGLattice(c3, [])


def test_sublattice_must_be_stable(c3):
    ZG = free_lattice(c3, 1)
    aug, _ = sublattice(ZG, [[1], [1], [1]], "Z Sigma")
    assert aug.rank == 1 and aug.character().values == (1, 1, 1)
    with pytest.raises(LatticeError):
        sublattice(ZG, [[1], [0], [0]])


@pytest.mark.parametrize("name", GROUPS)
def test_json_roundtrip_is_bit_exact(name):
    G = group_for(fixtures.PRESENTATIONS[name])
    for L in fixture_lattices(G):
        doc = json.loads(json.dumps(L.to_json()))
        back = ZGLattice.from_json(doc, G)
        assert back.to_json() == L.to_json()
        assert all(intmat.equal(a, b) for a, b in zip(back.generators, L.generators))


def test_json_rejects_wrong_group(c3, q8):
    with pytest.raises(GroupMismatchError):
        ZGLattice.from_json(free_lattice(c3, 1).to_json(), q8)
