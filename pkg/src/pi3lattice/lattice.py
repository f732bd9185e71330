"""ZG-lattices: free Z-modules of finite rank with a right G-action.

A lattice of rank ``k`` stores one ``k x k`` integer matrix per presentation
generator.  Coordinates follow ``coords(v * g) = A(g) @ coords(v)``, so
``g -> A(g)`` is an anti-homomorphism: ``A(g h) = A(h) @ A(g)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import intmat
from .certificates import PASS, FAIL, Certificate
from .groups import FiniteGroup, GroupMismatchError


class LatticeError(ValueError):
    pass


def regular_matrix(G: FiniteGroup, g: int) -> np.ndarray:
    """Permutation matrix of right multiplication by ``g`` on ZG."""
    n = G.order
    out = intmat.zeros(n, n)
    out[G.table[:, g], np.arange(n)] = 1
    return out


@dataclass(frozen=True, eq=False)
class ZGLattice:
    group: FiniteGroup
    generators: tuple[np.ndarray, ...]
    label: str = ""

    def __init__(self, group: FiniteGroup, generators, label: str = "", check: bool = True):
        mats = tuple(intmat.as_matrix(a) for a in generators)
        if len(mats) != len(group.generator_images):
            raise LatticeError(
                f"need {len(group.generator_images)} generator actions, got {len(mats)}"
            )
        k = mats[0].shape[0] if mats else 0
        for a in mats:
            if a.shape != (k, k):
                raise LatticeError(f"action matrix of shape {a.shape}, expected {(k, k)}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "generators", mats)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_rank", k)
        if check:
            self.validate()

    @property
    def rank(self) -> int:
        return self._rank

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"<ZGLattice{tag} rank={self.rank} |G|={self.group.order}>"

    @functools.cached_property
    def actions(self) -> tuple[np.ndarray, ...]:
        """Action matrix of every group element, indexed by element."""
        G = self.group
        out = [intmat.identity(self.rank)]
        for b in range(1, G.order):
            out.append(intmat.matmul(self.generators[G.parent_gen[b]], out[G.parent[b]]))
        return tuple(out)

    def action(self, g: int) -> np.ndarray:
        return self.actions[g]

    def act(self, v, g: int) -> np.ndarray:
        """Coordinates of ``v * g``."""
        return intmat.matmul(self.actions[g], intmat.as_vector(v))

    def orbit_sum(self, v) -> np.ndarray:
        """Coordinates of ``v * Sigma``."""
        v = intmat.as_vector(v)
        total = np.zeros(self.rank, dtype=object)
        for A in self.actions:
            total = total + intmat.matmul(A, v)
        return total

    def validate(self) -> None:
        G = self.group
        I = intmat.identity(self.rank)
        acts = self.actions
        for j, a in enumerate(self.generators):
            # an integer two-sided inverse makes a unimodular, no determinant needed
            inv = acts[G.inv(G.generator_images[j])]
            if not intmat.equal(intmat.matmul(a, inv), I):
                raise LatticeError(f"action of generator {j} is not unimodular "
                                   "or is inconsistent with the group table")
        for rel in G.presentation.relators:
            m = I
            for gen, exp in rel:
                img = G.generator_images[gen]
                m = intmat.matmul(acts[img if exp > 0 else G.inv(img)], m)
            if not intmat.equal(m, I):
                raise LatticeError(
                    f"relator {G.presentation.format_word(rel)} does not act trivially"
                )

    def check_anti_homomorphism(self, pairs=None) -> bool:
        G = self.group
        acts = self.actions
        if pairs is None:
            pairs = [(g, h) for g in range(G.order) for h in range(G.order)]
        return all(
            intmat.equal(acts[G.mul(g, h)], intmat.matmul(acts[h], acts[g])) for g, h in pairs
        )

    def character(self) -> Character:
        return Character(self.group, tuple(int(np.trace(A)) if self.rank else 0 for A in self.actions))

    def same_group(self, other: ZGLattice) -> None:
        if other.group != self.group:
            raise GroupMismatchError("lattices over different groups")

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "group_order": self.group.order,
            "label": self.label,
            "generators": [[[int(x) for x in row] for row in a] for a in self.generators],
        }

    @classmethod
    def from_json(cls, doc: dict, group: FiniteGroup) -> ZGLattice:
        if doc["group_order"] != group.order:
            raise GroupMismatchError("serialized lattice is over a group of different order")
        k = doc["rank"]
        gens = [intmat.as_matrix(a, (k, k)) if k else intmat.zeros(0, 0) for a in doc["generators"]]
        return cls(group, gens, doc.get("label", ""))


@dataclass(frozen=True)
class Character:
    """Trace of the action of every group element."""

    group: FiniteGroup
    values: tuple[int, ...]

    def __add__(self, other: Character) -> Character:
        return Character(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: Character) -> Character:
        return Character(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, Character):
            return Character(self.group, tuple(a * b for a, b in zip(self.values, other.values)))
        return Character(self.group, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __getitem__(self, g: int) -> int:
        return self.values[g]

    def __len__(self) -> int:
        return len(self.values)

    def is_class_function(self) -> bool:
        return all(len({self.values[g] for g in cls}) == 1 for cls in self.group.conjugacy_classes)

    def inner(self, other: Character) -> Fraction:
        G = self.group
        total = sum(self.values[g] * other.values[G.inv(g)] for g in range(G.order))
        return Fraction(total, G.order)

    def first_difference(self, other: Character) -> int | None:
        return next((g for g, (a, b) in enumerate(zip(self.values, other.values)) if a != b), None)


def regular_character(G: FiniteGroup) -> Character:
    return Character(G, (G.order,) + (0,) * (G.order - 1))


def zero_character(G: FiniteGroup) -> Character:
    return Character(G, (0,) * G.order)


def character(L: ZGLattice) -> Character:
    return L.character()


@dataclass(frozen=True, eq=False)
class LatticeHom:
    """Z-linear map given by a ``target.rank x source.rank`` integer matrix."""

    source: ZGLattice
    target: ZGLattice
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = intmat.as_matrix(self.matrix, (self.target.rank, self.source.rank))
        object.__setattr__(self, "matrix", m)
        self.source.same_group(self.target)

    def __call__(self, v) -> np.ndarray:
        return intmat.matmul(self.matrix, intmat.as_vector(v))

    def compose(self, inner: LatticeHom) -> LatticeHom:
        """``self o inner``."""
        if inner.target.rank != self.source.rank:
            raise ValueError("composition of incompatible homs")
        return LatticeHom(inner.source, self.target, intmat.matmul(self.matrix, inner.matrix))

    def inverse(self) -> LatticeHom:
        return LatticeHom(self.target, self.source, intmat.unimodular_inverse(self.matrix))


class HomCertificate(Certificate):
    @property
    def equivariant(self) -> bool:
        return bool(self.details.get("equivariant"))

    @property
    def iso(self) -> bool:
        return bool(self.details.get("iso"))


def verify_hom(h: LatticeHom, claim: str = "hom is ZG-linear", require_iso: bool = False) -> HomCertificate:
    """Check ``M A_src(x) == A_tgt(x) M`` on every generator, and unimodularity."""
    witness = None
    for j, (a_src, a_tgt) in enumerate(zip(h.source.generators, h.target.generators)):
        if not intmat.equal(intmat.matmul(h.matrix, a_src), intmat.matmul(a_tgt, h.matrix)):
            witness = j
            break
    equivariant = witness is None
    iso = intmat.is_unimodular(h.matrix)
    if not equivariant:
        witness = {"failed_generator": witness}
    elif require_iso and not iso:
        witness = "determinant"
    ok = witness is None
    return HomCertificate(claim, PASS if ok else FAIL, witness, {"equivariant": equivariant, "iso": iso})


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def free_lattice(G: FiniteGroup, k: int) -> ZGLattice:
    """ZG^k with the right regular action on each summand."""
    gens = [intmat.block_diag([regular_matrix(G, img)] * k) if k else intmat.zeros(0, 0)
            for img in G.generator_images]
    return ZGLattice(G, gens, f"ZG^{k}" if k != 1 else "ZG")


def trivial_lattice(G: FiniteGroup, k: int = 1) -> ZGLattice:
    return ZGLattice(G, [intmat.identity(k)] * len(G.generator_images), f"Z^{k}")


def direct_sum(parts, group: FiniteGroup | None = None) -> tuple[ZGLattice, list[LatticeHom]]:
    parts = list(parts)
    if not parts and group is None:
        raise ValueError("group required for an empty direct sum")
    G = parts[0].group if parts else group
    for p in parts:
        if p.group != G:
            raise GroupMismatchError("direct sum of lattices over different groups")
    gens = [intmat.block_diag([p.generators[j] for p in parts]) if parts else intmat.zeros(0, 0)
            for j in range(len(G.generator_images))]
    total = ZGLattice(G, gens, " + ".join(p.label or "?" for p in parts), check=False)
    injections = []
    offset = 0
    for p in parts:
        m = intmat.zeros(total.rank, p.rank)
        for i in range(p.rank):
            m[offset + i, i] = 1
        injections.append(LatticeHom(p, total, m))
        offset += p.rank
    return total, injections


def tensor_over_Z(a: ZGLattice, b: ZGLattice) -> ZGLattice:
    """``a (x)_Z b`` with the diagonal action; basis pair ``(i, j)`` at ``i*rank(b)+j``."""
    a.same_group(b)
    gens = [intmat.kron(x, y) for x, y in zip(a.generators, b.generators)]
    return ZGLattice(a.group, gens, f"{a.label or '?'} (x) {b.label or '?'}", check=False)


def sublattice(ambient: ZGLattice, basis, label: str = "") -> tuple[ZGLattice, LatticeHom]:
    """G-stable sublattice spanned by independent columns of ``basis``."""
    basis = intmat.as_matrix(basis)
    gens = []
    for j, a in enumerate(ambient.generators):
        coords = intmat.lattice_coordinates(basis, intmat.matmul(a, basis))
        if coords is None:
            raise LatticeError(f"sublattice is not stable under generator {j}")
        gens.append(coords)
    sub = ZGLattice(ambient.group, gens, label)
    return sub, LatticeHom(sub, ambient, basis)


def kernel_lattice(m, ambient: ZGLattice, label: str = "") -> tuple[ZGLattice, LatticeHom]:
    """Kernel of the integer matrix ``m`` on ``ambient`` with induced action."""
    m = intmat.as_matrix(m)
    if m.shape[1] != ambient.rank:
        raise ValueError("matrix columns do not match the ambient rank")
    K, left = intmat.kernel_basis(m)
    gens = []
    for j, a in enumerate(ambient.generators):
        image = intmat.matmul(a, K)
        induced = intmat.matmul(left, image)
        if not intmat.equal(intmat.matmul(K, induced), image):
            raise LatticeError(f"kernel is not stable under generator {j}")
        gens.append(induced)
    ker = ZGLattice(ambient.group, gens, label)
    return ker, LatticeHom(ker, ambient, K)


def transport(L: ZGLattice, phi: np.ndarray, G: FiniteGroup) -> ZGLattice:
    """Move ``L`` along a group isomorphism ``phi: L.group -> G``."""
    inv_phi = np.empty_like(phi)
    inv_phi[phi] = np.arange(len(phi))
    gens = [L.actions[int(inv_phi[img])] for img in G.generator_images]
    return ZGLattice(G, gens, L.label)
