"""Finite groups enumerated from presentations.

Elements are numbered ``0..n-1`` breadth-first from the identity, applying the
generators in presentation order on the right.  Element 0 is always ``e``.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .presentation import GroupPresentation, Word, parse_presentation

DEFAULT_MAX_COSETS = 100_000


class EnumerationError(RuntimeError):
    """Coset enumeration exceeded its live-coset budget."""


class GroupMismatchError(ValueError):
    """Objects defined over different groups were combined."""


def _coset_table(n_gens: int, relators: tuple[Word, ...], max_cosets: int) -> list[list[int]]:
    """HLT coset enumeration of the trivial subgroup.

    Column ``2*j`` is right multiplication by generator ``j`` and ``2*j+1``
    by its inverse.  Returns the compacted table over live cosets, coset 0
    being the identity.
    """
    width = 2 * n_gens
    rels = [[2 * g + (0 if e > 0 else 1) for g, e in r] for r in relators]
    parent: list[int] = []
    table: list[list[int | None]] = []
    live = 0

    def find(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def new(src: int, d: int) -> int:
        nonlocal live
        if live >= max_cosets:
            raise EnumerationError(
                f"coset enumeration exceeded {max_cosets} live cosets "
                "(group infinite or too large)"
            )
        c = len(parent)
        parent.append(c)
        row: list[int | None] = [None] * width
        row[d ^ 1] = src
        table.append(row)
        table[src][d] = c
        live += 1
        return c

    def unify(a: int, b: int) -> None:
        nonlocal live
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            parent[b] = a
            live -= 1
            ra, rb = table[a], table[b]
            for d in range(width):
                nb = rb[d]
                if nb is None:
                    continue
                na = ra[d]
                if na is None:
                    ra[d] = nb
                else:
                    queue.append((na, nb))

    def follow(c: int, d: int) -> int:
        c = find(c)
        nxt = table[c][d]
        if nxt is None:
            return new(c, d)
        return find(nxt)

    parent.append(0)
    table.append([None] * width)
    live = 1
    c = 0
    while c < len(parent):
        if find(c) == c:
            for rel in rels:
                end = c
                for d in rel:
                    end = follow(end, d)
                unify(end, c)
                if find(c) != c:
                    break
            if find(c) == c:
                for d in range(width):
                    follow(c, d)
        c += 1

    roots = sorted({find(x) for x in range(len(parent))})
    relabel = {r: i for i, r in enumerate(roots)}
    return [[relabel[find(table[r][d])] for d in range(width)] for r in roots]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group with its multiplication table.

    ``parent[g]`` and ``parent_gen[g]`` record the breadth-first tree:
    ``g = parent[g] * gen(parent_gen[g])`` for every ``g != e``.
    """

    presentation: GroupPresentation
    table: np.ndarray
    inverses: np.ndarray
    generator_images: tuple[int, ...]
    parent: tuple[int, ...]
    parent_gen: tuple[int, ...]
    names: tuple[str, ...] = field(default=())

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (
            self.order == other.order
            and self.generator_images == other.generator_images
            and bool(np.array_equal(self.table, other.table))
        )

    def __hash__(self) -> int:
        return hash((self.order, self.generator_images))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, {self.presentation})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def evaluate(self, word: Word) -> int:
        g = 0
        for gen, exp in word:
            img = self.generator_images[gen]
            g = self.mul(g, img if exp > 0 else self.inv(img))
        return g

    def element_order(self, g: int) -> int:
        k, h = 1, g
        while h != 0:
            h = self.mul(h, g)
            k += 1
        return k

    @functools.cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            cls = sorted({self.mul(self.mul(self.inv(h), g), h) for h in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def check_associativity(self, samples: int | None = None, seed: int = 0) -> bool:
        """Exhaustive for ``n <= 512`` unless ``samples`` is given."""
        t = self.table
        n = self.order
        if samples is None and n <= 512:
            for a in range(n):
                # (a b) c  vs  a (b c) for all b, c at once
                if not np.array_equal(t[t[a]], t[a][t]):
                    return False
            return True
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples or 100_000))
        return bool(np.all(t[t[a, b], c] == t[a, t[b, c]]))

    def check(self) -> None:
        """Assert every structural invariant of the table."""
        n = self.order
        t = self.table
        ar = np.arange(n)
        assert np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar), "0 is not the identity"
        for i in range(n):
            assert len(set(t[i].tolist())) == n, "row is not a permutation"
            assert len(set(t[:, i].tolist())) == n, "column is not a permutation"
        assert np.all(t[ar, self.inverses] == 0) and np.all(t[self.inverses, ar] == 0)
        for rel in self.presentation.relators:
            assert self.evaluate(rel) == 0, "relator does not evaluate to e"
        reached = {0}
        frontier = [0]
        while frontier:
            frontier = [self.mul(g, x) for g in frontier for x in self.generator_images]
            frontier = [g for g in frontier if not (g in reached or reached.add(g))]
        assert len(reached) == n, "generators do not generate"
        assert self.check_associativity(), "multiplication is not associative"

    def word_of(self, g: int) -> tuple[int, ...]:
        """Generator indices along the breadth-first tree from ``e`` to ``g``."""
        path = []
        while g != 0:
            path.append(self.parent_gen[g])
            g = self.parent[g]
        return tuple(reversed(path))

    def name(self, g: int) -> str:
        return self.names[g] if self.names else str(g)


def enumerate_group(p: GroupPresentation | str, max_cosets: int = DEFAULT_MAX_COSETS) -> FiniteGroup:
    """Enumerate the finite group presented by ``p``.

    Raises :class:`EnumerationError` when more than ``max_cosets`` cosets are
    simultaneously live.
    """
    if isinstance(p, str):
        p = parse_presentation(p)
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    k = len(p.generators)
    raw = _coset_table(k, p.relators, max_cosets)

    # renumber breadth-first over positive generators
    order = [0]
    index = {0: 0}
    parent = [-1]
    parent_gen = [-1]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for j in range(k):
            d = raw[c][2 * j]
            if d not in index:
                index[d] = len(order)
                order.append(d)
                parent.append(index[c])
                parent_gen.append(j)
                queue.append(d)
    n = len(order)
    if n != len(raw):
        raise EnumerationError("coset table is not connected under the generators")
    right = np.array([[index[raw[c][2 * j]] for j in range(k)] for c in order], dtype=np.int64)
    right = right.reshape(n, k)

    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for b in range(1, n):
        table[:, b] = right[table[:, parent[b]], parent_gen[b]]
    inverses = np.argmax(table == 0, axis=1).astype(np.int64)
    gens = tuple(int(right[0, j]) for j in range(k))

    names = ["e"]
    for b in range(1, n):
        prev = names[parent[b]]
        g = p.generators[parent_gen[b]]
        names.append(g if prev == "e" else f"{prev}*{g}")
    names = [_compress_name(s) for s in names]
    return FiniteGroup(p, table, inverses, gens, tuple(parent), tuple(parent_gen), tuple(names))


def _compress_name(s: str) -> str:
    if s == "e":
        return s
    parts = s.split("*")
    out = []
    for name, grp in itertools.groupby(parts):
        c = len(list(grp))
        out.append(name if c == 1 else f"{name}^{c}")
    return "*".join(out)


def find_isomorphism(src: FiniteGroup, dst: FiniteGroup) -> np.ndarray | None:
    """A multiplication-table isomorphism ``src -> dst`` as an index array.

    Searches images for the generators of ``src`` among elements of matching
    order, requiring the relators of ``src`` to hold in ``dst``.
    """
    if src.order != dst.order:
        return None
    n = src.order
    dst_orders = [dst.element_order(g) for g in range(n)]
    candidates = [
        [h for h in range(n) if dst_orders[h] == src.element_order(img)]
        for img in src.generator_images
    ]
    for images in itertools.product(*candidates):
        ok = True
        for rel in src.presentation.relators:
            g = 0
            for gen, exp in rel:
                g = dst.mul(g, images[gen] if exp > 0 else dst.inv(images[gen]))
            if g != 0:
                ok = False
                break
        if not ok:
            continue
        phi = np.zeros(n, dtype=np.int64)
        for b in range(1, n):
            phi[b] = dst.mul(int(phi[src.parent[b]]), images[src.parent_gen[b]])
        if len(set(phi.tolist())) != n:
            continue
        if np.array_equal(phi[src.table], dst.table[phi][:, phi]):
            return phi
    return None
