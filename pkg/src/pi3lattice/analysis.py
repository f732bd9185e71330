"""End-to-end pipeline from presentation text to a report on pi2 and pi3."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .certificates import FAIL, Certificate
from .chain_complex import (
    ChainComplexData,
    boundary_matrices,
    second_homotopy,
    verify_universal_cover_exactness,
)
from .decomposition import (
    InvolutionData,
    candidate_a,
    involution_pairs,
    is_rationally_free,
    minimal_stabilization,
    stable_compare,
    sym_square_zg_iso,
    theorem52_check,
)
from .groups import DEFAULT_MAX_COSETS, FiniteGroup, GroupMismatchError, enumerate_group, find_isomorphism
from .ig_star import find_ig_star_iso, kernel_delta_prime_check, verify_prop53
from .lattice import ZGLattice, transport, verify_hom
from .presentation import GroupPresentation, parse_presentation
from .sym_square import SymSquare, sym_square


class _Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    @contextmanager
    def __call__(self, stage: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.stages[stage] = round(time.perf_counter() - t0, 6)


@dataclass
class AnalysisReport:
    source: str
    presentation: GroupPresentation
    group: FiniteGroup
    chain: ChainComplexData
    pi2: ZGLattice
    pi3: SymSquare
    involutions: InvolutionData
    rationally_free: bool
    multiplicity: int
    certificates: dict[str, Certificate]
    timings: dict[str, float] = field(default_factory=dict)
    a: int | None = None

    @property
    def failed(self) -> list[str]:
        return [k for k, c in self.certificates.items() if c.status == FAIL]

    def to_dict(self, timings: bool = True) -> dict:
        G = self.group
        p = self.presentation
        doc = {
            "input": {
                "source": self.source,
                "generators": list(p.generators),
                "relators": [p.format_word(r) for r in p.relators],
            },
            "group": {
                "order": G.order,
                "cell_counts": list(p.cell_counts),
                "elements": [G.name(g) for g in range(G.order)],
                "generator_images": list(G.generator_images),
                "p": self.involutions.p,
                "S": list(self.involutions.S),
                "T": list(self.involutions.T),
            },
            "pi2": {
                "rank": self.pi2.rank,
                "character": list(self.pi2.character().values),
                "a": self.a,
            },
            "pi3": {
                "rank": self.pi3.rank,
                "character": list(self.pi3.lattice.character().values),
                "rationally_free": self.rationally_free,
                "multiplicity": self.multiplicity,
            },
            "certificates": {k: c.to_dict() for k, c in self.certificates.items()},
        }
        if timings:
            doc["timings"] = dict(self.timings)
        return doc


def _prepare(text: str, max_cosets: int, timer: _Timer):
    with timer("parse"):
        p = parse_presentation(text)
    with timer("enumerate"):
        G = enumerate_group(p, max_cosets)
    with timer("chain_complex"):
        c = boundary_matrices(p, G)
    with timer("pi2"):
        pi2, _ = second_homotopy(c)
    with timer("pi3"):
        pi3 = sym_square(pi2)
    return p, G, c, pi2, pi3


def analyze(text: str, source: str = "<string>", max_cosets: int = DEFAULT_MAX_COSETS,
            ig_square: bool = True, group_certificates: bool = True) -> AnalysisReport:
    """Run the full pipeline.  Enumeration errors propagate to the caller."""
    timer = _Timer()
    p, G, c, pi2, pi3 = _prepare(text, max_cosets, timer)
    certs: dict[str, Certificate] = {}
    with timer("exactness"):
        certs["exactness"] = verify_universal_cover_exactness(c)
    data = involution_pairs(G)
    free, m = is_rationally_free(pi3.lattice)
    a = None
    with timer("rational_decomposition"):
        try:
            a = candidate_a(pi2.rank, G.order)
        except ValueError as exc:
            certs["rational_decomposition"] = Certificate("pi3 (x) Q = QG^(p+q) + (V_G (x) Q)^(a+1)", FAIL, str(exc))
        else:
            certs["rational_decomposition"] = theorem52_check(pi3.lattice, a, G)
    if group_certificates:
        with timer("zg_square_split"):
            _, iso, _ = sym_square_zg_iso(G)
            certs["zg_square_split"] = verify_hom(iso, "S^2(ZG) = ZG^(1+p) + V_G", require_iso=True)
        with timer("delta_kernel"):
            certs["delta_kernel"] = kernel_delta_prime_check(G)
    if ig_square and pi2.rank == G.order - 1:
        with timer("ig_star_square"):
            iso = find_ig_star_iso(pi2)
            certs["ig_star_square"] = verify_prop53(pi2, G, iso).certificate
    return AnalysisReport(source, p, G, c, pi2, pi3, data, free, m, certs, timer.stages, a)


@dataclass
class ComparisonReport:
    left: AnalysisReport
    right: AnalysisReport
    comparison: object  # StableComparison
    timings: dict[str, float]

    @property
    def passed(self) -> bool:
        return self.comparison.certificate.passed

    def to_dict(self, timings: bool = True) -> dict:
        doc = {
            "input": {"left": self.left.source, "right": self.right.source},
            "group": {"order": self.left.group.order},
            "pi2": {"left": self.left.pi2.rank, "right": self.right.pi2.rank},
            "pi3": {
                "left": {"rank": self.left.pi3.rank, "rationally_free": self.left.rationally_free},
                "right": {"rank": self.right.pi3.rank, "rationally_free": self.right.rationally_free},
            },
            "certificates": {"stable_compare": self.comparison.to_dict()},
        }
        if timings:
            doc["timings"] = dict(self.timings)
        return doc


def compare(text1: str, text2: str, a: int | None = None, b: int | None = None,
            sources: tuple[str, str] = ("<left>", "<right>"),
            max_cosets: int = DEFAULT_MAX_COSETS) -> ComparisonReport:
    """Stable comparison of pi3 for two presentations of the same group.

    The second group is identified with the first through a table
    isomorphism; ``a`` and ``b`` default to the smallest counts that balance
    the pi2 ranks.
    """
    left = analyze(text1, sources[0], max_cosets, ig_square=False, group_certificates=False)
    right = analyze(text2, sources[1], max_cosets, ig_square=False, group_certificates=False)
    t0 = time.perf_counter()
    G = left.group
    phi = find_isomorphism(right.group, G)
    if phi is None:
        raise GroupMismatchError(
            f"groups of order {right.group.order} and {G.order} are not isomorphic")
    pi3_right = transport(right.pi3.lattice, phi, G)
    k, k2 = left.pi2.rank, right.pi2.rank
    if a is None or b is None:
        a0, b0 = minimal_stabilization(k, k2, G.order)
        a = a0 if a is None else a
        b = b0 if b is None else b
    result = stable_compare(left.pi3.lattice, pi3_right, k, k2, a, b, G)
    return ComparisonReport(left, right, result, {"compare": round(time.perf_counter() - t0, 6)})
