"""Exact computation of the second and third homotopy modules of presentation
2-complexes with finite fundamental group."""

from .analysis import AnalysisReport, analyze, compare
from .certificates import FAIL, NECESSARY_ONLY, PASS, Certificate
from .chain_complex import (
    ChainComplexData,
    boundary_matrices,
    expand_to_integer_matrix,
    fox_derivative,
    second_homotopy,
    verify_universal_cover_exactness,
)
from .decomposition import (
    InvolutionData,
    StableExponents,
    coset_transversal_St,
    involution_pairs,
    is_rationally_free,
    stable_compare,
    stable_exponents,
    sym_square_sum_iso,
    sym_square_zg_iso,
    tensor_free_iso,
    theorem52_check,
    v_g,
)
from .group_ring import GroupRingElement, ZGMatrix, ring_arithmetic, sigma
from .groups import EnumerationError, FiniteGroup, GroupMismatchError, enumerate_group
from .ig_star import (
    AdjoinedLattice,
    adjoin_half,
    delta_prime,
    find_ig_star_iso,
    ig_star,
    kernel_delta_prime_check,
    m_lattice,
    verify_prop53,
)
from .intmat import normal_forms
from .lattice import (
    Character,
    LatticeHom,
    ZGLattice,
    character,
    direct_sum,
    free_lattice,
    kernel_lattice,
    tensor_over_Z,
    verify_hom,
)
from .presentation import GroupPresentation, PresentationError, parse_presentation
from .sym_square import (
    QuadraticMapTable,
    SymSquare,
    extend_quadratic,
    norm,
    q_map,
    sym_square,
    whitehead_pairing,
)

__version__ = "0.1.0"
