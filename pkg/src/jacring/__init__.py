"""Exact Jacobian rings of open complete intersections.

Construct the bigraded quotient ring attached to a smooth complete
intersection together with a normal-crossing union of hypersurface sections,
compute its pieces by exact sparse elimination over the rationals or a large
prime field, and check the structural statements (trace duality and its case
analysis, the wedge kernel of the dual map, Koszul exactness under degree
conditions, Torelli surjectivity, connectivity bound arithmetic) on concrete
inputs.
"""

__version__ = "0.1.0"

from .field import Field, QQ
from .graded import AElement, GradedBasis, a_multiply, dimension_formula, enumerate_basis
from .linalg import SparseMatrix, in_span, kernel_basis, modular_rank_probe, rank_and_kernel
from .parser import ParseError, parse_poly, poly_to_str
from .poly import HomogPoly, derivative_determinant, partial, verify_identity_star
from .ring import (
    BElement,
    RingSpec,
    SocleError,
    SpecError,
    b_multiply,
    dim_b,
    ideal_piece,
    jacobian_generators,
    ladder_report,
    quotient_piece,
    reduce_element,
    smoothness_heuristic,
    trace_functional,
)
from .duality import (
    dual_kernel_report,
    duality_defect,
    macaulay_socle_dim,
    pairing_report,
    wedge_generators,
    wedge_ideal_membership,
)
from .koszul import KoszulInstance, full_b1_instance, middle_homology, random_subspace_instance
from .geom import connectivity_bounds, family_complex_conditions, hodge_table, torelli_report
from .specfile import SpecFile, parse_specfile, preset, random_specfile
from .verify import run_verify
