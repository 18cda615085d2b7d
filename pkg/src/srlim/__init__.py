"""Exact computations with Stanley-Reisner rings, face-category diagrams and
their higher limits, and Sullivan models of complete-intersection complexes."""

__version__ = "0.1.0"

from .checks import CheckResult
from .diagrams import (
    FaceDiagram,
    LimitModule,
    TwinPair,
    concentrated_diagram,
    constant_diagram,
    exp_cohomology_diagram,
    fat_splitting,
    is_fat,
    limit,
    right_kan_extension,
    validate_functoriality,
    validate_twin,
)
from .higher_limits import E2Table, bk_e2_table, coboundary, higher_limit, higher_limits, verify_sharpness
from .linalg import (
    GF2,
    GF3,
    QQ,
    ZZ,
    CoefficientDomain,
    ExactMatrix,
    ModuleSummary,
    cohomology_at,
    kernel_basis,
    rank,
    smith_normal_form,
)
from .rational import (
    AutGeneratorSet,
    CIPresentation,
    SullivanModel,
    automorphism_generators,
    ci_detect,
    hilbert_ci_identity,
    koszul_cohomology_check,
    minimal_model,
)
from .simplicial import MultiSet, SimplicialComplex, from_facets, link, minimal_nonfaces, simplex
from .stanley_reisner import StanleyReisnerAlgebra, edge_iso_check, hilbert_function, hilbert_series, sr_basis
