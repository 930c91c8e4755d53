"""Period matrices of smooth plane curves and their column compression."""

from .config import Config
from .cover import (
    ColumnSet,
    CoverReport,
    ProductMatrix,
    RedundancyStats,
    build_product_matrix,
    column_set,
    compression_ratio,
    cover_check,
    distinguished_columns,
    min_cover_search,
    redundancy_stats,
    target_monomials,
)
from .curves import (
    PlaneCurve,
    SmoothnessReport,
    Verdict,
    fermat_curve,
    format_curve,
    load_curve,
    parse_curve,
    random_smooth_curve,
    save_curve,
    shear,
    smoothness_check,
)
from .gaussrat import QI
from .homology import (
    CanonicalHomology,
    CycleWord,
    canonical_homology,
    intersection_pairing,
    raw_cycles,
    symplectic_reduce,
    symplectic_transform,
)
from .monodromy import MonodromyRep, monodromy
from .monomials import (
    AdjointBasis,
    Monomial,
    adjoint_basis,
    format_monomial,
    genus,
    monomial_index,
    parse_monomial,
)
from .paths import BranchPointError, BranchPointSet, branch_points
from .periods import (
    PeriodMatrix,
    integrate_cycle,
    normalize,
    period_matrix,
    prepare_projection,
    riemann_validate,
)
from .protocol import (
    CompressedPeriods,
    VerifyOutcome,
    compress,
    deserialize,
    payload_ratio,
    serialize,
    verify,
)
from .quadspace import BasisIndexSet, QuadSpaceInfo, quad_dim, select_basis_pairs
from .roots import find_roots, roots
from .tracking import track_fiber

__version__ = "0.1.0"
