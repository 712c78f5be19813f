"""Bigraded differential algebras over Z/p^2, the coefficient algebra G*, and
Ext over the mod 2 Steenrod algebra."""

from .algebra import (
    AlgebraElement,
    BigradedSet,
    DifferentialSpec,
    StructuredAlgebra,
    check_central,
    coproduct,
    free_algebra,
    leibniz_extend,
    mon_enumerate,
    truncate_algebra,
    verify_sigma_structure,
)
from .bigraded import (
    BiDegree,
    BigradedChainComplex,
    ChainGroup,
    HomologyGroup,
    Ring,
    Window,
    chain_map_is_quasi_iso,
    cotruncate,
    homology,
    split_check,
    suspend,
    truncate,
)
from .charts import chart_render
from .coeffs import DimensionError, FMatrix, GMatrix, Prime, f_rank_kernel, f_solve, g_diagonalize
from .gstar import (
    BStarSkeleton,
    BStarWord,
    GStarBasisElement,
    bstar_basis,
    epsilon,
    gstar_algebra,
    gstar_truncation,
    iota,
    steenrod_skeleton,
)
from .resolution import ExtChart, ModulePresentation, bar_oracle, ext_chart, resolve
from .steenrod import (
    SteenrodElement,
    adem_normalize,
    adem_relation_set,
    admissible_basis,
    milnor_dimension,
    steenrod_multiply,
)

__version__ = "0.1.0"
