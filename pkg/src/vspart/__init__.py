"""Partitions of finite vector spaces into subspaces.

Construction, verification, feasibility filtering, exhaustive search, and
the code/design correspondences, over exact GF(q) arithmetic.
"""

__version__ = "0.1.0"

from .codes import CodeReport, MixedCode, code_from_partition, code_parameters, verify_perfect
from .construct import (
    LiftResult,
    build_t_partition,
    fixed_plus_lines,
    hyperplane_section,
    lift,
    near_spread,
    spread,
    typed_construct,
)
from .designs import CosetDesign, DesignReport, design_from_partition, verify_design
from .dioph import TypeSolution, annotate, classify_gf2_23, solve
from .errors import (
    BadDimensions,
    BudgetExceeded,
    DimensionMismatch,
    DimensionTooSmall,
    FieldTooLarge,
    InvalidSubPartition,
    NotAComponent,
    NotASolution,
    NotDivisible,
    NotPrime,
    TooLarge,
    TrivialPartition,
    UncoveredCase,
    UnsupportedType,
    VspartError,
    ZeroSubspace,
)
from .gf import ExtField, FieldSpec, field_from_order, make_field
from .io import read_partition, write_partition
from .linalg import (
    Subspace,
    canonicalize,
    complement,
    contains,
    coordinate_subspace,
    enumerate_nonzero,
    enumerate_subspaces,
    full_space,
    gaussian_binomial,
    join,
    meet,
    zero_space,
)
from .partition import (
    BoundReport,
    Partition,
    PartitionType,
    VerificationReport,
    bound_report,
    induce,
    is_T_partition,
    refine,
    trivial_partition,
    type_of,
    verify,
)
from .search import ScanReport, SearchOutcome, conjecture_scan, enumerate_all, find_partition
