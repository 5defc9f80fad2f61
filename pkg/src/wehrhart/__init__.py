"""Parametric weighted Ehrhart polynomials of smooth polytopes."""

from .errors import (
    Degenerate,
    EhrhartError,
    ExhaustedAttempts,
    MissingAssignment,
    NotHomogeneous,
    NotMetric,
    NotSmooth,
    OutsideTypeCone,
    Unbounded,
    ZeroPolynomial,
)
from .geometry import HPolytope, enumerate_vertices, in_type_cone, is_smooth, triangulate
from .integration import WeightPoly
from .kernels import BACKEND
from .pipeline import (
    EhrhartPoly,
    HStarData,
    ParametricCount,
    eulerian,
    hstar,
    hstar_dilated,
    hstar_roots,
    parametric_weighted_count,
    sign_pattern,
    weighted_ehrhart,
)
from .poly import Block, MPoly, VarId

__version__ = "0.1.0"
