"""Exact exterior calculus with descent splitting, applied to Maxwell's equations."""
from .coeff import DimensionMismatch, Poly, PolyParseError, format_poly, parse_poly
from .descent import (
    DescentPair,
    DoubleDecomposition,
    InvalidPair,
    SingleDecomposition,
    decompose_double,
    decompose_single,
    hodge_components,
    hodge_components_double,
    is_invariant,
    proj_P,
    proj_Q,
    projector_commutator,
)
from .exterior import (
    Form,
    FormParseError,
    FrameVector,
    Metric,
    codifferential,
    exterior_derivative,
    extend,
    flat,
    format_form,
    hodge,
    interior,
    laplace_beltrami,
    lie_derivative,
    parse_form,
    principal_symbol,
    sharp,
    wave_operator,
    wedge,
)
from .maxwell import (
    DescentViolation,
    EMConfig,
    SectorReport,
    componentwise_crosscheck,
    residuals,
    split_double,
    split_single,
)

__all__ = [name for name in dir() if not name.startswith("_")]
