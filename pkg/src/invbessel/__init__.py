"""Spherical Bessel functions as exact Laurent forms, their real inverses,
and closed-form solutions of the equations they describe."""

__version__ = "0.1.0"

from .constexpr import ConstExpr
from .errors import (
    BracketDiverged,
    DomainError,
    InvBesselError,
    MixedFactors,
    NoFixedPoint,
    NoSuchBranch,
    NoSuchExtremum,
    NotTransformable,
    OutOfRange,
    ParseError,
    PoleError,
    UnsupportedFunction,
)
from .extrema import BranchInterval, ExtremumRecord, branch_interval, branch_of, branch_range, infsupum
from .inverses import BranchSearch, InverseQuery, branches_containing, fixed_point_check, fixed_points, inverse, inverse_mp
from .lambert import WBranch, lambert_w, w_via_k0
from .laurent import (
    DLMF_K_FACTOR,
    EvalOptions,
    Family,
    LaurentForm,
    coefficients,
    derivative,
    evaluate,
    evaluate_mp,
    rayleigh_coefficients,
)
from .parser import RawEquation, Term, parse_const, parse_equation
from .recognizer import Candidate, FloatInput, SearchConfig, agreement, entropy10, recognize
from .solver import EquationNormalForm, Limits, SolutionSet, normalize, solve, solve_equation

__all__ = [name for name in dir() if not name.startswith("_")]
