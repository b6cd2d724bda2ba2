"""Full generating functions of linear constraint systems over the nonnegative integers."""

from .core import (
    EQ,
    GEQ,
    Constraint,
    ConstraintError,
    ConstraintSystem,
    VarTable,
    homogenize,
    negate,
    normalize,
    substitute_constraint,
)
from .gfalg import RationalGF, SimpleTerm, gf_extract_coeff, gf_substitute, render
from .oracle import count_series, enumerate_points, slice_polynomial
from .series import SpecializationMap, TruncatedSeries, specialize
from .solver import BudgetExceeded, cmatrix_fast_path, elliott_case, solve
from .textparse import ParseError, parse_file

__version__ = "0.1.0"
