"""Named-number arithmetic, a step-question DSL, and a worksheet service.

The pieces, bottom up:

- scalar: exact symbolic numbers (rationals, surds, pi, e)
- units: unit atoms, exchange rates, dimensions, quantities
- symbolic: multivariate rational functions with dimension-tagged symbols
- program: the DSL parser plus call-by-value and call-by-name evaluators
- service / web: worksheets, persistence and the HTTP surface
- cli: run / solve / check / fmt / serve
"""

from .errors import DivisionByZero, EngineError
from .program import (
    StepProgram,
    agreement_check,
    check_helpful_independence,
    eval_by_name,
    eval_by_value,
    parse,
)
from .scalar import ExactScalar, exact_sqrt, sign
from .symbolic import Polynomial, RationalFunction, Symbol, poly_divmod, rf_equal
from .units import Dimension, Quantity, UnitExpr, UnitRegistry, solve_dimensions

__version__ = "0.1.0"

__all__ = [
    "DivisionByZero",
    "Dimension",
    "EngineError",
    "ExactScalar",
    "Polynomial",
    "Quantity",
    "RationalFunction",
    "StepProgram",
    "Symbol",
    "UnitExpr",
    "UnitRegistry",
    "agreement_check",
    "check_helpful_independence",
    "eval_by_name",
    "eval_by_value",
    "exact_sqrt",
    "parse",
    "poly_divmod",
    "rf_equal",
    "sign",
    "solve_dimensions",
    "__version__",
]
