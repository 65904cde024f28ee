"""Exact certification of Darboux integrability for planar polynomial vector fields."""

from .errors import DarbouxError, InconclusiveError
from .fields import GF, QQ, DualNumbers, ExtensionField, PrimeField, field_from_spec
from .parsing import parse_polynomial
from .poly import DifferentialForm, Poly, curl, wedge_with_dC

__version__ = "0.1.0"

__all__ = [
    "DarbouxError",
    "InconclusiveError",
    "GF",
    "QQ",
    "DualNumbers",
    "ExtensionField",
    "PrimeField",
    "field_from_spec",
    "parse_polynomial",
    "DifferentialForm",
    "Poly",
    "curl",
    "wedge_with_dC",
]
