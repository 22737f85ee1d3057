"""
Adapters for cyclotower.

Text grammars for elements and polynomials, and the pydantic report models
the CLI writes.
"""

from .parsing import parse_element, parse_polynomial
from .reports import RunConfigModel, render, to_json

__all__ = [
    "RunConfigModel",
    "parse_element",
    "parse_polynomial",
    "render",
    "to_json",
]
