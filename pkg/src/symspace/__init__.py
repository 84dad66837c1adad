"""Exact computational toolkit for compact Hermitian symmetric spaces."""

from .scalars import GaussianRational, gr, grq, parse_gr, format_gr
from .jordan import make_space, parse_space

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "gr",
    "grq",
    "parse_gr",
    "format_gr",
    "make_space",
    "parse_space",
    "__version__",
]
