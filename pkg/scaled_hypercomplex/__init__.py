"""Arithmetic, analysis and regular functions of the t-scaled hypercomplex rings."""

from .algebra import Hypercomplex, Scale  # noqa F401
from .hyperbolic import HyperbolicNumber  # noqa F401

__version__ = "0.1.0"
