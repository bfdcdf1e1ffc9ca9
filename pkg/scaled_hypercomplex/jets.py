"""
Truncated Taylor expansions (jets) of H_t-valued functions on R^4.

A jet of order K stores, for every exponent alpha of total degree <= K, the
Taylor coefficient (the partial derivative divided by alpha!) as a
hypercomplex number. Arithmetic truncates at K and is exact for polynomials
of degree <= K, which makes jets the differentiation engine of the package.
"""

import itertools
import logging
import math
import numbers
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .algebra import Hypercomplex, Scale, hmul
from .exceptions import HypercomplexError, ScaleMismatchError

debug_logger = logging.getLogger("scaled_hypercomplex.jets")

NVARS = 4


class _Layout(NamedTuple):
    monomials: tuple
    index: dict
    left: np.ndarray
    right: np.ndarray
    target: np.ndarray


def _exponents(order):
    for degree in range(order + 1):
        block = [e for e in itertools.product(range(degree + 1), repeat=NVARS)]
        yield from sorted(e for e in block if sum(e) == degree)


@lru_cache(maxsize=None)
def layout(order):
    """Monomial ordering (graded, then lexicographic) and product tables."""
    monomials = tuple(_exponents(order))
    index = {alpha: position for position, alpha in enumerate(monomials)}
    left, right, target = [], [], []
    for i, alpha in enumerate(monomials):
        for j, beta in enumerate(monomials):
            if sum(alpha) + sum(beta) <= order:
                left.append(i)
                right.append(j)
                target.append(index[tuple(a + b for a, b in zip(alpha, beta))])
    debug_logger.debug(f"Jet layout of order {order}: {len(monomials)} monomials.")
    return _Layout(monomials, index, np.array(left), np.array(right), np.array(target))


@lru_cache(maxsize=None)
def _derivative_map(order, variable):
    # maps order-K coefficients onto the order-(K-1) coefficients of d/dx_l
    source, target, factor = [], [], []
    lower = layout(order - 1).index
    for position, alpha in enumerate(layout(order).monomials):
        if alpha[variable]:
            reduced = list(alpha)
            reduced[variable] -= 1
            source.append(position)
            target.append(lower[tuple(reduced)])
            factor.append(alpha[variable])
    return (
        np.array(source, dtype=int),
        np.array(target, dtype=int),
        np.array(factor, dtype=float),
    )


def unit_exponent(index):
    """Exponent tuple of the coordinate x_index, index in 1..4."""
    alpha = [0] * NVARS
    alpha[index - 1] = 1
    return tuple(alpha)


class Jet:
    """
    Truncated multivariate Taylor expansion with hypercomplex coefficients.

    Parameters
    ----------
    scale : Scale or float
        Scale of the coefficient ring.
    order : int
        Truncation order K >= 0.
    coeffs : numpy.ndarray, optional
        Array of shape (M, 4) holding the coefficients in the order of
        :func:`layout`. Defaults to the zero jet.
    """

    __slots__ = ("scale", "order", "coeffs")
    __array_ufunc__ = None

    def __init__(self, scale, order, coeffs=None):
        self.scale = Scale.coerce(scale)
        self.order = int(order)
        if self.order < 0:
            raise HypercomplexError(f"Jet order must be nonnegative, got {order}.")
        size = len(layout(self.order).monomials)
        if coeffs is None:
            coeffs = np.zeros((size, 4))
        self.coeffs = np.asarray(coeffs, dtype=float)
        if self.coeffs.shape != (size, 4):
            raise HypercomplexError(
                f"Expected coefficients of shape {(size, 4)}, got {self.coeffs.shape}."
            )

    @classmethod
    def constant(cls, value, order):
        jet = cls(value.scale, order)
        jet.coeffs[0] = value.coords
        return jet

    @classmethod
    def variable(cls, scale, index, value, order):
        """The jet of the coordinate function x_index expanded at ``value``."""
        jet = cls(scale, order)
        jet.coeffs[0, 0] = value
        if order >= 1:
            jet.coeffs[layout(order).index[unit_exponent(index)], 0] = 1.0
        return jet

    @property
    def t(self):
        return self.scale.t

    @property
    def value(self):
        """The function value at the base point."""  # noqa D401
        return Hypercomplex(self.scale, *self.coeffs[0].tolist())

    def coefficient(self, alpha):
        """Taylor coefficient of the exponent ``alpha``."""
        alpha = tuple(alpha)
        if sum(alpha) > self.order:
            raise HypercomplexError(
                f"Exponent {alpha} exceeds the jet order {self.order}."
            )
        row = self.coeffs[layout(self.order).index[alpha]]
        return Hypercomplex(self.scale, *row.tolist())

    def derivative(self, alpha):
        """The partial derivative of multi-index ``alpha`` at the base point."""
        factor = math.prod(math.factorial(a) for a in alpha)
        return factor * self.coefficient(alpha)

    def truncate(self, order):
        if order > self.order:
            raise HypercomplexError(f"Cannot raise jet order {self.order} to {order}.")
        if order == self.order:
            return self
        size = len(layout(order).monomials)
        return Jet(self.scale, order, self.coeffs[:size].copy())

    def differentiate(self, index):
        """The jet of the partial derivative along x_index, one order lower."""
        if self.order == 0:
            raise HypercomplexError("Cannot differentiate a jet of order 0.")
        source, target, factor = _derivative_map(self.order, index - 1)
        result = Jet(self.scale, self.order - 1)
        result.coeffs[target] = self.coeffs[source] * factor[:, None]
        return result

    def _check_scale(self, other):
        if self.scale != other.scale:
            raise ScaleMismatchError(self.t, other.t)

    def _common(self, other):
        self._check_scale(other)
        order = min(self.order, other.order)
        return self.truncate(order), other.truncate(order)

    def __add__(self, other):
        if isinstance(other, Jet):
            left, right = self._common(other)
            return Jet(self.scale, left.order, left.coeffs + right.coeffs)
        if isinstance(other, Hypercomplex):
            self._check_scale(other)
            result = Jet(self.scale, self.order, self.coeffs.copy())
            result.coeffs[0] += other.coords
            return result
        if isinstance(other, numbers.Real):
            result = Jet(self.scale, self.order, self.coeffs.copy())
            result.coeffs[0, 0] += other
            return result
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.scale, self.order, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            left, right = self._common(other)
            lay = layout(left.order)
            products = hmul(left.coeffs[lay.left], right.coeffs[lay.right], self.t)
            result = Jet(self.scale, left.order)
            np.add.at(result.coeffs, lay.target, products)
            return result
        if isinstance(other, Hypercomplex):
            self._check_scale(other)
            return Jet(self.scale, self.order, hmul(self.coeffs, other.coords, self.t))
        if isinstance(other, numbers.Real):
            return Jet(self.scale, self.order, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Hypercomplex):
            self._check_scale(other)
            return Jet(self.scale, self.order, hmul(other.coords, self.coeffs, self.t))
        if isinstance(other, numbers.Real):
            return Jet(self.scale, self.order, self.coeffs * other)
        return NotImplemented

    def __repr__(self):
        return f"Jet(t={self.scale}, order={self.order}, value={self.value})"
