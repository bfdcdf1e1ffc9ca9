"""
H_t-valued functions on R^4 as immutable expression trees.

A tree is built from coordinate projections, hypercomplex constants, sums,
products and real multiples, plus named builtins and polynomial specs. The
same tree evaluates at a point (giving a Hypercomplex) and on jets (giving a
Jet), which is how derivatives are taken.
"""

import logging
import math
import numbers

from .algebra import Hypercomplex, Scale
from .exceptions import (
    EvaluationError,
    HypercomplexError,
    ParseError,
    ScaleMismatchError,
)
from .jets import Jet
from .sampling import Point4

debug_logger = logging.getLogger("scaled_hypercomplex.functions")


class _PointEnv:
    def __init__(self, scale, point):
        self.scale = scale
        self.point = point

    def coordinate(self, index):
        return Hypercomplex.real(self.scale, self.point[index - 1])

    def unity(self):
        return Hypercomplex.unity(self.scale)


class _JetEnv:
    def __init__(self, scale, point, order):
        self.scale = scale
        self.point = point
        self.order = order

    def coordinate(self, index):
        return Jet.variable(self.scale, index, self.point[index - 1], self.order)

    def unity(self):
        return Jet.constant(Hypercomplex.unity(self.scale), self.order)


class HFunction:
    """
    Base class of H_t-valued functions on R^4.

    Subclasses implement ``_evaluate(env)``, which must only use ring
    operations so that it works for points and jets alike.
    """

    supports_jets = True
    name = None

    def __init__(self, scale):
        self.scale = Scale.coerce(scale)

    @property
    def t(self):
        return self.scale.t

    def _evaluate(self, env):
        raise NotImplementedError

    def __call__(self, point):
        point = Point4.coerce(point)
        try:
            value = self._evaluate(_PointEnv(self.scale, point))
        except ScaleMismatchError:
            raise
        except (ArithmeticError, HypercomplexError) as error:
            message = f"Cannot evaluate {self} at {list(point)}."
            raise EvaluationError(message) from error
        return value

    def jet(self, point, order):
        """
        Expand the function at ``point`` into a jet of the given order.

        Parameters
        ----------
        point : Point4 or sequence of float
        order : int

        Returns
        -------
        Jet
        """
        point = Point4.coerce(point)
        if not self.supports_jets:
            raise EvaluationError(f"{self} can only be evaluated at points.")
        try:
            value = self._evaluate(_JetEnv(self.scale, point, order))
        except ScaleMismatchError:
            raise
        except (ArithmeticError, HypercomplexError) as error:
            raise EvaluationError(f"Cannot expand {self} at {list(point)}.") from error
        if not isinstance(value, Jet):
            value = Jet.constant(value, order)
        return value

    def _lift(self, other):
        if isinstance(other, HFunction):
            if other.scale != self.scale:
                raise ScaleMismatchError(self.t, other.t)
            return other
        if isinstance(other, Hypercomplex):
            return Constant(other)
        if isinstance(other, numbers.Real):
            return Constant(Hypercomplex.real(self.scale, other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else Sum(self, other)

    def __radd__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else Sum(other, self)

    def __neg__(self):
        return Scaled(-1.0, self)

    def __sub__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else Sum(self, Scaled(-1.0, other))

    def __rsub__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else Sum(other, Scaled(-1.0, self))

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return Scaled(other, self)
        other = self._lift(other)
        return NotImplemented if other is None else Product(self, other)

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Scaled(other, self)
        other = self._lift(other)
        return NotImplemented if other is None else Product(other, self)

    def __str__(self):
        return self.name or self.describe()

    def describe(self):
        return type(self).__name__


class Coordinate(HFunction):
    """The projection w -> x_index (times the unity)."""

    def __init__(self, scale, index):
        super().__init__(scale)
        if index not in (1, 2, 3, 4):
            raise HypercomplexError(f"Coordinate index must be 1..4, got {index}.")
        self.index = index

    def _evaluate(self, env):
        return env.coordinate(self.index)

    def describe(self):
        return f"x{self.index}"


class Constant(HFunction):
    def __init__(self, value):
        super().__init__(value.scale)
        self.value = value

    def _evaluate(self, env):
        return self.value

    def describe(self):
        return f"({self.value})"


class Sum(HFunction):
    def __init__(self, left, right):
        if left.scale != right.scale:
            raise ScaleMismatchError(left.t, right.t)
        super().__init__(left.scale)
        self.left = left
        self.right = right
        self.supports_jets = left.supports_jets and right.supports_jets

    def _evaluate(self, env):
        return self.left._evaluate(env) + self.right._evaluate(env)

    def describe(self):
        return f"{self.left} + {self.right}"


class Product(HFunction):
    """Pointwise ._t product, the left factor on the left."""

    def __init__(self, left, right):
        if left.scale != right.scale:
            raise ScaleMismatchError(left.t, right.t)
        super().__init__(left.scale)
        self.left = left
        self.right = right
        self.supports_jets = left.supports_jets and right.supports_jets

    def _evaluate(self, env):
        return self.left._evaluate(env) * self.right._evaluate(env)

    def describe(self):
        return f"({self.left})({self.right})"


class Scaled(HFunction):
    def __init__(self, factor, inner):
        super().__init__(inner.scale)
        self.factor = float(factor)
        self.inner = inner
        self.supports_jets = inner.supports_jets

    def _evaluate(self, env):
        return self.factor * self.inner._evaluate(env)

    def describe(self):
        return f"{self.factor:g} ({self.inner})"


class PointFunction(HFunction):
    """
    Wrap a Python callable ``fn(point) -> Hypercomplex``.

    Such functions cannot be expanded into jets; derivatives of them are taken
    by central differences.
    """

    supports_jets = False

    def __init__(self, scale, fn, name=None):
        super().__init__(scale)
        self.fn = fn
        self.name = name or getattr(fn, "__name__", None)

    def _evaluate(self, env):
        if isinstance(env, _JetEnv):
            raise EvaluationError(f"{self} cannot be expanded into a jet.")
        value = self.fn(env.point)
        if not isinstance(value, Hypercomplex):
            raise EvaluationError(f"{self} returned {value!r}, not a Hypercomplex.")
        if value.scale != self.scale:
            raise ScaleMismatchError(self.t, value.t)
        return value


def _parse_exponents(raw):
    if not isinstance(raw, (list, tuple)) or len(raw) != 4:
        raise ParseError(f"Exponent '{raw}' must be a list of four integers.")
    exponents = []
    for value in raw:
        if isinstance(value, bool) or not isinstance(value, numbers.Integral):
            if isinstance(value, float) and value.is_integer():
                value = int(value)
            else:
                raise ParseError(
                    f"Exponent '{raw}' is not a list of nonnegative integers; "
                    "only polynomials are accepted."
                )
        if value < 0:
            raise ParseError(
                f"Negative exponent in '{raw}'; only polynomials are accepted."
            )
        exponents.append(int(value))
    return tuple(exponents)


def _parse_coefficient(raw):
    try:
        coef = [float(value) for value in raw]
    except (TypeError, ValueError) as error:
        raise ParseError(f"Coefficient '{raw}' must be four real numbers.") from error
    if len(coef) != 4 or not all(math.isfinite(c) for c in coef):
        raise ParseError(f"Coefficient '{raw}' must be four finite real numbers.")
    return tuple(coef)


class Polynomial(HFunction):
    """
    A polynomial sum of x1^e1 x2^e2 x3^e3 x4^e4 (c1 + c2 i + c3 j_t + c4 k_t).

    The coefficient multiplies the real monomial from the right, which only
    matters once the polynomial is multiplied with other functions.

    Parameters
    ----------
    scale : Scale or float
    terms : sequence of (exponents, coefficient)
        Exponents are four nonnegative integers, coefficients four reals.
    """

    def __init__(self, scale, terms):
        super().__init__(scale)
        self.terms = tuple(
            (_parse_exponents(exp), _parse_coefficient(coef)) for exp, coef in terms
        )

    @classmethod
    def from_dict(cls, spec):
        """Parse the JSON form {"t": real, "terms": [{"exp": .., "coef": ..}]}."""
        try:
            t = float(spec["t"])
            terms = [(term["exp"], term["coef"]) for term in spec["terms"]]
        except (KeyError, TypeError, ValueError) as error:
            raise ParseError(f"Malformed polynomial spec: {error}.") from error
        if not math.isfinite(t):
            raise ParseError(f"Polynomial scale must be finite, got {spec['t']}.")
        return cls(t, terms)

    def to_dict(self):
        return {
            "t": self.t,
            "terms": [
                {"exp": list(exp), "coef": list(coef)} for exp, coef in self.terms
            ],
        }

    @property
    def degree(self):
        return max((sum(exp) for exp, _ in self.terms), default=0)

    def _evaluate(self, env):
        total = None
        for exponents, coef in self.terms:
            monomial = env.unity()
            for index, power in enumerate(exponents, start=1):
                for _ in range(power):
                    monomial = monomial * env.coordinate(index)
            term = monomial * Hypercomplex(self.scale, *coef)
            total = term if total is None else total + term
        return (0.0 * env.unity()) if total is None else total

    def describe(self):
        return f"polynomial of degree {self.degree} with {len(self.terms)} terms"
