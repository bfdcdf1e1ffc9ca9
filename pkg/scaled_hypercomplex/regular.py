"""
Regular polynomials of H_t and the expansion of left regular functions.

The building blocks are

    eta_2 = x2 - x1 i
    eta_3 = x3 + s x1 j_t,  eta_4 = x4 + s x1 k_t     (t != 0, s = sgn(t)/sqrt|t|)
    eta_3 = x3 - x1 j_0,    eta_4 = x4 - x1 k_0       (t == 0)

Their symmetrized products eta^n are two-sided regular and harmonic, and a
left regular polynomial f equals f(0) + sum_n eta^n f_n with the mixed
partials f_n = d^n f(0) / dx2^n1 dx3^n2 dx4^n3 multiplying from the right.
"""

import itertools
import logging
import math
import os
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson
from sympy.utilities.iterables import multiset_permutations

from .algebra import Hypercomplex, Scale, basis_unit, max_abs, seminorm
from .calculus import (
    DEFAULT_SAMPLES,
    is_left_regular,
    partial,
    resolve_points,
)
from .exceptions import (
    ConfigError,
    DegreeTooLargeError,
    HypercomplexError,
    NotLeftRegularError,
    ParseError,
    ScaleMismatchError,
)
from .functions import Constant, Coordinate, HFunction
from .sampling import ORIGIN, Point4, make_rng

debug_logger = logging.getLogger("scaled_hypercomplex.regular")

MAX_DEGREE = 8
MAX_DEGREE_ENV = "SHX_MAX_DEGREE"
NAIVE_MAX_DEGREE = 6
DEFAULT_MAXDEG = 4

SIMPSON_PANELS = 64
SIMPSON_MAX_PANELS = 1024
SIMPSON_TOL = 1e-8

NORM_BOUND_SLACK = 1e-9


def max_degree():
    """The degree cap of symmetrized products, overridable via SHX_MAX_DEGREE."""
    raw = os.environ.get(MAX_DEGREE_ENV)
    if raw is None:
        return MAX_DEGREE
    try:
        value = int(raw)
    except ValueError as error:
        raise ConfigError(f"{MAX_DEGREE_ENV}='{raw}' is not an integer.") from error
    if value < 1:
        raise ConfigError(f"{MAX_DEGREE_ENV} must be positive, got {value}.")
    return value


def _check_degree(degree, limit=None):
    limit = max_degree() if limit is None else limit
    if degree > limit:
        raise DegreeTooLargeError(degree, limit)


class MultiIndex(NamedTuple):
    """The exponents (n1, n2, n3) of eta_2, eta_3 and eta_4."""

    n1: int
    n2: int
    n3: int

    @classmethod
    def coerce(cls, values):
        if isinstance(values, cls):
            return values
        values = tuple(values)
        if len(values) != 3 or any(
            isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0
            for n in values
        ):
            raise ParseError(f"'{values}' is not a multi-index of three naturals.")
        return cls(*(int(n) for n in values))

    @property
    def total(self):
        return self.n1 + self.n2 + self.n3

    @property
    def factorial(self):
        return math.prod(math.factorial(n) for n in self)

    @property
    def exponent(self):
        """The exponent of the mixed partial in (x1, x2, x3, x4)."""  # noqa D401
        return (0, self.n1, self.n2, self.n3)

    @classmethod
    def up_to(cls, maxdeg):
        """All multi-indices of total degree <= maxdeg, graded lexicographic."""
        for degree in range(maxdeg + 1):
            block = (
                cls(*n)
                for n in itertools.product(range(degree + 1), repeat=3)
                if sum(n) == degree
            )
            yield from sorted(block, reverse=True)


ZERO_INDEX = MultiIndex(0, 0, 0)


def _check_index(l):
    if l not in (2, 3, 4):
        raise HypercomplexError(f"eta and zeta are indexed by 2, 3 or 4, got {l}.")


def eta_function(l, t):
    """
    The regular polynomial eta_l of H_t as an expression tree.

    Parameters
    ----------
    l : int
        2, 3 or 4.
    t : float or Scale

    Returns
    -------
    HFunction
    """
    _check_index(l)
    scale = Scale.coerce(t)
    unit = basis_unit(scale, l - 1)
    if l == 2:
        factor = -1.0
    elif scale.is_zero:
        factor = -1.0
    else:
        factor = scale.s_over_rho
    f = Coordinate(scale, l) + Coordinate(scale, 1) * Constant(factor * unit)
    f.name = f"eta{l}"
    return f


def zeta_function(l, t):
    """The polynomial zeta_l = x_l - x1 e_l with e_2 = i, e_3 = j_t, e_4 = k_t."""
    _check_index(l)
    scale = Scale.coerce(t)
    f = Coordinate(scale, l) - Coordinate(scale, 1) * Constant(basis_unit(scale, l - 1))
    f.name = f"zeta{l}"
    return f


def eta(l, t, point):
    return eta_function(l, t)(point)


def zeta(l, t, point):
    return zeta_function(l, t)(point)


def _common_scale(elements):
    scales = {e.scale for e in elements}
    if len(scales) > 1:
        t1, t2 = sorted(s.t for s in scales)[:2]
        raise ScaleMismatchError(t1, t2)


def _ordered_product(word):
    result = word[0]
    for factor in word[1:]:
        result = result * factor
    return result


def sym_power_product(factors, unity=None):
    """
    Symmetrized product of elements with multiplicities.

    Only the N!/(n_1! ... n_m!) distinct arrangements of the multiset are
    multiplied out, each weighted by n_1! ... n_m!/N!, which equals the
    average over all N! orderings.

    Parameters
    ----------
    factors : sequence of (element, int)
        Hypercomplex numbers (or jets) with their multiplicities.
    unity : optional
        Returned for a total multiplicity of zero. Defaults to the unity of
        the scale of the first factor.

    Returns
    -------
    Hypercomplex or Jet
    """
    factors = [(h, int(n)) for h, n in factors]
    if any(n < 0 for _, n in factors):
        raise HypercomplexError("Multiplicities must be nonnegative.")
    _common_scale([h for h, _ in factors])
    total = sum(n for _, n in factors)
    _check_degree(total)
    if total == 0:
        if unity is not None:
            return unity
        if not factors:
            raise HypercomplexError("The empty symmetrized product needs a unity.")
        return Hypercomplex.unity(factors[0][0].scale)
    labels = [position for position, (_, n) in enumerate(factors) for _ in range(n)]
    elements = [h for h, _ in factors]
    result, words = None, 0
    for word in multiset_permutations(labels):
        term = _ordered_product([elements[position] for position in word])
        result = term if result is None else result + term
        words += 1
    weight = math.prod(math.factorial(n) for _, n in factors) / math.factorial(total)
    debug_logger.debug(f"Symmetrized product of degree {total} over {words} words.")
    return weight * result


def sym_product(elements):
    """
    Average of the ordered products over all orderings of ``elements``.

    Equal inputs are grouped and handed to :func:`sym_power_product`; groups
    are sorted by their coordinates, so the result does not depend on the
    order of ``elements`` at all.
    """
    elements = list(elements)
    if not elements:
        raise HypercomplexError("The symmetrized product needs at least one factor.")
    _common_scale(elements)
    _check_degree(len(elements))
    counts = {}
    for h in elements:
        counts[h] = counts.get(h, 0) + 1
    groups = sorted(counts.items(), key=lambda item: item[0].coords)
    return sym_power_product(groups)


def naive_sym_product(elements):
    """Reference symmetrized product summing all N! orderings, N <= 6."""
    elements = list(elements)
    if not elements:
        raise HypercomplexError("The symmetrized product needs at least one factor.")
    _check_degree(len(elements), NAIVE_MAX_DEGREE)
    _common_scale(elements)
    result = None
    for word in itertools.permutations(elements):
        term = _ordered_product(word)
        result = term if result is None else result + term
    return result / math.factorial(len(elements))


class EtaPower(HFunction):
    """The symmetrized monomial eta^n = (1/n!) eta_2^n1 x eta_3^n2 x eta_4^n3."""

    def __init__(self, n, t):
        super().__init__(t)
        self.n = MultiIndex.coerce(n)
        _check_degree(self.n.total)
        self.etas = [eta_function(l, self.scale) for l in (2, 3, 4)]
        self.name = "eta^{},{},{}".format(*self.n)

    def _evaluate(self, env):
        values = [f._evaluate(env) for f in self.etas]
        product = sym_power_product(zip(values, self.n), unity=env.unity())
        return (1.0 / self.n.factorial) * product


def eta_power(n, t):
    return EtaPower(n, t)


def eta_norm_bound(n, t, point):
    """
    Upper bound of the semi-norm of eta^n at ``point``.

    For t != 0 this is |x1 + x2 i|^n1 |x3^2 - sgn(t) x1^2|^(n2/2)
    |x4^2 - sgn(t) x1^2|^(n3/2), for t = 0 it is |x1 + x2 i|^n1 |x3|^n2 |x4|^n3.
    """
    n = MultiIndex.coerce(n)
    scale = Scale.coerce(t)
    x1, x2, x3, x4 = Point4.coerce(point)
    first = math.hypot(x1, x2) ** n.n1
    if scale.is_zero:
        return first * abs(x3) ** n.n2 * abs(x4) ** n.n3
    sgn = scale.sgn
    return (
        first
        * math.sqrt(abs(x3 ** 2 - sgn * x1 ** 2)) ** n.n2
        * math.sqrt(abs(x4 ** 2 - sgn * x1 ** 2)) ** n.n3
    )


def check_norm_bound(n, t, point, slack=NORM_BOUND_SLACK):
    """
    Compare the semi-norm of eta^n(point) with :func:`eta_norm_bound`.

    Returns
    -------
    tuple
        (semi-norm, bound, holds). Violations are logged, not raised.
    """
    value = seminorm(eta_power(n, t)(point))
    bound = eta_norm_bound(n, t, point)
    holds = value <= bound + slack
    if not holds:
        debug_logger.warning(
            f"Norm bound of eta^{tuple(n)} violated at {list(point)}, t={t}: "
            f"{value:.6g} > {bound:.6g}."
        )
    return value, bound, holds


def taylor_coefficients(f, maxdeg=DEFAULT_MAXDEG):
    """
    Mixed partials f_n = d^n f(0) in (x2, x3, x4) for all |n| <= maxdeg.

    Parameters
    ----------
    f : HFunction
    maxdeg : int

    Returns
    -------
    dict
        Maps every MultiIndex (graded lexicographic, including (0, 0, 0) for
        f(0)) to a Hypercomplex.
    """
    _check_degree(maxdeg)
    jet = f.jet(ORIGIN, maxdeg)
    return {n: jet.derivative(n.exponent) for n in MultiIndex.up_to(maxdeg)}


@dataclass(frozen=True)
class RegularSeries:
    """
    A finite series f(0) + sum_n eta^n f_n, coefficients on the right.

    Parameters
    ----------
    scale : Scale
    constant : Hypercomplex
    coefficients : dict
        Maps MultiIndex to Hypercomplex; absent indices are zero.
    """

    scale: Scale
    constant: Hypercomplex
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "scale", Scale.coerce(self.scale))
        if self.constant.scale != self.scale:
            raise ScaleMismatchError(self.scale.t, self.constant.t)
        coefficients = {}
        for n, coef in self.coefficients.items():
            if coef.scale != self.scale:
                raise ScaleMismatchError(self.scale.t, coef.t)
            coefficients[MultiIndex.coerce(n)] = coef
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def t(self):
        return self.scale.t

    @property
    def degree(self):
        return max((n.total for n in self.coefficients), default=0)

    def coefficient(self, n):
        n = MultiIndex.coerce(n)
        if n == ZERO_INDEX:
            return self.constant
        return self.coefficients.get(n, Hypercomplex.zero(self.scale))

    def _ordered(self):
        return sorted(
            self.coefficients.items(), key=lambda item: (item[0].total, _neg(item[0]))
        )

    def as_function(self):
        """The represented function as an expression tree."""
        f = Constant(self.constant)
        for n, coef in self._ordered():
            f = f + EtaPower(n, self.scale) * Constant(coef)
        f.name = f"series of degree {self.degree}"
        return f

    def evaluate(self, point):
        return self.as_function()(point)

    def to_dict(self):
        return {
            "t": self.t,
            "constant": list(self.constant.coords),
            "coefficients": [
                {"n": list(n), "coef": list(coef.coords)} for n, coef in self._ordered()
            ],
        }

    @classmethod
    def from_dict(cls, data):
        try:
            scale = Scale(data["t"])
            constant = Hypercomplex(scale, *data["constant"])
            coefficients = {
                MultiIndex.coerce(entry["n"]): Hypercomplex(scale, *entry["coef"])
                for entry in data.get("coefficients", [])
            }
        except (KeyError, TypeError, ValueError) as error:
            raise ParseError(f"Malformed series: {error}.") from error
        return cls(scale, constant, coefficients)


def _neg(n):
    return tuple(-k for k in n)


def random_series(t, maxdeg=3, rng=None):
    """A series with standard normal coefficients for every |n| <= maxdeg."""
    rng = make_rng(0) if rng is None else rng
    scale = Scale.coerce(t)

    def draw():
        return Hypercomplex(scale, *rng.standard_normal(4).tolist())

    constant = draw()
    coefficients = {n: draw() for n in MultiIndex.up_to(maxdeg) if n != ZERO_INDEX}
    return RegularSeries(scale, constant, coefficients)


def expand(
    f, maxdeg=DEFAULT_MAXDEG, samples=None, tol=None, count=DEFAULT_SAMPLES, seed=0
):
    """
    Expand a left regular function into its series around the origin.

    Parameters
    ----------
    f : HFunction
        Assumed real-analytic; polynomials of degree <= maxdeg are recovered
        exactly.
    maxdeg : int
        Highest total degree of the series.
    samples : Region or iterable of points, optional
        Where left regularity is checked and the residual measured.
    tol : float, optional
        Regularity tolerance, see :func:`is_left_regular`.
    count, seed : int
        Sampling parameters when ``samples`` is a Region.

    Returns
    -------
    tuple
        (RegularSeries, residual), the residual being the largest absolute
        coordinate of f(p) - series(p) over the sample points.

    Raises
    ------
    NotLeftRegularError
        If the regularity check fails.
    ParseError
        If there are no sample points.
    """
    _check_degree(maxdeg)
    points = resolve_points(samples, count, seed)
    if not points:
        raise ParseError("Expansion needs at least one sample point.")
    verdict = is_left_regular(f, points, tol)
    if not verdict.passed:
        raise NotLeftRegularError(verdict)
    coefficients = taylor_coefficients(f, maxdeg)
    constant = coefficients.pop(ZERO_INDEX)
    coefficients = {n: c for n, c in coefficients.items() if not c.is_zero()}
    series = RegularSeries(f.scale, constant, coefficients)
    g = series.as_function()
    residual = max(max_abs(f(p) - g(p)) for p in points)
    debug_logger.debug(
        f"Expanded {f} into {len(coefficients)} terms, residual {residual:.3g}."
    )
    return series, residual


def _simpson(f, index, point, panels):
    grid = np.linspace(0.0, 1.0, panels + 1)
    values = np.array([partial(f, index, point.scaled(s)).coords for s in grid])
    return simpson(values, x=grid, axis=0)


def remainder_integral(
    f, n, point, panels=SIMPSON_PANELS, max_panels=SIMPSON_MAX_PANELS, tol=SIMPSON_TOL
):
    """
    The remainder (R_n f)(w), the integral of df/dx_n(s w) over s in [0, 1].

    Composite Simpson quadrature starting at ``panels`` panels and doubling
    until two estimates differ by less than ``tol`` or ``max_panels`` is
    reached.
    """
    _check_index(n)
    point = Point4.coerce(point)
    estimate = _simpson(f, n, point, panels)
    while panels < max_panels:
        panels *= 2
        refined = _simpson(f, n, point, panels)
        change = float(np.max(np.abs(refined - estimate)))
        estimate = refined
        if change < tol:
            break
    else:
        debug_logger.warning(
            f"Remainder integral of {f} at {list(point)} stopped at {panels} panels."
        )
    return Hypercomplex(f.scale, *estimate.tolist())


def remainder_identity_residual(f, point):
    """Largest coordinate of f(w) - f(0) - sum_n eta_n(w) (R_n f)(w)."""
    point = Point4.coerce(point)
    difference = f(point) - f(ORIGIN)
    for n in (2, 3, 4):
        remainder = remainder_integral(f, n, point)
        difference = difference - eta(n, f.scale, point) * remainder
    return max_abs(difference)


_ETA_POWER = re.compile(r"^eta\^(\d+),(\d+),(\d+)$")


def builtin(name, t):
    """
    Look up a builtin function by name.

    Known names are eta2..eta4, zeta2..zeta4, eta^n1,n2,n3, x1..x4 and one.
    """
    scale = Scale.coerce(t)
    key = name.strip().lower()
    match = _ETA_POWER.match(key)
    if match:
        return EtaPower(tuple(int(k) for k in match.groups()), scale)
    if key in ("eta2", "eta3", "eta4"):
        return eta_function(int(key[-1]), scale)
    if key in ("zeta2", "zeta3", "zeta4"):
        return zeta_function(int(key[-1]), scale)
    if key in ("x1", "x2", "x3", "x4"):
        return Coordinate(scale, int(key[-1]))
    if key == "one":
        f = Constant(Hypercomplex.unity(scale))
        f.name = "one"
        return f
    raise ParseError(f"Unknown builtin function '{name}'.")
