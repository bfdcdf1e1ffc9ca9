"""
The t-scaled hypercomplex rings H_t.

An element is stored as four real coordinates in the basis {1, i, j_t, k_t}
together with its scale t. The complex-pair view (a, b), with a = x1 + x2 i
and b = x3 + x4 i, is computed on demand. The product is

    (a1, b1) ._t (a2, b2) = (a1 a2 + t b1 conj(b2), a1 b2 + b1 conj(a2)),

which gives the quaternions for t = -1 and the split-quaternions for t = 1.
"""

import enum
import logging
import math
import numbers
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy

from .exceptions import (
    HypercomplexError,
    PatternViolationError,
    ScaleConstraintError,
    ScaleMismatchError,
    SingularError,
)
from .sampling import make_rng

debug_logger = logging.getLogger("scaled_hypercomplex.algebra")

SINGULAR_RTOL = 1e-12  # relative threshold of the group/semigroup dichotomy
PATTERN_TOL = 1e-12  # tolerance when reading a matrix back into H_t
COUNTEREXAMPLE_SLACK = 1e-9

T = sympy.Symbol("t", real=True)


@dataclass(frozen=True)
class Scale:
    """
    The scale t of a ring H_t.

    Parameters
    ----------
    t : float
        Any finite real number.
    """

    t: float

    def __post_init__(self):
        t = float(self.t)
        if not math.isfinite(t):
            raise HypercomplexError(f"The scale must be finite, got {self.t!r}.")
        # -0.0 and 0.0 name the same ring
        object.__setattr__(self, "t", t + 0.0)

    @classmethod
    def coerce(cls, value):
        return value if isinstance(value, cls) else cls(value)

    @property
    def is_zero(self):
        return self.t == 0.0

    @property
    def sgn(self):
        """Sign of t, only defined for t != 0."""  # noqa D401
        if self.is_zero:
            raise ScaleConstraintError("sgn(t) is undefined for t = 0.")
        return 1 if self.t > 0 else -1

    @property
    def rho(self):
        """The square root of |t|."""  # noqa D401
        return math.sqrt(abs(self.t))

    @property
    def s_over_rho(self):
        """The factor sgn(t)/sqrt(|t|) of the scaled operators, t != 0."""  # noqa D401
        return self.sgn / self.rho

    def __str__(self):
        return format(self.t, "g")


def hmul(x, y, t):
    """
    Multiply coordinate arrays of shape (..., 4) in H_t.

    This is the complex-pair product written out in real coordinates, so it
    broadcasts over leading axes and is shared by scalars and jets.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x1, x2, x3, x4 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    y1, y2, y3, y4 = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    return np.stack(
        [
            x1 * y1 - x2 * y2 + t * (x3 * y3 + x4 * y4),
            x1 * y2 + x2 * y1 + t * (x4 * y3 - x3 * y4),
            x1 * y3 - x2 * y4 + x3 * y1 + x4 * y2,
            x1 * y4 + x2 * y3 + x4 * y1 - x3 * y2,
        ],
        axis=-1,
    )


def _pair_product(a1, b1, a2, b2, t, conjugate):
    return a1 * a2 + t * b1 * conjugate(b2), a1 * b2 + b1 * conjugate(a2)


@dataclass(frozen=True)
class Hypercomplex:
    """
    An element x1 + x2 i + x3 j_t + x4 k_t of H_t.

    Instances are immutable. Binary operations require bitwise equal scales;
    there is no implicit coercion between rings. Real numbers are accepted as
    the second operand of ``*`` and ``+`` and act through the unity.

    Parameters
    ----------
    scale : Scale or float
        The scale t of the ring.
    x1, x2, x3, x4 : float
        Coordinates in the basis {1, i, j_t, k_t}.
    """

    scale: Scale
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0
    x4: float = 0.0

    # numpy scalars defer to the reflected operators below
    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "scale", Scale.coerce(self.scale))
        for name in ("x1", "x2", "x3", "x4"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise HypercomplexError(f"Coordinate {name} is not finite: {value}.")
            object.__setattr__(self, name, value)

    @classmethod
    def from_pair(cls, t, a, b):
        """Build an element from its complex-pair view (a, b)."""
        a = complex(a)
        b = complex(b)
        return cls(t, a.real, a.imag, b.real, b.imag)

    @classmethod
    def real(cls, t, r):
        return cls(t, r)

    @classmethod
    def unity(cls, t):
        return cls(t, 1.0)

    @classmethod
    def zero(cls, t):
        return cls(t)

    @classmethod
    def from_dict(cls, data):
        return cls(data["t"], *data["x"])

    def to_dict(self):
        return {"t": self.t, "x": list(self.coords)}

    @property
    def t(self):
        return self.scale.t

    @property
    def coords(self):
        return (self.x1, self.x2, self.x3, self.x4)

    @property
    def a(self):
        return complex(self.x1, self.x2)

    @property
    def b(self):
        return complex(self.x3, self.x4)

    def is_zero(self):
        return not any(self.coords)

    def _check_scale(self, other):
        if self.scale != other.scale:
            raise ScaleMismatchError(self.t, other.t)

    def __add__(self, other):
        if isinstance(other, Hypercomplex):
            self._check_scale(other)
            coords = (x + y for x, y in zip(self.coords, other.coords))
            return Hypercomplex(self.scale, *coords)
        if isinstance(other, numbers.Real):
            return Hypercomplex(self.scale, self.x1 + other, self.x2, self.x3, self.x4)
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, numbers.Real):
            return self + other
        return NotImplemented

    def __neg__(self):
        return Hypercomplex(self.scale, *(-x for x in self.coords))

    def __sub__(self, other):
        if isinstance(other, (Hypercomplex, numbers.Real)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Real):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Hypercomplex):
            self._check_scale(other)
            product = hmul(self.coords, other.coords, self.t)
            return Hypercomplex(self.scale, *product.tolist())
        if isinstance(other, numbers.Real):
            return Hypercomplex(self.scale, *(other * x for x in self.coords))
        return NotImplemented

    def __rmul__(self, other):
        # reals are central, r h = (r, 0) ._t h
        if isinstance(other, numbers.Real):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return Hypercomplex(self.scale, *(x / other for x in self.coords))
        return NotImplemented

    def isclose(self, other, tol=1e-12):
        """Componentwise comparison within an absolute tolerance."""
        self._check_scale(other)
        return max_abs(self - other) <= tol

    def __str__(self):
        t = format(self.t, "g")
        x1, x2, x3, x4 = (format(x, "g") for x in self.coords)
        return f"{x1} + {x2} i + {x3} j_{t} + {x4} k_{t}"


def max_abs(h):
    """Largest absolute coordinate, the residual norm of verdicts."""
    return max(abs(x) for x in h.coords)


class Basis(enum.IntEnum):
    ONE = 0
    I = 1  # noqa E741
    J = 2
    K = 3


def basis_unit(t, which):
    """
    Return one of the four R-basis elements 1, i, j_t, k_t of H_t.

    Parameters
    ----------
    t : float or Scale
    which : Basis, int or str
        A Basis member, its index 0..3 or one of the names "1", "i", "j", "k".
    """
    if isinstance(which, str):
        names = {"1": Basis.ONE, "i": Basis.I, "j": Basis.J, "k": Basis.K}
        try:
            which = names[which.lower()]
        except KeyError as error:
            raise HypercomplexError(f"Unknown basis element '{which}'.") from error
    coords = [0.0] * 4
    coords[Basis(which)] = 1.0
    return Hypercomplex(t, *coords)


def mul(h1, h2):
    """The ._t product; noncommutative in general."""
    return h1 * h2


def add(h1, h2):
    return h1 + h2


def sub(h1, h2):
    return h1 - h2


def neg(h):
    return -h


def scalar_mul(r, h):
    return float(r) * h


def power(h, n):
    """Return the n-th power of h, the unity for n = 0."""
    if n < 0:
        raise HypercomplexError(f"Negative powers are not supported, got {n}.")
    result = Hypercomplex.unity(h.scale)
    for _ in range(n):
        result = result * h
    return result


def conj(h):
    """Hypercomplex conjugate (a, b)^dagger = (conj(a), -b)."""
    return Hypercomplex(h.scale, h.x1, -h.x2, -h.x3, -h.x4)


def det(h):
    """Determinant |a|^2 - t|b|^2 of the realization."""
    return h.x1 ** 2 + h.x2 ** 2 - h.t * (h.x3 ** 2 + h.x4 ** 2)


def singular_tolerance(h, rtol=SINGULAR_RTOL):
    """Threshold on |det| below which h is treated as singular."""
    return rtol * (abs(h.a) ** 2 + abs(h.t) * abs(h.b) ** 2)


def inverse(h, rtol=SINGULAR_RTOL):
    """
    Invert an element of the group part.

    Parameters
    ----------
    h : Hypercomplex
    rtol : float
        Relative singularity threshold, see :func:`singular_tolerance`.

    Returns
    -------
    Hypercomplex
        (conj(a)/det, -b/det).

    Raises
    ------
    SingularError
        If |det(h)| is within the singularity threshold.
    """
    m = max_abs(h)
    # rescale so that det does not underflow for tiny elements
    unit = h if m == 0.0 else Hypercomplex(h.scale, *(x / m for x in h.coords))
    d = det(unit)
    if abs(d) <= singular_tolerance(unit, rtol):
        raise SingularError(
            f"{h} is not invertible in H_{h.scale} (det={det(h):g}).", det=det(h)
        )
    return Hypercomplex(h.scale, *(x / d / m for x in conj(unit).coords))


class InvertibilityClass(enum.Enum):
    GROUP_PART = "GroupPart"
    SEMIGROUP_PART = "SemigroupPart"


@dataclass(frozen=True)
class Classification:
    part: InvertibilityClass
    zero: bool = False


def classify(h, rtol=SINGULAR_RTOL):
    """
    Place h in the group part or the semigroup part of H_t.

    For t < 0 the determinant |a|^2 + |t||b|^2 vanishes only at zero, so every
    nonzero element is in the group part.
    """
    if h.is_zero():
        return Classification(InvertibilityClass.SEMIGROUP_PART, zero=True)
    if h.t < 0:
        return Classification(InvertibilityClass.GROUP_PART)
    unit = Hypercomplex(h.scale, *(x / max_abs(h) for x in h.coords))
    if abs(det(unit)) > singular_tolerance(unit, rtol):
        return Classification(InvertibilityClass.GROUP_PART)
    return Classification(InvertibilityClass.SEMIGROUP_PART)


def trace(h):
    """The functional tau((a, b)) = Re(a), half the trace of the realization."""
    return h.x1


def bilinear(h1, h2):
    """The symmetric bilinear form <h1, h2>_t = tau(h1 ._t h2^dagger)."""
    return trace(h1 * conj(h2))


def seminorm(h):
    """The semi-norm sqrt(|<h, h>_t|); a norm only for t < 0."""
    return math.sqrt(abs(det(h)))


@dataclass(frozen=True)
class Realization:
    """A 2x2 complex matrix ((m11, m12), (m21, m22))."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @classmethod
    def from_matrix(cls, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (2, 2):
            raise PatternViolationError(
                f"Expected a 2x2 matrix, got shape {matrix.shape}."
            )
        return cls(*(complex(z) for z in matrix.ravel()))

    @property
    def matrix(self):
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    def __matmul__(self, other):
        return Realization.from_matrix(self.matrix @ other.matrix)

    def __add__(self, other):
        return Realization.from_matrix(self.matrix + other.matrix)

    def in_pattern(self, t, tol=PATTERN_TOL):
        """Check m22 = conj(m11) and m12 = t conj(m21) within ``tol``."""
        t = Scale.coerce(t).t
        diag = abs(self.m22 - self.m11.conjugate()) <= tol * (1 + abs(self.m11))
        off = abs(self.m12 - t * self.m21.conjugate()) <= tol * (
            1 + abs(self.m12) + abs(t) * abs(self.m21)
        )
        return diag and off

    def to_list(self):
        """Row-major list of [re, im] pairs."""
        return [[z.real, z.imag] for z in (self.m11, self.m12, self.m21, self.m22)]


def realize(h):
    """The realization pi_t((a, b)) = ((a, t b), (conj(b), conj(a)))."""
    a, b = h.a, h.b
    return Realization(a, h.t * b, b.conjugate(), a.conjugate())


def realization_matrix(h):
    return realize(h).matrix


def unrealize(m, t, tol=PATTERN_TOL):
    """
    Read a matrix of the realization pattern back into H_t.

    The second component is always recovered from m21; at t = 0 the entry
    m12 vanishes identically and carries no information.

    Raises
    ------
    PatternViolationError
        If the matrix is not of the form ((a, t b), (conj(b), conj(a))).
    """
    scale = Scale.coerce(t)
    if not isinstance(m, Realization):
        m = Realization.from_matrix(m)
    if not m.in_pattern(scale, tol):
        raise PatternViolationError(
            f"{m.to_list()} is not a realization for t={scale}."
        )
    if scale.is_zero:
        debug_logger.debug("t = 0: reading b from m21 alone.")
    return Hypercomplex.from_pair(scale, m.m11, m.m21.conjugate())


@lru_cache(maxsize=None)
def symbolic_mul_table():
    """
    The products of the basis {1, i, j_t, k_t} as polynomials in t.

    Returns
    -------
    tuple
        ``table[r][c]`` is the coordinate 4-tuple of sympy expressions of the
        product (basis r) ._t (basis c).
    """
    pairs = [(1, 0), (sympy.I, 0), (0, 1), (0, sympy.I)]
    table = []
    for a1, b1 in pairs:
        row = []
        for a2, b2 in pairs:
            a, b = _pair_product(a1, b1, a2, b2, T, sympy.conjugate)
            a, b = sympy.expand(a), sympy.expand(b)
            parts = (sympy.re(a), sympy.im(a), sympy.re(b), sympy.im(b))
            row.append(tuple(sympy.simplify(c) for c in parts))
        table.append(tuple(row))
    return tuple(table)


def exact_mul_table(t):
    """The basis products at a given scale as exact sympy rationals."""
    value = sympy.Rational(Scale.coerce(t).t)
    return tuple(
        tuple(tuple(sympy.Rational(c.subs(T, value)) for c in entry) for entry in row)
        for row in symbolic_mul_table()
    )


def mul_table(t):
    """
    All 16 products of basis elements of H_t.

    Entries have coefficients in {0, 1, -1, t, -t}, evaluated exactly from the
    symbolic table, so the floats returned carry no rounding error.
    """
    scale = Scale.coerce(t)
    return tuple(
        tuple(Hypercomplex(scale, *(float(c) for c in entry)) for entry in row)
        for row in exact_mul_table(scale)
    )


def cauchy_schwarz_holds(h1, h2, slack=COUNTEREXAMPLE_SLACK):
    """Standard form |<h1,h2>|^2 <= <h1,h1><h2,h2>, valid for t < 0."""
    lhs = bilinear(h1, h2) ** 2
    rhs = bilinear(h1, h1) * bilinear(h2, h2)
    return lhs <= rhs + slack * (1 + abs(rhs))


@dataclass(frozen=True)
class Counterexample:
    h1: Hypercomplex
    h2: Hypercomplex
    lhs: float
    rhs: float


def _random_element(scale, rng):
    magnitude = 10.0 ** rng.uniform(-2, 2)
    return Hypercomplex(scale, *(magnitude * rng.standard_normal(4)).tolist())


def null_element(t, rng):
    """
    Draw a nonzero element with det = 0, or None when t < 0.

    For t > 0 the pair satisfies |a| = sqrt(t)|b|, for t = 0 it has a = 0.
    """
    scale = Scale.coerce(t)
    if scale.t < 0:
        return None
    b = complex(*rng.standard_normal(2))
    if scale.is_zero:
        return Hypercomplex.from_pair(scale, 0, b)
    phase = rng.uniform(0, 2 * math.pi)
    a = scale.rho * abs(b) * complex(math.cos(phase), math.sin(phase))
    return Hypercomplex.from_pair(scale, a, b)


def _candidate_pairs(scale, samples, seed):
    rng = make_rng(seed)
    for index in range(samples):
        h1 = _random_element(scale, rng)
        h2 = _random_element(scale, rng)
        null = null_element(scale, rng)
        if null is not None and index % 3 == 1:
            h2 = null
        elif null is not None and index % 3 == 2:
            h1 = null
        yield h1, h2


def find_printed_cauchy_schwarz_violation(t, samples=10_000, seed=0):
    """
    Search for h1, h2 with |<h1,h2>|^2 > |<h1,h1>|^2 |<h2,h2>|^2.

    This is the squared right-hand side form, which is not homogeneous and
    fails on small or null vectors. Returns a Counterexample or None.
    """
    scale = Scale.coerce(t)
    for h1, h2 in _candidate_pairs(scale, samples, seed):
        lhs = bilinear(h1, h2) ** 2
        rhs = bilinear(h1, h1) ** 2 * bilinear(h2, h2) ** 2
        if lhs > rhs + COUNTEREXAMPLE_SLACK * (1 + abs(rhs)):
            debug_logger.debug(f"Squared-form inequality fails for {h1} and {h2}.")
            return Counterexample(h1, h2, lhs, rhs)
    return None


def find_triangle_violation(t, samples=10_000, seed=0):
    """Search for h1, h2 with ||h1 + h2|| > ||h1|| + ||h2||, or return None."""
    scale = Scale.coerce(t)
    for h1, h2 in _candidate_pairs(scale, samples, seed):
        lhs = seminorm(h1 + h2)
        rhs = seminorm(h1) + seminorm(h2)
        if lhs > rhs + COUNTEREXAMPLE_SLACK * (1 + rhs):
            debug_logger.debug(f"Triangle inequality fails for {h1} and {h2}.")
            return Counterexample(h1, h2, lhs, rhs)
    return None
