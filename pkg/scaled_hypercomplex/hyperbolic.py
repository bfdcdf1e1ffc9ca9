"""
The hyperbolic subring D_t = {x + u j_t} of H_t and its polar decomposition.

For t < 0 the unit set is a circle, for t > 0 a hyperbola and for t = 0 the
pair of lines x = +-1:

    e^{j_t theta} = cos(rho theta) + j_t sin(rho theta)/rho      (t < 0)
                  = cosh(rho theta) + j_t sinh(rho theta)/rho    (t > 0)
                  = +-1 + u j_0                                  (t = 0)

with rho = sqrt(|t|).
"""

import logging
import math
from dataclasses import dataclass

from .algebra import Hypercomplex, Scale, seminorm, singular_tolerance
from .exceptions import HypercomplexError, NoBranchError, NullConeError

debug_logger = logging.getLogger("scaled_hypercomplex.hyperbolic")

UNIT_TOL = 1e-9


@dataclass(frozen=True)
class HyperbolicNumber:
    """The element x + u j_t of D_t."""

    scale: Scale
    x: float
    u: float

    def __post_init__(self):
        object.__setattr__(self, "scale", Scale.coerce(self.scale))
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "u", float(self.u))
        if not (math.isfinite(self.x) and math.isfinite(self.u)):
            raise HypercomplexError(
                f"Non-finite hyperbolic number ({self.x}, {self.u})."
            )

    @property
    def t(self):
        return self.scale.t

    @classmethod
    def from_hypercomplex(cls, h):
        if h.x2 or h.x4:
            raise HypercomplexError(f"{h} does not lie in the hyperbolic subring.")
        return cls(h.scale, h.x1, h.x3)

    @classmethod
    def from_dict(cls, data):
        return cls(data["t"], data["x"], data["u"])

    def to_dict(self):
        return {"t": self.t, "x": self.x, "u": self.u}

    def __mul__(self, other):
        return HyperbolicNumber.from_hypercomplex(embed(self) * embed(other))


def embed(d):
    """The inclusion D_t -> H_t, x + u j_t -> (x, 0, u, 0)."""
    return Hypercomplex(d.scale, d.x, 0.0, d.u, 0.0)


def exp_j0(sign, u):
    """The degenerate exponential +-1 + u j_0 of the scale t = 0."""
    if sign not in (1, -1):
        raise HypercomplexError(f"sign must be +1 or -1, got {sign}.")
    return HyperbolicNumber(0.0, float(sign), u)


def exp_j(t, theta):
    """
    Return e^{j_t theta}, an element of semi-norm one.

    At t = 0 the exponential does not depend on an angle; ``theta`` is then
    used as the j_0 coefficient of exp_j0(+1, theta) so that every scale
    shares :func:`reconstruct`.
    """
    scale = Scale.coerce(t)
    if scale.is_zero:
        return exp_j0(1, theta)
    rho = scale.rho
    if scale.t < 0:
        x, u = math.cos(rho * theta), math.sin(rho * theta) / rho
        return HyperbolicNumber(scale, x, u)
    try:
        x, u = math.cosh(rho * theta), math.sinh(rho * theta) / rho
    except OverflowError as error:
        raise HypercomplexError(
            f"e^(j_t theta) overflows for theta={theta} at t={scale}."
        ) from error
    return HyperbolicNumber(scale, x, u)


def is_unit(d, tol=UNIT_TOL):
    """Check membership in the unit set T_t, |seminorm - 1| <= tol."""
    return abs(seminorm(embed(d)) - 1.0) <= tol


@dataclass(frozen=True)
class PolarForm:
    """
    Polar data of a hyperbolic number, d = sign * r * e^{j_t theta}.

    ``arg`` is the Euclidean argument of the pair (x, u) in [0, 2 pi), which
    reconstructs d only for t = -1 and is reported for comparison.
    """

    r: float
    theta: float
    sign: int
    residual: float
    arg: float

    def to_dict(self):
        return {
            "r": self.r,
            "theta": self.theta,
            "sign": self.sign,
            "residual": self.residual,
            "arg": self.arg,
        }


def reconstruct(polar, t):
    """Return sign * r * e^{j_t theta} as a hyperbolic number."""
    unit = exp_j(t, polar.theta)
    factor = polar.sign * polar.r
    return HyperbolicNumber(unit.scale, factor * unit.x, factor * unit.u)


def _relative_residual(d, rebuilt):
    scale = max(abs(d.x), abs(d.u), 1e-300)
    return max(abs(d.x - rebuilt.x), abs(d.u - rebuilt.u)) / scale


def _reduce(angle, period):
    reduced = angle % period
    # tiny negative angles round up to the period
    return 0.0 if reduced >= period else reduced


def polar_decompose(d, rtol=None):
    """
    Decompose d = sign * ||d||_t * e^{j_t theta}.

    Parameters
    ----------
    d : HyperbolicNumber
    rtol : float, optional
        Relative null-cone threshold, defaults to the singularity threshold of
        the algebra module.

    Returns
    -------
    PolarForm

    Raises
    ------
    NullConeError
        If the semi-norm of d vanishes.
    NoBranchError
        For t > 0 and |x| < sqrt(t)|u|, where no cosh-leading form exists.
    """
    scale = d.scale
    h = embed(d)
    kwargs = {} if rtol is None else {"rtol": rtol}
    det = d.x ** 2 - scale.t * d.u ** 2
    if abs(det) <= singular_tolerance(h, **kwargs):
        raise NullConeError(f"{h} lies on the null cone of H_{scale}.")
    r = math.sqrt(abs(det))
    arg = _reduce(math.atan2(d.u, d.x), 2 * math.pi)

    if scale.t < 0:
        rho = scale.rho
        theta = _reduce(math.atan2(d.u * rho, d.x) / rho, 2 * math.pi / rho)
        sign = 1
    elif scale.t > 0:
        rho = scale.rho
        if abs(d.x) < rho * abs(d.u):
            gap = rho * abs(d.u) - abs(d.x)
            debug_logger.warning(f"No polar branch for ({d.x}, {d.u}) at t={scale}.")
            raise NoBranchError(
                f"|x| < sqrt(t)|u| for ({d.x}, {d.u}) at t={scale}: no polar branch.",
                residual=gap,
            )
        sign = 1 if d.x > 0 else -1
        theta = math.atanh(rho * d.u / d.x) / rho
    else:
        sign = 1 if d.x > 0 else -1
        theta = d.u / d.x

    polar = PolarForm(r, theta, sign, 0.0, arg)
    residual = _relative_residual(d, reconstruct(polar, scale))
    return PolarForm(r, theta, sign, residual, arg)
