"""
Differential operators on H_t-valued functions and regularity verdicts.

First-order operators are stored as four hypercomplex units c_l; applied
from the left they give sum_l c_l (df/dx_l), applied from the right
sum_l (df/dx_l) c_l. With s = sgn(t)/sqrt(|t|):

    D        1,  i,  j_t,    k_t
    Ddag     1, -i, -j_t,   -k_t
    Nabla    1,  i, -s j_t, -s k_t       (t != 0)
    NablaDag 1, -i,  s j_t,  s k_t       (t != 0)
    Nabla0   1,  i,  j_0,    k_0         (t == 0)
    Nabla0Dag 1, -i, -j_0,  -k_0         (t == 0)

Second-order operators are real weighted sums of pure second derivatives.
Derivatives are read off jets, so they are exact for polynomials.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Optional

from .algebra import Scale, basis_unit, max_abs
from .exceptions import EvaluationError, ScaleConstraintError
from .jets import unit_exponent
from .sampling import UNIT_BOX, Point4, Region

debug_logger = logging.getLogger("scaled_hypercomplex.calculus")

DEFAULT_TOL = 1e-9  # verdict tolerance for jet-differentiable functions
FD_TOL = 1e-6  # verdict tolerance for point-only functions
FD_STEP = 1e-5
FD_SECOND_STEP = 1e-4
DEFAULT_SAMPLES = 100

LEFT = "left"
RIGHT = "right"


class OperatorKind(enum.Enum):
    D = "D"
    DDAG = "Ddag"
    NABLA = "Nabla"
    NABLA_DAG = "NablaDag"
    NABLA0 = "Nabla0"
    NABLA0_DAG = "Nabla0Dag"
    LAPLACIAN = "Laplacian"
    LAPLACIAN0 = "Laplacian0"
    LAPLACIAN_D = "LaplacianD"

    @property
    def order(self):
        return 2 if self in _SECOND_ORDER else 1

    def dagger(self):
        return _DAGGERS.get(self, self)


_SECOND_ORDER = {
    OperatorKind.LAPLACIAN,
    OperatorKind.LAPLACIAN0,
    OperatorKind.LAPLACIAN_D,
}
_DAGGERS = {
    OperatorKind.D: OperatorKind.DDAG,
    OperatorKind.DDAG: OperatorKind.D,
    OperatorKind.NABLA: OperatorKind.NABLA_DAG,
    OperatorKind.NABLA_DAG: OperatorKind.NABLA,
    OperatorKind.NABLA0: OperatorKind.NABLA0_DAG,
    OperatorKind.NABLA0_DAG: OperatorKind.NABLA0,
}
_NONZERO_SCALE = {OperatorKind.NABLA, OperatorKind.NABLA_DAG}
_ZERO_SCALE = {OperatorKind.NABLA0, OperatorKind.NABLA0_DAG, OperatorKind.LAPLACIAN0}


@dataclass(frozen=True)
class Dilated:
    """The dilation D_{u3,u4} = d1 + i d2 + u3 j_0 d3 + u4 k_0 d4 of Nabla0."""

    u3: float
    u4: float
    adjoint: bool = False

    order = 1

    def __post_init__(self):
        if self.u3 == 0 or self.u4 == 0:
            raise ScaleConstraintError(
                f"Dilation factors must be nonzero, got u3={self.u3}, u4={self.u4}."
            )

    def dagger(self):
        return Dilated(self.u3, self.u4, not self.adjoint)

    @property
    def value(self):
        return f"Dilated({self.u3:g},{self.u4:g})" + ("dag" if self.adjoint else "")


def check_scale(op, scale):
    """Raise ScaleConstraintError if ``op`` is undefined at ``scale``."""
    scale = Scale.coerce(scale)
    if op in _NONZERO_SCALE and scale.is_zero:
        raise ScaleConstraintError(f"{op.value} requires t != 0.")
    if (op in _ZERO_SCALE or isinstance(op, Dilated)) and not scale.is_zero:
        raise ScaleConstraintError(f"{op.value} requires t = 0, got t={scale}.")


def first_order_units(op, scale):
    """The four units c_l of a first-order operator at ``scale``."""
    scale = Scale.coerce(scale)
    check_scale(op, scale)
    one, i, j, k = (basis_unit(scale, which) for which in range(4))
    if isinstance(op, Dilated):
        sign = -1.0 if op.adjoint else 1.0
        return (one, sign * i, (sign * op.u3) * j, (sign * op.u4) * k)
    if op in (OperatorKind.D, OperatorKind.NABLA0):
        return (one, i, j, k)
    if op in (OperatorKind.DDAG, OperatorKind.NABLA0_DAG):
        return (one, -i, -j, -k)
    if op is OperatorKind.NABLA:
        s = scale.s_over_rho
        return (one, i, -s * j, -s * k)
    if op is OperatorKind.NABLA_DAG:
        s = scale.s_over_rho
        return (one, -i, s * j, s * k)
    raise ScaleConstraintError(f"{op.value} is not a first-order operator.")


def second_order_weights(op, scale):
    """The weights w_l of a Laplacian-type operator sum_l w_l d^2/dx_l^2."""
    scale = Scale.coerce(scale)
    check_scale(op, scale)
    if op is OperatorKind.LAPLACIAN:
        if scale.is_zero:
            return (1.0, 1.0, 0.0, 0.0)
        return (1.0, 1.0, -scale.sgn, -scale.sgn)
    if op is OperatorKind.LAPLACIAN0:
        return (1.0, 1.0, 0.0, 0.0)
    if op is OperatorKind.LAPLACIAN_D:
        return (1.0, 1.0, -scale.t, -scale.t)
    raise ScaleConstraintError(f"{op.value} is not a second-order operator.")


def apply_to_jet(op, jet, side=LEFT):
    """
    Apply an operator to a jet, lowering its order by the operator's order.

    Parameters
    ----------
    op : OperatorKind or Dilated
    jet : Jet
    side : str
        "left" to multiply the units from the left, "right" from the right.
    """
    if op.order == 2:
        weights = second_order_weights(op, jet.scale)
        terms = [
            w * jet.differentiate(l).differentiate(l)
            for l, w in enumerate(weights, start=1)
            if w
        ]
    else:
        units = first_order_units(op, jet.scale)
        if side == LEFT:
            terms = [c * jet.differentiate(l) for l, c in enumerate(units, start=1)]
        else:
            terms = [jet.differentiate(l) * c for l, c in enumerate(units, start=1)]
    result = terms[0]
    for term in terms[1:]:
        result = result + term
    return result


def finite_difference_partial(f, index, point, step=FD_STEP):
    """Central difference (f(p + h e_l) - f(p - h e_l)) / 2h."""
    point = Point4.coerce(point)
    forward = f(point.shifted(index, step))
    backward = f(point.shifted(index, -step))
    return (forward - backward) / (2 * step)


def finite_difference_second(f, index, point, step=FD_SECOND_STEP):
    point = Point4.coerce(point)
    forward = f(point.shifted(index, step))
    backward = f(point.shifted(index, -step))
    return (forward - 2.0 * f(point) + backward) / (step * step)


def jet_of(f, point, order):
    """The order-``order`` jet of ``f`` at ``point``."""
    return f.jet(Point4.coerce(point), order)


def partial(f, index, point):
    """
    First partial derivative of ``f`` along x_index at ``point``.

    Exact for polynomial expression trees; functions that only evaluate at
    points fall back to central differences.
    """
    if not f.supports_jets:
        return finite_difference_partial(f, index, point)
    return f.jet(point, 1).coefficient(unit_exponent(index))


def derivative(f, alpha, point):
    """Mixed partial derivative of multi-index ``alpha`` (four exponents)."""
    return f.jet(point, sum(alpha)).derivative(alpha)


def _apply_by_differences(op, f, point, side):
    if op.order == 2:
        weights = second_order_weights(op, f.scale)
        terms = [
            w * finite_difference_second(f, l, point)
            for l, w in enumerate(weights, start=1)
        ]
    else:
        units = first_order_units(op, f.scale)
        partials = [finite_difference_partial(f, l, point) for l in range(1, 5)]
        if side == LEFT:
            terms = [c * d for c, d in zip(units, partials)]
        else:
            terms = [d * c for c, d in zip(units, partials)]
    result = terms[0]
    for term in terms[1:]:
        result = result + term
    return result


def _apply(op, f, point, side):
    point = Point4.coerce(point)
    check_scale(op, f.scale)
    if not f.supports_jets:
        return _apply_by_differences(op, f, point, side)
    return apply_to_jet(op, f.jet(point, op.order), side).value


def apply_left(op, f, point):
    """Apply ``op`` to ``f`` at ``point`` with the units on the left."""
    return _apply(op, f, point, LEFT)


def apply_right(op, f, point):
    """Apply ``op`` to ``f`` at ``point`` with the units on the right."""
    return _apply(op, f, point, RIGHT)


def compose_operators(op1, op2, f, point):
    """
    Evaluate op1 applied to q -> op2 f (q), both from the left, at ``point``.

    Used to check factorizations such as NablaDag Nabla = Laplacian.
    """
    point = Point4.coerce(point)
    check_scale(op1, f.scale)
    check_scale(op2, f.scale)
    if not f.supports_jets:
        raise EvaluationError(f"Composing operators on {f} requires jets.")
    jet = f.jet(point, op1.order + op2.order)
    return apply_to_jet(op1, apply_to_jet(op2, jet, LEFT), LEFT).value


@dataclass(frozen=True)
class Verdict:
    """Outcome of a regularity or harmonicity check over sample points."""

    passed: bool
    worst_point: Optional[Point4]
    residual: float

    def to_dict(self):
        return {
            "pass": self.passed,
            "worst_point": None if self.worst_point is None else list(self.worst_point),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class OracleReport:
    """Largest jet versus finite-difference mismatch of first partials."""

    discrepancy: float
    worst_point: Optional[Point4]
    worst_index: Optional[int]
    points: int

    def to_dict(self):
        return {
            "discrepancy": self.discrepancy,
            "worst_point": None if self.worst_point is None else list(self.worst_point),
            "worst_index": self.worst_index,
            "points": self.points,
        }


def resolve_points(samples, count=DEFAULT_SAMPLES, seed=0):
    """Turn a Region or an iterable of points into a list of Point4."""
    if samples is None:
        samples = UNIT_BOX
    if isinstance(samples, Region):
        return samples.sample(count, seed)
    return [Point4.coerce(point) for point in samples]


def _sweep(residual_at, points, tol):
    worst_point, worst = None, 0.0
    for point in points:
        residual = residual_at(point)
        # ties go to the lexicographically smallest point
        if worst_point is None or (residual, _neg(point)) > (worst, _neg(worst_point)):
            worst_point, worst = point, residual
    return Verdict(worst <= tol, worst_point, worst)


def _neg(point):
    return tuple(-x for x in point)


def _default_tol(f, tol):
    if tol is not None:
        return tol
    return DEFAULT_TOL if f.supports_jets else FD_TOL


def regularity_operator(scale):
    return OperatorKind.NABLA0 if Scale.coerce(scale).is_zero else OperatorKind.NABLA


def is_left_regular(f, samples=None, tol=None, count=DEFAULT_SAMPLES, seed=0):
    """
    Check Nabla f = 0 (Nabla0 f = 0 at t = 0) on sample points.

    Parameters
    ----------
    f : HFunction
    samples : Region or iterable of points, optional
        Defaults to the unit box around the origin.
    tol : float, optional
        Bound on the largest absolute coordinate of the residual.
    count, seed : int
        Number of points and seed when ``samples`` is a Region.

    Returns
    -------
    Verdict
    """
    op = regularity_operator(f.scale)
    points = resolve_points(samples, count, seed)
    tol = _default_tol(f, tol)
    verdict = _sweep(lambda p: max_abs(apply_left(op, f, p)), points, tol)
    debug_logger.debug(f"Left regularity of {f}: {verdict}.")
    return verdict


def is_right_regular(f, samples=None, tol=None, count=DEFAULT_SAMPLES, seed=0):
    """Check f Nabla = 0 with the units on the right, see is_left_regular."""
    op = regularity_operator(f.scale)
    points = resolve_points(samples, count, seed)
    tol = _default_tol(f, tol)
    verdict = _sweep(lambda p: max_abs(apply_right(op, f, p)), points, tol)
    debug_logger.debug(f"Right regularity of {f}: {verdict}.")
    return verdict


def is_harmonic(f, samples=None, tol=None, count=DEFAULT_SAMPLES, seed=0):
    """Check Laplacian f = 0 on sample points, see is_left_regular."""
    points = resolve_points(samples, count, seed)
    verdict = _sweep(
        lambda p: max_abs(apply_left(OperatorKind.LAPLACIAN, f, p)),
        points,
        _default_tol(f, tol),
    )
    debug_logger.debug(f"Harmonicity of {f}: {verdict}.")
    return verdict


def oracle_discrepancy(f, samples=None, count=DEFAULT_SAMPLES, seed=0, step=FD_STEP):
    """Compare jet partials with central differences at every sample point."""
    points = resolve_points(samples, count, seed)
    worst = OracleReport(0.0, None, None, len(points))
    for point in points:
        for index in range(1, 5):
            exact = f.jet(point, 1).coefficient(unit_exponent(index))
            approx = finite_difference_partial(f, index, point, step)
            mismatch = max_abs(exact - approx)
            if mismatch > worst.discrepancy:
                worst = OracleReport(mismatch, point, index, len(points))
    return worst

