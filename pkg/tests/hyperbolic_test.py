import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from scaled_hypercomplex.algebra import Hypercomplex, seminorm
from scaled_hypercomplex.exceptions import (
    HypercomplexError,
    NoBranchError,
    NullConeError,
)
from scaled_hypercomplex.hyperbolic import (
    HyperbolicNumber,
    embed,
    exp_j,
    exp_j0,
    is_unit,
    polar_decompose,
    reconstruct,
)

angles = st.floats(min_value=-2, max_value=2, allow_nan=False)
components = st.floats(min_value=-10, max_value=10, allow_nan=False)


def test_embed():
    assert embed(HyperbolicNumber(3, 1, 0)) == Hypercomplex.unity(3)
    assert embed(HyperbolicNumber(3, 2, 5)) == Hypercomplex(3, 2, 0, 5, 0)


def test_split_complex_unit():
    j = embed(HyperbolicNumber(1, 0, 1))
    assert j * j == Hypercomplex.unity(1)


def test_complex_numbers():
    z = HyperbolicNumber(-1, 1, 2) * HyperbolicNumber(-1, 3, -1)
    w = complex(1, 2) * complex(3, -1)
    assert (z.x, z.u) == (w.real, w.imag)


def test_from_hypercomplex():
    assert HyperbolicNumber.from_hypercomplex(Hypercomplex(2, 1, 0, 3, 0)).u == 3
    with pytest.raises(HypercomplexError):
        HyperbolicNumber.from_hypercomplex(Hypercomplex(2, 1, 1, 3, 0))


@pytest.mark.parametrize("t", [-2.0, -1.0, 1.0, 2.0])
def test_exp_at_zero(t):
    assert exp_j(t, 0) == HyperbolicNumber(t, 1, 0)


def test_exp_circle():
    d = exp_j(-1, math.pi / 2)
    assert d.x == pytest.approx(0, abs=1e-15)
    assert d.u == pytest.approx(1)


def test_exp_hyperbola():
    d = exp_j(1, 1)
    assert (d.x, d.u) == pytest.approx((math.cosh(1), math.sinh(1)))
    assert seminorm(embed(d)) == pytest.approx(1, abs=1e-12)


def test_exp_overflow_is_reported():
    with pytest.raises(HypercomplexError):
        exp_j(1, 1000.0)


def test_exp_degenerate():
    assert exp_j(0, 2.5) == HyperbolicNumber(0, 1, 2.5)
    assert exp_j0(-1, 7) == HyperbolicNumber(0, -1, 7)
    with pytest.raises(HypercomplexError):
        exp_j0(2, 1)


@given(st.sampled_from([-1.0, 1.0, 2.0]), angles)
def test_exp_is_a_unit(t, theta):
    assert is_unit(exp_j(t, theta))
    assert seminorm(embed(exp_j(t, theta))) == pytest.approx(1, abs=1e-12)


def test_is_unit():
    assert not is_unit(HyperbolicNumber(1, 2, 0))
    assert is_unit(HyperbolicNumber(0, -1, 7))


@given(st.sampled_from([-2.0, -1.0, -0.25, 0.5, 1.0, 2.0]), angles, angles)
def test_group_law(t, theta1, theta2):
    product = exp_j(t, theta1) * exp_j(t, theta2)
    expected = exp_j(t, theta1 + theta2)
    assert product.x == pytest.approx(expected.x, rel=1e-10, abs=1e-10)
    assert product.u == pytest.approx(expected.u, rel=1e-10, abs=1e-10)


@given(st.sampled_from([-1.0, 0.0, 1.0, 3.0]), components, components, components)
def test_subring_is_commutative(t, x, u, y):
    d1 = HyperbolicNumber(t, x, u)
    d2 = HyperbolicNumber(t, y, x - u)
    assert d1 * d2 == d2 * d1


def test_polar_circle():
    polar = polar_decompose(HyperbolicNumber(-1, 0, 1))
    assert polar.r == pytest.approx(1)
    assert polar.theta == pytest.approx(math.pi / 2)
    assert polar.sign == 1


def test_polar_hyperbola():
    polar = polar_decompose(HyperbolicNumber(1, math.cosh(2), math.sinh(2)))
    assert polar.r == pytest.approx(1)
    assert polar.theta == pytest.approx(2)
    assert polar.residual < 1e-10


def test_polar_negative_sheet():
    polar = polar_decompose(HyperbolicNumber(2, -3, 1))
    assert polar.sign == -1
    d = reconstruct(polar, 2)
    assert (d.x, d.u) == pytest.approx((-3, 1))


def test_polar_degenerate():
    polar = polar_decompose(HyperbolicNumber(0, -2, 3))
    assert (polar.r, polar.theta, polar.sign) == (2, -1.5, -1)
    assert polar.residual == 0


def test_null_cone():
    with pytest.raises(NullConeError):
        polar_decompose(HyperbolicNumber(1, 1, 1))
    with pytest.raises(NullConeError):
        polar_decompose(HyperbolicNumber(-1, 0, 0))
    with pytest.raises(NullConeError):
        polar_decompose(HyperbolicNumber(0, 0, 4))


def test_timelike_sector_has_no_branch():
    with pytest.raises(NoBranchError) as error:
        polar_decompose(HyperbolicNumber(1, 1, 2))
    assert error.value.residual == pytest.approx(1)


def test_euclidean_argument_is_reported():
    polar = polar_decompose(HyperbolicNumber(-1, 0, -1))
    assert polar.arg == pytest.approx(3 * math.pi / 2)
    assert polar.theta == pytest.approx(3 * math.pi / 2)
    assert set(polar.to_dict()) == {"r", "theta", "sign", "residual", "arg"}


@given(st.sampled_from([-1.0, -0.25, 1.0, 2.0]), components, components)
def test_polar_reconstructs(t, x, u):
    assume(max(abs(x), abs(u)) > 1e-3)
    if t > 0:
        assume(abs(math.sqrt(t) * u) < 0.99 * abs(x))
    polar = polar_decompose(HyperbolicNumber(t, x, u))
    assert polar.residual <= 1e-10
    assert polar.r == pytest.approx(seminorm(Hypercomplex(t, x, 0, u, 0)))
    if t < 0:
        assert 0 <= polar.theta < 2 * math.pi / math.sqrt(-t)


def test_dict_codec():
    d = HyperbolicNumber(2, 1.5, -1)
    assert d.to_dict() == {"t": 2, "x": 1.5, "u": -1}
    assert HyperbolicNumber.from_dict(d.to_dict()) == d
