import itertools

import numpy as np
import pytest
import sympy

from scaled_hypercomplex.algebra import Hypercomplex, basis_unit
from scaled_hypercomplex.exceptions import HypercomplexError, ScaleMismatchError
from scaled_hypercomplex.functions import Coordinate, Polynomial
from scaled_hypercomplex.jets import Jet, layout, unit_exponent

X = sympy.symbols("x1:5")


def test_layout():
    lay = layout(2)
    assert len(lay.monomials) == 15
    assert lay.monomials[0] == (0, 0, 0, 0)
    assert [sum(alpha) for alpha in lay.monomials] == sorted(
        sum(alpha) for alpha in lay.monomials
    )
    assert lay.index[(1, 0, 0, 0)] > lay.index[(0, 1, 0, 0)]


def test_variable():
    jet = Jet.variable(1, 2, 3.0, 2)
    assert jet.value == Hypercomplex(1, 3)
    assert jet.derivative(unit_exponent(2)) == Hypercomplex.unity(1)
    assert jet.derivative((0, 2, 0, 0)).is_zero()


def test_constant_jet():
    k = basis_unit(-1, "k")
    jet = Jet.constant(k, 3)
    assert jet.value == k
    assert jet.differentiate(1).value.is_zero()


def test_jets_multiply_in_order():
    i = Jet.constant(basis_unit(-1, "i"), 1)
    j = Jet.constant(basis_unit(-1, "j"), 1)
    assert (i * j).value == basis_unit(-1, "k")
    assert (j * i).value == -basis_unit(-1, "k")
    assert (basis_unit(-1, "i") * j).value == basis_unit(-1, "k")
    assert (j * basis_unit(-1, "i")).value == -basis_unit(-1, "k")


def test_product_rule():
    x1 = Jet.variable(2, 1, 0.5, 3)
    x2 = Jet.variable(2, 2, -1.0, 3)
    f = x1 * x1 * x2
    assert f.value.x1 == pytest.approx(-0.25)
    assert f.derivative((1, 0, 0, 0)).x1 == pytest.approx(-1.0)
    assert f.derivative((2, 1, 0, 0)).x1 == pytest.approx(2.0)
    assert f.derivative((0, 0, 1, 0)).is_zero()


def test_differentiate_lowers_the_order():
    x3 = Jet.variable(1, 3, 2.0, 2)
    f = x3 * x3
    df = f.differentiate(3)
    assert df.order == 1
    assert df.value.x1 == pytest.approx(4.0)
    assert df.differentiate(3).value.x1 == pytest.approx(2.0)
    with pytest.raises(HypercomplexError):
        Jet(1, 0).differentiate(1)


def test_truncation():
    jet = Jet.variable(1, 1, 1.0, 3)
    assert jet.truncate(1).order == 1
    assert (jet + Jet.variable(1, 2, 0.0, 1)).order == 1
    with pytest.raises(HypercomplexError):
        jet.truncate(4)
    with pytest.raises(HypercomplexError):
        jet.coefficient((2, 2, 0, 0))


def test_scale_mismatch():
    with pytest.raises(ScaleMismatchError):
        Jet.variable(1, 1, 0.0, 1) * Jet.variable(2, 1, 0.0, 1)
    with pytest.raises(ScaleMismatchError):
        Jet.variable(1, 1, 0.0, 1) + Hypercomplex(2, 1)


def test_real_arithmetic():
    jet = Jet.variable(-1, 4, 2.0, 1)
    assert (3 * jet - 1).value.x1 == pytest.approx(5.0)
    assert (1 - jet).derivative((0, 0, 0, 1)).x1 == pytest.approx(-1.0)
    assert (-jet).value.x1 == -2.0


def _random_polynomial(rng, degree=3, count=5):
    terms = []
    for _ in range(count):
        exponents = rng.integers(0, 2, size=4)
        while exponents.sum() > degree:
            exponents[rng.integers(0, 4)] = 0
        terms.append((exponents.tolist(), [float(rng.normal()), 0.0, 0.0, 0.0]))
    return terms


@pytest.mark.parametrize("seed", range(5))
def test_jets_match_symbolic_derivatives(seed):
    rng = np.random.default_rng(seed)
    terms = _random_polynomial(rng)
    f = Polynomial(1.5, terms)
    expression = sum(
        coef[0] * sympy.Mul(*(x ** e for x, e in zip(X, exp))) for exp, coef in terms
    )
    point = rng.uniform(-1, 1, size=4).tolist()
    jet = f.jet(point, 3)
    for alpha in itertools.product(range(4), repeat=4):
        if sum(alpha) > 3:
            continue
        derivative = expression
        for x, a in zip(X, alpha):
            derivative = sympy.diff(derivative, x, a)
        expected = float(derivative.subs(dict(zip(X, point))))
        assert jet.derivative(alpha).x1 == pytest.approx(expected, abs=1e-12)
        assert jet.derivative(alpha).coords[1:] == (0.0, 0.0, 0.0)


def test_jet_value_matches_point_evaluation():
    t = -0.5
    f = Coordinate(t, 2) * basis_unit(t, "j") * Coordinate(t, 3) + basis_unit(t, "i")
    point = (0.3, -0.7, 1.1, 0.2)
    assert f.jet(point, 2).value.isclose(f(point))
