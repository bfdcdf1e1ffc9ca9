import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from scaled_hypercomplex.algebra import (
    Basis,
    Hypercomplex,
    InvertibilityClass,
    Realization,
    Scale,
    T,
    add,
    basis_unit,
    bilinear,
    cauchy_schwarz_holds,
    classify,
    conj,
    det,
    exact_mul_table,
    find_printed_cauchy_schwarz_violation,
    find_triangle_violation,
    inverse,
    mul,
    mul_table,
    neg,
    null_element,
    power,
    realization_matrix,
    realize,
    scalar_mul,
    seminorm,
    sub,
    symbolic_mul_table,
    trace,
    unrealize,
)
from scaled_hypercomplex.exceptions import (
    HypercomplexError,
    PatternViolationError,
    ScaleConstraintError,
    ScaleMismatchError,
    SingularError,
)
from scaled_hypercomplex.sampling import make_rng

from strategies import coordinates, hypercomplex, same_scale

ATOL = 1e-9
GROUP_PART = InvertibilityClass.GROUP_PART
SEMIGROUP_PART = InvertibilityClass.SEMIGROUP_PART


def close(h1, h2, atol=ATOL):
    np.testing.assert_allclose(h1.coords, h2.coords, rtol=1e-12, atol=atol)


def test_scale():
    assert Scale(-4).rho == 2
    assert Scale(2).sgn == 1
    assert Scale(-0.5).sgn == -1
    assert Scale(-0.0) == Scale(0.0)
    with pytest.raises(ScaleConstraintError):
        Scale(0).sgn
    with pytest.raises(HypercomplexError):
        Scale(float("inf"))


def test_non_finite_coordinates_are_rejected():
    with pytest.raises(HypercomplexError):
        Hypercomplex(1, float("nan"))


def test_unity_is_neutral():
    h = Hypercomplex(2.5, 1, 2, 3, 4)
    assert Hypercomplex.unity(2.5) * h == h
    assert h * Hypercomplex.unity(2.5) == h


def test_quaternion_jk_is_i():
    j = Hypercomplex(-1, 0, 0, 1, 0)
    k = Hypercomplex(-1, 0, 0, 0, 1)
    assert mul(j, k) == Hypercomplex(-1, 0, 1, 0, 0)


def test_j_squared_is_t():
    j = basis_unit(2, Basis.J)
    assert j * j == Hypercomplex(2, 2, 0, 0, 0)
    assert basis_unit(2, "k") * basis_unit(2, "k") == Hypercomplex(2, 2)


@pytest.mark.parametrize("t", [-1.0, 0.0, 1.0, 2.5])
def test_basis_relations(t):
    one, i, j, k = (basis_unit(t, b) for b in Basis)
    assert i * j == k
    assert k * j == t * i
    assert i * i == -one
    assert j * i == -k


def test_vector_space_operations():
    h = Hypercomplex(3, 1, -2, 0.5, 4)
    assert scalar_mul(0, h).is_zero()
    assert scalar_mul(7, Hypercomplex.unity(3)) == Hypercomplex(3, 7)
    assert (h + (-h)).is_zero()
    assert h - h == Hypercomplex.zero(3)
    assert 2 * h == h + h
    assert (h + 1).x1 == 2


def test_additive_group_functions():
    h1 = Hypercomplex(-1, 1, 2, 3, 4)
    h2 = Hypercomplex(-1, 0.5, 0, -1, 2)
    assert add(h1, h2) == Hypercomplex(-1, 1.5, 2, 2, 6)
    assert sub(h1, h2) == Hypercomplex(-1, 0.5, 2, 4, 2)
    assert neg(h1) == Hypercomplex(-1, -1, -2, -3, -4)
    assert add(h1, neg(h1)).is_zero()
    with pytest.raises(ScaleMismatchError):
        add(h1, Hypercomplex(1, 1))


def test_scale_mismatch():
    with pytest.raises(ScaleMismatchError) as error:
        Hypercomplex(1, 1) * Hypercomplex(2, 1)
    assert error.value.scales == (1.0, 2.0)
    with pytest.raises(ScaleMismatchError):
        Hypercomplex(1, 1) + Hypercomplex(-1, 1)


def test_pair_view():
    h = Hypercomplex.from_pair(1, 1 + 2j, 3 + 4j)
    assert h.coords == (1, 2, 3, 4)
    assert h.a == 1 + 2j
    assert h.b == 3 + 4j


def test_power():
    h = Hypercomplex(-1, 1, 1, 0, 0)
    assert power(h, 0) == Hypercomplex.unity(-1)
    assert power(h, 2) == Hypercomplex(-1, 0, 2)
    with pytest.raises(HypercomplexError):
        power(h, -1)


def test_realize():
    m = realize(Hypercomplex(1, 0, 0, 1, 0))
    np.testing.assert_array_equal(m.matrix, [[0, 1], [1, 0]])
    np.testing.assert_array_equal(realization_matrix(Hypercomplex.unity(3)), np.eye(2))
    assert m.to_list() == [[0, 0], [1, 0], [1, 0], [0, 0]]


def test_unrealize():
    assert unrealize(np.eye(2), 5) == Hypercomplex.unity(5)
    assert unrealize([[0, 1], [1, 0]], 1) == Hypercomplex(1, 0, 0, 1, 0)
    assert unrealize([[1, 0], [2, 1]], 0) == Hypercomplex(0, 1, 0, 2, 0)


def test_unrealize_rejects_other_matrices():
    with pytest.raises(PatternViolationError):
        unrealize([[1, 0], [0, 2]], 1)
    with pytest.raises(PatternViolationError):
        unrealize([[0, 1], [1, 0]], 2)
    with pytest.raises(PatternViolationError):
        Realization.from_matrix(np.eye(3))


@given(same_scale(2))
def test_realization_is_a_homomorphism(data):
    t, h1, h2 = data
    np.testing.assert_allclose(
        realize(h1 * h2).matrix, realize(h1).matrix @ realize(h2).matrix, atol=ATOL
    )
    np.testing.assert_allclose(
        realize(h1 + h2).matrix, (realize(h1) + realize(h2)).matrix, atol=ATOL
    )
    assert unrealize(realize(h1), t) == h1


@given(same_scale(3))
def test_ring_axioms(data):
    t, h1, h2, h3 = data
    close((h1 * h2) * h3, h1 * (h2 * h3), atol=1e-8)
    close(h1 * (h2 + h3), h1 * h2 + h1 * h3)
    close((h1 + h2) * h3, h1 * h3 + h2 * h3)


def test_det():
    assert det(Hypercomplex(1, 1, 0, 1, 0)) == 0
    assert det(Hypercomplex(-1, 1, 2, 3, 4)) == 30
    assert det(Hypercomplex(2, 1, 1, 1, 0)) == 0


@given(same_scale(2))
def test_det_is_multiplicative(data):
    t, h1, h2 = data
    assert det(h1 * h2) == pytest.approx(det(h1) * det(h2), rel=1e-9, abs=1e-6)
    assert det(h1) == pytest.approx(np.linalg.det(realize(h1).matrix).real, abs=1e-9)


def test_conj():
    assert conj(Hypercomplex(1, 1, 2, 3, 4)) == Hypercomplex(1, 1, -2, -3, -4)


@given(same_scale(2))
def test_conjugation_laws(data):
    t, h1, h2 = data
    assert conj(conj(h1)) == h1
    close(conj(h1 + h2), conj(h1) + conj(h2))
    close(conj(h1 * h2), conj(h2) * conj(h1))
    close(h1 * conj(h1), det(h1) * Hypercomplex.unity(t), atol=1e-8)
    close(conj(h1) * h1, det(h1) * Hypercomplex.unity(t), atol=1e-8)


def test_inverse():
    h = Hypercomplex(1, 2, 0, 1, 0)
    close(inverse(h), Hypercomplex(1, 2 / 3, 0, -1 / 3, 0), atol=1e-15)
    np.testing.assert_allclose(
        realize(inverse(h)).matrix, np.linalg.inv(realize(h).matrix), atol=1e-15
    )
    assert inverse(Hypercomplex.unity(3)) == Hypercomplex.unity(3)


def test_singular_inverse():
    with pytest.raises(SingularError) as error:
        inverse(Hypercomplex(1, 1, 0, 1, 0))
    assert error.value.det == 0


@given(same_scale(1))
def test_inverse_of_group_part(data):
    t, h = data
    if classify(h).part is InvertibilityClass.GROUP_PART and abs(det(h)) > 1e-3:
        close(h * inverse(h), Hypercomplex.unity(t), atol=1e-8)
        close(inverse(h) * h, Hypercomplex.unity(t), atol=1e-8)


def test_classify():
    assert classify(Hypercomplex(-1, 0, 0, 0, 1e-3)).part is GROUP_PART
    assert classify(Hypercomplex(0, 0, 0, 1, 0)).part is SEMIGROUP_PART
    assert classify(Hypercomplex(1, 1, 0, 1, 0)).part is SEMIGROUP_PART
    zero = classify(Hypercomplex.zero(1))
    assert zero.part is InvertibilityClass.SEMIGROUP_PART and zero.zero


@given(hypercomplex(-1))
def test_quaternions_are_a_division_ring(h):
    expected = SEMIGROUP_PART if h.is_zero() else GROUP_PART
    assert classify(h).part is expected


@pytest.mark.parametrize("scale", [1e-7, 1e-150])
def test_tiny_quaternions_are_invertible(scale):
    h = Hypercomplex(-1, scale, 0, 0, 0)
    assert classify(h).part is GROUP_PART
    assert inverse(h) == Hypercomplex(-1, 1 / scale, 0, 0, 0)
    h = Hypercomplex(-2, 0, scale, scale, 0)
    close(inverse(h) * h, Hypercomplex.unity(-2))


def test_tiny_null_elements_stay_singular():
    h = scalar_mul(1e-8, Hypercomplex(1, 1, 0, 1, 0))
    assert classify(h).part is SEMIGROUP_PART
    with pytest.raises(SingularError):
        inverse(h)


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 3.0])
def test_null_elements_are_singular(t):
    rng = make_rng(1)
    for _ in range(100):
        h = null_element(t, rng)
        assert not h.is_zero()
        assert classify(h).part is InvertibilityClass.SEMIGROUP_PART
        assert bilinear(h, h) == pytest.approx(0, abs=1e-12)
    assert null_element(-1, rng) is None


def test_trace_and_bilinear_form():
    assert trace(Hypercomplex(0, 5, 1, 2, 3)) == 5
    assert bilinear(Hypercomplex(2, 1, 1, 1, 0), Hypercomplex(2, 1, 1, 1, 0)) == 0


@given(same_scale(2))
def test_trace_and_bilinear_laws(data):
    t, h1, h2 = data
    assert trace(h1) == pytest.approx(np.trace(realize(h1).matrix).real / 2)
    assert trace(h1 * h2) == pytest.approx(trace(h2 * h1), abs=1e-9)
    assert bilinear(h1, h2) == pytest.approx(bilinear(h2, h1), abs=1e-9)
    assert bilinear(h1, h1) == pytest.approx(det(h1), abs=1e-9)


@given(st.floats(-10, 10), hypercomplex(-1))
def test_seminorm_is_absolutely_homogeneous(r, h):
    assert seminorm(r * h) == pytest.approx(abs(r) * seminorm(h), rel=1e-9, abs=1e-9)


def test_seminorm():
    assert seminorm(-3 * Hypercomplex(1, 2, 0, 1, 0)) == 3 * math.sqrt(3)
    assert seminorm(Hypercomplex(1, 1, 0, 1, 0)) == 0
    assert seminorm(Hypercomplex(-1, 1, 1, 1, 1)) == 2


@given(same_scale(2, elements=coordinates))
def test_cauchy_schwarz_in_the_definite_case(data):
    t, h1, h2 = data
    if t < 0:
        assert cauchy_schwarz_holds(h1, h2)
        assert seminorm(h1 + h2) <= seminorm(h1) + seminorm(h2) + 1e-9


def test_symbolic_table():
    table = symbolic_mul_table()
    assert table[Basis.K][Basis.J] == (0, T, 0, 0)
    assert table[Basis.J][Basis.K] == (0, -T, 0, 0)
    assert table[Basis.J][Basis.J] == (T, 0, 0, 0)
    assert table[Basis.I][Basis.J] == (0, 0, 0, 1)


def test_hamilton_table():
    table = mul_table(-1)
    one, i, j, k = (basis_unit(-1, b) for b in Basis)
    assert table[1][2] == k and table[2][3] == i and table[3][1] == j
    assert table[2][1] == -k and table[3][2] == -i and table[1][3] == -j
    assert all(table[b][b] == -one for b in (1, 2, 3))


def test_split_quaternion_table():
    table = mul_table(1)
    one, i, j, k = (basis_unit(1, b) for b in Basis)
    assert table[2][2] == one and table[3][3] == one and table[1][1] == -one
    assert table[2][3] == -i and table[3][2] == i


@pytest.mark.parametrize("t", [-1, 0, 1, 2.5, -0.25])
def test_tables_are_exact(t):
    exact = exact_mul_table(t)
    for r in range(4):
        for c in range(4):
            product = basis_unit(t, r) * basis_unit(t, c)
            assert mul_table(t)[r][c] == product
            assert all(isinstance(x, sympy.Rational) for x in exact[r][c])
    assert mul_table(0)[2][3].is_zero() and mul_table(0)[3][2].is_zero()
    assert exact_mul_table(2.5)[3][2][1] == sympy.Rational(5, 2)


@pytest.mark.parametrize("t", [-1.0, 0.0, 1.0])
def test_printed_cauchy_schwarz_form_fails(t):
    found = find_printed_cauchy_schwarz_violation(t, samples=10_000)
    assert found is not None
    assert found.lhs > found.rhs


def test_triangle_inequality_fails_for_positive_scales():
    found = find_triangle_violation(1.0, samples=10_000)
    assert found is not None
    assert seminorm(found.h1 + found.h2) > seminorm(found.h1) + seminorm(found.h2)


@pytest.mark.parametrize("t", [-1.0, 0.0])
def test_triangle_inequality_holds(t):
    assert find_triangle_violation(t, samples=2_000) is None


def test_dict_codec():
    h = Hypercomplex(0.5, 1, 2, 3, 4)
    assert h.to_dict() == {"t": 0.5, "x": [1, 2, 3, 4]}
    assert Hypercomplex.from_dict(h.to_dict()) == h


def test_str():
    assert str(Hypercomplex(2, 1, 0, -1, 0.5)) == "1 + 0 i + -1 j_2 + 0.5 k_2"


def test_isclose():
    h = Hypercomplex(1, math.pi)
    assert h.isclose(Hypercomplex(1, math.pi + 1e-14))
    assert not h.isclose(Hypercomplex(1, 3))
