import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from gkzcurve.errors import InvalidInputError
from gkzcurve.series import (
    TruncatedSeries,
    TruncationFrontier,
    WeylOperator,
    apply_operator,
    inverse_variable_rewrite,
    series_equal,
    substitute_unit_translation,
    verify_annihilation,
)


def frontier2(bound=10):
    return TruncationFrontier.uniform(2, bound)


def test_frontier_membership_and_shrink():
    fr = TruncationFrontier((2, 1), 7)
    assert fr.contains((1, 5)) and not fr.contains((2, 4))
    assert fr.shrink(3).bound == 4
    with pytest.raises(InvalidInputError):
        TruncationFrontier((0, 1), 5)


def test_series_normalization():
    f = TruncatedSeries((F(1, 2), 0), {(0, 0): 1, (3, -2): 0}, frontier2())
    assert f.terms == {(0, 0): F(1)}
    with pytest.raises(InvalidInputError):
        TruncatedSeries((0, 0), {(11, 0): 1}, frontier2())


def test_series_json_round_trip():
    f = TruncatedSeries(
        (F(-1), F(1)), {(0, 0): 1, (-3, 2): F(-1, 2)}, frontier2()
    )
    blob = json.dumps(f.to_json())
    g = TruncatedSeries.from_json(json.loads(blob))
    assert series_equal(f, g)
    assert g.to_json()["terms"][0]["offset"] == [-3, 2]  # sorted lexicographically


def test_operator_json_round_trip():
    op = WeylOperator.euler((2, 3), F(7, 2))
    op2 = WeylOperator.from_json(op.to_json())
    assert op == op2


def test_apply_derivative_to_monomial():
    # d_1 (x_1^{5/2}) = 5/2 x_1^{3/2}
    f = TruncatedSeries((F(5, 2), F(0)), {(0, 0): 1}, frontier2())
    g = apply_operator(WeylOperator.d_power(2, 0), f)
    assert g.coefficient((-1, 0)) == F(5, 2)
    assert g.frontier.bound == 9


def test_euler_kills_weight_beta_monomials():
    # E(beta) x^v = (A.v - beta) x^v, so weight-zero monomials die at beta=0
    fr = frontier2(30)
    f = TruncatedSeries((F(3), F(-2)), {(0, 0): 1}, fr)
    E = WeylOperator.euler((2, 3), 0)  # 2*3 + 3*(-2) = 0
    assert apply_operator(E, f).is_zero()
    E1 = WeylOperator.euler((2, 3), 1)
    assert apply_operator(E1, f).coefficient((0, 0)) == -1


def test_operator_linearity_and_composition():
    fr = frontier2(20)
    f = TruncatedSeries((F(1, 2), F(1)), {(0, 0): 1, (3, -2): F(2, 3)}, fr)
    P = WeylOperator.from_lattice((3, -2))
    E = WeylOperator.euler((2, 3), F(1, 2))
    lhs = apply_operator(P + E, f)
    rhs = apply_operator(P, f) + apply_operator(E, f)
    assert series_equal(lhs, rhs)
    comp = apply_operator(P, apply_operator(E, f))
    prod = apply_operator(P * E, f)
    assert series_equal(comp, prod)


def test_commutation_with_euler():
    # For the plane operator P = d1^b - d2^a:  P E = (E + ab) P
    for (a, b) in [(2, 3), (2, 5), (3, 4)]:
        n = 2
        P = WeylOperator.from_lattice((b, -a))
        E = WeylOperator.euler((a, b), F(7, 3))
        shift = WeylOperator.constant(n, a * b)
        assert P * E == (E + shift) * P


@given(
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
)
def test_apply_operator_is_linear_in_coefficients(c1, c2):
    fr = frontier2(12)
    f = TruncatedSeries((F(0), F(0)), {(0, 0): c1, (3, -2): c2}, fr)
    op = WeylOperator.euler((2, 3), F(1, 7))
    g = apply_operator(op, f)
    g_scaled = apply_operator(op, f.scale(3))
    assert series_equal(g.scale(3), g_scaled)


def test_verify_annihilation_reports():
    fr = frontier2(20)
    f = TruncatedSeries((F(0), F(0)), {(0, 0): 1}, fr)
    E0 = WeylOperator.euler((2, 3), 0)   # kills constants
    E1 = WeylOperator.euler((2, 3), 1)   # does not
    r0, r1 = verify_annihilation([E0, E1], f)
    assert r0.annihilated and r0.max_residual_offset is None
    assert r1.residual_term_count == 1 and r1.max_residual_offset == (0, 0)


def test_substitute_unit_translation():
    # 2 x1 d1 -> 2 t1 d1 + 2 eps d1
    E = WeylOperator.euler((2, 3), F(5))
    T = substitute_unit_translation(E, 0, F(1, 2))
    expect = WeylOperator(
        2,
        [
            (2, (1, 0), (1, 0)),
            (1, (0, 0), (1, 0)),  # 2 * eps
            (3, (0, 1), (0, 1)),
            (-5, (0, 0), (0, 0)),
        ],
    )
    assert T == expect
    with pytest.raises(InvalidInputError):
        substitute_unit_translation(E, 0, 0)


def test_substitute_translation_is_multiplicative():
    # substitution is a ring map: check on a product
    A = WeylOperator.monomial(2, F(1), (2, 0), (1, 0))
    B = WeylOperator.monomial(2, F(1), (1, 1), (0, 1))
    eps = F(3)
    lhs = substitute_unit_translation(A * B, 0, eps)
    rhs = substitute_unit_translation(A, 0, eps) * substitute_unit_translation(B, 0, eps)
    assert lhs == rhs


def test_inverse_variable_rewrite_is_involution():
    f = TruncatedSeries((F(1, 2), F(-1)), {(0, 0): 1, (-3, 2): F(5)}, frontier2())
    g = inverse_variable_rewrite(f, 1)
    assert g.base == (F(1, 2), F(1))
    assert g.coefficient((-3, -2)) == F(5)
    assert series_equal(inverse_variable_rewrite(g, 1), f)


def test_exact_series_skip_frontier_shrink():
    fr = frontier2(4)
    f = TruncatedSeries((F(2), F(0)), {(0, 0): 1, (6, 0): 1}, fr, exact=True)
    g = apply_operator(WeylOperator.d_power(2, 0, 2), f)
    assert g.exact and g.frontier.bound == 4
    assert g.coefficient((-2, 0)) == 2          # d^2 x^2 = 2
    assert g.coefficient((4, 0)) == 8 * 7       # d^2 x^8
