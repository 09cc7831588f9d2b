import math
from fractions import Fraction as F

import pytest

from gkzcurve.errors import InvalidInputError
from gkzcurve.gamma import modified_series, restrict_series_x0, singular_exponents
from gkzcurve.gamma import gamma_series
from gkzcurve.lattice import curve_matrix, homogenize_matrix
from gkzcurve.rationals import log_abs, log_factorial
from gkzcurve.restriction import (
    b_function_1kakb,
    ext1_generator,
    ext1_recurrence_solve,
    gevrey_envelope_fit,
    homogenize,
    recurrence_series,
    restrict_decomposition,
)
from gkzcurve.series import (
    TruncationFrontier,
    apply_operator,
    series_equal,
    verify_annihilation,
)
from gkzcurve.system import build_system


# ---------------------------------------------------------------------------
# homogenization


def test_homogenize_data():
    hom = homogenize(curve_matrix((3, 4, 5)), 0)
    assert hom.matrix.entries == (1, 3, 4, 5)
    assert hom.deltas == (1, 1, 1)
    # 1 + 3 = 4, 1 + 4 = 5, 1 + 5 = 2*3
    assert hom.rhos == ((0, 1, 0), (0, 0, 1), (2, 0, 0))
    assert len(hom.system.extra) == 3


def test_homogenize_rejects_non_general():
    with pytest.raises(InvalidInputError):
        homogenize(curve_matrix((2, 3)), 0)


def test_homogenized_round_trip_annihilation():
    A = curve_matrix((3, 4, 5))
    hom = homogenize(A, 0)
    general = build_system(A, 0)
    fr = TruncationFrontier.uniform(4, 24)
    for v in singular_exponents(hom.system):
        f = gamma_series(v, hom.system, fr)
        assert all(r.annihilated for r in verify_annihilation(hom.system.operators, f))
        restricted = restrict_series_x0(f)
        assert all(
            r.annihilated for r in verify_annihilation(general.operators, restricted)
        )


# ---------------------------------------------------------------------------
# b-function


def test_b_function_values():
    bf = b_function_1kakb(3, 1, 2)
    assert bf.roots == (0, 1, 2)
    assert bf.biggest_root == 2
    # tau(tau-1)(tau-2) = tau^3 - 3 tau^2 + 2 tau
    assert bf.coefficients() == (0, 2, -3, 1)


def test_b_function_validation():
    with pytest.raises(InvalidInputError):
        b_function_1kakb(2, 3, 2)  # a >= b
    with pytest.raises(InvalidInputError):
        b_function_1kakb(2, 2, 4)  # gcd != 1
    with pytest.raises(InvalidInputError):
        b_function_1kakb(1, 1, 2)  # ka = 1: (1 1 2) is not smooth-shaped
    with pytest.raises(InvalidInputError):
        b_function_1kakb(0, 2, 3)


# ---------------------------------------------------------------------------
# restriction decompositions


def test_restrict_three_variables_with_gcd():
    dec = restrict_decomposition((1, 4, 6), 5)
    assert dec.generic
    assert [(m.entries, b) for m, b in dec.components] == [
        ((2, 3), F(5, 2)),
        ((2, 3), 2),
    ]


def test_restrict_three_variables_coprime():
    dec = restrict_decomposition((1, 2, 5), F(7, 3))
    assert [(m.entries, b) for m, b in dec.components] == [((2, 5), F(7, 3))]


def test_restrict_many_variables():
    dec = restrict_decomposition((1, 3, 4, 6), 1)
    # gcd(4, 6) = 2: components ((2 3), (1-i)/2)
    assert [(m.entries, b) for m, b in dec.components] == [
        ((2, 3), F(1, 2)),
        ((2, 3), 0),
    ]
    assert dec.restricted_vars == (0, 1)


def test_restrict_homogenized():
    Ah = homogenize_matrix(curve_matrix((3, 4, 5)))
    dec = restrict_decomposition(Ah, F(2, 7))
    assert [(m.entries, b) for m, b in dec.components] == [((3, 4, 5), F(2, 7))]


def test_restrict_rejects_other_shapes():
    with pytest.raises(InvalidInputError):
        restrict_decomposition((2, 3), 1)
    with pytest.raises(InvalidInputError):
        restrict_decomposition((3, 4, 5), 1)


# ---------------------------------------------------------------------------
# the germ recurrence


def test_recurrence_first_step():
    A = curve_matrix((2, 3))
    h = ext1_recurrence_solve(A, 1, 1, {(0, 0): F(1)}, num_terms=5)
    # h_2 = ((1/2)_3 * 0 - 1) / (2)_2 = -1/2
    assert h[(0, 1)] == F(-1, 2)
    assert h[(1, 0)] == 0


def test_recurrence_validation():
    A = curve_matrix((2, 3))
    with pytest.raises(InvalidInputError):
        ext1_recurrence_solve(A, 0, 1, {})
    with pytest.raises(InvalidInputError):
        ext1_recurrence_solve(A, 1, 1, {(5, 0): F(1)})
    with pytest.raises(InvalidInputError):
        ext1_recurrence_solve(curve_matrix((1, 2, 5)), 1, 1, {})


@pytest.mark.parametrize(
    "f_table,h_init",
    [
        ({(0, 0): F(1)}, None),
        ({}, {0: F(1), 1: F(-2, 3)}),
        ({(0, 1): F(3, 7), (1, 0): F(-1), (1, 2): F(5)}, {0: F(1, 2)}),
    ],
)
def test_recurrence_solves_the_operator_equation(f_table, h_init):
    A = curve_matrix((2, 3))
    beta = 1
    h = ext1_recurrence_solve(A, 1, beta, f_table, h_init=h_init, num_terms=40)
    system = build_system(A, beta)
    P, E = system.toric[0], system.euler
    h_series = recurrence_series(A, beta, h, shift=0, bound=40)
    f_series = recurrence_series(A, beta, f_table, shift=1, bound=40)
    f_by_k = {int(s.base[1]): s for s in f_series}
    for hs in h_series:
        k = int(hs.base[1])
        assert apply_operator(E, hs).is_zero()
        ph = apply_operator(P, hs)
        if k in f_by_k:
            assert series_equal(ph, f_by_k[k])
        else:
            assert ph.is_zero()


def test_recurrence_gevrey_envelope():
    A = curve_matrix((2, 3))
    h = ext1_recurrence_solve(A, 1, 1, {(0, 0): F(1)}, num_terms=40)
    s = F(3, 2)
    for k in (0, 1):
        vals = []
        for m in range(41):
            c = h[(k, m)]
            vals.append(
                0.0 if c == 0
                else math.exp(log_abs(c) - float(s - 1) * log_factorial(k + 2 * m))
            )
        C, D = gevrey_envelope_fit(vals)
        assert all(v <= C * D**m * (1 + 1e-9) for m, v in enumerate(vals))
        assert 0 < D < 50  # geometric, not factorial, growth after rescaling


# ---------------------------------------------------------------------------
# Ext^1 generator


@pytest.mark.parametrize(
    "entries,beta",
    [((1, 2, 5), 0), ((1, 2, 5), 3), ((1, 2, 3), 4), ((1, 3, 4, 5), 2), ((1, 3, 7), 5)],
)
def test_ext1_generator_matches_operator_application(entries, beta):
    system = build_system(entries, beta)
    n = len(entries)
    fr = TruncationFrontier.uniform(n, 50)
    phi = modified_series(system, fr)
    # all generators except the distinguished one kill phi_vtilde
    distinguished = system.toric[n - 3]
    for op in system.operators:
        img = apply_operator(op, phi)
        if op is distinguished:
            assert not img.is_zero()
        else:
            assert img.is_zero()
    closed = ext1_generator(entries, beta)
    img = apply_operator(distinguished, phi)
    by_exponent = {
        tuple(b + x for b, x in zip(img.base, u)): c for u, c in img.terms.items()
    }
    closed_by_exponent = {
        tuple(b + x for b, x in zip(closed.base, u)): c
        for u, c in closed.terms.items()
    }
    assert by_exponent == closed_by_exponent
    # the image sits in x_{n-1}^{-1} C[x_1, .., x_{n-2}, x_n]
    for exp in closed_by_exponent:
        assert exp[n - 2] == -1
        assert all(e >= 0 and e.denominator == 1 for i, e in enumerate(exp) if i != n - 2)


def test_ext1_generator_single_monomial_case():
    gen = ext1_generator((1, 2, 5), 0)
    assert gen.exact
    assert gen.terms == {(0, 0, 0): F(2)}  # 2 * x2^{-1}


def test_ext1_generator_validation():
    with pytest.raises(InvalidInputError):
        ext1_generator((2, 3), 2)
    with pytest.raises(InvalidInputError):
        ext1_generator((1, 2, 5), F(1, 2))
