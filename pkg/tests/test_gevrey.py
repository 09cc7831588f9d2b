import math
from fractions import Fraction as F

import pytest

from gkzcurve.errors import InvalidInputError
from gkzcurve.gamma import gamma_series, singular_exponents
from gkzcurve.gevrey import (
    borel_rho,
    dimension_table,
    gevrey_index_estimate,
    polynomial_solution,
    slope_report,
    slope_threshold,
)
from gkzcurve.lattice import curve_matrix
from gkzcurve.restriction import gevrey_envelope_fit
from gkzcurve.series import TruncationFrontier, apply_operator, verify_annihilation
from gkzcurve.system import build_system


def singular_series(entries, beta, index, bound):
    system = build_system(entries, beta)
    v = singular_exponents(system)[index]
    return gamma_series(v, system, TruncationFrontier.uniform(len(entries), bound)), system


# ---------------------------------------------------------------------------
# Borel rescaling


def test_borel_rho_identity_at_s_1():
    f, _ = singular_series((2, 3), 1, 1, 30)
    scaled = borel_rho(f, 1, 1)
    assert scaled.terms[1] == abs(f.coefficient((0, 0)))


def test_borel_rho_at_the_jump_gives_exponential_envelope():
    # |c_m| x2^{1+2m} with |c_m| = (3m)!/(2m+1)!: at s = 3/2 the rescaled
    # coefficients grow at most like C D^m
    f, _ = singular_series((2, 3), 1, 1, 120)
    scaled = borel_rho(f, F(3, 2), 1)
    env = scaled.envelope()
    values = [v for _, v in env]
    C, D = gevrey_envelope_fit(values)
    assert all(v <= C * D**m * (1 + 1e-9) for m, v in enumerate(values))
    # below the jump the rescaled terms still blow up super-exponentially:
    under = borel_rho(f, F(5, 4), 1).envelope()
    ratios = [math.log(b[1] / a[1]) for a, b in zip(under[:-1], under[1:])]
    assert ratios[-1] > ratios[0] + 1  # increasing log-ratios = not geometric


def test_borel_rho_rejects_fractional_degrees():
    system = build_system((2, 3), 1)
    f = gamma_series(singular_exponents(system)[0], system,
                     TruncationFrontier.uniform(2, 20))
    with pytest.raises(InvalidInputError):
        borel_rho(f, 2, 0)  # x1-exponents are half-integers here


# ---------------------------------------------------------------------------
# index estimation


@pytest.mark.parametrize(
    "entries,beta,index,expect,tol,bound",
    [
        ((2, 3), 1, 1, F(3, 2), 0.05, 160),
        ((2, 5), 1, 1, F(5, 2), 0.05, 230),
        ((3, 4), 1, 1, F(4, 3), 0.05, 230),
        ((3, 7), 2, 1, F(7, 3), 0.05, 320),
    ],
)
def test_gevrey_estimates_plane(entries, beta, index, expect, tol, bound):
    f, _ = singular_series(entries, beta, index, bound)
    est = gevrey_index_estimate(f, 1)
    assert est["estimate"] == pytest.approx(float(expect), abs=tol)


def test_gevrey_estimate_smooth_needs_matrix():
    f, system = singular_series((1, 2, 5), 1, 0, 220)
    with pytest.raises(InvalidInputError):
        gevrey_index_estimate(f, 2)
    est = gevrey_index_estimate(f, 2, matrix=system.matrix)
    assert est["estimate"] == pytest.approx(2.5, abs=0.10)


def test_gevrey_estimate_polynomial_convention():
    _, f = polynomial_solution((2, 3), 5)
    est = gevrey_index_estimate(f, 1)
    assert est == {"estimate": 1.0, "stderr": 0.0, "diagonal": est["diagonal"]}
    assert "polynomial" in est["diagonal"]


def test_gevrey_estimate_insufficient_terms():
    f, _ = singular_series((2, 3), 1, 1, 20)
    with pytest.raises(InvalidInputError):
        gevrey_index_estimate(f, 1, min_terms=30)


# ---------------------------------------------------------------------------
# slopes


def test_slope_report_plane():
    rep = slope_report((2, 3))
    assert not rep.entries[0].has_slope
    last = rep.entries[1]
    assert last.has_slope
    assert last.gevrey_jump == F(3, 2)
    assert last.slope == F(2, 2 - 3) == -2


def test_slope_report_smooth_and_general():
    rep = slope_report((1, 2, 5))
    assert [e.has_slope for e in rep.entries] == [False, False, True]
    assert rep.entries[2].gevrey_jump == F(5, 2)
    assert rep.entries[2].slope == F(2, -3)
    rep2 = slope_report((3, 4, 5))
    assert rep2.entries[2].gevrey_jump == F(5, 4)
    assert slope_threshold(curve_matrix((3, 4, 5))) == F(5, 4)
    for e in rep.entries + rep2.entries:
        if e.has_slope:
            assert e.gevrey_jump > 1


# ---------------------------------------------------------------------------
# dimension tables


def cells(entries, beta, s):
    return dimension_table(entries, beta, s).cells


ORG, P = "origin-or-Z", "smooth-point-of-Y"


def test_dimension_table_plane_special_above_threshold():
    got = dimension_table((2, 3), 2, 2)
    assert got.beta_class == "special" and got.threshold == F(3, 2)
    assert got.cell("O_X|Y", 0, ORG) == 1
    assert got.cell("O_X|Y", 1, P) == 1
    assert got.cell("O^(s)", 0, P) == 2
    assert got.cell("O^(s)", 1, P) == 0
    assert got.cell("Q_Y(s)", 0, P) == 2
    assert got.cell("Q_Y(s)", 0, ORG) == 0
    assert got.cell("Q_Y(s)", 1, P) == 0


def test_dimension_table_plane_special_below_threshold():
    got = dimension_table((2, 3), 2, F(5, 4))
    # Gevrey quotient has no solutions below the slope
    assert got.cell("Q_Y(s)", 0, P) == 0
    # the only Gevrey-s solution at p is the convergent polynomial one
    assert got.cell("O^(s)", 0, P) == 1
    # nonzero Ext^1 below the slope, witnessed by the germ recurrence
    assert got.cell("O^(s)", 1, P) == 1


def test_dimension_table_plane_generic():
    for s in (F(5, 4), F(3, 2), 2, "inf"):
        got = dimension_table((2, 3), 1, s)
        assert got.beta_class == "generic"
        for ext in (0, 1):
            for pt in (ORG, P):
                assert got.cell("O_X|Y", ext, pt) == 0
        high = s == "inf" or F(s) >= F(3, 2)
        assert got.cell("O^(s)", 0, P) == (2 if high else 0)
        assert got.cell("O^(s)", 1, P) == 0


def test_dimension_table_smooth():
    got = dimension_table((1, 2, 5), 3, "inf")
    assert got.beta_class == "special" and got.threshold == F(5, 2)
    assert got.cell("O^(s)", 0, P) == 2
    got_low = dimension_table((1, 2, 5), 3, 2)
    assert got_low.cell("O^(s)", 0, P) == 1
    assert got_low.cell("Q_Y(s)", 0, P) == 0
    assert dimension_table((1, 2, 5), F(1, 2), 3).cell("O^(s)", 0, P) == 2


def test_dimension_table_general_flags_generic_validity():
    got = dimension_table((3, 4, 5), 2, "inf")
    assert got.validity == "generic-beta"
    assert dimension_table((2, 3), 2, 2).validity == "exact"


def test_dimension_table_rejects_bad_s():
    with pytest.raises(InvalidInputError):
        dimension_table((2, 3), 1, F(1, 2))


# ---------------------------------------------------------------------------
# polynomial solutions


def test_polynomial_solution_plane():
    got = polynomial_solution((2, 3), 6)
    assert got is not None
    q, f = got
    assert q == 0 and f.exact
    system = build_system((2, 3), 6)
    for op in system.operators:
        assert apply_operator(op, f).is_zero()
    assert polynomial_solution((2, 3), 1) is None
    assert polynomial_solution((2, 3), F(1, 2)) is None


def test_polynomial_solution_smooth():
    got = polynomial_solution((1, 2, 5), 7)
    assert got is not None
    q, f = got
    assert q == 1
    system = build_system((1, 2, 5), 7)
    for op in system.operators:
        assert apply_operator(op, f).is_zero()


def test_polynomial_solution_general_via_homogenization():
    got = polynomial_solution((3, 4, 5), 7)
    assert got is not None
    _, f = got
    assert f.n == 3
    system = build_system((3, 4, 5), 7)
    for op in system.operators:
        assert apply_operator(op, f).is_zero()
    # 1, 2 are gaps of the semigroup <3,4,5>
    assert polynomial_solution((3, 4, 5), 2) is None
