"""Gevrey indices, slope reports, solution-space dimension tables.

A series sum_i f_i x^i is Gevrey of order s along x when
sum_i f_i / (i!)^{s-1} x^i converges; the Gevrey *index* is the least such
s.  For the singular Gamma series of a plane matrix (a b) the index along
the second variable is b/a, and for a smooth matrix (1 a_2 .. a_n) the
index along the last variable is a_n / a_{n-1}.  Numerically the index is
recovered from a coefficient diagonal: ln|c_d| grows like
(s-1) d ln d + O(d), so a least-squares fit of ln|c_d| against
(d ln d, d, ln d, 1) estimates s - 1 in the leading coordinate.  The
nuisance regressors d and ln d absorb the C D^d and polynomial envelope
factors that the plain d ln d regression cannot, which is what makes the
estimate converge at a few dozen terms.

The dimension tables collect, for the solution sheaves

* O_X|Y       convergent series along the singular hyperplane Y,
* O^(s)       formal/Gevrey-s series along Y,
* Q_Y(s)      the Gevrey quotient O^(s) / O_X|Y,

the dimensions of Ext^0 and Ext^1 of the hypergeometric module at the
special point (origin, resp. Y meet Z) and at a generic smooth point of Y.
All higher Ext groups vanish.  The entries depend only on whether beta
lies in the semigroup N A ("special") and on the position of s relative to
the unique slope threshold (b/a, resp. a_n/a_{n-1}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidInputError
from .gamma import gamma_coefficient, modified_exponent, nsupp, _beta_in_semigroup
from .lattice import CurveMatrix, curve_matrix, homogenize_matrix
from .rationals import as_rational, log_abs, log_factorial
from .series import TruncatedSeries, TruncationFrontier
from .system import HypergeometricSystem, build_system

INF = Fraction(10**9)  # sentinel used internally for s = infinity


def _coerce_s(s):
    """Accept a rational, an int, float('inf'), or the string 'inf'."""
    if s in (math.inf, "inf", "oo"):
        return None  # None encodes infinity
    s = as_rational(s)
    if s < 1:
        raise InvalidInputError("Gevrey order s must satisfy s >= 1")
    return s


def _s_at_least(s, threshold: Fraction) -> bool:
    return s is None or s >= threshold


# ---------------------------------------------------------------------------
# Borel-type rescaling


@dataclass(frozen=True)
class BorelScaledSeries:
    """Coefficients of f rescaled by (i!)^{-(s-1)} along one variable.

    For s > 1 the values are floats (the rescaling is transcendental); for
    s = 1 the original exact coefficients are kept.
    """

    s: Optional[Fraction]
    var: int
    terms: dict

    def envelope(self) -> list[tuple[int, float]]:
        return sorted(
            (d, abs(v) if isinstance(v, float) else abs(float(v)))
            for d, v in self.terms.items()
        )


def borel_rho(f: TruncatedSeries, s, var: int) -> BorelScaledSeries:
    """Group f by x_var-degree and divide the coefficients by (i!)^{s-1}.

    Degrees must be nonnegative integers (the series is viewed as a power
    series in x_var).  Multiple terms of equal degree are summed in
    absolute value, which is the right input for growth estimates.
    """
    s = _coerce_s(s)
    if not 0 <= var < f.n:
        raise InvalidInputError("variable index out of range")
    degrees: dict[int, Fraction] = {}
    for u, c in f.terms.items():
        d = f.base[var] + u[var]
        if d.denominator != 1 or d < 0:
            raise InvalidInputError(
                "borel_rho needs nonnegative integer degrees along the chosen variable"
            )
        d = int(d)
        degrees[d] = degrees.get(d, Fraction(0)) + abs(c)
    if s == 1:
        return BorelScaledSeries(s, var, degrees)
    out = {}
    for d, c in degrees.items():
        if c == 0:
            continue
        if s is None:
            out[d] = 0.0 if d > 0 else float(c)
            continue
        out[d] = math.exp(log_abs(c) - float(s - 1) * log_factorial(d))
    return BorelScaledSeries(s, var, out)


# ---------------------------------------------------------------------------
# index estimation


def _diagonal_direction(A: CurveMatrix, var: int) -> tuple[int, ...]:
    """The primitive kernel direction whose multiples form the growth
    diagonal along x_var.

    For two variables the kernel itself is one-dimensional.  Otherwise the
    diagonal is supported on the last two coordinates: the primitive vector
    (0, ..., 0, -a_n/g, a_{n-1}/g) with g = gcd leaves all other exponents
    fixed, so its multiples stay inside every support set N_v.  The sign is
    normalized so that the x_var-degree increases along the diagonal.
    """
    ent = A.entries
    n = A.n
    if n == 2:
        z = (ent[1], -ent[0])
    else:
        g = math.gcd(ent[-2], ent[-1])
        z = [0] * n
        z[n - 2] = -(ent[-1] // g)
        z[n - 1] = ent[-2] // g
        z = tuple(z)
    if z[var] == 0:
        raise InvalidInputError(f"no growth diagonal along variable {var}")
    if z[var] < 0:
        z = tuple(-x for x in z)
    return tuple(z)


def gevrey_index_estimate(f: TruncatedSeries, var: int, min_terms: int = 8,
                          matrix=None) -> dict:
    """Estimate the Gevrey index of f along x_var from coefficient growth.

    Reads the coefficients c_m on the diagonal u = m z, m >= 0, where z is
    the primitive kernel direction of :func:`_diagonal_direction` (for two
    variables z can be inferred from the series itself, otherwise pass the
    matrix), and fits

        ln|c_m|  ~  alpha * d ln d  +  gamma * d  +  delta * ln d  +  mu,
        d = x_var-degree of the m-th diagonal term,

    after discarding the first 20% of the terms as burn-in.  The nuisance
    regressors soak up the Stirling corrections, leaving s - 1 in alpha.
    Returns {'estimate': 1 + alpha, 'stderr': ..., 'diagonal': ...}.
    Exact (complete) series are polynomials and get index 1 by convention.
    """
    if not 0 <= var < f.n:
        raise InvalidInputError("variable index out of range")
    if f.exact:
        return {"estimate": 1.0, "stderr": 0.0,
                "diagonal": "finite series (polynomial): index 1 by convention"}
    if matrix is not None:
        if not isinstance(matrix, CurveMatrix):
            matrix = curve_matrix(matrix)
        z = _diagonal_direction(matrix, var)
    elif f.n == 2:
        u = next((u for u in f.terms if any(u)), None)
        if u is None:
            raise InvalidInputError("cannot take a diagonal of the zero series")
        g = math.gcd(*u)
        z = tuple(x // g for x in u)
        if z[var] == 0:
            raise InvalidInputError(f"no growth diagonal along variable {var}")
        if z[var] < 0:
            z = tuple(-x for x in z)
    else:
        raise InvalidInputError(
            "pass matrix= to choose the growth diagonal in more than two variables"
        )

    points: list[tuple[float, float]] = []  # (degree, ln|c|)
    m = 0
    while True:
        u = tuple(m * x for x in z)
        if not f.frontier.contains(u):
            break
        c = f.coefficient(u)
        if c != 0:
            d = float(f.base[var] + u[var])
            if d >= 1.0:
                points.append((d, log_abs(c)))
        m += 1
    if len(points) < min_terms:
        raise InvalidInputError(
            f"only {len(points)} diagonal terms available, need {min_terms}"
        )
    burn = len(points) // 5
    points = points[burn:]
    d = np.array([p[0] for p in points])
    y = np.array([p[1] for p in points])
    X = np.column_stack([d * np.log(d), d, np.log(d), np.ones_like(d)])
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    dof = max(len(d) - X.shape[1], 1)
    sigma2 = float(resid @ resid) / dof
    cov = sigma2 * np.linalg.inv(X.T @ X)
    stderr = float(np.sqrt(max(cov[0, 0], 0.0)))
    return {
        "estimate": 1.0 + float(coef[0]),
        "stderr": stderr,
        "diagonal": (
            f"offsets m*{z}, x_{var}-degrees {d[0]:g}..{d[-1]:g} "
            f"({len(points)} points after burn-in)"
        ),
    }


# ---------------------------------------------------------------------------
# slopes


@dataclass(frozen=True)
class SlopeEntry:
    variable: int
    has_slope: bool
    gevrey_jump: Optional[Fraction] = None
    slope: Optional[Fraction] = None


@dataclass(frozen=True)
class SlopeReport:
    matrix: CurveMatrix
    entries: tuple[SlopeEntry, ...]

    def to_json(self) -> dict:
        from .rationals import format_rational
        return {
            "matrix": list(self.matrix.entries),
            "slopes": [
                {
                    "variable": e.variable,
                    "has_slope": e.has_slope,
                    **(
                        {
                            "gevrey_jump": format_rational(e.gevrey_jump),
                            "slope": format_rational(e.slope),
                        }
                        if e.has_slope
                        else {}
                    ),
                }
                for e in self.entries
            ],
        }


def slope_threshold(A: CurveMatrix) -> Fraction:
    """The unique Gevrey jump: b/a for plane, a_n/a_{n-1} otherwise."""
    ent = A.entries
    return Fraction(ent[-1], ent[-2])


def slope_report(A) -> SlopeReport:
    """Irregularity slopes along each coordinate hyperplane.

    Only the hyperplane of the last variable carries a slope; the jump in
    Gevrey index there is slope_threshold(A), recorded both as the jump
    and in the customary negative normalization  a/(a-b) < 0.
    """
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    ent = A.entries
    n = A.n
    jump = slope_threshold(A)
    entries = [SlopeEntry(i, False) for i in range(n - 1)]
    entries.append(
        SlopeEntry(
            n - 1,
            True,
            jump,
            Fraction(ent[-2], ent[-2] - ent[-1]),
        )
    )
    return SlopeReport(A, tuple(entries))


# ---------------------------------------------------------------------------
# dimension tables


SHEAVES = ("O_X|Y", "O^(s)", "Q_Y(s)")
POINTS = ("origin-or-Z", "smooth-point-of-Y")


@dataclass(frozen=True)
class DimensionTable:
    """Ext^0 / Ext^1 dimensions, keyed by (sheaf, ext_index, point_class)."""

    matrix: CurveMatrix
    beta: Fraction
    s: Optional[Fraction]  # None = infinity
    beta_class: str        # 'special' or 'generic'
    threshold: Fraction
    validity: str          # 'exact' or 'generic-beta'
    cells: dict

    def cell(self, sheaf: str, ext_index: int, point: str) -> int:
        return self.cells[(sheaf, ext_index, point)]

    def to_json(self) -> dict:
        from .rationals import format_rational
        return {
            "matrix": list(self.matrix.entries),
            "beta": format_rational(self.beta),
            "s": "inf" if self.s is None else format_rational(self.s),
            "beta_class": self.beta_class,
            "threshold": format_rational(self.threshold),
            "validity": self.validity,
            "cells": [
                {"sheaf": k[0], "ext": k[1], "point": k[2], "dim": v}
                for k, v in sorted(self.cells.items())
            ],
        }

    def render(self) -> str:
        s_txt = "inf" if self.s is None else str(self.s)
        head = (
            f"A = {self.matrix}   beta = {self.beta} ({self.beta_class})   "
            f"s = {s_txt}   threshold = {self.threshold}"
        )
        rows = [head, "-" * len(head)]
        label = {"origin-or-Z": "origin/Z", "smooth-point-of-Y": "point p"}
        rows.append(f"{'sheaf':8} | {'ext0 ' + label[POINTS[0]]:>14} "
                    f"{'ext0 ' + label[POINTS[1]]:>14} "
                    f"{'ext1 ' + label[POINTS[0]]:>14} "
                    f"{'ext1 ' + label[POINTS[1]]:>14}")
        for sheaf in SHEAVES:
            cells = [self.cell(sheaf, e, p) for e in (0, 1) for p in POINTS]
            rows.append(f"{sheaf:8} | " + " ".join(f"{c:>14}" for c in cells))
        return "\n".join(rows)


def dimension_table(A, beta, s) -> DimensionTable:
    """Dimensions of Ext^0 and Ext^1 with values in the three solution
    sheaves, at the special point and at a generic smooth point of Y.

    The table is exact for the plane and smooth families and valid for
    generic parameters in the general family.
    """
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    beta = as_rational(beta)
    s = _coerce_s(s)
    thr = slope_threshold(A)
    if A.family == "plane":
        special = _beta_in_semigroup(A, beta)
        rank0 = A.entries[0]
        validity = "exact"
    elif A.family in ("smooth", "homogenized"):
        special = beta.denominator == 1 and beta >= 0
        rank0 = A.entries[-2]
        validity = "exact"
    else:
        special = _beta_in_semigroup(A, beta)
        rank0 = A.entries[-2]
        validity = "generic-beta"
    high = _s_at_least(s, thr)
    one = 1 if special else 0

    cells = {
        ("O_X|Y", 0, POINTS[0]): one,
        ("O_X|Y", 0, POINTS[1]): one,
        ("O_X|Y", 1, POINTS[0]): one,
        ("O_X|Y", 1, POINTS[1]): one,
        # At the special point the Gevrey quotient has no solutions in any
        # degree, so the formal/Gevrey sheaf agrees with the convergent one.
        ("O^(s)", 0, POINTS[0]): one,
        ("O^(s)", 1, POINTS[0]): one,
        ("O^(s)", 0, POINTS[1]): rank0 if high else one,
        ("O^(s)", 1, POINTS[1]): 1 if (special and not high) else 0,
        ("Q_Y(s)", 0, POINTS[0]): 0,
        ("Q_Y(s)", 0, POINTS[1]): rank0 if high else 0,
        ("Q_Y(s)", 1, POINTS[0]): 0,
        ("Q_Y(s)", 1, POINTS[1]): 0,
    }
    return DimensionTable(
        A, beta, s, "special" if special else "generic", thr, validity, cells
    )


# ---------------------------------------------------------------------------
# polynomial solutions


def polynomial_solution(A, beta) -> Optional[tuple[int, TruncatedSeries]]:
    """The (unique up to scale) polynomial solution, or None.

    Present exactly when beta lies in the semigroup N A.  Returns
    (q, series) where q indexes the singular exponent v^q whose Gamma
    series terminates; the series is exact (complete) and can be checked
    against the system without frontier loss.
    """
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    beta = as_rational(beta)
    if not _beta_in_semigroup(A, beta):
        return None
    nbeta = int(beta)

    if A.family == "plane":
        a, b = A.entries
        q = next(
            k for k in range(a)
            if nbeta - k * b >= 0 and (nbeta - k * b) % a == 0
        )
        m0 = (nbeta - q * b) // a
        v = (Fraction(m0), Fraction(q))
        offsets = [(-b * m, a * m) for m in range(m0 // b + 1)]
    elif A.family in ("smooth", "homogenized"):
        ent = A.entries
        n = len(ent)
        p = ent[n - 2]
        q = nbeta % p
        m0 = (nbeta - q) // p
        v = [Fraction(0)] * n
        v[0] = Fraction(q)
        v[n - 2] = Fraction(m0)
        v = tuple(v)
        # enumerate every monomial exponent m >= 0 with <A, m> = beta and
        # record its offset from the base exponent v
        offsets = []

        def rec(pos, m, cost):
            if pos == n:
                # first coordinate has weight 1 and takes the remainder
                m = [nbeta - cost] + m[1:]
                offsets.append(tuple(mi - int(vi) for mi, vi in zip(m, v)))
                return
            mi = 0
            while cost + ent[pos] * mi <= nbeta:
                rec(pos + 1, m + [mi], cost + ent[pos] * mi)
                mi += 1
        rec(1, [0], 0)
    else:
        # general family: restrict the homogenized polynomial (generic beta)
        from .gamma import restrict_series_x0
        got = polynomial_solution(homogenize_matrix(A), beta)
        if got is None:
            return None
        q, f = got
        return q, restrict_series_x0(f)

    terms = {}
    for u in offsets:
        c = gamma_coefficient(v, u)
        if c != 0:
            terms[u] = c
    span = max((sum(abs(x) for x in u) for u in terms), default=0)
    frontier = TruncationFrontier.uniform(len(v), span)
    return q, TruncatedSeries(v, terms, frontier, exact=True)
