"""Homogenization, b-functions, restriction decompositions, Ext^1 data.

Adding a column of 1's to a general matrix (a_1 ... a_n) produces the
smooth-shaped matrix A' = (1 a_1 ... a_n); the hypergeometric module of A
is recovered (for generic parameters) by restricting the module of A' to
x_0 = 0.  This module packages:

* :func:`homogenize` -- A' together with the contiguity operators
  Q_i = d_0 d_i^{delta_i} - d^{rho_i} built from minimal semigroup data;
* :func:`b_function_1kakb` -- the b-function of the (1 ka kb) system with
  respect to the weight (1, 0, 0), namely tau (tau-1) ... (tau-k+1) for
  generic parameters;
* :func:`restrict_decomposition` -- the direct-sum shape of a restricted
  module, as a list of (plane or general matrix, parameter) components;
* :func:`ext1_recurrence_solve` -- coefficientwise solution of P(h) = f at
  a germ off the origin on the singular line, plus the Gevrey envelope
  check |h_{k+am}| <= C D^m (k+am)!^{s-1} at s = b/a;
* :func:`ext1_generator` -- the exceptional image P_{n-1}(phi_vtilde) for a
  smooth matrix, in closed form (an exact finite sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidInputError, InvariantViolationError
from .gamma import modified_exponent
from .lattice import CurveMatrix, curve_matrix, homogenize_matrix, minimal_delta
from .rationals import as_rational, falling_factorial_1d, format_rational
from .series import TruncatedSeries, TruncationFrontier, WeylOperator
from .system import HypergeometricSystem, build_system


# ---------------------------------------------------------------------------
# homogenization


@dataclass(frozen=True)
class Homogenization:
    matrix: CurveMatrix           # A' = (1 a_1 ... a_n)
    system: HypergeometricSystem  # generators of the A' system, incl. Q_i
    deltas: tuple[int, ...]
    rhos: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "matrix": list(self.matrix.entries),
            "deltas": list(self.deltas),
            "rhos": [list(r) for r in self.rhos],
            "operators": [op.to_json() for op in self.system.operators],
        }


def homogenize(A, beta) -> Homogenization:
    """Homogenize a general matrix and assemble the A'-system for beta."""
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    if A.family != "general":
        raise InvalidInputError("homogenize expects a general matrix")
    Ah = homogenize_matrix(A)
    system = build_system(Ah, beta)
    data = [minimal_delta(A, i) for i in range(A.n)]
    return Homogenization(
        Ah, system,
        tuple(d for d, _ in data),
        tuple(r for _, r in data),
    )


# ---------------------------------------------------------------------------
# b-function


@dataclass(frozen=True)
class BFunction:
    """b(tau) for the restriction to x_0 = 0 w.r.t. the weight (1, 0, ..., 0)."""

    k: int
    roots: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.k

    @property
    def biggest_root(self) -> int:
        return self.roots[-1]

    def coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients of prod (tau - r), lowest degree first."""
        coeffs = [Fraction(1)]
        for r in self.roots:
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= r * c
            coeffs = nxt
        return tuple(coeffs)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "roots": list(self.roots),
            "coefficients": [format_rational(c) for c in self.coefficients()],
        }


def b_function_1kakb(k: int, a: int, b: int) -> BFunction:
    """b(tau) = tau (tau - 1) ... (tau - k + 1) for A = (1, ka, kb).

    Valid for generic parameters; requires 1 <= a < b, gcd(a, b) = 1 and
    ka > 1 so that (1, ka, kb) is a smooth-family matrix.
    """
    if not (1 <= a < b):
        raise InvalidInputError("need 1 <= a < b")
    if math.gcd(a, b) != 1:
        raise InvalidInputError("need gcd(a, b) = 1")
    if k < 1 or k * a <= 1:
        raise InvalidInputError("need k >= 1 and ka > 1")
    return BFunction(k, tuple(range(k)))


# ---------------------------------------------------------------------------
# restriction decompositions


@dataclass(frozen=True)
class RestrictionDecomposition:
    """M restricted to a coordinate subspace, as a direct sum of components.

    Each component is (matrix, parameter).  ``generic`` records that the
    isomorphism holds for all but finitely many parameters.
    """

    source: CurveMatrix
    beta: Fraction
    restricted_vars: tuple[int, ...]
    components: tuple[tuple[CurveMatrix, Fraction], ...]
    generic: bool = True

    def to_json(self) -> dict:
        return {
            "source": list(self.source.entries),
            "beta": format_rational(self.beta),
            "restricted_vars": list(self.restricted_vars),
            "generic": self.generic,
            "components": [
                {"matrix": list(m.entries), "beta": format_rational(b)}
                for m, b in self.components
            ],
        }


def restrict_decomposition(Aprime, beta) -> RestrictionDecomposition:
    """Direct-sum decomposition of the restricted hypergeometric module.

    Three shapes are recognized:

    * homogenized (1 a_1 ... a_n): restriction to x_0 = 0 is the single
      module of (a_1 ... a_n) with the same parameter;
    * (1 c_2 c_3) with k = gcd(c_2, c_3): restriction to x_1 = 0 splits
      into k plane components ((c_2/k c_3/k), (beta - i)/k), i = 0..k-1;
    * (1 a_2 ... a_n), n > 3: restriction to x_1 = ... = x_{n-2} = 0
      splits into k = gcd(a_{n-1}, a_n) components ((a_{n-1} a_n), beta-i).

    All decompositions hold for generic parameters.
    """
    if not isinstance(Aprime, CurveMatrix):
        Aprime = curve_matrix(Aprime)
    beta = as_rational(beta)
    ent = Aprime.entries
    n = Aprime.n

    if Aprime.family == "homogenized":
        comp = ((Aprime.base, beta),)
        return RestrictionDecomposition(Aprime, beta, (0,), comp)

    if Aprime.family != "smooth":
        raise InvalidInputError(
            "restriction shapes start from a smooth or homogenized matrix"
        )

    # (1 c_2 ... c_n) restricted to x_1 = ... = x_{n-2} = 0.  The component
    # matrix (c_{n-1} c_n) with parameter beta - i is normalized by the gcd k:
    # dividing both entries by k divides the Euler operator by k, so the
    # component is the plane module of (c_{n-1}/k c_n/k) at (beta - i)/k.
    p, q = ent[-2], ent[-1]
    k = math.gcd(p, q)
    base = curve_matrix((p // k, q // k))
    comps = tuple((base, Fraction(beta - i, k)) for i in range(k))
    return RestrictionDecomposition(Aprime, beta, tuple(range(n - 2)), comps)


# ---------------------------------------------------------------------------
# Ext^1 recurrence at a germ on the singular line


def ext1_recurrence_solve(A, epsilon, beta, f_coeffs, h_init=None,
                          num_terms: int = 40) -> dict:
    """Solve P(h) = f coefficientwise at a germ off the origin.

    For a plane matrix (a b), in coordinates centered at (epsilon, 0) the
    unknown h = sum h_{k+am} x_1^{(beta-bk)/a - bm} x_2^{k+am} satisfies

        h_{k+a(m+1)} = [ ((beta-bk)/a - bm)_b * h_{k+am} - f_{k+am} ]
                       / (k + a(m+1))_a ,

    one chain per residue k = 0..a-1, where (z)_r is the 1-d falling
    factorial.  ``f_coeffs`` and the optional ``h_init`` map (k, m) to
    rationals; missing f entries are 0 and missing initial values h_{k}
    (i.e. (k, 0)) default to 0.  Returns {(k, m): h_{k+am}} for
    m = 0..num_terms.
    """
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    if A.family != "plane":
        raise InvalidInputError("the recurrence is stated for plane matrices")
    epsilon = as_rational(epsilon)
    if epsilon == 0:
        raise InvalidInputError("the germ must sit off the origin: epsilon != 0")
    beta = as_rational(beta)
    a, b = A.entries
    f = {(int(k), int(m)): as_rational(c) for (k, m), c in f_coeffs.items()}
    for (k, m) in f:
        if not (0 <= k < a) or m < 0:
            raise InvalidInputError(f"f index {(k, m)} out of range")
    init = {int(k): as_rational(c) for k, c in (h_init or {}).items()}
    h: dict[tuple[int, int], Fraction] = {}
    for k in range(a):
        h[(k, 0)] = init.get(k, Fraction(0))
        lead = Fraction(beta - b * k, a)
        for m in range(num_terms):
            num = (
                falling_factorial_1d(lead - b * m, b) * h[(k, m)]
                - f.get((k, m), Fraction(0))
            )
            den = falling_factorial_1d(k + a * (m + 1), a)
            if den == 0:
                raise InvariantViolationError("vanishing factorial denominator")
            h[(k, m + 1)] = num / den
    return h


def recurrence_series(A, beta, table, shift: int = 0,
                      bound: int = 40) -> list[TruncatedSeries]:
    """Assemble a coefficient table {(k, m): c} into two-variable series.

    Entry (k, m) contributes  c * x_1^{(beta-bk)/a - b(m+shift)} x_2^{k+am}.
    With shift=0 this reconstructs h from :func:`ext1_recurrence_solve`;
    with shift=1 it reconstructs the right-hand side f in its normal form.
    Chains with different k have incommensurable base exponents, so one
    series per residue k is returned, in increasing order of k.
    """
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    a, b = A.entries
    beta = as_rational(beta)
    frontier = TruncationFrontier.uniform(2, bound)
    per_k: dict[int, dict] = {}
    for (k, m), c in table.items():
        per_k.setdefault(k, {})[(-b * (m + shift), a * m)] = c
    out = []
    for k in sorted(per_k):
        base = (Fraction(beta - b * k, a), Fraction(k))
        terms = {u: c for u, c in per_k[k].items() if frontier.contains(u)}
        out.append(TruncatedSeries(base, terms, frontier))
    return out


def gevrey_envelope_fit(values: Sequence[float]) -> tuple[float, float]:
    """Fit r_m <= C D^m: D from the least-squares slope of ln r_m, then the
    smallest C making the bound hold on every given term."""
    pts = [(m, v) for m, v in enumerate(values) if v > 0]
    if len(pts) < 2:
        return (max([v for _, v in pts], default=0.0) or 1.0, 1.0)
    ms = np.array([m for m, _ in pts], dtype=float)
    ys = np.array([math.log(v) for _, v in pts])
    slope, intercept = np.polyfit(ms, ys, 1)
    D = math.exp(slope)
    C = max(v / D**m for m, v in pts)
    return C, D


# ---------------------------------------------------------------------------
# Ext^1 generator for the smooth family


def ext1_generator(A, beta) -> TruncatedSeries:
    """The exceptional image P_{n-1}(phi_vtilde) for a smooth matrix.

    With beta a nonnegative integer, the image is the exact finite sum

        sum_{m in Mtilde}  (beta + a_{n-1})!
            / ( m_2! .. m_{n-2}! m_n! e_1(m)! )
            * x_1^{e_1(m)} x_2^{m_2} .. x_{n-1}^{-1} x_n^{m_n},

    where e_1(m) = beta - sum_{i != n-1} a_i m_i and Mtilde collects the
    finitely many m with e_1(m) >= 0.  It represents a nonzero Ext^1
    class: phi_vtilde is killed by the Euler operator and by every other
    toric generator, but not by P_{n-1}.  (Cross-checked in the test suite
    against applying P_{n-1} to the truncated modified series.)
    """
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    if A.family not in ("smooth", "homogenized"):
        raise InvalidInputError("ext1_generator expects a smooth matrix")
    beta = as_rational(beta)
    if beta.denominator != 1 or beta < 0:
        raise InvalidInputError("beta must be a nonnegative integer here")
    nbeta = int(beta)
    ent = A.entries
    n = len(ent)
    p = ent[n - 2]
    top = nbeta
    others = [i for i in range(1, n) if i != n - 2]
    top_fact = math.factorial(nbeta + p)

    base = [Fraction(0)] * n
    base[n - 2] = Fraction(-1)
    terms: dict[tuple[int, ...], Fraction] = {}

    def rec(pos: int, m: list[int], cost: int) -> None:
        if pos == len(others):
            e1 = top - cost
            denom = math.factorial(e1)
            for idx, i in enumerate(others):
                denom *= math.factorial(m[idx])
            u = [0] * n
            u[0] = e1
            for idx, i in enumerate(others):
                u[i] = m[idx]
            terms[tuple(u)] = Fraction(top_fact, denom)
            return
        i = others[pos]
        mi = 0
        while cost + ent[i] * mi <= top:
            rec(pos + 1, m + [mi], cost + ent[i] * mi)
            mi += 1

    rec(0, [], 0)
    span = max(sum(abs(x) for x in u) for u in terms) + 1
    frontier = TruncationFrontier.uniform(n, span)
    return TruncatedSeries(tuple(base), terms, frontier, exact=True)
