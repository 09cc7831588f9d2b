"""Gamma series: exponents, coefficients, and truncated expansions.

For an exponent vector v with A.v = beta, the Gamma series is

    phi_v = x^v  sum_{u in N_v}  Gamma[v; u] x^u,
    N_v   = { u in ker A : nsupp(v + u) = nsupp(v) },
    Gamma[v; u] = (v)_{u_-} / (v + u)_{u_+},

where nsupp(w) collects the coordinates where w is a *negative integer*
(negative non-integers do not count), (z)_alpha is the coordinatewise
falling factorial, and Gamma[v; 0] = 1.  phi_v is a formal solution of the
hypergeometric system exactly when v has minimal negative support: no
lattice translate v + u has nsupp properly contained in nsupp(v).

Exponent menagerie per family (indices 0-based in code):

* plane (a b):   singular  v^k = ((beta - kb)/a, k),        k = 0..a-1
                 generic   v^j = (j, (beta - ja)/b),        j = 0..b-1
* smooth (1 a_2 .. a_n):
                 singular  v^j = (j, 0,.., (beta-j)/a_{n-1}, 0),  j < a_{n-1}
                 generic   w^j = (j, 0,..,0, (beta-j)/a_n),       j < a_n
* general:       exponents of the homogenized matrix (1 a_1 .. a_n), to be
                 restricted to x_0 = 0 afterwards (generic-parameter facts).

When beta lies in the semigroup N A there is additionally a *modified*
exponent vtilde: the unique lattice translate of the polynomial exponent
whose negative support is nonempty but not minimal.  Its series phi_vtilde
is killed by the Euler operator and all toric generators except one, and
that exceptional image is the Ext^1 witness used in the restriction module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidInputError, InvariantViolationError
from .lattice import (
    CurveMatrix,
    curve_matrix,
    enumerate_offsets,
    homogenize_matrix,
    kernel_basis,
    semigroup_contains,
)
from .rationals import as_rational, as_rational_vector, falling_factorial
from .series import TruncatedSeries, TruncationFrontier
from .system import HypergeometricSystem, build_system


@dataclass(frozen=True)
class ExponentVector:
    """A rational vector v with A.v = beta, tagged by its role."""

    v: tuple[Fraction, ...]
    label: str = ""
    index: Optional[int] = None

    def __iter__(self):
        return iter(self.v)

    def __len__(self):
        return len(self.v)


def _vec(v) -> tuple[Fraction, ...]:
    if isinstance(v, ExponentVector):
        return v.v
    return as_rational_vector(v)


def nsupp(v) -> frozenset[int]:
    """Indices (0-based) where v is a negative integer."""
    return frozenset(
        i for i, x in enumerate(_vec(v))
        if x.denominator == 1 and x < 0
    )


@dataclass(frozen=True)
class MinimalSupportResult:
    minimal: bool
    exact: bool
    search_bound: Optional[int] = None

    def __bool__(self) -> bool:
        return self.minimal


def has_minimal_nsupp(v, A, search_bound: Optional[int] = None) -> MinimalSupportResult:
    """Does no lattice translate of v have strictly smaller negative support?

    For two variables the answer is exact: the kernel is one-dimensional
    and nsupp(v + m u) is monotone in m on each coordinate, so only the
    crossing values of m need checking.  In more variables the search is a
    box scan of radius ``search_bound`` per coordinate (default 160) and
    the result records that it was a bounded search.
    """
    if not isinstance(A, CurveMatrix):
        A = curve_matrix(A)
    v = _vec(v)
    if len(v) != A.n:
        raise InvalidInputError("exponent dimension mismatch")
    base_supp = nsupp(v)
    if not base_supp:
        return MinimalSupportResult(True, True)

    if A.n == 2:
        (g,) = kernel_basis(A)
        gu = g.u
        candidates = {0}
        for i in (0, 1):
            if v[i].denominator != 1 or gu[i] == 0:
                continue
            # m where coordinate i crosses between >= 0 and <= -1
            crossing = Fraction(-v[i], gu[i])
            m0 = math.floor(crossing)
            candidates.update({m0 - 1, m0, m0 + 1})
        for m in candidates:
            supp = nsupp(tuple(x + m * y for x, y in zip(v, gu)))
            if supp < base_supp:
                return MinimalSupportResult(False, True)
        return MinimalSupportResult(True, True)

    bound = search_bound if search_bound is not None else 160
    frontier = TruncationFrontier.uniform(A.n, bound * A.n)
    for u in enumerate_offsets(A, frontier):
        if any(abs(x) > bound for x in u):
            continue
        supp = nsupp(tuple(a + b for a, b in zip(v, u)))
        if supp < base_supp:
            return MinimalSupportResult(False, False, bound)
    return MinimalSupportResult(True, False, bound)


def gamma_coefficient(v, u) -> Fraction:
    """Gamma[v; u] = (v)_{u_-} / (v + u)_{u_+}, zero off the support set N_v."""
    v = _vec(v)
    u = tuple(int(x) for x in u)
    if len(u) != len(v):
        raise InvalidInputError("offset dimension mismatch")
    shifted = tuple(a + b for a, b in zip(v, u))
    if nsupp(shifted) != nsupp(v):
        return Fraction(0)
    num = falling_factorial(v, tuple(max(-x, 0) for x in u))
    den = falling_factorial(shifted, tuple(max(x, 0) for x in u))
    if den == 0:
        raise InvariantViolationError(
            f"vanishing denominator at u={u}: the support filter should prevent this"
        )
    return num / den


def gamma_series(v, system: HypergeometricSystem,
                 frontier: TruncationFrontier) -> TruncatedSeries:
    """Truncated expansion of phi_v inside the frontier.

    Complete: every u in N_v with weighted norm <= frontier.bound appears
    (possibly with coefficient zero, which is then dropped).
    """
    v = _vec(v)
    A = system.matrix
    if len(v) != A.n:
        raise InvalidInputError("exponent dimension mismatch")
    if A.dot(v) != system.beta:
        raise InvalidInputError(f"A.v = {A.dot(v)} differs from beta = {system.beta}")
    terms = {}
    for u in enumerate_offsets(A, frontier, v):
        c = gamma_coefficient(v, u)
        if c != 0:
            terms[u] = c
    return TruncatedSeries(v, terms, frontier)


# ---------------------------------------------------------------------------
# exponent constructors


def _plane_singular(a: int, b: int, beta: Fraction) -> list[ExponentVector]:
    return [
        ExponentVector((Fraction(beta - k * b, a), Fraction(k)), "singular", k)
        for k in range(a)
    ]


def _plane_generic(a: int, b: int, beta: Fraction) -> list[ExponentVector]:
    return [
        ExponentVector((Fraction(j), Fraction(beta - j * a, b)), "generic", j)
        for j in range(b)
    ]


def _smooth_singular(ent: tuple[int, ...], beta: Fraction) -> list[ExponentVector]:
    n = len(ent)
    p = ent[n - 2]  # a_{n-1}
    out = []
    for j in range(p):
        v = [Fraction(0)] * n
        v[0] = Fraction(j)
        v[n - 2] = Fraction(beta - j, p)
        out.append(ExponentVector(tuple(v), "singular", j))
    return out


def _smooth_generic(ent: tuple[int, ...], beta: Fraction) -> list[ExponentVector]:
    n = len(ent)
    q = ent[n - 1]  # a_n
    out = []
    for j in range(q):
        v = [Fraction(0)] * n
        v[0] = Fraction(j)
        v[n - 1] = Fraction(beta - j, q)
        out.append(ExponentVector(tuple(v), "generic", j))
    return out


def singular_exponents(system: HypergeometricSystem) -> list[ExponentVector]:
    """Exponents of the solution basis along the singular direction.

    plane: a vectors; smooth/homogenized: a_{n-1} vectors.  For a general
    matrix the exponents of the homogenized matrix are returned (one extra
    coordinate); their series restrict to solutions at x_0 = 0 for generic
    parameters.
    """
    A, beta = system.matrix, system.beta
    if A.family == "plane":
        return _plane_singular(*A.entries, beta)
    if A.family in ("smooth", "homogenized"):
        return _smooth_singular(A.entries, beta)
    Ah = homogenize_matrix(A)
    return _smooth_singular(Ah.entries, beta)


def generic_exponents(system: HypergeometricSystem) -> list[ExponentVector]:
    """Exponents of the solution basis at a generic point (b resp. a_n many)."""
    A, beta = system.matrix, system.beta
    if A.family == "plane":
        return _plane_generic(*A.entries, beta)
    if A.family in ("smooth", "homogenized"):
        return _smooth_generic(A.entries, beta)
    Ah = homogenize_matrix(A)
    return _smooth_generic(Ah.entries, beta)


# ---------------------------------------------------------------------------
# modified exponent


def _beta_in_semigroup(A: CurveMatrix, beta: Fraction) -> bool:
    if beta.denominator != 1 or beta < 0:
        return False
    ent = A.base.entries if A.family == "homogenized" and A.base else A.entries
    return semigroup_contains(ent, int(beta)).member


def modified_exponent(system: HypergeometricSystem) -> Optional[tuple[int, ExponentVector]]:
    """(q, vtilde): the lattice translate of the polynomial exponent whose
    negative support is nonempty and *not* minimal.  None when beta is not
    in the semigroup N A.

    plane (a b): beta = q b + a m0 with 0 <= q < a, m0 in N; with
    m' = ceil((m0+1)/b), vtilde = (m0 - b m', q + a m').

    smooth (1 a_2 .. a_n): q = beta mod a_{n-1} and
    vtilde = (beta + a_{n-1}, 0, ..., 0, -1, 0).

    general: computed on the homogenized matrix.
    """
    A, beta = system.matrix, system.beta
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
        mprime = -((m0 + 1) // -b)  # ceil((m0+1)/b)
        v = (Fraction(m0 - b * mprime), Fraction(q + a * mprime))
        return q, ExponentVector(v, "modified", q)
    if A.family in ("smooth", "homogenized"):
        ent = A.entries
    else:
        ent = homogenize_matrix(A).entries
    n = len(ent)
    p = ent[n - 2]
    q = nbeta % p
    v = [Fraction(0)] * n
    v[0] = Fraction(nbeta + p)
    v[n - 2] = Fraction(-1)
    return q, ExponentVector(tuple(v), "modified", q)


def modified_series(system: HypergeometricSystem,
                    frontier: TruncationFrontier) -> TruncatedSeries:
    """phi_vtilde, truncated.  Killed by the Euler operator and by every
    toric generator except the distinguished one (see ext1_generator)."""
    got = modified_exponent(system)
    if got is None:
        raise InvalidInputError("beta lies outside the semigroup: no modified exponent")
    _, vt = got
    A = system.matrix
    if A.family == "general":
        raise InvalidInputError(
            "modified series of a general matrix lives on the homogenized system"
        )
    return gamma_series(vt, system, frontier)


# ---------------------------------------------------------------------------
# restriction of a series to x_0 = 0


def restrict_series_x0(f: TruncatedSeries) -> TruncatedSeries:
    """Keep the terms whose exponent of the first variable is zero, drop it.

    For a Gamma series of a homogenized matrix (integer base exponent in
    coordinate 0) this realizes the restriction to x_0 = 0.  The returned
    frontier bound shrinks by the weighted cost of the forced offset in
    coordinate 0, which keeps the truncation complete.
    """
    base0 = f.base[0]
    w = f.frontier.weight
    if base0.denominator != 1:
        return TruncatedSeries(f.base[1:], {}, TruncationFrontier(w[1:], f.frontier.bound))
    k0 = int(base0)
    new_bound = f.frontier.bound - w[0] * abs(k0)
    new_frontier = TruncationFrontier(w[1:], new_bound)
    terms = {}
    for u, c in f.terms.items():
        if u[0] + k0 == 0:
            terms[u[1:]] = c
    return TruncatedSeries(f.base[1:], terms, new_frontier, f.exact)
