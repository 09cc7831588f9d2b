"""Truncated multi-exponent series and Weyl-algebra operators.

A :class:`TruncatedSeries` represents

    f = x^base * sum_u  c_u x^u,      c_u exact rationals,

where ``base`` is a fixed rational exponent vector and the offsets u are
integer vectors confined to a weighted L1 ball, the
:class:`TruncationFrontier`.  Applying an operator shrinks the frontier by
the operator's maximal monomial shift, so every coefficient inside the
shrunk frontier is exact: it equals the corresponding coefficient of the
operator applied to the *infinite* series, provided the input was complete
inside its own frontier.

Series flagged ``exact=True`` carry *all* their nonzero terms (e.g.
polynomial solutions); operators then apply without any frontier loss.

Operators live in the Weyl algebra with rational coefficients: sums of
monomials  c * x^p * d^q  with multi-indices p, q >= 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInputError
from .rationals import (
    as_rational,
    as_rational_vector,
    falling_factorial,
    falling_factorial_1d,
    format_rational,
    parse_rational,
)

DEFAULT_BOUND = 40


@dataclass(frozen=True)
class TruncationFrontier:
    """Weighted L1 ball { u : sum_i weight_i |u_i| <= bound } for offsets."""

    weight: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if any(w <= 0 for w in self.weight):
            raise InvalidInputError("frontier weights must be positive")

    @classmethod
    def uniform(cls, n: int, bound: int = DEFAULT_BOUND) -> "TruncationFrontier":
        return cls((1,) * n, bound)

    def contains(self, offset: Sequence[int]) -> bool:
        return sum(w * abs(u) for w, u in zip(self.weight, offset)) <= self.bound

    def shrink(self, amount: int) -> "TruncationFrontier":
        return TruncationFrontier(self.weight, self.bound - amount)

    def meet(self, other: "TruncationFrontier") -> "TruncationFrontier":
        if self.weight != other.weight:
            raise InvalidInputError("cannot intersect frontiers with different weights")
        return TruncationFrontier(self.weight, min(self.bound, other.bound))

    def to_json(self) -> dict:
        return {"weight": list(self.weight), "bound": self.bound}

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncationFrontier":
        return cls(tuple(int(w) for w in data["weight"]), int(data["bound"]))


class TruncatedSeries:
    """Immutable-by-convention container for a frontier-truncated series."""

    __slots__ = ("base", "terms", "frontier", "exact")

    def __init__(self, base, terms: Mapping, frontier: TruncationFrontier,
                 exact: bool = False):
        base = as_rational_vector(base)
        clean: dict[tuple[int, ...], Fraction] = {}
        for off, c in terms.items():
            c = as_rational(c)
            if c == 0:
                continue
            off = tuple(int(x) for x in off)
            if len(off) != len(base):
                raise InvalidInputError("offset dimension mismatch")
            if not exact and not frontier.contains(off):
                raise InvalidInputError(f"offset {off} lies outside the frontier")
            clean[off] = c
        self.base = base
        self.terms = clean
        self.frontier = frontier
        self.exact = exact

    @property
    def n(self) -> int:
        return len(self.base)

    def coefficient(self, offset: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(offset), Fraction(0))

    def exponent(self, offset: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(b + u for b, u in zip(self.base, offset))

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c) -> "TruncatedSeries":
        c = as_rational(c)
        return TruncatedSeries(self.base, {u: c * v for u, v in self.terms.items()},
                               self.frontier, self.exact)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.base != other.base:
            raise InvalidInputError("can only add series with the same base exponent")
        if self.exact and other.exact:
            frontier, exact = self.frontier, True
        else:
            frontier, exact = self.frontier.meet(other.frontier), False
        merged = dict(self.terms)
        for u, c in other.terms.items():
            merged[u] = merged.get(u, Fraction(0)) + c
        merged = {u: c for u, c in merged.items()
                  if exact or frontier.contains(u)}
        return TruncatedSeries(self.base, merged, frontier, exact)

    def restrict(self, frontier: TruncationFrontier) -> "TruncatedSeries":
        kept = {u: c for u, c in self.terms.items() if frontier.contains(u)}
        return TruncatedSeries(self.base, kept, frontier, False)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def to_json(self) -> dict:
        return {
            "base": [format_rational(b) for b in self.base],
            "terms": [
                {"offset": list(u), "coeff": format_rational(c)}
                for u, c in self.sorted_terms()
            ],
            "frontier": self.frontier.to_json(),
            "exact": self.exact,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        base = tuple(parse_rational(s) for s in data["base"])
        terms = {
            tuple(int(x) for x in t["offset"]): parse_rational(t["coeff"])
            for t in data["terms"]
        }
        return cls(base, terms, TruncationFrontier.from_json(data["frontier"]),
                   bool(data.get("exact", False)))

    def __repr__(self) -> str:
        return (f"TruncatedSeries(base={tuple(map(str, self.base))}, "
                f"{len(self.terms)} terms, bound={self.frontier.bound}"
                f"{', exact' if self.exact else ''})")


def series_equal(f: TruncatedSeries, g: TruncatedSeries) -> bool:
    """Equality of base and of all coefficients on the common frontier."""
    if f.base != g.base:
        return False
    common = f.frontier.meet(g.frontier)
    offsets = set(f.terms) | set(g.terms)
    for u in offsets:
        if not (f.exact and g.exact) and not common.contains(u):
            continue
        if f.coefficient(u) != g.coefficient(u):
            return False
    return True


# ---------------------------------------------------------------------------
# Weyl operators


class WeylOperator:
    """sum of monomials  c * x^p * d^q  (p, q in N^n), exact coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Iterable[tuple] = ()):
        merged: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
        for c, p, q in terms:
            c = as_rational(c)
            p = tuple(int(x) for x in p)
            q = tuple(int(x) for x in q)
            if len(p) != n or len(q) != n:
                raise InvalidInputError("operator term dimension mismatch")
            if any(x < 0 for x in p + q):
                raise InvalidInputError("operator exponents must be nonnegative")
            key = (p, q)
            merged[key] = merged.get(key, Fraction(0)) + c
        self.n = n
        self.terms = tuple(
            (c, p, q) for (p, q), c in sorted(merged.items()) if c != 0
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "WeylOperator":
        return cls(n, ())

    @classmethod
    def constant(cls, n: int, c) -> "WeylOperator":
        z = (0,) * n
        return cls(n, [(c, z, z)])

    @classmethod
    def d_power(cls, n: int, i: int, k: int = 1) -> "WeylOperator":
        q = [0] * n
        q[i] = k
        return cls(n, [(1, (0,) * n, tuple(q))])

    @classmethod
    def monomial(cls, n: int, c, x: Sequence[int], d: Sequence[int]) -> "WeylOperator":
        return cls(n, [(c, tuple(x), tuple(d))])

    @classmethod
    def from_lattice(cls, u: Sequence[int]) -> "WeylOperator":
        """Toric binomial  box_u = d^{u_+} - d^{u_-}  for u in ker A."""
        n = len(tuple(u))
        plus = tuple(max(x, 0) for x in u)
        minus = tuple(max(-x, 0) for x in u)
        z = (0,) * n
        return cls(n, [(1, z, plus), (-1, z, minus)])

    @classmethod
    def euler(cls, entries: Sequence[int], beta) -> "WeylOperator":
        """E = sum_j a_j x_j d_j - beta."""
        n = len(entries)
        terms = []
        for j, a in enumerate(entries):
            e = [0] * n
            e[j] = 1
            terms.append((a, tuple(e), tuple(e)))
        terms.append((-as_rational(beta), (0,) * n, (0,) * n))
        return cls(n, terms)

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "WeylOperator") -> "WeylOperator":
        if self.n != other.n:
            raise InvalidInputError("operator dimension mismatch")
        return WeylOperator(self.n, list(self.terms) + list(other.terms))

    def __neg__(self) -> "WeylOperator":
        return WeylOperator(self.n, [(-c, p, q) for c, p, q in self.terms])

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        return self + (-other)

    def scale(self, c) -> "WeylOperator":
        c = as_rational(c)
        return WeylOperator(self.n, [(c * t, p, q) for t, p, q in self.terms])

    def __mul__(self, other: "WeylOperator") -> "WeylOperator":
        """Weyl-algebra product, via d^q x^r = sum_k C(q,k) (r)_k x^{r-k} d^{q-k}."""
        if self.n != other.n:
            raise InvalidInputError("operator dimension mismatch")
        out = []
        for c1, p, q in self.terms:
            for c2, r, s in other.terms:
                ranges = [range(min(qi, ri) + 1) for qi, ri in zip(q, r)]
                for k in itertools.product(*ranges):
                    coef = Fraction(c1 * c2)
                    for qi, ri, ki in zip(q, r, k):
                        if ki:
                            coef *= math.comb(qi, ki) * int(falling_factorial_1d(ri, ki))
                    newx = tuple(pi + ri - ki for pi, ri, ki in zip(p, r, k))
                    newd = tuple(qi - ki + si for qi, si, ki in zip(q, s, k))
                    out.append((coef, newx, newd))
        return WeylOperator(self.n, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylOperator) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def max_shift(self, weight: Sequence[int]) -> int:
        """Largest weighted monomial shift sum_j w_j |p_j - q_j| over terms."""
        if not self.terms:
            return 0
        return max(
            sum(w * abs(pi - qi) for w, pi, qi in zip(weight, p, q))
            for _, p, q in self.terms
        )

    def to_json(self) -> list:
        return [
            {"coeff": format_rational(c), "x": list(p), "d": list(q)}
            for c, p, q in self.terms
        ]

    @classmethod
    def from_json(cls, data, n: int | None = None) -> "WeylOperator":
        terms = [(parse_rational(t["coeff"]), tuple(t["x"]), tuple(t["d"]))
                 for t in data]
        if n is None:
            if not terms:
                raise InvalidInputError("cannot infer dimension of an empty operator")
            n = len(terms[0][1])
        return cls(n, terms)

    def __repr__(self) -> str:
        return f"WeylOperator(n={self.n}, {len(self.terms)} terms)"


# ---------------------------------------------------------------------------
# operator action


def apply_operator(op: WeylOperator, f: TruncatedSeries) -> TruncatedSeries:
    """Apply op to f.  The result frontier shrinks by op.max_shift unless f
    is exact; inside the returned frontier every coefficient is exact."""
    if op.n != f.n:
        raise InvalidInputError("operator/series dimension mismatch")
    if f.exact:
        new_frontier, exact = f.frontier, True
    else:
        new_frontier = f.frontier.shrink(op.max_shift(f.frontier.weight))
        exact = False
    acc: dict[tuple[int, ...], Fraction] = {}
    for c_op, p, q in op.terms:
        for u, c in f.terms.items():
            exp = tuple(b + ui for b, ui in zip(f.base, u))
            factor = falling_factorial(exp, q)
            if factor == 0:
                continue
            newu = tuple(ui - qi + pi for ui, qi, pi in zip(u, q, p))
            if not exact and not new_frontier.contains(newu):
                continue
            acc[newu] = acc.get(newu, Fraction(0)) + c_op * c * factor
    return TruncatedSeries(f.base, acc, new_frontier, exact)


@dataclass(frozen=True)
class AnnihilationReport:
    """Residual summary for one operator applied to one series."""

    operator: WeylOperator
    residual_term_count: int
    max_residual_offset: tuple[int, ...] | None
    frontier_bound: int

    @property
    def annihilated(self) -> bool:
        return self.residual_term_count == 0


def verify_annihilation(ops: Iterable[WeylOperator],
                        f: TruncatedSeries) -> list[AnnihilationReport]:
    """Apply each operator and report the surviving (residual) terms."""
    reports = []
    for op in ops:
        g = apply_operator(op, f)
        if g.terms:
            w = g.frontier.weight
            worst = max(g.terms, key=lambda u: (sum(wi * abs(x) for wi, x in zip(w, u)), u))
        else:
            worst = None
        reports.append(AnnihilationReport(op, len(g.terms), worst, g.frontier.bound))
    return reports


def substitute_unit_translation(op: WeylOperator, i: int, eps) -> WeylOperator:
    """Rewrite x_i -> t_i + eps in every operator coefficient.

    Models translating the i-th coordinate to a point at distance eps from
    the coordinate hyperplane; derivatives are untouched (d/dx_i = d/dt_i).
    """
    eps = as_rational(eps)
    if eps == 0:
        raise InvalidInputError("translation distance must be nonzero")
    if not 0 <= i < op.n:
        raise InvalidInputError("variable index out of range")
    out = []
    for c, p, q in op.terms:
        pi = p[i]
        for k in range(pi + 1):
            newp = list(p)
            newp[i] = k
            out.append((c * math.comb(pi, k) * eps ** (pi - k), tuple(newp), q))
    return WeylOperator(op.n, out)


def inverse_variable_rewrite(f: TruncatedSeries, i: int) -> TruncatedSeries:
    """Substitute x_i -> 1/x_i (negate the i-th exponent throughout)."""
    if not 0 <= i < f.n:
        raise InvalidInputError("variable index out of range")
    base = list(f.base)
    base[i] = -base[i]
    terms = {}
    for u, c in f.terms.items():
        v = list(u)
        v[i] = -v[i]
        terms[tuple(v)] = c
    return TruncatedSeries(tuple(base), terms, f.frontier, f.exact)
