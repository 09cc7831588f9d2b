"""Integer-matrix layer: curve matrices, kernels, and numerical semigroups.

Everything here concerns a single integer row matrix A = (a_1 ... a_n) with
positive entries.  Such a row cuts out an affine monomial curve, and the
constructions downstream (toric operators, Gamma series, restrictions) only
need three pieces of integer data from it:

* a basis of the rank n-1 lattice L_A = ker(A : Z^n -> Z),
* membership in the numerical semigroup N a_1 + ... + N a_n, with witnesses,
* enumeration of lattice points inside a weighted L1 ball (the "frontier"
  that truncates every series in the package).

Supported matrix families:

* ``plane``        A = (a b), 0 < a < b, gcd = 1            (two variables)
* ``smooth``       A = (1 a_2 ... a_n), strictly increasing (n >= 3)
* ``general``      A = (a_1 ... a_n), 1 < a_1 < ... < a_n, gcd = 1
* ``homogenized``  A' = (1 a_1 ... a_n) produced from a general matrix
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvalidInputError, InvariantViolationError, ResourceLimitError

#: default cap on semigroup targets / enumerated lattice points
DEFAULT_TERM_CAP = 10**6

TERM_CAP_ENV = "GKZ_TERM_CAP"


def term_cap() -> int:
    raw = os.environ.get(TERM_CAP_ENV)
    if raw is None:
        return DEFAULT_TERM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"{TERM_CAP_ENV} must be an integer") from exc
    if cap <= 0:
        raise InvalidInputError(f"{TERM_CAP_ENV} must be positive")
    return cap


# ---------------------------------------------------------------------------
# curve matrices


@dataclass(frozen=True)
class CurveMatrix:
    """A 1 x n positive integer matrix together with its family tag."""

    entries: tuple[int, ...]
    family: str
    base: Optional["CurveMatrix"] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def gcd(self) -> int:
        return math.gcd(*self.entries)

    def dot(self, u: Sequence) -> object:
        if len(u) != self.n:
            raise InvalidInputError("dimension mismatch in A.u")
        return sum(a * x for a, x in zip(self.entries, u))

    def __str__(self) -> str:
        return "(" + " ".join(str(a) for a in self.entries) + ")"


def curve_matrix(entries: Sequence[int], family: str | None = None) -> CurveMatrix:
    """Build a CurveMatrix, inferring and validating the family.

    Classification when ``family`` is omitted: n = 2 -> plane;
    n >= 3 with first entry 1 -> smooth; otherwise general.
    """
    try:
        ent = tuple(int(a) for a in entries)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError("matrix entries must be integers") from exc
    if len(ent) < 2:
        raise InvalidInputError("need at least two columns")
    if any(a <= 0 for a in ent):
        raise InvalidInputError("matrix entries must be positive")

    if family is None:
        if len(ent) == 2:
            family = "plane"
        elif ent[0] == 1:
            family = "smooth"
        else:
            family = "general"

    if family == "plane":
        if len(ent) != 2:
            raise InvalidInputError("plane family needs exactly two columns")
        a, b = ent
        if not a < b:
            raise InvalidInputError("plane family needs a < b")
        if math.gcd(a, b) != 1:
            raise InvalidInputError("plane family needs gcd(a, b) = 1")
    elif family in ("smooth", "homogenized"):
        if len(ent) < 3:
            raise InvalidInputError(f"{family} family needs at least three columns")
        if ent[0] != 1:
            raise InvalidInputError(f"{family} family needs first entry 1")
        if any(x >= y for x, y in zip(ent, ent[1:])):
            raise InvalidInputError("entries must be strictly increasing")
    elif family == "general":
        if ent[0] <= 1:
            raise InvalidInputError("general family needs all entries > 1")
        if any(x >= y for x, y in zip(ent, ent[1:])):
            raise InvalidInputError("entries must be strictly increasing")
        if math.gcd(*ent) != 1:
            raise InvalidInputError("general family needs gcd = 1")
    else:
        raise InvalidInputError(f"unknown family {family!r}")
    return CurveMatrix(ent, family)


def homogenize_matrix(A: CurveMatrix) -> CurveMatrix:
    """Prepend a column of 1 to a general matrix: (a_1 .. a_n) -> (1 a_1 .. a_n)."""
    if A.family != "general":
        raise InvalidInputError("homogenization starts from a general matrix")
    return CurveMatrix((1,) + A.entries, "homogenized", base=A)


# ---------------------------------------------------------------------------
# lattice kernel


@dataclass(frozen=True)
class LatticeVector:
    """An element u of L_A = ker A, split into positive/negative parts."""

    u: tuple[int, ...]

    @property
    def plus(self) -> tuple[int, ...]:
        return tuple(max(x, 0) for x in self.u)

    @property
    def minus(self) -> tuple[int, ...]:
        return tuple(max(-x, 0) for x in self.u)

    def __iter__(self):
        return iter(self.u)

    def __len__(self):
        return len(self.u)


def _kernel_columns(entries: Sequence[int]) -> list[list[int]]:
    """Integer kernel basis of a 1 x n row, by unimodular column reduction.

    Keep a value vector v (initially the row) and combo columns (initially
    the identity); gcd-combine column 0 with each other column until every
    value except v[0] is zero.  The columns with value 0 then generate the
    full integer kernel.
    """
    n = len(entries)
    vals = list(entries)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    for j in range(1, n):
        a, b = vals[0], vals[j]
        g = math.gcd(a, b)
        # x a + y b = g
        x, y = _bezout(a, b)
        c0 = [x * cols[0][i] + y * cols[j][i] for i in range(n)]
        cj = [(b // g) * cols[0][i] - (a // g) * cols[j][i] for i in range(n)]
        cols[0], cols[j] = c0, cj
        vals[0], vals[j] = g, 0
    basis = [cols[j] for j in range(1, n)]
    for u in basis:
        if sum(a * x for a, x in zip(entries, u)) != 0:
            raise InvariantViolationError("kernel reduction produced a non-kernel vector")
    return basis


def _bezout(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form (pivots positive, entries below reduced)."""
    rows = [list(r) for r in rows]
    m, n = len(rows), len(rows[0])
    pr = 0
    for col in range(n):
        if pr >= m:
            break
        # gcd-eliminate the column below the pivot row
        piv = None
        for i in range(pr, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        for i in range(pr + 1, m):
            while rows[i][col]:
                q = rows[pr][col] // rows[i][col]
                rows[pr] = [x - q * y for x, y in zip(rows[pr], rows[i])]
                rows[pr], rows[i] = rows[i], rows[pr]
        if rows[pr][col] < 0:
            rows[pr] = [-x for x in rows[pr]]
        for i in range(pr):
            q = rows[i][col] // rows[pr][col]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[pr])]
        pr += 1
    return rows


def kernel_basis(A: CurveMatrix) -> list[LatticeVector]:
    """A Z-basis of L_A = ker(A), in a family-specific normal form.

    * plane (a b): the single generator (b, -a).
    * smooth / homogenized (1 e_2 ... e_N): one row per column i = 2..N;
      row i has entry 1 in position i and -e_i in position 1, except row
      N-1 which is flipped to (+e_{N-1}, 0, ..., -1, 0).  (This is the sign
      split under which the modified exponent arises as v + m * u^{N-1}.)
    * general: Hermite-normal-form basis with positive pivots.

    Every returned vector u satisfies A.u = 0.
    """
    ent = A.entries
    n = A.n
    if A.family == "plane":
        a, b = ent
        basis = [(b, -a)]
    elif A.family in ("smooth", "homogenized"):
        basis = []
        for i in range(1, n):  # 0-based column index of e_{i+1}
            row = [0] * n
            if i == n - 2:
                row[0] = ent[i]
                row[i] = -1
            else:
                row[0] = -ent[i]
                row[i] = 1
            basis.append(tuple(row))
    else:
        raw = _kernel_columns(ent)
        rows = _hnf_rows(raw)
        basis = [tuple(r) for r in rows]
    out = []
    for u in basis:
        if A.dot(u) != 0:
            raise InvariantViolationError(f"basis vector {u} not in ker {A}")
        out.append(LatticeVector(u))
    return out


# ---------------------------------------------------------------------------
# numerical semigroup membership


@dataclass(frozen=True)
class SemigroupCertificate:
    """Membership verdict for target in N g_1 + ... + N g_r, with witness."""

    generators: tuple[int, ...]
    target: int
    member: bool
    witness: Optional[tuple[int, ...]] = None

    def check(self) -> bool:
        if not self.member:
            return self.witness is None
        return (
            self.witness is not None
            and all(c >= 0 for c in self.witness)
            and sum(c * g for c, g in zip(self.witness, self.generators)) == self.target
        )


def _reachable(generators: tuple[int, ...], limit: int) -> list[int]:
    """reach[t] = index of a generator last used to reach t, or -1."""
    reach = [-1] * (limit + 1)
    reach[0] = -2  # sentinel: reachable with no steps
    for t in range(1, limit + 1):
        for idx, g in enumerate(generators):
            if g <= t and reach[t - g] != -1:
                reach[t] = idx
                break
    return reach


def semigroup_contains(generators: Sequence[int], target: int) -> SemigroupCertificate:
    """Decide target in sum_i N g_i by dynamic programming, with a witness.

    Negative targets are non-members; target 0 is a member with the zero
    witness.  Targets above the term cap raise ResourceLimitError rather
    than silently answering.
    """
    gens = tuple(int(g) for g in generators)
    if not gens or any(g <= 0 for g in gens):
        raise InvalidInputError("semigroup generators must be positive integers")
    target = int(target)
    if target < 0:
        return SemigroupCertificate(gens, target, False)
    if target > term_cap():
        raise ResourceLimitError(f"semigroup target {target} exceeds the term cap")
    reach = _reachable(gens, target)
    if reach[target] == -1:
        return SemigroupCertificate(gens, target, False)
    counts = [0] * len(gens)
    t = target
    while t > 0:
        idx = reach[t]
        counts[idx] += 1
        t -= gens[idx]
    return SemigroupCertificate(gens, target, True, tuple(counts))


def _lex_smallest_witness(gens: tuple[int, ...], target: int) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest (c_1, ..., c_r) with sum c_i g_i = target."""
    if target < 0:
        return None
    if not gens:
        return () if target == 0 else None
    g, rest = gens[0], gens[1:]
    for c in range(target // g + 1):
        tail = _lex_smallest_witness(rest, target - c * g)
        if tail is not None:
            return (c,) + tail
    return None


def minimal_delta(A: CurveMatrix, i: int) -> tuple[int, tuple[int, ...]]:
    """Smallest delta >= 0 with 1 + delta a_i in the semigroup of the others.

    ``i`` is a 0-based column index.  Returns (delta, rho) where rho is a
    full-length exponent vector (rho[i] = 0) realizing

        1 + delta * a_i = sum_{j != i} rho_j a_j,

    chosen lexicographically smallest among witnesses.  Exists because
    gcd of the entries is 1.
    """
    if A.gcd != 1:
        raise InvalidInputError("minimal_delta needs gcd of entries 1")
    if not 0 <= i < A.n:
        raise InvalidInputError("column index out of range")
    others = tuple(a for j, a in enumerate(A.entries) if j != i)
    ai = A.entries[i]
    delta = 0
    while True:
        t = 1 + delta * ai
        if t > term_cap():
            raise ResourceLimitError("minimal_delta search exceeded the term cap")
        if semigroup_contains(others, t).member:
            w = _lex_smallest_witness(others, t)
            if w is None:
                raise InvariantViolationError("witness reconstruction failed")
            rho = list(w[:i]) + [0] + list(w[i:])
            return delta, tuple(rho)
        delta += 1


# ---------------------------------------------------------------------------
# frontier enumeration


def enumerate_offsets(A: CurveMatrix, frontier, v=None) -> list[tuple[int, ...]]:
    """All u in L_A with sum_i weight_i |u_i| <= frontier.bound, sorted.

    Complete within the frontier: coordinates 1..n-1 range over the weighted
    ball and coordinate 0 is solved from A.u = 0 (with a divisibility
    check), so no kernel point inside the ball is missed.  ``v`` is accepted
    for interface symmetry with the series constructors but plays no role
    in which offsets exist.

    Raises ResourceLimitError if more than the term cap would be returned.
    """
    w = frontier.weight
    bound = frontier.bound
    if len(w) != A.n:
        raise InvalidInputError("frontier dimension mismatch")
    if bound < 0:
        return []
    cap = term_cap()
    ent = A.entries
    n = A.n
    out: list[tuple[int, ...]] = []

    def rec(pos: int, partial: list[int], used: int, adot: int) -> None:
        # pos runs over coordinates 1..n-1; coordinate 0 is determined
        # from A.u = 0, so adot tracks sum_{i >= 1} a_i u_i.
        if pos == n:
            if adot % ent[0]:
                return
            u0 = -(adot // ent[0])
            if used + w[0] * abs(u0) > bound:
                return
            if len(out) >= cap:
                raise ResourceLimitError("offset enumeration exceeded the term cap")
            out.append((u0, *partial))
            return
        lim = (bound - used) // w[pos]
        for x in range(-lim, lim + 1):
            partial.append(x)
            rec(pos + 1, partial, used + w[pos] * abs(x), adot + ent[pos] * x)
            partial.pop()

    rec(1, [], 0, 0)
    out.sort()
    return out


def delta_j_set(Aprime: CurveMatrix, j: int, degree_bound: int) -> list[tuple[int, ...]]:
    """The set Delta_j for a homogenized matrix, truncated by total degree.

    For A' = (1 a_1 ... a_n) this is

        { m in N^n : sum_{i != n-1} a_i m_i = j + a_{n-1} m_{n-1} },

    listed for sum_i m_i <= degree_bound (0-based: the distinguished index
    is n-2 in the base matrix).  It indexes the monomials that survive the
    restriction of the j-th Gamma series to x_0 = 0.
    """
    if Aprime.family != "homogenized" or Aprime.base is None:
        raise InvalidInputError("delta_j_set needs a homogenized matrix")
    base = Aprime.base.entries
    n = len(base)
    pivot = n - 2
    if not 0 <= j < base[pivot]:
        raise InvalidInputError(f"j must lie in 0..{base[pivot] - 1}")
    if degree_bound < 0:
        raise InvalidInputError("degree bound must be nonnegative")
    out: list[tuple[int, ...]] = []

    def rec(pos: int, partial: list[int], total: int) -> None:
        if pos == n:
            lhs = sum(base[i] * partial[i] for i in range(n) if i != pivot)
            if lhs == j + base[pivot] * partial[pivot]:
                out.append(tuple(partial))
            return
        for m in range(degree_bound - total + 1):
            partial.append(m)
            rec(pos + 1, partial, total + m)
            partial.pop()

    rec(0, [], 0)
    out.sort()
    return out
