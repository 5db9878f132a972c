"""Integer program for the representation lower bound, plus its closed-form relaxations.

Minimize r_0 = a_0 + ... + a_p over integer profiles subject to
  (a) a_0, a_p >= 1, a_k >= 0
  (b) sum_{i=0}^{p0-k} a_i * r_{k+i} >= n_k   for k = 1..p0
  (c) a_0 * r_k >= n_k                         for k = p0..p
with suffix sums r_k = a_k + ... + a_p.

The closed-form square-root relaxation bounds are evaluated in floating
point for display, but every ceiling and every bound comparison used in the
search is certified by exact rational arithmetic on the radicands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from nilbound.linalg import Q
from nilbound.liealg import (
    Filtration,
    LieAlgebra,
    NotNilpotentError,
    admissible_p0_set,
    default_filtration,
    validate_filtration,
)

# Test hook: added to the RHS of constraint (b) to let the reproduction
# harness demonstrate that it detects an off-by-one fault. Keep at 0.
CONSTRAINT_B_FAULT_OFFSET = 0


@dataclass(frozen=True)
class BoundProblem:
    p: int
    p0: int
    n: tuple[int, ...]

    def __post_init__(self):
        if self.p < 1 or not (1 <= self.p0 <= self.p):
            raise ValueError(f"need 1 <= p0 <= p, got p={self.p}, p0={self.p0}")
        if len(self.n) != self.p:
            raise ValueError("need exactly p chain dimensions")
        if any(x < 1 for x in self.n):
            raise ValueError("chain dimensions must be positive")
        if any(self.n[k] < self.n[k + 1] for k in range(self.p - 1)):
            raise ValueError("chain dimensions must be weakly decreasing")

    @staticmethod
    def stripped(p0: int, dims: tuple[int, ...]) -> "BoundProblem":
        """Strip trailing zero dimensions, reducing p (and p0 if needed)."""
        dims = tuple(dims)
        while dims and dims[-1] == 0:
            dims = dims[:-1]
        if not dims:
            raise ValueError("all chain dimensions are zero")
        return BoundProblem(len(dims), min(p0, len(dims)), dims)


@dataclass(frozen=True)
class BoundSolution:
    r0_min: int
    witness: tuple[int, ...]
    nodes_explored: int


def is_feasible(prob: BoundProblem, a) -> bool:
    a = tuple(int(x) for x in a)
    if len(a) != prob.p + 1:
        raise ValueError(f"profile must have length p+1 = {prob.p + 1}")
    if a[0] < 1 or a[prob.p] < 1 or any(x < 0 for x in a):
        return False
    r = _suffix_sums(a)
    for k in range(1, prob.p0 + 1):
        lhs = sum(a[i] * r[k + i] for i in range(prob.p0 - k + 1))
        if lhs < prob.n[k - 1] + CONSTRAINT_B_FAULT_OFFSET:
            return False
    for k in range(prob.p0, prob.p + 1):
        if a[0] * r[k] < prob.n[k - 1]:
            return False
    return True


def _suffix_sums(a: tuple[int, ...]) -> list[int]:
    # r[k] = a_k + ... + a_p, with r[p+1] = 0
    r = [0] * (len(a) + 1)
    for k in range(len(a) - 1, -1, -1):
        r[k] = r[k + 1] + a[k]
    return r


# ---------------------------------------------------------------------------
# Closed-form relaxation bounds, represented exactly as sqrt(q) - d*sqrt(m)

@dataclass(frozen=True)
class RootBound:
    """The real number sqrt(q) - d*sqrt(m), with q, d, m nonnegative rationals."""

    q: Fraction
    d: Fraction = Q(0)
    m: Fraction = Q(1)
    case: str = ""

    @property
    def value(self) -> float:
        return math.sqrt(self.q) - float(self.d) * math.sqrt(self.m)

    def leq_int(self, s: int) -> bool:
        """Exact test value <= s (for s >= 0)."""
        if s < 0:
            return False
        # sqrt(q) <= s + d*sqrt(m)  <=>  t := q - s^2 - d^2 m <= 2 s d sqrt(m)
        t = self.q - s * s - self.d * self.d * self.m
        if t <= 0:
            return True
        return t * t <= 4 * s * s * self.d * self.d * self.m

    def exact_ceil(self) -> int:
        s = max(0, math.floor(self.value) - 2)
        while not self.leq_int(s):
            s += 1
        return s

    def geq_sqrt(self, q1: Fraction) -> bool:
        """Exact test value >= sqrt(q1)."""
        # sqrt(q) >= sqrt(q1) + d*sqrt(m)  <=>  u := q - q1 - d^2 m >= 0
        # and u^2 >= 4 d^2 q1 m
        u = self.q - q1 - self.d * self.d * self.m
        if u < 0:
            return False
        return u * u >= 4 * self.d * self.d * q1 * self.m


def first_bound(p0: int, n1: int) -> RootBound:
    if p0 < 1 or n1 < 1:
        raise ValueError("need p0 >= 1 and n1 >= 1")
    return RootBound(Q(2 * (p0 + 1), p0) * n1, case="first")


def closed_bound_first(p0: int, n1: int) -> float:
    """sqrt(2(p0+1)/p0 * n1), the relaxation bound depending only on n_1."""
    return first_bound(p0, n1).value


def second_bound(p0: int, n1: int, np0: int) -> RootBound:
    if p0 < 2:
        raise ValueError("the two-term bound requires p0 >= 2")
    if not n1 >= np0 >= 1:
        raise ValueError("need n1 >= np0 >= 1")
    if n1 >= ((p0 - 1) ** 2 + p0 ** 2) * np0:
        return RootBound(Q(2 * p0, p0 - 1) * (n1 - np0), case="case1")
    if p0 == 2:
        # (n1 + 3*np0) / (2*sqrt(np0)) written as a single radical
        return RootBound(Q((n1 + 3 * np0) ** 2, 4 * np0), case="p0_equals_2")
    return RootBound(
        Q(2 * (p0 - 1), p0 - 2) * n1 + Q(2 * p0 * (p0 - 1), (p0 - 2) ** 2) * np0,
        d=Q(2, p0 - 2),
        m=Q(np0),
        case="case2",
    )


def closed_bound_second(p0: int, n1: int, np0: int) -> tuple[float, str]:
    """Two-term relaxation bound using n_1 and n_{p0}; returns (value, case tag)."""
    b = second_bound(p0, n1, np0)
    return b.value, b.case


def theorem_mainbound(p: int, dim_n: int, dim_z: int) -> float:
    """Explicit lower bound from the whole-algebra dimension and the center dimension."""
    if p < 2:
        raise ValueError("the explicit bound requires p >= 2")
    return second_bound(p, dim_n, dim_z).value


# ---------------------------------------------------------------------------
# Exact solvers

def solve_bruteforce(prob: BoundProblem) -> BoundSolution:
    """Reference oracle: plain enumeration of profiles in (sum, lex) order.

    The profile (n_1, 0, ..., 0, 1) is always feasible, so sums are capped
    at n_1 + 1.
    """
    p = prob.p
    nodes = 0
    for s in range(2, prob.n[0] + 2):
        for a in _profiles_lex(s, p):
            nodes += 1
            if is_feasible(prob, a):
                return BoundSolution(s, a, nodes)
    raise AssertionError("the cap profile (n1, 0, ..., 0, 1) must be feasible")


def _profiles_lex(s: int, p: int):
    """All (a_0..a_p) with sum s, a_0 >= 1, a_p >= 1, in lexicographic order."""

    def rec(prefix: list[int], remaining: int):
        j = len(prefix)
        if j == p:
            if remaining >= 1:
                yield tuple(prefix) + (remaining,)
            return
        lo = 1 if j == 0 else 0
        for val in range(lo, remaining):  # leave >= 1 for a_p
            prefix.append(val)
            yield from rec(prefix, remaining - val)
            prefix.pop()

    yield from rec([], s)


def solve_exact(prob: BoundProblem) -> BoundSolution:
    """Branch-and-bound over target sums ascending from the certified closed bound.

    Within a target sum the search is lexicographic DFS with residual
    pruning, so the returned witness is the lexicographically smallest
    optimal profile, matching the brute-force oracle exactly.
    """
    p, p0, n = prob.p, prob.p0, prob.n
    start = max(2, first_bound(p0, n[0]).exact_ceil())
    nodes = 0

    def search(s: int, prefix: list[int], partial_sum: int):
        nonlocal nodes
        nodes += 1
        j = len(prefix) - 1
        m = s - partial_sum
        if m < 0 or (j < p and m < 1):
            return None
        if j == p and m != 0:
            return None

        # r_t is forced by (s, prefix) for t <= j+1; later r_t are at most m
        def r_upper(t: int) -> int:
            if t > p:
                return 0
            if t <= j + 1:
                return s - sum(prefix[:t])
            return m

        for k in range(1, p0 + 1):
            ub = sum((prefix[i] if i <= j else m) * r_upper(k + i) for i in range(p0 - k + 1))
            if ub < n[k - 1] + CONSTRAINT_B_FAULT_OFFSET:
                return None
        for k in range(p0, p + 1):
            if prefix[0] * r_upper(k) < n[k - 1]:
                return None

        if j == p:
            a = tuple(prefix)
            return a if is_feasible(prob, a) else None
        lo = 0 if j + 1 < p else 1
        for val in range(lo, m + 1):
            prefix.append(val)
            found = search(s, prefix, partial_sum + val)
            prefix.pop()
            if found is not None:
                return found
        return None

    for s in range(start, n[0] + 2):
        for a0 in range(1, s):
            found = search(s, [a0], a0)
            if found is not None:
                return BoundSolution(s, found, nodes)
    raise AssertionError("sweep passed the always-feasible cap sum n1 + 1")


# ---------------------------------------------------------------------------
# Report pipeline

def lower_bound_report(alg: LieAlgebra, filtration: Filtration | None = None) -> dict:
    """Full lower-bound report over every admissible p0 of the filtration."""
    if filtration is None:
        filtration = default_filtration(alg)
    else:
        report = validate_filtration(filtration)
        if not report.ok:
            raise ValueError("invalid filtration: " + "; ".join(report.violations))
    admissible = admissible_p0_set(filtration)
    if not admissible:
        raise ValueError("filtration has no admissible central index p0")
    dims = filtration.dims
    per_p0 = []
    best = 0
    for p0 in admissible:
        prob = BoundProblem.stripped(p0, dims)
        sol = solve_exact(prob)
        fb = first_bound(p0, dims[0])
        entry = {
            "p0": p0,
            "r0_min": sol.r0_min,
            "witness": list(sol.witness),
            "closed_first": f"{fb.value:.6f}",
            "closed_first_ceil": fb.exact_ceil(),
            "closed_second": None,
            "closed_second_ceil": None,
            "case": None,
        }
        if p0 >= 2:
            sb = second_bound(p0, dims[0], dims[p0 - 1])
            entry["closed_second"] = f"{sb.value:.6f}"
            entry["closed_second_ceil"] = sb.exact_ceil()
            entry["case"] = sb.case
        per_p0.append(entry)
        best = max(best, sol.r0_min)

    p = filtration.p
    thm = None
    if p >= 2:
        from nilbound.liealg import center

        thm = f"{theorem_mainbound(p, alg.dim, center(alg).dim):.6f}"
    return {
        "algebra": alg.name,
        "p": p,
        "filtration_dims": list(dims),
        "per_p0": per_p0,
        "mu_nil_lower_bound": best,
        "theorem_1_2_value": thm,
    }
