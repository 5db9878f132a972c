#!/usr/bin/env python3
"""Compare the closed-form bounds against the exact solver on random problems.

The one-term bound is sound everywhere. The two-term bound overshoots the
exact minimum on a sizable fraction of instances whose first constraint is
slack at the relaxation optimum; this script measures that fraction and
prints the worst offenders.

Usage: python scripts/closed_bound_check.py [count] [seed]
"""

import random
import sys

from nilbound.bounds import BoundProblem, first_bound, second_bound, solve_exact


def random_problem(rng: random.Random) -> BoundProblem:
    p = rng.randint(1, 5)
    p0 = rng.randint(1, p)
    n = []
    cur = rng.randint(1, 60)
    for _ in range(p):
        n.append(cur)
        cur = rng.randint(1, cur)
    return BoundProblem(p, p0, tuple(n))


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    rng = random.Random(seed)
    first_bad = 0
    second_bad = []
    two_term_total = 0
    for _ in range(count):
        prob = random_problem(rng)
        r0 = solve_exact(prob).r0_min
        if first_bound(prob.p0, prob.n[0]).exact_ceil() > r0:
            first_bad += 1
        if prob.p0 >= 2:
            two_term_total += 1
            sb = second_bound(prob.p0, prob.n[0], prob.n[prob.p0 - 1])
            if sb.exact_ceil() > r0:
                second_bad.append((sb.exact_ceil() - r0, prob, r0, sb.case))
    print(f"{count} problems, {two_term_total} with p0 >= 2")
    print(f"one-term bound violations: {first_bad}")
    print(f"two-term bound violations: {len(second_bad)}")
    second_bad.sort(reverse=True, key=lambda t: t[0])
    for gap, prob, r0, case in second_bad[:10]:
        print(
            f"  gap {gap}: p={prob.p} p0={prob.p0} n={prob.n} "
            f"r0_min={r0} case={case}"
        )


if __name__ == "__main__":
    main()
