#!/usr/bin/env python3
"""Tabulate exact lower bounds and closed-form bounds for the built-in families.

Usage: python scripts/family_bounds.py
"""

from nilbound.bounds import lower_bound_report
from nilbound.families import make_family

GRID = [
    ("nap", {"a": 1, "p": 2}),
    ("nap", {"a": 2, "p": 2}),
    ("nap", {"a": 3, "p": 2}),
    ("nap", {"a": 1, "p": 3}),
    ("nap", {"a": 2, "p": 3}),
    ("nabc", {"a": 1, "b": 1, "c": 1}),
    ("nabc", {"a": 1, "b": 2, "c": 1}),
    ("nabc", {"a": 1, "b": 3, "c": 2}),
    ("nabc", {"a": 2, "b": 3, "c": 1}),
    ("nabc", {"a": 2, "b": 3, "c": 2}),
    ("nabc", {"a": 2, "b": 4, "c": 2}),
    ("heisenberg", {"m": 1}),
    ("heisenberg", {"m": 3}),
    ("abelian", {"n": 6}),
]


def main() -> None:
    header = f"{'algebra':<14} {'dim':>4} {'dims':<14} {'bound':>5} {'closed first':>12} {'closed second':>13}"
    print(header)
    print("-" * len(header))
    for tag, params in GRID:
        alg, _ = make_family(tag, **params)
        rep = lower_bound_report(alg)
        best = max(rep["per_p0"], key=lambda e: e["r0_min"])
        second = best["closed_second"] or "-"
        dims = ",".join(str(d) for d in rep["filtration_dims"])
        print(
            f"{alg.name:<14} {alg.dim:>4} {dims:<14} "
            f"{rep['mu_nil_lower_bound']:>5} {best['closed_first']:>12} {second:>13}"
        )


if __name__ == "__main__":
    main()
