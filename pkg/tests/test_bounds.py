import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import nilbound.bounds as bounds
from nilbound.bounds import (
    BoundProblem,
    closed_bound_first,
    closed_bound_second,
    first_bound,
    is_feasible,
    lower_bound_report,
    second_bound,
    solve_bruteforce,
    solve_exact,
    theorem_mainbound,
)
from nilbound.families import make_heisenberg, make_nabc, make_nap


class TestBoundProblem:
    def test_valid(self):
        prob = BoundProblem(2, 2, (3, 1))
        assert prob.p == 2 and prob.p0 == 2

    @pytest.mark.parametrize(
        "p,p0,n",
        [
            (0, 0, ()),
            (2, 3, (3, 1)),
            (2, 2, (3,)),
            (2, 2, (1, 3)),
            (2, 2, (3, 0)),
        ],
    )
    def test_invalid(self, p, p0, n):
        with pytest.raises(ValueError):
            BoundProblem(p, p0, n)

    def test_stripped_removes_zero_tail(self):
        prob = BoundProblem.stripped(3, (5, 2, 0))
        assert (prob.p, prob.p0, prob.n) == (2, 2, (5, 2))


class TestFeasibility:
    def test_heisenberg_profile(self):
        prob = BoundProblem(2, 2, (3, 1))
        assert is_feasible(prob, (1, 1, 1))

    def test_sparse_profile_fails_constraint_b(self):
        prob = BoundProblem(2, 2, (3, 1))
        assert not is_feasible(prob, (1, 0, 1))

    def test_zero_a0_fails(self):
        prob = BoundProblem(2, 2, (3, 1))
        assert not is_feasible(prob, (0, 3, 1))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            is_feasible(BoundProblem(2, 2, (3, 1)), (1, 1))

    def test_fault_hook_shifts_constraint_b(self, monkeypatch):
        monkeypatch.setattr(bounds, "CONSTRAINT_B_FAULT_OFFSET", 1)
        assert not is_feasible(BoundProblem(2, 2, (3, 1)), (1, 1, 1))


class TestBruteforce:
    def test_heisenberg(self):
        sol = solve_bruteforce(BoundProblem(2, 2, (3, 1)))
        assert (sol.r0_min, sol.witness) == (3, (1, 1, 1))

    def test_abelian_4(self):
        sol = solve_bruteforce(BoundProblem(1, 1, (4,)))
        assert (sol.r0_min, sol.witness) == (4, (2, 2))

    def test_9_4(self):
        sol = solve_bruteforce(BoundProblem(2, 2, (9, 4)))
        assert (sol.r0_min, sol.witness) == (6, (1, 1, 4))


class TestExactSolver:
    def test_6_3_1(self):
        sol = solve_exact(BoundProblem(3, 3, (6, 3, 1)))
        assert (sol.r0_min, sol.witness) == (4, (1, 1, 1, 1))

    def test_heisenberg(self):
        sol = solve_exact(BoundProblem(2, 2, (3, 1)))
        assert (sol.r0_min, sol.witness) == (3, (1, 1, 1))

    def test_abelian_7_lex_smallest_witness(self):
        sol = solve_exact(BoundProblem(1, 1, (7,)))
        assert (sol.r0_min, sol.witness) == (6, (2, 4))


class TestClosedForms:
    def test_first_bound_values(self):
        assert closed_bound_first(2, 3) == pytest.approx(3.0)
        assert closed_bound_first(1, 4) == pytest.approx(4.0)
        assert closed_bound_first(3, 6) == pytest.approx(4.0)

    def test_first_bound_exact_ceil(self):
        assert first_bound(2, 3).exact_ceil() == 3
        assert first_bound(2, 4).exact_ceil() == 4  # sqrt(12) in (3, 4]
        assert first_bound(1, 1).exact_ceil() == 2

    def test_second_bound_cases(self):
        val, case = closed_bound_second(2, 9, 4)
        assert val == pytest.approx(5.25) and case == "p0_equals_2"
        val, case = closed_bound_second(2, 5, 1)
        assert val == pytest.approx(4.0) and case == "case1"
        val, case = closed_bound_second(3, 26, 1)
        assert val == pytest.approx(math.sqrt(75)) and case == "case1"

    def test_second_bound_case2(self):
        b = second_bound(3, 10, 2)
        assert b.case == "case2"
        expected = math.sqrt(2 * 2 / 1 * 10 + 2 * 3 * 2 / 1 * 2) - 2 * math.sqrt(2)
        assert b.value == pytest.approx(expected)

    def test_second_bound_rejects_p0_1(self):
        with pytest.raises(ValueError):
            second_bound(1, 4, 1)

    def test_mainbound_spot_values(self):
        assert theorem_mainbound(2, 5, 1) == pytest.approx(4.0)
        assert theorem_mainbound(2, 16, 4) == pytest.approx(7.0)
        assert theorem_mainbound(3, 6, 1) == pytest.approx(4.0)

    def test_mainbound_rejects_p_1(self):
        with pytest.raises(ValueError):
            theorem_mainbound(1, 4, 4)

    def test_root_bound_exact_comparisons(self):
        b = second_bound(3, 6, 1)  # sqrt(36) - 2 = 4 exactly
        assert b.case == "case2"
        assert b.leq_int(4)
        assert not b.leq_int(3)
        assert b.exact_ceil() == 4
        assert b.geq_sqrt(Fraction(16))
        assert not b.geq_sqrt(Fraction(17))


class TestReport:
    def test_heisenberg_report(self):
        alg, _ = make_heisenberg(1)
        report = lower_bound_report(alg)
        assert report["mu_nil_lower_bound"] == 3
        assert report["filtration_dims"] == [3, 1]
        assert report["per_p0"][0]["witness"] == [1, 1, 1]

    def test_nap_13_report(self):
        alg, _ = make_nap(1, 3)
        assert lower_bound_report(alg)["mu_nil_lower_bound"] == 4

    def test_nabc_232_report(self):
        alg, _ = make_nabc(2, 3, 2)
        report = lower_bound_report(alg)
        assert report["mu_nil_lower_bound"] == 7
        assert report["theorem_1_2_value"] == "7.000000"


def random_problem(rng: random.Random, max_p: int = 3, max_n1: int = 12) -> BoundProblem:
    p = rng.randint(1, max_p)
    p0 = rng.randint(1, p)
    n = []
    cur = rng.randint(1, max_n1)
    for _ in range(p):
        n.append(cur)
        cur = rng.randint(1, cur)
    return BoundProblem(p, p0, tuple(n))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_oracle_equivalence_random(seed):
    prob = random_problem(random.Random(seed))
    brute = solve_bruteforce(prob)
    exact = solve_exact(prob)
    assert (exact.r0_min, exact.witness) == (brute.r0_min, brute.witness)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_monotonicity_in_n1(seed):
    rng = random.Random(seed)
    prob = random_problem(rng)
    bigger = BoundProblem(prob.p, prob.p0, (prob.n[0] + 1,) + prob.n[1:])
    assert solve_exact(bigger).r0_min >= solve_exact(prob).r0_min


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_cap_profile_feasible(seed):
    prob = random_problem(random.Random(seed))
    cap = (prob.n[0],) + (0,) * (prob.p - 1) + (1,)
    assert is_feasible(prob, cap)
    assert solve_exact(prob).r0_min <= prob.n[0] + 1


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_first_bound_sound_and_exactly_ceilinged(seed):
    prob = random_problem(random.Random(seed), max_p=4, max_n1=30)
    fb = first_bound(prob.p0, prob.n[0])
    c = fb.exact_ceil()
    assert c <= solve_exact(prob).r0_min
    # certify the ceiling: value <= c but value > c - 1
    assert fb.leq_int(c)
    assert not fb.leq_int(c - 1)
