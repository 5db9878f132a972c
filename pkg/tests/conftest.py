"""Shared generator for random strictly upper triangular matrix subalgebras."""

import random

from nilbound.liealg import LieAlgebra, Representation, algebra_from_matrix_basis
from nilbound.linalg import Matrix, Q, Subspace, span


def _random_strict_upper(rng: random.Random, n: int) -> Matrix:
    rows = [
        [Q(rng.randint(-2, 2)) if j > i else Q(0) for j in range(n)]
        for i in range(n)
    ]
    return Matrix.from_rows(rows)


def _bracket_closure(gens: list[Matrix], n: int, max_dim: int) -> list[Matrix] | None:
    """Close the span of gens under the commutator; None if it grows past max_dim."""
    mats: list[Matrix] = []
    sp = Subspace.zero(n * n)
    frontier = list(gens)
    while frontier:
        m = frontier.pop()
        if m.is_zero() or sp.contains_vector(m.flatten()):
            continue
        frontier.extend(m.commutator(other) for other in mats)
        mats.append(m)
        sp = span([x.flatten() for x in mats], n * n)
        if len(mats) > max_dim:
            return None
    return mats


def random_upper_triangular_subalgebra(
    seed: int, max_dim_v: int = 7, max_dim: int = 12
) -> tuple[LieAlgebra, Representation]:
    """Seeded random nilpotent matrix algebra with its inclusion representation.

    Strictly upper triangular generators are closed under the bracket;
    attempts whose closure exceeds max_dim are rejected and redrawn.
    """
    rng = random.Random(seed)
    while True:
        dim_v = rng.randint(3, max_dim_v)
        gens = [_random_strict_upper(rng, dim_v) for _ in range(rng.randint(2, 3))]
        mats = _bracket_closure(gens, dim_v, max_dim)
        if mats:
            return algebra_from_matrix_basis(f"rand_{seed}", mats)
