"""Lie algebras from structure constants: series, center, filtrations, representations.

Structure constants are stored sparsely for i < j only; antisymmetry is
implicit. Everything is exact-rational and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from nilbound.linalg import (
    DimensionMismatch,
    Matrix,
    Q,
    Subspace,
    Vector,
    contains,
    intersect,
    kernel_basis,
    rat,
    rat_str,
    rref_with_transform,
    span,
    std_basis_vec,
    subspace_sum,
    vec,
    zero_vec,
)


class NotNilpotentError(ValueError):
    pass


# brackets: {(i, j): ((k, coeff), ...)} with 0-based i < j, meaning
# [x_i, x_j] = sum_k coeff * x_k
BracketTable = Mapping[tuple[int, int], tuple[tuple[int, Fraction], ...]]


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    dim: int
    basis_names: tuple[str, ...]
    brackets: "frozenset[tuple[tuple[int, int], tuple[tuple[int, Fraction], ...]]]"

    @staticmethod
    def create(name: str, dim: int, brackets: Mapping, basis_names: Sequence[str] | None = None) -> "LieAlgebra":
        if basis_names is None:
            basis_names = tuple(f"x{i + 1}" for i in range(dim))
        clean = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket indices ({i}, {j}) out of range or not i < j")
            terms = tuple((k, rat(c)) for k, c in terms if rat(c) != 0)
            for k, _ in terms:
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target index {k} out of range")
            if terms:
                clean[(i, j)] = terms
        return LieAlgebra(name, dim, tuple(basis_names), frozenset(clean.items()))

    @cached_property
    def table(self) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
        return dict(self.brackets)

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[x_i, x_j] as a coordinate vector."""
        out = [Q(0)] * self.dim
        if i == j:
            return tuple(out)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.table.get((i, j), ()):
            out[k] += sign * c
        return tuple(out)


def bracket(alg: LieAlgebra, u: Sequence, v: Sequence) -> Vector:
    """Bilinear antisymmetric product of coordinate vectors."""
    u, v = vec(u), vec(v)
    if len(u) != alg.dim or len(v) != alg.dim:
        raise DimensionMismatch("coordinate length differs from algebra dimension")
    out = [Q(0)] * alg.dim
    for (i, j), terms in alg.table.items():
        coeff = u[i] * v[j] - u[j] * v[i]
        if coeff != 0:
            for k, c in terms:
                out[k] += coeff * c
    return tuple(out)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(alg: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on all basis triples; never raises."""
    report = ValidationReport()
    ei = [std_basis_vec(alg.dim, i) for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            for k in range(j + 1, alg.dim):
                total = [Q(0)] * alg.dim
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = bracket(alg, ei[b], ei[c])
                    term = bracket(alg, ei[a], inner)
                    total = [x + y for x, y in zip(total, term)]
                if any(x != 0 for x in total):
                    report.violations.append(f"Jacobi fails at triple ({i + 1}, {j + 1}, {k + 1})")
    return report


def ad_matrix(alg: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ad_x = [x, .] in the algebra basis."""
    x = vec(x)
    cols = [bracket(alg, x, std_basis_vec(alg.dim, j)) for j in range(alg.dim)]
    return Matrix.from_rows([[cols[j][i] for j in range(alg.dim)] for i in range(alg.dim)])


def bracket_subspaces(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    prods = [bracket(alg, u, v) for u in a.basis for v in b.basis]
    return span(prods, alg.dim) if prods else Subspace.zero(alg.dim)


def lower_central_series(alg: LieAlgebra) -> list[Subspace]:
    """C^1 = n, C^{k+1} = [n, C^k], down to the last nonzero term.

    For a non-nilpotent algebra the series stabilizes at a nonzero term,
    which is returned as the last entry (is_nilpotent distinguishes the two).
    """
    full = Subspace.full(alg.dim)
    series = [full]
    while True:
        nxt = bracket_subspaces(alg, full, series[-1])
        if nxt.dim == 0 or nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(alg: LieAlgebra) -> bool:
    series = lower_central_series(alg)
    return bracket_subspaces(alg, Subspace.full(alg.dim), series[-1]).dim == 0


def center(alg: LieAlgebra) -> Subspace:
    """Kernel of the stacked adjoint map x -> ([x, e_1], ..., [x, e_n])."""
    pair = {(i, j): alg.bracket_basis(i, j) for j in range(alg.dim) for i in range(alg.dim)}
    rows = []
    for j in range(alg.dim):
        # row block: k-th row is the k-th coordinate of [x, e_j] as a linear form in x
        for k in range(alg.dim):
            rows.append([pair[(i, j)][k] for i in range(alg.dim)])
    return kernel_basis(Matrix.from_rows(rows))


@dataclass(frozen=True)
class Filtration:
    """Decreasing chain n_1 = n >= ... >= n_p != 0 with [n_i, n_j] <= n_{i+j}."""

    algebra: LieAlgebra
    chain: tuple[Subspace, ...]
    p0: int

    @property
    def p(self) -> int:
        return len(self.chain)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.chain)


def make_filtration(alg: LieAlgebra, chain: Sequence[Subspace], p0: int) -> Filtration:
    """Build a filtration, stripping trailing zero terms and recomputing p."""
    trimmed = list(chain)
    while trimmed and trimmed[-1].dim == 0:
        trimmed.pop()
    if not trimmed:
        raise ValueError("filtration chain is entirely zero")
    p0 = min(p0, len(trimmed))
    return Filtration(alg, tuple(trimmed), p0)


def default_filtration(alg: LieAlgebra) -> Filtration:
    """The centrally augmented lower central series n_k = C^k + z, with p0 = p."""
    if not is_nilpotent(alg):
        raise NotNilpotentError(f"algebra {alg.name!r} is not nilpotent")
    z = center(alg)
    series = lower_central_series(alg)
    chain = [subspace_sum(term, z) for term in series]
    return make_filtration(alg, chain, p0=len(chain))


def admissible_p0_set(filt: Filtration) -> list[int]:
    """All indices k with n_k contained in the center (1-based)."""
    z = center(filt.algebra)
    return [k + 1 for k, sub in enumerate(filt.chain) if contains(z, sub)]


def validate_filtration(filt: Filtration) -> ValidationReport:
    report = ValidationReport()
    alg = filt.algebra
    p = filt.p
    if filt.chain[0] != Subspace.full(alg.dim):
        report.violations.append("n_1 is not the whole algebra")
    if filt.chain[-1].dim == 0:
        report.violations.append("n_p is zero")
    for k in range(p - 1):
        if not contains(filt.chain[k], filt.chain[k + 1]):
            report.violations.append(f"n_{k + 2} is not contained in n_{k + 1}")
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            prod = bracket_subspaces(alg, filt.chain[i - 1], filt.chain[j - 1])
            if i + j > p:
                if prod.dim != 0:
                    report.violations.append(f"[n_{i}, n_{j}] is nonzero but n_{i + j} = 0")
            elif not contains(filt.chain[i + j - 1], prod):
                report.violations.append(f"[n_{i}, n_{j}] is not contained in n_{i + j}")
    if not (1 <= filt.p0 <= p):
        report.violations.append(f"p0 = {filt.p0} out of range 1..{p}")
    elif not contains(center(alg), filt.chain[filt.p0 - 1]):
        report.violations.append(f"n_{filt.p0} is not contained in the center")
    return report


@dataclass(frozen=True)
class Representation:
    algebra: LieAlgebra
    dimV: int
    matrices: tuple[Matrix, ...]

    def rho(self, x: Sequence) -> Matrix:
        x = vec(x)
        out = Matrix.zeros(self.dimV, self.dimV)
        for c, m in zip(x, self.matrices):
            if c != 0:
                out = out + m.scale(c)
        return out


def validate_representation(rep: Representation, require_nil: bool = True) -> ValidationReport:
    """Homomorphism property on all basis pairs; nilpotency of each generator."""
    report = ValidationReport()
    alg = rep.algebra
    if len(rep.matrices) != alg.dim:
        report.violations.append("matrix count differs from algebra dimension")
        return report
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = rep.matrices[i].commutator(rep.matrices[j])
            rhs = rep.rho(alg.bracket_basis(i, j))
            if lhs != rhs:
                report.violations.append(f"homomorphism fails on basis pair ({i + 1}, {j + 1})")
    if require_nil:
        for i, m in enumerate(rep.matrices):
            if not m.is_nilpotent():
                report.violations.append(f"rho(x_{i + 1}) is not nilpotent")
    return report


def is_faithful(rep: Representation) -> bool:
    """Rank test on the stacked coordinate map rho: n -> End(V)."""
    stacked = Matrix.from_rows([m.flatten() for m in rep.matrices])
    return span(stacked.entries, rep.dimV ** 2).dim == rep.algebra.dim


def algebra_from_matrix_basis(name: str, mats: Sequence[Matrix]) -> tuple[LieAlgebra, Representation]:
    """Abstract algebra + defining representation from a linearly independent matrix basis.

    Raises if the matrices are dependent or their span is not bracket-closed.
    """
    if not mats:
        raise ValueError("empty matrix basis")
    dim_v = mats[0].rows
    flat = Matrix.from_rows([m.flatten() for m in mats])
    red, trans, rank, pivots = rref_with_transform(flat)
    if rank != len(mats):
        raise ValueError("matrix basis is linearly dependent")

    def coords(m: Matrix) -> Vector:
        v = m.flatten()
        coeffs_red = [v[p] for p in pivots]
        # coords in the original basis = coeffs_red @ trans (rows of trans map red back)
        out = [Q(0)] * len(mats)
        for c, trow in zip(coeffs_red, trans.entries):
            if c != 0:
                out = [x + c * t for x, t in zip(out, trow)]
        # exactness check
        recon = [Q(0)] * (dim_v * dim_v)
        for c, mm in zip(out, mats):
            if c != 0:
                recon = [x + c * y for x, y in zip(recon, mm.flatten())]
        if tuple(recon) != v:
            raise ValueError("matrix span is not closed under the bracket")
        return tuple(out)

    brackets = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            comm = mats[i].commutator(mats[j])
            terms = tuple((k, c) for k, c in enumerate(coords(comm)) if c != 0)
            if terms:
                brackets[(i, j)] = terms
    alg = LieAlgebra.create(name, len(mats), brackets)
    rep = Representation(alg, dim_v, tuple(mats))
    return alg, rep


# ---------------------------------------------------------------------------
# JSON file formats (1-based indices on the wire)

def algebra_to_json(alg: LieAlgebra) -> dict:
    entries = []
    for (i, j), terms in sorted(alg.table.items()):
        entries.append({"i": i + 1, "j": j + 1, "terms": [[k + 1, rat_str(c)] for k, c in terms]})
    return {"name": alg.name, "dim": alg.dim, "basis": list(alg.basis_names), "brackets": entries}


def algebra_from_json(data: dict) -> LieAlgebra:
    dim = int(data["dim"])
    brackets = {}
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
        brackets[(i, j)] = tuple((int(k) - 1, rat(c)) for k, c in entry["terms"])
    return LieAlgebra.create(data.get("name", "algebra"), dim, brackets, data.get("basis"))


def representation_to_json(rep: Representation) -> dict:
    return {
        "algebra": algebra_to_json(rep.algebra),
        "dimV": rep.dimV,
        "matrices": [[[rat_str(x) for x in row] for row in m.entries] for m in rep.matrices],
    }


def representation_from_json(data: dict) -> Representation:
    alg = algebra_from_json(data["algebra"])
    dim_v = int(data["dimV"])
    mats = tuple(Matrix.from_rows(m) for m in data["matrices"])
    for m in mats:
        if (m.rows, m.cols) != (dim_v, dim_v):
            raise DimensionMismatch("representation matrix is not dimV x dimV")
    return Representation(alg, dim_v, mats)
