"""Generic-vector decomposition of a chain of operator subspaces.

Given a decreasing chain T_p <= ... <= T_1 of subspaces of End(V), the loop
repeatedly picks a rank-vector (a vector achieving the generic maximum of
dim T_k . v at every level simultaneously), splits each level against the
annihilator of that vector, and nests the chosen complements from the
deepest level upward. The output partition, vectors and subspace grid feed
the adapted basis, the block-structure verification and the integer profile
used by the bound engine.

Operators live in End(V) as row-major flattened vectors of length dimV^2.
Rank-vector selection is randomized (deterministic per seed); every
consequence of genericity is afterwards certified exactly by
verify_decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from nilbound.linalg import (
    Matrix,
    Q,
    Subspace,
    Vector,
    complement_extending,
    contains,
    intersect,
    kernel_basis,
    span,
    std_basis_vec,
    subspace_sum,
    vec,
)
from nilbound.liealg import Filtration, Representation, is_faithful, validate_representation


class SamplingBudgetExhausted(RuntimeError):
    pass


class FaithfulnessError(ValueError):
    pass


@dataclass(frozen=True)
class OperatorChain:
    """Decreasing chain T_1 >= T_2 >= ... >= T_p of subspaces of End(V)."""

    space_dim: int
    levels: tuple[Subspace, ...]

    def __post_init__(self):
        amb = self.space_dim ** 2
        for lvl in self.levels:
            if lvl.ambient_dim != amb:
                raise ValueError("chain level has wrong ambient dimension")
        for k in range(len(self.levels) - 1):
            if not contains(self.levels[k], self.levels[k + 1]):
                raise ValueError(f"chain level {k + 2} is not contained in level {k + 1}")

    @property
    def p(self) -> int:
        return len(self.levels)

    def operators(self, k: int) -> list[Matrix]:
        """Basis of level k (1-based) as matrices."""
        n = self.space_dim
        return [Matrix.unflatten(row, n, n) for row in self.levels[k - 1].basis]


def chain_from_representation(rep: Representation, filt: Filtration) -> OperatorChain:
    """The image chain rho(n_p) <= ... <= rho(n_1) inside End(V)."""
    amb = rep.dimV ** 2
    levels = []
    for sub in filt.chain:
        flats = [rep.rho(x).flatten() for x in sub.basis]
        levels.append(span(flats, amb) if flats else Subspace.zero(amb))
    return OperatorChain(rep.dimV, tuple(levels))


def _image_dims(levels: tuple[Subspace, ...], n: int, v: Vector) -> tuple[int, ...]:
    """dim(T_k . v) for each level."""
    dims = []
    for lvl in levels:
        images = [Matrix.unflatten(row, n, n).apply(v) for row in lvl.basis]
        dims.append(span(images, n).dim if images else 0)
    return tuple(dims)


def find_rank_vector(
    chain: OperatorChain, seed: int | None = None, rng: random.Random | None = None
) -> tuple[Vector, tuple[int, ...]]:
    """Sample a vector achieving the generic maximum of dim T_k . v at every level.

    Integer coordinates are drawn from [-M, M] with M = 16, doubling each
    round. A candidate from a batch of 8 is accepted when its dim-tuple is
    componentwise maximal in the batch and two further samples do not beat
    it. Genericity makes failure vanishingly unlikely; the certificate comes
    from verify_decomposition, not from this sampler.
    """
    if rng is None:
        rng = random.Random(seed)
    n = chain.space_dim
    bound = 16
    for _ in range(64):
        batch = [
            tuple(Q(rng.randint(-bound, bound)) for _ in range(n)) for _ in range(8)
        ]
        tuples = [_image_dims(chain.levels, n, v) for v in batch]
        best = tuple(max(t[k] for t in tuples) for k in range(chain.p))
        winner = next((v for v, t in zip(batch, tuples) if t == best), None)
        if winner is not None:
            extras = [tuple(Q(rng.randint(-bound, bound)) for _ in range(n)) for _ in range(2)]
            if all(
                all(d <= b for d, b in zip(_image_dims(chain.levels, n, e), best))
                for e in extras
            ):
                return winner, best
        bound *= 2
    raise SamplingBudgetExhausted("no rank-vector found within the sampling budget")


@dataclass(frozen=True)
class Decomposition:
    partition: tuple[int, ...]  # s_1 >= ... >= s_p > 0
    vectors: tuple[Vector, ...]  # v_1 ... v_{s_1}
    grid: dict  # (k, j) 1-based -> Subspace of End(V)
    seed: int
    chain: OperatorChain
    p0: int

    @property
    def p(self) -> int:
        return len(self.partition)

    @property
    def space_dim(self) -> int:
        return self.chain.space_dim

    def rank_dims(self) -> tuple[int, ...]:
        """r_k = dim T_{k,1}."""
        return tuple(self.grid[(k, 1)].dim for k in range(1, self.p + 1))


def _annihilator(level: Subspace, n: int, v: Vector) -> Subspace:
    """{T in level : T(v) = 0} as a subspace of End(V)."""
    if level.dim == 0:
        return level
    cols = [Matrix.unflatten(row, n, n).apply(v) for row in level.basis]
    coeff_kernel = kernel_basis(Matrix.from_rows([[c[i] for c in cols] for i in range(n)]))
    combos = []
    for coeffs in coeff_kernel.basis:
        flat = [Q(0)] * (n * n)
        for c, row in zip(coeffs, level.basis):
            if c != 0:
                flat = [x + c * y for x, y in zip(flat, row)]
        combos.append(flat)
    return span(combos, n * n) if combos else Subspace.zero(n * n)


def decompose(rep: Representation, filt: Filtration, seed: int = 0) -> Decomposition:
    """Run the full chain-splitting loop on the image chain of a faithful nilrepresentation."""
    val = validate_representation(rep)
    if not val.ok:
        raise ValueError("invalid representation: " + "; ".join(val.violations))
    if not is_faithful(rep):
        raise FaithfulnessError("representation is not faithful")
    chain = chain_from_representation(rep, filt)
    dec = decompose_chain(chain, seed=seed, p0=filt.p0)
    return dec


def decompose_chain(chain: OperatorChain, seed: int = 0, p0: int | None = None) -> Decomposition:
    n = chain.space_dim
    amb = n * n
    rng = random.Random(seed)
    p = chain.p
    if p0 is None:
        p0 = p

    s = [0] * (p + 1)  # 1-based
    levels = list(chain.levels)  # current R_k, 1-based via levels[k-1]
    q = p
    vectors: list[Vector] = []
    grid: dict[tuple[int, int], Subspace] = {}
    i = 0
    while True:
        i += 1
        sub = OperatorChain(n, tuple(levels[:q]))
        v_i, _ = find_rank_vector(sub, rng=rng)
        vectors.append(v_i)
        annis = [_annihilator(levels[k - 1], n, v_i) for k in range(1, q + 1)]
        # nested complements, deepest level first so T_{k,i} >= T_{k+1,i}
        below = Subspace.zero(amb)
        for k in range(q, 0, -1):
            if annis[k - 1].dim != levels[k - 1].dim:
                s[k] += 1
                piece = complement_extending(levels[k - 1], annis[k - 1], below)
                grid[(k, i)] = piece
                below = piece
        if annis[0].dim == 0:
            break
        q = max(k for k in range(1, q + 1) if annis[k - 1].dim != 0)
        levels = [annis[k] for k in range(q)]
    partition = tuple(s[1:])
    assert partition[0] == i and all(x > 0 for x in partition)
    return Decomposition(partition, tuple(vectors), grid, seed, chain, p0)


@dataclass
class VerificationReport:
    failures: list[str] = field(default_factory=list)
    moreover_checked: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_decomposition(dec: Decomposition, chain: OperatorChain, p0: int) -> VerificationReport:
    """Certify every structural claim about the partition, vectors and grid exactly."""
    report = VerificationReport()
    n = chain.space_dim
    amb = n * n
    p = chain.p
    s = dec.partition

    if any(s[k] < s[k + 1] for k in range(p - 1)):
        report.failures.append("partition is not weakly decreasing")

    # linear independence of the chosen vectors
    if span(dec.vectors, n).dim != len(dec.vectors):
        report.failures.append("rank vectors are linearly dependent")

    for k in range(1, p + 1):
        pieces = [dec.grid[(k, j)] for j in range(1, s[k - 1] + 1)]
        total = Subspace.zero(amb)
        dim_sum = 0
        for piece in pieces:
            total = subspace_sum(total, piece)
            dim_sum += piece.dim
        if total != chain.levels[k - 1] or dim_sum != chain.levels[k - 1].dim:
            report.failures.append(f"grid row {k} is not a direct-sum decomposition of T_{k}")
        if k < p:
            for j in range(1, s[k] + 1):
                if not contains(dec.grid[(k, j)], dec.grid[(k + 1, j)]):
                    report.failures.append(f"T_({k + 1},{j}) is not contained in T_({k},{j})")

    for k in range(1, p + 1):
        for j in range(1, s[k - 1] + 1):
            piece = dec.grid[(k, j)]
            ops = [Matrix.unflatten(row, n, n) for row in piece.basis]
            vj = dec.vectors[j - 1]
            img = span([op.apply(vj) for op in ops], n) if ops else Subspace.zero(n)
            if img.dim != piece.dim:
                report.failures.append(f"dim T_({k},{j}).v_{j} != dim T_({k},{j})")
            for i in range(1, j):
                vi = dec.vectors[i - 1]
                if any(any(x != 0 for x in op.apply(vi)) for op in ops):
                    report.failures.append(f"T_({k},{j}).v_{i} != 0 for i = {i} < j = {j}")
                target = span(
                    [op.apply(vi) for op in (Matrix.unflatten(r, n, n) for r in dec.grid[(k, i)].basis)],
                    n,
                ) if dec.grid[(k, i)].dim else Subspace.zero(n)
                whole = span(
                    [op.apply(std_basis_vec(n, c)) for op in ops for c in range(n)], n
                ) if ops else Subspace.zero(n)
                if not contains(target, whole):
                    report.failures.append(f"T_({k},{j}).V is not inside T_({k},{i}).v_{i}")

    # moreover clause: needs nilpotent operators and [T_1, T_{p0}] = 0
    t1_ops = chain.operators(1)
    tp0_ops = chain.operators(p0)
    if all(op.is_nilpotent() for op in t1_ops) and all(
        a.commutator(b).is_zero() for a in t1_ops for b in tp0_ops
    ):
        report.moreover_checked = True
        t11_ops = [Matrix.unflatten(r, n, n) for r in dec.grid[(1, 1)].basis]
        img = span([op.apply(dec.vectors[0]) for op in t11_ops], n)
        v0 = span(dec.vectors[: s[p0 - 1]], n)
        if intersect(img, v0).dim != 0:
            report.failures.append("T_(1,1).v_1 meets span{v_1..v_{s_p0}} nontrivially")
    return report


@dataclass(frozen=True)
class AdaptedBasis:
    r: tuple[int, ...]  # r_k = dim T_{k,1}
    operators: tuple[Matrix, ...]  # X_1..X_{r_1}, first r_k spanning T_{k,1}
    q: int
    basis_vectors: tuple[Vector, ...]  # ordered basis B of V
    W: Subspace
    V0: Subspace


def build_adapted_basis(dec: Decomposition, p0: int) -> AdaptedBasis:
    """Assemble B = (X_1 v_1, ..., X_{r_1} v_1, w_1, ..., w_q, v_1, ..., v_{s_{p0}})."""
    n = dec.space_dim
    amb = n * n
    p = dec.p
    r = dec.rank_dims()

    # operator basis adapted to the first grid column, deepest level first
    flat_ops: list[Vector] = []
    current = Subspace.zero(amb)
    for k in range(p, 0, -1):
        for row in dec.grid[(k, 1)].basis:
            if not current.contains_vector(row):
                flat_ops.append(row)
                current = span(flat_ops, amb)
        if current.dim != r[k - 1]:
            raise ValueError(f"adapted operator basis fails at level {k}")
    ops = [Matrix.unflatten(f, n, n) for f in flat_ops]

    v1 = dec.vectors[0]
    images = [op.apply(v1) for op in ops]
    s_p0 = dec.partition[p0 - 1]
    tail = list(dec.vectors[:s_p0])
    v0 = span(tail, n)
    partial = span(images + tail, n)
    if partial.dim != r[0] + s_p0:
        raise ValueError("degenerate complement: images and rank vectors are dependent")
    w_space = complement_extending(Subspace.full(n), partial, Subspace.zero(n))
    ws = list(w_space.basis)
    basis = tuple(images + ws + tail)
    if span(basis, n).dim != n:
        raise ValueError("adapted family is not a basis of V")
    return AdaptedBasis(r, tuple(ops), len(ws), basis, w_space, v0)


@dataclass
class BlockReport:
    failures: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def _blocks(m: Matrix, sizes: tuple[int, int, int]) -> dict[tuple[int, int], list[list[Fraction]]]:
    offs = [0, sizes[0], sizes[0] + sizes[1], sum(sizes)]
    out = {}
    for bi in range(3):
        for bj in range(3):
            out[(bi + 1, bj + 1)] = [
                [m[i, j] for j in range(offs[bj], offs[bj + 1])]
                for i in range(offs[bi], offs[bi + 1])
            ]
    return out


def verify_block_structure(ab: AdaptedBasis, dec: Decomposition, p0: int) -> BlockReport:
    """Check the block patterns of every grid operator in the adapted basis."""
    from nilbound.linalg import invert

    report = BlockReport()
    n = dec.space_dim
    p = dec.p
    r = ab.r
    s = dec.partition
    sizes = (r[0], ab.q, s[p0 - 1])
    change = Matrix.from_rows([[ab.basis_vectors[j][i] for j in range(n)] for i in range(n)])
    change_inv = invert(change)

    def r_of(t: int) -> int:
        return r[t - 1] if t <= p else 0

    for k in range(1, p + 1):
        for j in range(1, s[k - 1] + 1):
            for idx, row in enumerate(dec.grid[(k, j)].basis):
                x = Matrix.unflatten(row, n, n)
                mb = change_inv @ x @ change
                blocks = _blocks(mb, sizes)
                tag = f"X[{idx + 1}] of T_({k},{j})"
                report.checked += 1
                if j == 1:
                    col = [blocks[(1, 3)][h][0] for h in range(r[0])] if sizes[2] else []
                    if any(col[h] != 0 for h in range(r_of(k), r[0])):
                        report.failures.append(f"{tag}: first column of A_13 nonzero below r_k")
                    if all(c == 0 for c in col):
                        report.failures.append(f"{tag}: first column of A_13 vanishes for nonzero X")
                    continue
                for m_blk in (2, 3):
                    for n_blk in (1, 2, 3):
                        if any(any(x_ != 0 for x_ in rr) for rr in blocks[(m_blk, n_blk)]):
                            report.failures.append(f"{tag}: A_{m_blk}{n_blk} nonzero")
                a13 = blocks[(1, 3)]
                # A_13 only has s_{p0} columns; v_j for j > s_{p0} has no column
                for col_i in range(min(j - 1, sizes[2])):
                    if any(a13[h][col_i] != 0 for h in range(r[0])):
                        report.failures.append(f"{tag}: column {col_i + 1} of A_13 nonzero")
                # rows below r_k of the whole top band vanish
                for n_blk in (1, 2, 3):
                    blk = blocks[(1, n_blk)]
                    if any(any(x_ != 0 for x_ in blk[h]) for h in range(r_of(k), r[0])):
                        report.failures.append(f"{tag}: A_1{n_blk} nonzero below row r_k")
                # staircase inside A_11: column i (1-based) with i <= r_h implies
                # zeros below row r_{k+h}
                a11 = blocks[(1, 1)]
                for col_i in range(1, r[0] + 1):
                    h_max = max(h for h in range(1, p + 1) if r_of(h) >= col_i)
                    cutoff = r_of(k + h_max)
                    if any(a11[h][col_i - 1] != 0 for h in range(cutoff, r[0])):
                        report.failures.append(f"{tag}: staircase fails in column {col_i} of A_11")
                if k >= p0 and any(any(x_ != 0 for x_ in rr) for rr in a11):
                    report.failures.append(f"{tag}: A_11 nonzero although the level is central")
    return report


def extract_profile(dec: Decomposition, dim_v: int) -> tuple[int, ...]:
    """Profile (a_0, ..., a_p) from the first grid column; certified feasible."""
    from nilbound.bounds import BoundProblem, is_feasible

    r = dec.rank_dims()
    p = dec.p
    a = [dim_v - r[0]]
    for h in range(1, p):
        a.append(r[h - 1] - r[h])
    a.append(r[p - 1])
    profile = tuple(a)
    if profile[0] < 1 or profile[p] < 1 or sum(profile) != dim_v:
        raise AssertionError(f"profile {profile} violates shape constraints")
    dims = tuple(lvl.dim for lvl in dec.chain.levels)
    prob = BoundProblem.stripped(dec.p0, dims)
    if not is_feasible(prob, profile[: prob.p + 1]):
        raise AssertionError(f"profile {profile} infeasible for the induced bound problem")
    return profile


def decomposition_to_json(dec: Decomposition, report: VerificationReport | None = None) -> dict:
    from nilbound.linalg import rat_str

    out = {
        "space_dim": dec.space_dim,
        "partition": list(dec.partition),
        "vectors": [[rat_str(x) for x in v] for v in dec.vectors],
        "grid_dims": {
            f"{k},{j}": dec.grid[(k, j)].dim
            for k in range(1, dec.p + 1)
            for j in range(1, dec.partition[k - 1] + 1)
        },
        "rank_dims": list(dec.rank_dims()),
        "seed": dec.seed,
    }
    if report is not None:
        out["verified"] = report.ok
        out["failures"] = list(report.failures)
        out["moreover_checked"] = report.moreover_checked
    return out
