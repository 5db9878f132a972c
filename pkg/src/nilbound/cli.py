"""Command-line surface: family generation, solving, bound reports, decomposition, reproduction.

Exit codes: 0 success, 1 input/validation error, 2 internal invariant or
reproduction failure. Reports go to stdout as JSON; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from nilbound import bounds as bounds_mod
from nilbound.bounds import (
    BoundProblem,
    first_bound,
    lower_bound_report,
    second_bound,
    solve_bruteforce,
    solve_exact,
)
from nilbound.decomposition import (
    FaithfulnessError,
    SamplingBudgetExhausted,
    build_adapted_basis,
    decompose,
    decomposition_to_json,
    extract_profile,
    verify_block_structure,
    verify_decomposition,
)
from nilbound.families import make_family
from nilbound.liealg import (
    NotNilpotentError,
    admissible_p0_set,
    algebra_from_json,
    algebra_to_json,
    center,
    default_filtration,
    is_nilpotent,
    lower_central_series,
    make_filtration,
    representation_from_json,
    representation_to_json,
    validate,
    validate_filtration,
)
from nilbound.linalg import rat, span


class InputError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_algebra(path: str):
    alg = algebra_from_json(_load_json(path))
    report = validate(alg)
    if not report.ok:
        raise InputError("invalid algebra: " + "; ".join(report.violations))
    return alg


def cmd_family(args) -> int:
    params = {
        "nap": {"a": args.a, "p": args.p},
        "nabc": {"a": args.a, "b": args.b, "c": args.c},
        "heisenberg": {"m": args.m},
        "abelian": {"n": args.n},
    }[args.tag]
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise InputError(f"family {args.tag!r} needs --{' --'.join(missing)}")
    alg, rep = make_family(args.tag, **params)
    out = Path(args.output) if args.output else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    base = alg.name.translate(str.maketrans({"{": "", "}": "", ",": "_"}))
    alg_path = out / f"{base}.algebra.json"
    rep_path = out / f"{base}.representation.json"
    alg_path.write_text(json.dumps(algebra_to_json(alg), indent=2) + "\n")
    rep_path.write_text(json.dumps(representation_to_json(rep), indent=2) + "\n")
    _emit({"algebra_file": str(alg_path), "representation_file": str(rep_path), "dim": alg.dim, "dimV": rep.dimV})
    return 0


def cmd_solve(args) -> int:
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
    except ValueError as exc:
        raise InputError(f"malformed --dims: {exc}") from exc
    try:
        prob = BoundProblem(args.p, args.p0, dims)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    sol = solve_bruteforce(prob) if args.brute else solve_exact(prob)
    fb = first_bound(prob.p0, dims[0])
    out = {
        "p": prob.p,
        "p0": prob.p0,
        "dims": list(dims),
        "r0_min": sol.r0_min,
        "witness": list(sol.witness),
        "nodes_explored": sol.nodes_explored,
        "closed_first": f"{fb.value:.6f}",
        "closed_first_ceil": fb.exact_ceil(),
        "closed_second": None,
        "closed_second_ceil": None,
        "case": None,
    }
    if prob.p0 >= 2:
        sb = second_bound(prob.p0, dims[0], dims[prob.p0 - 1])
        out["closed_second"] = f"{sb.value:.6f}"
        out["closed_second_ceil"] = sb.exact_ceil()
        out["case"] = sb.case
    _emit(out)
    return 0


def _parse_filtration(alg, path: str):
    data = _load_json(path)
    chain_data = data["chain"] if isinstance(data, dict) else data
    chain = [span([[rat(x) for x in row] for row in sub], alg.dim) for sub in chain_data]
    p0 = data.get("p0", len(chain)) if isinstance(data, dict) else len(chain)
    filt = make_filtration(alg, chain, p0)
    report = validate_filtration(filt)
    if not report.ok:
        raise InputError("invalid filtration: " + "; ".join(report.violations))
    return filt


def cmd_bound(args) -> int:
    alg = _load_algebra(args.algebra)
    if not is_nilpotent(alg):
        raise InputError(f"algebra {alg.name!r} is not nilpotent")
    filt = _parse_filtration(alg, args.filtration) if args.filtration else None
    _emit(lower_bound_report(alg, filt))
    return 0


def cmd_analyze(args) -> int:
    alg = _load_algebra(args.algebra)
    series = lower_central_series(alg)
    nilpotent = is_nilpotent(alg)
    out = {
        "algebra": alg.name,
        "dim": alg.dim,
        "nilpotent": nilpotent,
        "series_dims": [s.dim for s in series],
        "center_dim": center(alg).dim,
    }
    if nilpotent:
        filt = default_filtration(alg)
        out["default_filtration_dims"] = list(filt.dims)
        out["admissible_p0"] = admissible_p0_set(filt)
    _emit(out)
    return 0


def cmd_decompose(args) -> int:
    rep = representation_from_json(_load_json(args.representation))
    val_alg = validate(rep.algebra)
    if not val_alg.ok:
        raise InputError("invalid algebra: " + "; ".join(val_alg.violations))
    if not is_nilpotent(rep.algebra):
        raise InputError(f"algebra {rep.algebra.name!r} is not nilpotent")
    filt = default_filtration(rep.algebra)
    try:
        dec = decompose(rep, filt, seed=args.seed)
    except (ValueError, SamplingBudgetExhausted) as exc:
        raise InputError(str(exc)) from exc
    report = verify_decomposition(dec, dec.chain, filt.p0)
    out = decomposition_to_json(dec, report)
    if report.ok:
        ab = build_adapted_basis(dec, filt.p0)
        blocks = verify_block_structure(ab, dec, filt.p0)
        profile = extract_profile(dec, rep.dimV)
        out["adapted_basis"] = {"r": list(ab.r), "q": ab.q, "size": len(ab.basis_vectors)}
        out["block_structure_ok"] = blocks.ok
        out["block_failures"] = blocks.failures
        out["profile"] = list(profile)
        if not blocks.ok:
            _emit(out)
            return 2
    _emit(out)
    return 0 if report.ok else 2


def _paper_rows(quick: bool):
    nap_cases = [(1, 2), (1, 3)] if quick else [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)]
    nabc_cases = (
        [(1, 2, 1), (1, 1, 1)]
        if quick
        else [(1, 2, 1), (1, 3, 2), (2, 3, 1), (1, 1, 1), (2, 3, 2), (2, 4, 2)]
    )
    for a, p in nap_cases:
        yield (f"nap({a},{p})", ("nap", {"a": a, "p": p}), (p + 1) * a)
    for a, b, c in nabc_cases:
        yield (f"nabc({a},{b},{c})", ("nabc", {"a": a, "b": b, "c": c}), a + b + c)


def cmd_verify_paper(args) -> int:
    if args.inject_constraint_fault:
        bounds_mod.CONSTRAINT_B_FAULT_OFFSET = 1
    all_ok = True
    print(f"{'case':<16} {'expected':>8} {'computed':>8}  status")
    for label, (tag, params), expected in _paper_rows(args.quick):
        alg, _rep = make_family(tag, **params)
        got = lower_bound_report(alg)["mu_nil_lower_bound"]
        ok = got == expected
        all_ok &= ok
        print(f"{label:<16} {expected:>8} {got:>8}  {'PASS' if ok else 'FAIL'}")
    if not all_ok:
        print("reproduction failed", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilbound")
    sub = parser.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("family", help="emit algebra/representation files for a built-in family")
    fam.add_argument("tag", choices=["nap", "nabc", "heisenberg", "abelian"])
    for flag in ("a", "b", "c", "p", "m", "n"):
        fam.add_argument(f"--{flag}", type=int)
    fam.add_argument("-o", "--output", help="output directory (default: cwd)")
    fam.set_defaults(func=cmd_family)

    sol = sub.add_parser("solve", help="solve a bound problem given chain dimensions")
    sol.add_argument("--p", type=int, required=True)
    sol.add_argument("--p0", type=int, required=True)
    sol.add_argument("--dims", required=True, help="comma-separated weakly decreasing dims")
    sol.add_argument("--brute", action="store_true", help="force the enumeration oracle")
    sol.set_defaults(func=cmd_solve)

    bnd = sub.add_parser("bound", help="full lower-bound report for an algebra file")
    bnd.add_argument("algebra")
    bnd.add_argument("--filtration", help="JSON file with a custom subspace chain")
    bnd.set_defaults(func=cmd_bound)

    ana = sub.add_parser("analyze", help="structure summary for an algebra file")
    ana.add_argument("algebra")
    ana.set_defaults(func=cmd_analyze)

    dec = sub.add_parser("decompose", help="decompose and verify a representation file")
    dec.add_argument("representation")
    dec.add_argument("--seed", type=int, default=0)
    dec.set_defaults(func=cmd_decompose)

    ver = sub.add_parser("verify-paper", help="run the reproduction grid")
    ver.add_argument("--quick", action="store_true")
    ver.add_argument("--inject-constraint-fault", action="store_true", help=argparse.SUPPRESS)
    ver.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, NotNilpotentError, FaithfulnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
