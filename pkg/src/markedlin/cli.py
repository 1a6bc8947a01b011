"""Command-line front end.

Exit codes: 0 success, 1 unstable verdict with ``--fail-on-unstable``,
2 input error, 3 budget exceeded, 4 a verification found a mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from .algebra import QQ, PrimeField, field_to_json, scalar_to_json
from .flags import DEFAULT_BUDGET, BudgetExceeded, classify_flag, hessenberg
from .maps import MarkedMap, ProjectiveMatrix, Sheaf
from .polyhedra import corner_facets
from .profiles import catalan, control_matrix, enumerate_profiles, pivotal_entries, profile
from .reference import catalogue, compare
from .serialize import (
    Instance,
    InstanceError,
    dumps,
    flag_from_json,
    instance_from_json,
    instance_to_json,
    matrix_from_json,
    verdict_to_json,
)
from .stability import (
    ExactModeUnavailable,
    NotGenericError,
    NotStableError,
    Status,
    Witness,
    check_stability,
    companion_form,
    hilbert_mumford_oracle,
    moduli_coordinates,
    verify_witness,
)

EXIT_OK = 0
EXIT_UNSTABLE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


# Input helpers.

def _read_json(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {source}: {exc.msg} (line {exc.lineno})") from exc


def _load_matrix(args):
    if args.matrix is not None:
        try:
            obj = json.loads(args.matrix)
        except json.JSONDecodeError as exc:
            raise CliError(f"malformed JSON in --matrix: {exc.msg}") from exc
    elif args.source is not None:
        obj = _read_json(args.source)
    else:
        raise CliError("give a matrix file or --matrix")
    if isinstance(obj, dict):
        obj = obj.get("M", obj.get("T"))
    M = matrix_from_json(obj, QQ)
    if not M or any(len(r) != len(M) for r in M):
        raise CliError("matrix must be square")
    if len(M) < 2:
        raise CliError("matrix must be at least 2x2")
    if all(x == 0 for r in M for x in r):
        raise CliError("matrix is zero")
    return M


def _load_instance(source: str, mode: Optional[str]) -> tuple[Instance, dict]:
    doc = _read_json(source)
    inst = instance_from_json(doc)
    if mode is not None:
        inst = Instance(inst.mm, inst.sheaf, mode)
    return inst, doc


def _entries(es) -> list:
    return [list(e) for e in es]


# Commands.  Each returns (report dict, text lines, exit code).

def cmd_profile(args):
    M = _load_matrix(args)
    p = profile(M)
    piv = pivotal_entries(p)
    ctrl = control_matrix(M)
    report = {"profile": p.to_json(), "pivotal_entries": _entries(piv), "control_matrix": ctrl.to_json()}
    lines = [
        f"profile: {p.word} ({p.orientation})",
        f"pivotal entries: {', '.join(f'({i},{j})' for i, j in piv)}",
        "control matrix (columns):",
        *(f"  {list(c)}" for c in ctrl.columns),
    ]
    return report, lines, EXIT_OK


def cmd_polytope(args):
    M = _load_matrix(args)
    P = corner_facets(M)
    report = P.to_json()
    lines = [f"corner polyhedron in dimension {P.dim}", "vertices:"]
    lines += [f"  {[scalar_to_json(x) for x in v]}" for v in P.vertices]
    lines.append("facets (s_I >= c):")
    lines += [f"  I={list(f.I)} c={scalar_to_json(P.constant(f))} {f.kind}" for f in P.facets]
    return report, lines, EXIT_OK


def cmd_classify_flag(args):
    doc = _read_json(args.source)
    if not isinstance(doc, dict) or "flag" not in doc:
        raise CliError("classify-flag needs an instance with a 'flag' entry")
    inst = instance_from_json({**doc, "points": doc.get("points", [])})
    T = inst.mm.T
    f = flag_from_json(doc["flag"], T.size, T.field)
    h = hessenberg(T.rows, f)
    t = classify_flag(T.rows, f)
    report = {"hessenberg": list(h), "type": t.value, "flag": f.to_json()}
    lines = [f"hessenberg function: {list(h)}", f"type: {t.value}"]
    return report, lines, EXIT_OK


def _verdict_lines(v) -> list[str]:
    lines = [f"verdict: {v.status.value}", f"mode: {v.mode.value} ({v.method})"]
    w = v.witness
    if isinstance(w, Witness):
        lines += [
            f"witness: {w.flag_type.value} flag, Omega = {w.omega}, bound = {w.bound}",
            f"  subspaces: {w.flag.to_json()}",
        ]
    elif w is not None:
        lines += [f"witness basis flag: {w.flag.to_json()} (eta = {[str(x) for x in w.eta]})"]
    for k in sorted(v.meta):
        lines.append(f"{k}: {v.meta[k]}")
    return lines


def cmd_stability(args):
    inst, _ = _load_instance(args.source, args.mode)
    v = check_stability(inst.mm, inst.sheaf, inst.mode, budget=args.budget)
    verified = verify_witness(inst.mm, inst.sheaf, v.witness) if isinstance(v.witness, Witness) else None
    report = {"instance": instance_to_json(inst), "verdict": verdict_to_json(v), "witness_verified": verified}
    code = EXIT_OK
    if args.fail_on_unstable and v.status in (Status.UNSTABLE, Status.UNSTABLE_CERTIFIED):
        code = EXIT_UNSTABLE
    return report, _verdict_lines(v), code


def _compare_one(inst: Instance, budget: int) -> dict:
    a = check_stability(inst.mm, inst.sheaf, "exact", budget=budget)
    b = hilbert_mumford_oracle(inst.mm, inst.sheaf, budget=budget)
    return {
        "instance": instance_to_json(inst),
        "flag_test": a.status.value,
        "oracle": b.status.value,
        "agree": a.status is b.status,
    }


def _random_instance(rng: random.Random, p: int, N: int, n: int, q: int) -> Instance:
    F = PrimeField(p)
    while True:
        T = tuple(tuple(F(rng.randrange(p)) for _ in range(N + 1)) for _ in range(N + 1))
        if any(x for r in T for x in r):
            break
    pts = []
    while len(pts) < n:
        v = tuple(F(rng.randrange(p)) for _ in range(N + 1))
        if any(v):
            pts.append(v)
    return Instance(MarkedMap(ProjectiveMatrix(T, F), tuple(pts)), Sheaf.uniform(q, n), "exact")


def cmd_oracle_compare(args):
    rows = []
    meta: dict = {}
    if args.manifest is not None:
        man = _read_json(args.manifest)
        entries = man.get("instances") if isinstance(man, dict) else man
        if not isinstance(entries, list):
            raise CliError("a manifest is a JSON list of instances or instance paths")
        base = Path(args.manifest).parent
        for e in entries:
            inst = instance_from_json(_read_json(str(base / e)) if isinstance(e, str) else e)
            rows.append(_compare_one(inst, args.budget))
        meta["manifest"] = args.manifest
    elif args.source is not None:
        inst, _ = _load_instance(args.source, None)
        rows.append(_compare_one(inst, args.budget))
    else:
        rng = random.Random(args.seed)
        meta.update(seed=args.seed, p=args.p, N=args.N, n=args.n, q=args.q, samples=args.samples)
        for _ in range(args.samples):
            rows.append(_compare_one(_random_instance(rng, args.p, args.N, args.n, args.q), args.budget))
    bad = [r for r in rows if not r["agree"]]
    report = {"results": rows, "total": len(rows), "disagreements": len(bad), **meta}
    lines = [f"{len(rows)} instances compared, {len(bad)} disagreements"]
    for r in bad:
        lines.append(f"  flag test {r['flag_test']} vs oracle {r['oracle']}: {json.dumps(r['instance'], sort_keys=True)}")
    if "seed" in meta:
        lines.append(f"seed: {meta['seed']}")
    return report, lines, EXIT_MISMATCH if bad else EXIT_OK


def cmd_census(args):
    if args.N < 1:
        raise CliError("N must be at least 1")
    count = len(enumerate_profiles(args.N))
    expected = 2 * catalan(args.N + 1) - 1
    report = {"N": args.N, "profiles": count, "expected": expected, "ok": count == expected}
    lines = [f"{count} profiles"]
    if count != expected:
        lines.append(f"expected 2*C_{args.N + 1} - 1 = {expected}")
        return report, lines, EXIT_MISMATCH
    return report, lines, EXIT_OK


def cmd_normal_form(args):
    inst, _ = _load_instance(args.source, None)
    mm = inst.mm
    try:
        if mm.n == 1:
            alpha = companion_form(mm)
            report = {"kind": "companion", "alpha": [scalar_to_json(x) for x in alpha]}
            lines = [f"companion coefficients: {[scalar_to_json(x) for x in alpha]}"]
        else:
            lams, rest = moduli_coordinates(mm)
            report = {
                "kind": "moduli",
                "eigenvalues": [scalar_to_json(x) for x in lams],
                "points": [[scalar_to_json(x) for x in v] for v in rest],
            }
            lines = [f"eigenvalues: {report['eigenvalues']}", f"normalized points: {report['points']}"]
    except (NotStableError, NotGenericError) as exc:
        raise CliError(f"no normal form: {exc}") from exc
    report["field"] = field_to_json(mm.field)
    return report, lines, EXIT_OK


def cmd_verify(args):
    results = []
    for ex in catalogue():
        for c in compare(ex):
            results.append({
                "example": c.example,
                "realization": c.realization,
                "check": c.field,
                "ok": c.ok,
                "expected": _jsonable(c.expected),
                "computed": _jsonable(c.computed),
            })
    bad = [r for r in results if not r["ok"]]
    lines = [f"{len(results) - len(bad)}/{len(results)} checks match"]
    for r in bad:
        lines.append(f"  MISMATCH {r['example']} [{r['realization']}] {r['check']}")
        lines.append(f"    expected {r['expected']}")
        lines.append(f"    computed {r['computed']}")
    report = {"checks": results, "mismatches": len(bad)}
    return report, lines, EXIT_MISMATCH if bad else EXIT_OK


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


# Parser.

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--mode", choices=["exact", "search", "auto"], default=None)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of flags to enumerate")
    common.add_argument("--fail-on-unstable", action="store_true", help="exit 1 on an unstable verdict")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")

    parser = argparse.ArgumentParser(prog="markedlin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("profile", cmd_profile, "profile, pivotal entries and control matrix of a matrix"),
        ("polytope", cmd_polytope, "vertices and facets of the corner polyhedron"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("source", nargs="?", help="JSON file with a matrix ('-' for stdin)")
        p.add_argument("--matrix", help="inline JSON matrix, e.g. '[[0,1],[0,0]]'")
        p.set_defaults(func=fn)

    p = sub.add_parser("classify-flag", parents=[common], help="Hessenberg function and type of a flag")
    p.add_argument("source", help="JSON with 'T', optional 'field', and 'flag' (list of bases)")
    p.set_defaults(func=cmd_classify_flag)

    p = sub.add_parser("stability", parents=[common], help="stability verdict with witness")
    p.add_argument("source", help="instance JSON file ('-' for stdin)")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("oracle-compare", parents=[common], help="flag test against the basis oracle")
    p.add_argument("source", nargs="?", help="instance JSON file")
    p.add_argument("--manifest", help="JSON list of instances or instance paths")
    p.add_argument("--p", type=int, default=2, help="sweep: field size")
    p.add_argument("--N", type=int, default=1, help="sweep: projective dimension")
    p.add_argument("--n", type=int, default=1, help="sweep: number of points")
    p.add_argument("--q", type=int, default=1, help="sweep: weight of the map")
    p.add_argument("--samples", type=int, default=50, help="sweep: number of random instances")
    p.set_defaults(func=cmd_oracle_compare)

    p = sub.add_parser("census", parents=[common], help="count profiles of (N+1)x(N+1) matrices")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("normal-form", parents=[common], help="companion or moduli coordinates")
    p.add_argument("source", help="instance JSON file")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("verify-paper-examples", parents=[common], help="replay the reference examples")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str, str]:
    """Execute a command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        report, lines, code = args.func(args)
    except BudgetExceeded as exc:
        return _error(args, "budget", str(exc), EXIT_BUDGET)
    except CliError as exc:
        return _error(args, "input", str(exc), exc.code)
    except ExactModeUnavailable as exc:
        return _error(args, "exact-unavailable", str(exc), EXIT_INPUT)
    except (InstanceError, ValueError) as exc:
        return _error(args, "input", str(exc), EXIT_INPUT)
    if args.json:
        return code, dumps({"command": args.command, **report}) + "\n", ""
    return code, "\n".join(lines) + "\n", ""


def _error(args, kind: str, message: str, code: int) -> tuple[int, str, str]:
    if getattr(args, "json", False):
        return code, dumps({"command": args.command, "error": {"kind": kind, "message": message}}) + "\n", ""
    return code, "", f"error ({kind}): {message}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
