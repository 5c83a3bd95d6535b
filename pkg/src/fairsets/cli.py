"""Command-line front end: ``python3 -m fairsets <command>``.

Commands: gen, reduce, backmap, solve, verify, demo-pipeline.

Exit codes: 0 success, 1 verification failure, 2 usage or format error,
3 solver bound refusal, 4 oracle violation (the violating query is printed).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import reductions as red
from . import serialization as ser
from . import solvers
from .core import CyclePartitionInstance, PathPartitionInstance
from .errors import BoundExceeded, DomainError, FairSetsError, InstanceError, OracleViolation, UsageError
from .generators import KINDS, generate_instance
from .measures import as_fraction, split_masses
from .problems import (
    check_conhalv,
    check_fisc,
    check_fsplitc,
    check_fsplitp,
    check_otucker,
    check_schrijver,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BOUND = 3
EXIT_ORACLE = 4

# generator kind -> problem tag written into the document
GEN_TAG = {
    "fisc": "fisc",
    "cycle_plus_triangles": "fisc",
    "all_singleton": "fisc",
    "single_part": "fisc",
    "fsplitc": "fsplitc",
    "fsplitp": "fsplitp",
    "conhalv": "conhalv",
    "schrijver": "schrijver",
    "otucker": "otucker",
}

REDUCTIONS = {
    # name: (source kind, target kind)
    "conhalv-to-fsplitp": ("conhalv", "fsplitp"),
    "fsplitp-to-fisc": ("fsplitp", "fisc"),
    "fsplitp-to-fsplitc": ("fsplitp", "fsplitc"),
    "fisc-to-fsplitc": ("fisc", "fsplitc"),
    "fisc-to-schrijver": ("fisc", "schrijver"),
    "schrijver-to-otucker": ("schrijver", "otucker"),
    "fsplitc-to-otucker": ("fsplitc", "otucker"),
}


# --- file helpers --------------------------------------------------------------


def _read(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return ser.loads(text)


def _write(doc: Any, path: str | None) -> None:
    text = ser.dumps(doc)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def check_solution(kind: str, inst: Any, eps: Fraction | None, sol: Any) -> str | None:
    """Dispatch to the verifier for ``kind``; returns the first violated clause."""
    if kind == "fisc":
        return check_fisc(inst, sol)
    if kind == "fsplitc":
        return check_fsplitc(inst, sol, eps or 0)
    if kind == "fsplitp":
        return check_fsplitp(inst, sol, eps or 0)
    if kind == "conhalv":
        return check_conhalv(inst, sol)
    if kind == "schrijver":
        return check_schrijver(inst, *sol)
    return check_otucker(inst, *sol)


# --- gen -------------------------------------------------------------------------


def _param(text: str) -> Any:
    """``"7"`` -> 7, ``"3:9"`` -> (3, 9)."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return (int(lo), int(hi))
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer or lo:hi range, got {text!r}") from None


def cmd_gen(args: argparse.Namespace) -> int:
    params: dict[str, Any] = {}
    for name in ("n", "m", "t", "k", "measures", "blocks", "cut_budget"):
        value = getattr(args, name)
        if value is not None:
            params[name] = _param(value)
    if args.kind == "conhalv":
        params["eps"] = args.eps if args.eps is not None else "1/2"
    inst = generate_instance(args.kind, params, args.seed)
    tag = GEN_TAG[args.kind]
    eps = as_fraction(args.eps) if (args.eps is not None and tag in ("fsplitc", "fsplitp")) else None
    _write(ser.instance_document(tag, inst, eps), args.out)
    return EXIT_OK


# --- reduce / backmap ------------------------------------------------------------


def reduce_document(name: str, doc: Any) -> tuple[dict, dict]:
    """Apply reduction ``name`` to an instance document; returns (target doc, context doc)."""
    if name not in REDUCTIONS:
        raise UsageError(f"unknown reduction {name!r}; expected one of {', '.join(REDUCTIONS)}")
    source_kind, target_kind = REDUCTIONS[name]
    kind, inst, eps = ser.parse_instance(doc)
    if kind != source_kind:
        raise UsageError(f"{name} needs a {source_kind} instance, got {kind}")
    if name == "conhalv-to-fsplitp":
        path, dctx = red.conhalv_to_fsplitp(inst)
        target = ser.instance_document("fsplitp", path, inst.eps / 4)
        ctx = ser.discretization_payload(dctx)
    elif name == "fsplitp-to-fisc":
        target = ser.instance_document("fisc", red.fsplitp_to_fisc(inst))
        ctx = {"source": ser.partition_payload(inst)}
    elif name == "fsplitp-to-fsplitc":
        target = ser.instance_document("fsplitc", red.fsplitp_to_fsplitc(inst), eps)
        ctx = {}
    elif name == "fisc-to-fsplitc":
        cyc, added = red.fisc_to_fsplitc(inst)
        target = ser.instance_document("fsplitc", cyc, Fraction(0))
        ctx = {"added_vertex": added}
    elif name == "fisc-to-schrijver":
        sch, rctx = red.fisc_to_schrijver(inst)
        target = ser.instance_document("schrijver", sch)
        ctx = ser.relabel_payload(rctx)
    elif name == "schrijver-to-otucker":
        target = ser.instance_document("otucker", red.schrijver_to_otucker(inst))
        ctx = {"source": doc["payload"]}
    else:
        if eps:
            raise UsageError("fsplitc-to-otucker covers the exact problem (eps = 0) only")
        target = ser.instance_document("otucker", red.fsplitc_to_otucker(inst))
        ctx = {"source": ser.partition_payload(inst)}
    return target, ser.context_document(name, ctx)


def backmap_document(ctx_doc: Any, sol_doc: Any) -> dict:
    """Pull a target solution document back through the reduction recorded in ``ctx_doc``."""
    if not isinstance(ctx_doc, dict) or ctx_doc.get("schema_version") != ser.SCHEMA_VERSION:
        raise UsageError("not a back-map context document")
    name = ctx_doc.get("reduction")
    if name not in REDUCTIONS:
        raise UsageError(f"unknown reduction {name!r} in context")
    source_kind, target_kind = REDUCTIONS[name]
    ctx = ctx_doc.get("context")
    if not isinstance(ctx, dict):
        raise UsageError("context document has no 'context' object")
    sol_kind = sol_doc.get("kind") if isinstance(sol_doc, dict) else None
    if sol_kind != target_kind:
        raise UsageError(f"{name} back-map needs a {target_kind} solution, got {sol_kind}")

    if name == "conhalv-to-fsplitp":
        _, sol = ser.parse_solution(sol_doc)
        result = red.conhalv_backmap(ser.parse_discretization(ctx), sol)
    elif name == "fsplitp-to-fisc":
        _, sol = ser.parse_solution(sol_doc)
        path = ser._partition(ctx.get("source"), PathPartitionInstance)
        result = red.fisc_backmap_to_fsplitp(path, sol)
    elif name == "fsplitp-to-fsplitc":
        _, sol = ser.parse_solution(sol_doc)
        result = red.fsplitc_backmap_to_fsplitp(sol)
    elif name == "fisc-to-fsplitc":
        _, sol = ser.parse_solution(sol_doc)
        added = ctx.get("added_vertex")
        if added is not None and not isinstance(added, int):
            raise UsageError("added_vertex must be an integer or null")
        result = red.fsplitc_backmap_to_fisc(added, sol)
    elif name == "fisc-to-schrijver":
        rctx = ser.parse_relabel(ctx)
        _, (s1, s2) = ser.parse_solution(sol_doc, _SizeOnly(rctx.n_prime, rctx.k))
        result = red.schrijver_backmap_to_fisc(rctx, s1, s2)
    elif name == "schrijver-to-otucker":
        _, sch, _ = ser.parse_instance({"schema_version": ser.SCHEMA_VERSION, "kind": "schrijver", "payload": ctx.get("source")})
        _, (x, y) = ser.parse_solution(sol_doc)
        result = red.otucker_backmap_to_schrijver(sch, x, y)
    else:
        cyc = ser._partition(ctx.get("source"), CyclePartitionInstance)
        _, (x, y) = ser.parse_solution(sol_doc)
        result = red.otucker_backmap_to_fsplitc(cyc, x, y)
    provenance = {"backmap": name}
    return ser.solution_document(source_kind, result, provenance)


class _SizeOnly:
    def __init__(self, n: int, k: int) -> None:
        self.n, self.k = n, k


def cmd_reduce(args: argparse.Namespace) -> int:
    target, ctx = reduce_document(args.reduction, _read(args.input))
    _write(target, args.out)
    if args.ctx:
        _write(ctx, args.ctx)
    return EXIT_OK


def cmd_backmap(args: argparse.Namespace) -> int:
    _write(backmap_document(_read(args.ctx), _read(args.solution)), args.out)
    return EXIT_OK


# --- solve -----------------------------------------------------------------------


def solve_document(doc: Any, route: str | None = None, max_n: int | None = None) -> dict:
    """Solve an instance document exhaustively and return a verified solution document."""
    kind, inst, eps = ser.parse_instance(doc)
    bound: dict[str, int] = {}
    provenance: dict[str, Any] = {}
    if kind == "fisc":
        if route:
            if max_n is not None:
                solvers._refuse("n", inst.n, max_n)
            sol = solvers.pipeline_solve_fisc(inst, route)
            provenance = {"solver": "pipeline_solve_fisc", "route": solvers.Route(route).value}
        else:
            if max_n is not None:
                bound["max_n"] = max_n
            report = solvers.run_with_report(solvers.brute_fisc, inst, **bound)
            sol = report.solution
            provenance = {"solver": "brute_fisc", "nodes_explored": report.nodes_explored}
    elif kind in ("fsplitc", "fsplitp"):
        if max_n is not None:
            bound = {"max_n": max_n, "max_path_n": max_n}
        report = solvers.run_with_report(solvers.brute_fsplit, inst, eps, **bound)
        sol = report.solution
        provenance = {"solver": "brute_fsplit", "nodes_explored": report.nodes_explored}
    elif kind == "conhalv":
        if max_n is not None:
            bound["max_path_n"] = max_n
        sol = solvers.pipeline_solve_conhalv(inst, **bound)
        provenance = {"solver": "pipeline_solve_conhalv"}
    elif kind == "schrijver":
        if max_n is not None:
            solvers._refuse("n", inst.n, max_n)
        report = solvers.run_with_report(solvers.brute_schrijver, inst)
        sol = report.solution
        provenance = {"solver": "brute_schrijver", "nodes_explored": report.nodes_explored}
    else:
        if max_n is not None:
            bound["max_n"] = max_n
        report = solvers.run_with_report(solvers.brute_otucker, inst, **bound)
        sol = report.solution
        provenance = {"solver": "brute_otucker", "nodes_explored": report.nodes_explored}
    problem = check_solution(kind, inst, eps, sol)
    if problem:
        raise FairSetsError(f"internal error: solver output fails verification: {problem}")
    return ser.solution_document(kind, sol, provenance)


def cmd_solve(args: argparse.Namespace) -> int:
    _write(solve_document(_read(args.input), args.route, args.max_n), args.out)
    return EXIT_OK


# --- verify ----------------------------------------------------------------------


def verify_documents(inst_doc: Any, sol_doc: Any) -> str | None:
    kind, inst, eps = ser.parse_instance(inst_doc)
    sol_kind = sol_doc.get("kind") if isinstance(sol_doc, dict) else None
    if sol_kind != kind:
        raise UsageError(f"instance kind {kind} does not match solution kind {sol_kind}")
    _, sol = ser.parse_solution(sol_doc, inst)
    return check_solution(kind, inst, eps, sol)


def cmd_verify(args: argparse.Namespace) -> int:
    problem = verify_documents(_read(args.instance), _read(args.solution))
    if problem:
        print(f"FAIL: {problem}")
        return EXIT_VERIFY_FAILED
    print("OK")
    return EXIT_OK


# --- demo-pipeline ---------------------------------------------------------------


def run_demo(seed: int, measures: int, blocks: int, eps: str, emit: Callable[[str], None] = print) -> bool:
    """Run the whole reduction chain once and report every verification."""
    ok = True

    def report(stage: str, problem: str | None) -> None:
        nonlocal ok
        ok = ok and problem is None
        emit(f"[{'ok' if problem is None else 'FAIL'}] {stage}" + (f": {problem}" if problem else ""))

    params = {"measures": measures, "blocks": (1, blocks), "eps": eps}
    ch = generate_instance("conhalv", params, seed)
    path, dctx = red.conhalv_to_fsplitp(ch)
    emit(f"ConHalv: m={ch.m}, eps={ch.eps}, delta={dctx.delta}, path length {path.n}, part sizes {list(path.sizes)}")
    split = solvers.brute_fsplit(path, ch.eps / 4)
    report(f"(eps/4)-FSplitP' on the discretized path ({len(split.s1)}+{len(split.s2)} covered)", check_fsplitp(path, split, ch.eps / 4))
    cuts = red.conhalv_backmap(dctx, split)
    report(f"ConHalv back-map: {len(cuts.cuts)} cuts at {[str(c) for c in cuts.cuts]}", check_conhalv(ch, cuts))
    for i, d in enumerate(ch.measures, 1):
        plus, _ = split_masses(d, cuts)
        gap = abs(plus - Fraction(1, 2))
        report(f"measure {i}: |mu(I+) - 1/2| = {gap} <= eps/2", None if gap <= ch.eps / 2 else f"{gap} > {ch.eps / 2}")

    small = generate_instance("fsplitp", {"n": (5, 9), "m": (1, 3)}, seed)
    emit(f"FSplitP' side chain on a path with parts {[list(p) for p in small.parts]}")
    cyc = red.fsplitp_to_fisc(small)
    fair = solvers.brute_fisc(cyc)
    report("FISC on the closed path", check_fisc(cyc, fair))
    back = red.fisc_backmap_to_fsplitp(small, fair)
    report("FISC -> FSplitP' back-map", check_fsplitp(small, back, 0))

    fisc = generate_instance("fisc", {"n": (6, 9), "m": (1, 3)}, seed)
    emit(f"FISC chain on a cycle with parts {[list(p) for p in fisc.parts]}")
    for route in solvers.Route:
        sol = solvers.pipeline_solve_fisc(fisc, route)
        report(f"FISC {route.value}: {sorted(sol.vertices)}", check_fisc(fisc, sol))
    split_inst, added = red.fisc_to_fsplitc(fisc)
    csplit = solvers.pipeline_solve_fsplitc_via_otucker(split_inst)
    report("FSplitC via OTucker", check_fsplitc(split_inst, csplit, 0))
    report("FSplitC -> FISC back-map", check_fisc(fisc, red.fsplitc_backmap_to_fisc(added, csplit)))
    return ok


def cmd_demo(args: argparse.Namespace) -> int:
    ok = run_demo(args.seed, args.measures, args.blocks, args.eps)
    print("all stages verified" if ok else "some stage failed")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# --- entry point -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep the message short
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fairsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a seeded random instance")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--seed", type=int, default=0)
    for name in ("n", "m", "t", "k", "measures", "blocks"):
        g.add_argument(f"--{name}", help="integer or lo:hi range")
    g.add_argument("--cut-budget", dest="cut_budget")
    g.add_argument("--eps", help="rational p/q (split and ConHalv kinds)")
    g.add_argument("--out", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("reduce", help="apply a forward reduction")
    r.add_argument("reduction", choices=sorted(REDUCTIONS))
    r.add_argument("input")
    r.add_argument("--out")
    r.add_argument("--ctx", help="where to write the back-map context")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("backmap", help="pull a target solution back to the source problem")
    b.add_argument("solution")
    b.add_argument("--ctx", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_backmap)

    s = sub.add_parser("solve", help="solve an instance exhaustively")
    s.add_argument("input")
    s.add_argument("--route", choices=[r.value for r in solvers.Route], help="FISC only: solve through the reduction chain")
    s.add_argument("--max-n", type=int, dest="max_n", help="refuse instances larger than this")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution against its instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo-pipeline", help="run the full reduction chain and print every verification")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--measures", type=int, default=2)
    d.add_argument("--blocks", type=int, default=2)
    d.add_argument("--eps", default="1/2")
    d.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error; return the status instead of exiting
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except OracleViolation as exc:
        query = exc.query
        shown = "" if query is None else f" (query: {query})"
        print(f"oracle violation: {exc}{shown}", file=sys.stderr)
        return EXIT_ORACLE
    except BoundExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, InstanceError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
