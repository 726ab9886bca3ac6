"""Command-line front end.

One subcommand per problem (mus, mcs, ..., smnm) plus ``bench``.  Answers go
to stdout as a "v ... 0" line (or a JSON object with --stats json);
diagnostics go to stderr.  Exit codes: 0 success, 1 precondition/ill-posed
instance, 2 parse error, 3 oracle or internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import random
import sys
import time
from pathlib import Path

from .formats import (
    ParseError,
    ProblemInstance,
    parse_dimacs,
    parse_dnf,
    parse_formula_text,
    parse_gcnf,
    parse_model_line,
    parse_wcnf,
    write_answer,
)
from .formula import FormulaError, check_clause, check_term
from .minimize import ALGORITHMS, IllPosedError, extract_minimal
from .oracle import OracleError, make_session
from .reductions import (
    PreconditionError,
    Problem,
    build_predicate,
    decode_answer,
    verify_certificate,
)
from .verifier import random_unsat_cnf

_EXIT_OK = 0
_EXIT_PRECONDITION = 1
_EXIT_PARSE = 2
_EXIT_ORACLE = 3

_NEEDS_TERM = {Problem.PIT}
_NEEDS_CLAUSE = {Problem.PIC}
_NEEDS_UNIT = {Problem.LEIT, Problem.LEIC}
_NEEDS_TARGET = {Problem.MNES}
_NEEDS_CANDIDATES = {Problem.MXES}


def _detect_format(path: str, text: str) -> str:
    suffix = Path(path).suffix.lower()
    by_suffix = {".cnf": "dimacs", ".gcnf": "gcnf", ".wcnf": "wcnf", ".dnf": "dnf", ".fml": "fml"}
    if suffix in by_suffix:
        return by_suffix[suffix]
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p gcnf"):
            return "gcnf"
        if line.startswith("p wcnf"):
            return "wcnf"
        if line.startswith("p dnf"):
            return "dnf"
        if line.startswith("p cnf"):
            return "dimacs"
        break
    return "fml"


def _load_instance(args) -> ProblemInstance:
    text = Path(args.input).read_text()
    fmt = args.format if args.format != "auto" else _detect_format(args.input, text)
    inst = ProblemInstance()
    if fmt == "dimacs":
        inst.cnf = parse_dimacs(text)
    elif fmt == "gcnf":
        inst.cnf, inst.groups = parse_gcnf(text)
    elif fmt == "wcnf":
        inst.cnf, inst.groups = parse_wcnf(text)
    elif fmt == "dnf":
        inst.dnf = parse_dnf(text)
    elif fmt == "fml":
        inst.formula, inst.var_names = parse_formula_text(text)
    else:
        raise ParseError(f"unknown input format {fmt!r}")
    return inst


def _load_side_inputs(kind: Problem, args, inst: ProblemInstance) -> None:
    if getattr(args, "term", None):
        try:
            inst.term = check_term([int(t) for t in args.term.split()], "term")
        except (ValueError, FormulaError) as exc:
            raise ParseError(f"bad --term: {exc}") from None
    if getattr(args, "clause", None):
        try:
            inst.clause = check_clause([int(t) for t in args.clause.split()], "clause")
        except (ValueError, FormulaError) as exc:
            raise ParseError(f"bad --clause: {exc}") from None
    if getattr(args, "unit_index", None) is not None:
        inst.unit_index = args.unit_index
    if getattr(args, "target", None):
        text = Path(args.target).read_text()
        fmt = _detect_format(args.target, text)
        if fmt == "dimacs":
            inst.target = parse_dimacs(text).as_ast()
        else:
            inst.target, _ = parse_formula_text(text)
    if getattr(args, "candidates", None):
        inst.candidates = parse_dimacs(Path(args.candidates).read_text())
    if getattr(args, "model", None):
        inst.model = parse_model_line(Path(args.model).read_text())
    missing = []
    if kind in _NEEDS_TERM and inst.term is None:
        missing.append("--term")
    if kind in _NEEDS_CLAUSE and inst.clause is None:
        missing.append("--clause")
    if kind in _NEEDS_UNIT and inst.unit_index is None:
        missing.append("--unit-index")
    if kind in _NEEDS_TARGET and inst.target is None:
        missing.append("--target")
    if kind in _NEEDS_CANDIDATES and inst.candidates is None:
        missing.append("--candidates")
    if missing:
        raise PreconditionError(f"{kind.value} requires {', '.join(missing)}")


def _solver_backend(args) -> str:
    return os.environ.get("MSMP_SOLVER") or args.solver


def _run_problem(kind: Problem, args) -> int:
    t0 = time.perf_counter()
    inst = _load_instance(args)
    _load_side_inputs(kind, args, inst)
    session = make_session(_solver_backend(args), seed=args.seed, validate=args.verify)
    pred = build_predicate(kind, inst, session,
                           assume_wellposed=args.assume_wellposed,
                           aut_form=args.aut_form)
    result = extract_minimal(pred, args.alg, check_wellposed=not args.assume_wellposed)
    answer = decode_answer(kind, result, pred)
    answer.time_ms = (time.perf_counter() - t0) * 1000.0
    if args.verify:
        ok, why = verify_certificate(pred, result)
        if not ok:
            print(f"e verification failed: {why}", file=sys.stderr)
            return _EXIT_ORACLE
        print(f"c verified: {why}", file=sys.stderr)
    sys.stdout.write(write_answer(answer, "json" if args.stats == "json" else "plain"))
    if args.stats == "plain":
        r = answer.result
        print(
            f"c problem={kind.value} alg={r.algorithm} r={len(pred.elements)} "
            f"m={len(r.minimal_set)} search_calls={r.search_calls} "
            f"oracle_calls={answer.total_oracle_calls()}",
            file=sys.stderr,
        )
    if answer.degenerate:
        print("c note: base unit already covered; one maximal extension of several", file=sys.stderr)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# bench


def _planted_instance(rng: random.Random, r: int, m: int):
    """An unsatisfiable CNF with r clauses whose only MUS has size m.

    The core is a unit, an implication chain, and the complementary unit;
    fillers are all-positive clauses over disjoint variables, so they are
    jointly satisfiable and the planted core is the unique MUS.
    """
    assert 2 <= m <= r
    if m == 2:
        core = [(1,), (-1,)]
    else:
        core = [(1,)] + [(-i, i + 1) for i in range(1, m - 1)] + [(-(m - 1),)]
    nfill = r - m
    fill_lo = m
    fill_hi = fill_lo + max(4, nfill)
    fillers = [
        tuple(sorted(rng.sample(range(fill_lo, fill_hi + 1), rng.randint(1, 3))))
        for _ in range(nfill)
    ]
    clauses: list[tuple[int, ...]] = list(fillers)
    positions = sorted(rng.sample(range(r), m))
    for pos, c in zip(positions, core):
        clauses.insert(pos, c)
    from .formula import CnfFormula

    return CnfFormula(clauses), positions


def _bench(args) -> int:
    rows = []
    algs = [a.strip() for a in args.algs.split(",") if a.strip()]
    for a in algs:
        if a not in ALGORITHMS:
            raise ParseError(f"unknown algorithm {a!r}")
    instances = []
    if args.dir:
        for path in sorted(Path(args.dir).glob("*.cnf")):
            instances.append((path.name, parse_dimacs(path.read_text()), None))
    else:
        rng = random.Random(args.seed)
        for i in range(args.count):
            if args.planted_m:
                cnf, _ = _planted_instance(rng, args.r, args.planted_m)
            else:
                cnf = random_unsat_cnf(rng, max_vars=args.vars, max_clauses=args.clauses)
            instances.append((f"gen{i}", cnf, None))
    for name, cnf, _ in instances:
        inst = ProblemInstance(cnf=cnf)
        for alg in algs:
            t0 = time.perf_counter()
            session = make_session(_solver_backend(args), seed=args.seed)
            pred = build_predicate(Problem.MUS, inst, session)
            result = extract_minimal(pred, alg)
            ms = (time.perf_counter() - t0) * 1000.0
            rows.append({
                "problem": "mus",
                "alg": alg,
                "r": len(pred.elements),
                "m": len(result.minimal_set),
                "calls": result.search_calls,
                "ms": f"{ms:.3f}",
            })
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=["problem", "alg", "r", "m", "calls", "ms"])
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(out.getvalue())
    return _EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="instance file (cnf/gcnf/wcnf/dnf/fml)")
    p.add_argument("--alg", default="progression", choices=ALGORITHMS,
                   help="extraction algorithm (default: progression)")
    p.add_argument("--solver", default="internal",
                   help='oracle backend: "internal" or "exec:PATH" '
                        "(MSMP_SOLVER env var overrides)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", action="store_true",
                   help="validate witnesses and re-check minimality post hoc")
    p.add_argument("--assume-wellposed", action="store_true",
                   help="skip precondition and well-posedness oracle checks")
    p.add_argument("--stats", choices=("plain", "json"), default="plain",
                   help="plain: v-line + stderr stats; json: one JSON object")
    p.add_argument("--format", default="auto",
                   choices=("auto", "dimacs", "gcnf", "wcnf", "dnf", "fml"))
    p.add_argument("--term", help='implicant literals, e.g. "1 -2 3"')
    p.add_argument("--clause", help='implicate literals, e.g. "1 -2"')
    p.add_argument("--unit-index", type=int, dest="unit_index",
                   help="1-based index of the term/clause to extend")
    p.add_argument("--target", help="file with the formula to be entailed")
    p.add_argument("--candidates", help="CNF file with candidate clauses")
    p.add_argument("--model", help="file with a reference model ('v ... 0')")
    p.add_argument("--aut-form", default="l", choices=("l", "b"), dest="aut_form",
                   help="autarky predicate shape (default: l)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msmp",
        description="Solve Boolean function problems by minimal-set extraction "
                    "over monotone predicates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in Problem:
        p = sub.add_parser(kind.value, help=f"solve {kind.value}")
        _add_common(p)
        p.set_defaults(kind=kind)
    b = sub.add_parser("bench", help="benchmark oracle-call counts (CSV)")
    b.add_argument("dir", nargs="?", help="directory of .cnf instances")
    b.add_argument("--algs", default="deletion,dichotomic,progression")
    b.add_argument("--count", type=int, default=10, help="generated instances")
    b.add_argument("--vars", type=int, default=4)
    b.add_argument("--clauses", type=int, default=10)
    b.add_argument("--r", type=int, default=50, help="planted reference-set size")
    b.add_argument("--planted-m", type=int, dest="planted_m",
                   help="plant a known-size minimal set (enables the planted family)")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--solver", default="internal")
    b.set_defaults(kind=None)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        if args.command == "bench":
            return _bench(args)
        return _run_problem(args.kind, args)
    except (ParseError, FormulaError, FileNotFoundError) as exc:
        print(f"e parse error: {exc}", file=sys.stderr)
        return _EXIT_PARSE
    except (PreconditionError, IllPosedError) as exc:
        print(f"e ill-posed instance: {exc}", file=sys.stderr)
        return _EXIT_PRECONDITION
    except OracleError as exc:
        print(f"e oracle error: {exc}", file=sys.stderr)
        return _EXIT_ORACLE
    except Exception as exc:  # internal errors still exit cleanly
        print(f"e internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _EXIT_ORACLE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
