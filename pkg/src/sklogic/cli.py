"""Command-line interface.

Subcommands:
  run     load programs and execute one run/run* query
  models  enumerate stable models with the brute-force oracle
  ground  dump the propositional image of the loaded programs
  verify  cross-check engine answers against oracle model membership
  repl    load programs once, then read queries interactively

Exit codes: run uses 0 (answers), 1 (no answers), 2 (load/parse error);
models/ground add 3 for an exceeded atom cap; verify uses 0 (no
mismatches), 1 (mismatches), 2, 3 as above.
"""

from __future__ import annotations

import argparse
import sys

from . import oracle
from .engine import CallPos, DEFAULT_DEPTH_BOUND, DEFAULT_MAX_ANSWERS, Solver
from .errors import DepthLimitError, GroundingError, SklError
from .frontend import compile_query, load_files
from .terms import Var, print_term


def format_answers(answers) -> str:
    return "(" + " ".join(print_term(a) for a in answers) + ")"


def _query_text(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return value


def _load(args):
    return load_files(args.programs)


def _solver(program, args, verbose=False):
    def log_violation(spec, env):
        bindings = " ".join(f"{k}={print_term(v)}" for k, v in sorted(env.items()))
        print(f"violated {spec.describe()} [{bindings}]", file=sys.stderr)

    return Solver(
        program,
        depth_bound=args.depth_bound,
        max_answers=args.max_answers,
        on_violation=log_violation if verbose else None,
    )


def cmd_run(args) -> int:
    program = _load(args)
    query = compile_query(_query_text(args.query), program)
    solver = _solver(program, args, verbose=args.verbose)
    answers = solver.ask(query.goals, qvar=Var(0), n=query.n)
    print(format_answers(answers))
    return 0 if answers else 1


def cmd_models(args) -> int:
    program = _load(args)
    g = oracle.ground_program(program, atom_cap=args.atom_cap)
    models = oracle.stable_models(g)
    if args.project:
        rels = [r.strip() for r in args.project.split(",") if r.strip()]
        shown = oracle.project(models, rels)
    else:
        shown = models
    print(len(shown))
    if args.list_models:
        for m in shown:
            atoms = " ".join(sorted(oracle._atom_str(a) for a in m))
            print(f"{{{atoms}}}")
    return 0


def cmd_ground(args) -> int:
    program = _load(args)
    g = oracle.ground_program(program, atom_cap=args.atom_cap)
    text = oracle.dump(g)
    if text:
        print(text)
    return 0


def cmd_verify(args) -> int:
    program = _load(args)
    g = oracle.ground_program(program, atom_cap=args.atom_cap)
    models = oracle.stable_models(g)
    members = oracle.atom_members(models)
    solver = _solver(program, args)

    mismatches = 0
    diverged = 0
    checked = 0

    def compare(label, engine_call, oracle_truth):
        nonlocal mismatches, diverged, checked
        try:
            got = engine_call()
        except DepthLimitError:
            diverged += 1
            print(f"DIVERGED {label} (depth bound)")
            return
        checked += 1
        if got != oracle_truth:
            mismatches += 1
            print(
                f"MISMATCH {label}: engine={'sat' if got else 'unsat'} "
                f"oracle={'sat' if oracle_truth else 'unsat'}"
            )

    if args.query:
        from .frontend import compile_query

        for qtext in args.query:
            query = compile_query(_query_text(qtext), program)
            pos, neg = _ground_literals(query.goals)
            truth = any(
                all(a in m for a in pos) and not any(a in m for a in neg)
                for m in models
            )
            compare(
                query.source,
                lambda q=query: bool(solver.ask(q.goals, n=1)),
                truth,
            )
        what = f"{len(args.query)} queries"
    else:
        atoms = [a for a in g.atoms if not a[0].startswith("%")]
        for rel, atom_args in atoms:
            compare(
                oracle._atom_str((rel, atom_args)),
                lambda r=rel, a=atom_args: bool(solver.ask([CallPos(r, a)], n=1)),
                (rel, atom_args) in members,
            )
        what = f"{len(atoms)} atoms"
    print(f"checked {what}: {mismatches} mismatch(es), {diverged} diverged")
    return 1 if mismatches else 0


def _ground_literals(goals):
    """Split query goals into ground positive/negative atoms, for comparing
    a query against oracle model membership."""
    from .engine import CallNeg
    from .errors import LoadError

    pos, neg = [], []
    for goal in goals:
        if isinstance(goal, CallPos) and all(type(a) in (int, str) for a in goal.args):
            pos.append((goal.relation, goal.args))
        elif isinstance(goal, CallNeg) and all(
            type(a) in (int, str) for a in goal.args
        ):
            neg.append((goal.relation, goal.args))
        else:
            raise LoadError(
                "verify --query supports conjunctions of ground relation calls"
            )
    return pos, neg


def cmd_repl(args) -> int:
    program = _load(args)
    solver = _solver(program, args, verbose=args.verbose)
    print(f"loaded {len(program.relations)} relations, {len(program.specs)} constraints")
    while True:
        try:
            line = input("> ")
        except EOFError:
            print()
            return 0
        line = line.strip()
        if not line:
            continue
        if line in (":q", ":quit", "exit"):
            return 0
        try:
            query = compile_query(line, program)
            answers = solver.ask(query.goals, qvar=Var(0), n=query.n)
            print(format_answers(answers))
        except SklError as exc:
            print(f"error: {exc}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sklogic",
        description="Relational logic programs with stable-model negation "
        "and integrity constraints",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, query=False):
        p.add_argument("programs", nargs="+", help="program files (.skl)")
        p.add_argument("--depth-bound", type=int, default=DEFAULT_DEPTH_BOUND)
        p.add_argument("--max-answers", type=int, default=DEFAULT_MAX_ANSWERS)
        p.add_argument("--atom-cap", type=int, default=oracle.DEFAULT_ATOM_CAP,
                       help="oracle ground-atom cap")
        p.add_argument("--verbose", action="store_true",
                       help="log constraint violations to stderr")
        if query:
            p.add_argument("--query", "-q", required=True,
                           help="a run/run* form, or @file")

    common(sub.add_parser("run", help="execute one query"), query=True)
    p_models = sub.add_parser("models", help="count stable models")
    common(p_models)
    p_models.add_argument("--project", help="comma-separated relation names")
    p_models.add_argument("--list-models", action="store_true")
    common(sub.add_parser("ground", help="dump the ground program"))
    p_verify = sub.add_parser("verify", help="engine vs oracle on every ground atom")
    common(p_verify)
    p_verify.add_argument(
        "--query", "-q", action="append",
        help="check this query instead of every atom (repeatable; "
        "ground relation calls only)",
    )
    common(sub.add_parser("repl", help="interactive query loop"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "run": cmd_run,
        "models": cmd_models,
        "ground": cmd_ground,
        "verify": cmd_verify,
        "repl": cmd_repl,
    }
    try:
        return handlers[args.command](args)
    except GroundingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SklError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
