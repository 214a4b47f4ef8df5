"""Program compiler for the surface DSL.

Top-level forms: (defineo (name params...) body...) and
(constrainto [emitters...] [verifiers...]).  Queries are
(run N (q) goals...) or (run* (q) goals...).

Scoping is strict: inside a defineo body the only variables are the head
parameters and fresh-introduced names; any other identifier is a load
error.  Inside constrainto, emitter argument identifiers are implicitly the
constraint's variables.  Symbols are written 'quoted (or bare inside
quasiquote patterns); bare identifiers are always variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import constraints as cst
from . import verifier as vexpr
from .engine import (
    ALL,
    CallNeg,
    CallPos,
    Conj,
    Disj,
    Fresh,
    Program,
    Unify,
)
from .errors import LoadError
from .reader import Lst, Num, Sym, read
from .terms import NIL, Pair, Var

_SPECIAL = {"==", "conde", "fresh", "noto", "defineo", "constrainto", "run", "run*",
            "quote", "quasiquote", "unquote"}


@dataclass(frozen=True)
class Query:
    n: Optional[int]  # None for run*
    qvar_name: str
    goals: Tuple
    source: str = ""


# ---------------------------------------------------------------------------
# Term expressions

def _sym_name(form, what):
    if not isinstance(form, Sym):
        raise LoadError(f"expected {what} at {form.pos()}")
    return form.name


def _compile_term(form, scope, program):
    """Compile a term expression to env -> Term."""
    if isinstance(form, Num):
        program.note_constant(form.value)
        v = form.value
        return lambda env: v
    if isinstance(form, Sym):
        name = form.name
        if name not in scope:
            raise LoadError(
                f"unbound identifier '{name}' at {form.pos()}; "
                "introduce it with fresh or quote it if it is a symbol"
            )
        return lambda env: env[name]
    if isinstance(form, Lst) and form.items and isinstance(form.items[0], Sym):
        head = form.items[0].name
        if head == "quote":
            if len(form.items) != 2 or form.tail is not None:
                raise LoadError(f"malformed quote at {form.pos()}")
            const = _quoted_term(form.items[1], program)
            return lambda env: const
        if head == "quasiquote":
            if len(form.items) != 2 or form.tail is not None:
                raise LoadError(f"malformed quasiquote at {form.pos()}")
            return _compile_pattern(form.items[1], scope, program)
        if head == "unquote":
            raise LoadError(f"unquote outside quasiquote at {form.pos()}")
    raise LoadError(f"expected a term at {getattr(form, 'pos', lambda: '?')()}")


def _quoted_term(form, program):
    if isinstance(form, Sym):
        program.note_constant(form.name)
        return form.name
    if isinstance(form, Num):
        program.note_constant(form.value)
        return form.value
    if isinstance(form, Lst):
        tail = _quoted_term(form.tail, program) if form.tail is not None else NIL
        out = tail
        for item in reversed(form.items):
            out = Pair(_quoted_term(item, program), out)
        return out
    raise LoadError("malformed quoted datum")


def _compile_pattern(form, scope, program):
    """Quasiquote list pattern: bare symbols are constants, ,x splices a
    variable, dotted tails build improper pairs."""
    if isinstance(form, Num):
        program.note_constant(form.value)
        v = form.value
        return lambda env: v
    if isinstance(form, Sym):
        program.note_constant(form.name)
        name = form.name
        return lambda env: name
    if isinstance(form, Lst):
        if form.items and isinstance(form.items[0], Sym):
            head = form.items[0].name
            if head == "unquote":
                if len(form.items) != 2:
                    raise LoadError(f"malformed unquote at {form.pos()}")
                return _compile_term(form.items[1], scope, program)
            if head == "quasiquote":
                raise LoadError(f"nested quasiquote is not supported at {form.pos()}")
        item_mks = [_compile_pattern(i, scope, program) for i in form.items]
        tail_mk = (
            _compile_pattern(form.tail, scope, program)
            if form.tail is not None
            else (lambda env: NIL)
        )

        def mk(env):
            out = tail_mk(env)
            for m in reversed(item_mks):
                out = Pair(m(env), out)
            return out

        return mk
    raise LoadError("malformed quasiquote pattern")


# ---------------------------------------------------------------------------
# Goals

def _compile_goal(form, scope, program, arities):
    if not isinstance(form, Lst) or not form.items or form.tail is not None:
        raise LoadError(f"expected a goal at {getattr(form, 'pos', lambda: '?')()}")
    head = form.items[0]
    if not isinstance(head, Sym):
        raise LoadError(f"expected a goal at {form.pos()}")
    op = head.name

    if op == "==":
        if len(form.items) != 3:
            raise LoadError(f"== takes two arguments at {form.pos()}")
        a = _compile_term(form.items[1], scope, program)
        b = _compile_term(form.items[2], scope, program)
        return lambda env: Unify(a(env), b(env))

    if op == "conde":
        if len(form.items) < 2:
            raise LoadError(f"conde needs at least one branch at {form.pos()}")
        branches = []
        for br in form.items[1:]:
            if not isinstance(br, Lst) or not br.items:
                raise LoadError(f"conde branch must be a non-empty list at {form.pos()}")
            branches.append([_compile_goal(g, scope, program, arities) for g in br.items])

        def mk_conde(env):
            return Disj(tuple(Conj(tuple(g(env) for g in br)) for br in branches))

        return mk_conde

    if op == "fresh":
        if len(form.items) < 3 or not isinstance(form.items[1], Lst):
            raise LoadError(f"malformed fresh at {form.pos()}")
        names = [_sym_name(v, "a variable name") for v in form.items[1].items]
        if len(set(names)) != len(names):
            raise LoadError(f"duplicate fresh variable at {form.pos()}")
        inner_scope = scope | set(names)
        goals = [_compile_goal(g, inner_scope, program, arities) for g in form.items[2:]]

        def mk_fresh(env):
            def build(*vs):
                inner = dict(env)
                inner.update(zip(names, vs))
                return Conj(tuple(g(inner) for g in goals))

            return Fresh(len(names), build)

        return mk_fresh

    if op == "noto":
        if len(form.items) != 2:
            raise LoadError(f"noto takes one relation call at {form.pos()}")
        inner = form.items[1]
        if (
            not isinstance(inner, Lst)
            or not inner.items
            or not isinstance(inner.items[0], Sym)
            or inner.items[0].name in _SPECIAL
        ):
            raise LoadError(f"noto expects a relation call at {form.pos()}")
        call = _compile_call(inner, scope, program, arities)
        return lambda env: CallNeg(*call(env))

    if op in _SPECIAL:
        raise LoadError(f"'{op}' cannot appear as a goal here at {form.pos()}")

    call = _compile_call(form, scope, program, arities)
    return lambda env: CallPos(*call(env))


def _compile_call(form, scope, program, arities):
    name = form.items[0].name
    args = form.items[1:]
    if name not in arities:
        raise LoadError(f"unknown relation '{name}' at {form.pos()}")
    if arities[name] != len(args):
        raise LoadError(
            f"relation '{name}' takes {arities[name]} argument(s), "
            f"got {len(args)} at {form.pos()}"
        )
    arg_mks = [_compile_term(a, scope, program) for a in args]
    return lambda env: (name, tuple(m(env) for m in arg_mks))


# ---------------------------------------------------------------------------
# Top-level forms

def parse_program(forms) -> Program:
    program = Program()
    arities = {}
    headers = []

    for form in forms:
        if not isinstance(form, Lst) or not form.items or not isinstance(form.items[0], Sym):
            raise LoadError("top-level forms must be (defineo ...) or (constrainto ...)")
        kind = form.items[0].name
        if kind == "defineo":
            name, params = _parse_header(form)
            if name in arities:
                if arities[name] != len(params):
                    raise LoadError(
                        f"relation '{name}' already defined with arity {arities[name]} "
                        f"at {form.pos()}"
                    )
                raise LoadError(f"relation '{name}' is already defined at {form.pos()}")
            arities[name] = len(params)
            headers.append((form, name, params))
        elif kind != "constrainto":
            raise LoadError(f"unknown top-level form '{kind}' at {form.pos()}")

    for form, name, params in headers:
        body_forms = form.items[2:]
        if not body_forms:
            raise LoadError(f"defineo '{name}' has an empty body at {form.pos()}")
        scope = set(params)
        goal_mks = [_compile_goal(g, scope, program, arities) for g in body_forms]

        def make_body(*args, _params=tuple(params), _mks=tuple(goal_mks)):
            env = dict(zip(_params, args))
            return Conj(tuple(m(env) for m in _mks))

        program.define(name, params, make_body)

    for form in forms:
        if isinstance(form, Lst) and form.items and isinstance(form.items[0], Sym) \
                and form.items[0].name == "constrainto":
            program.add_spec(_parse_constraint(form, len(program.specs), arities))

    diagnostics = check_safety_forms(forms, arities)
    if diagnostics:
        raise LoadError("unsafe program:\n  " + "\n  ".join(diagnostics))
    return program.freeze()


def _parse_header(form):
    if len(form.items) < 2 or not isinstance(form.items[1], Lst):
        raise LoadError(f"malformed defineo at {form.pos()}")
    head = form.items[1]
    if not head.items:
        raise LoadError(f"defineo needs a relation name at {form.pos()}")
    name = _sym_name(head.items[0], "a relation name")
    params = [_sym_name(p, "a parameter name") for p in head.items[1:]]
    if len(set(params)) != len(params):
        raise LoadError(f"duplicate parameter in defineo '{name}' at {form.pos()}")
    return name, params


def _parse_constraint(form, spec_id, arities):
    if len(form.items) != 3:
        raise LoadError(f"constrainto takes an emitter list and a verifier list at {form.pos()}")
    emitter_forms, verifier_forms = form.items[1], form.items[2]
    if not isinstance(emitter_forms, Lst) or not isinstance(verifier_forms, Lst):
        raise LoadError(f"malformed constrainto at {form.pos()}")

    source = _render_constraint(form)
    emitters = []
    for e in emitter_forms.items:
        if not isinstance(e, Lst) or not e.items or not isinstance(e.items[0], Sym):
            raise LoadError(f"{source}: malformed emitter")
        if e.items[0].name == "noto":
            if len(e.items) != 2 or not isinstance(e.items[1], Lst):
                raise LoadError(f"{source}: malformed negative emitter")
            inner = e.items[1]
            rel = _sym_name(inner.items[0], "a relation name")
            params = [_emitter_var(a, source) for a in inner.items[1:]]
            emitters.append((rel, False, tuple(params)))
        else:
            rel = e.items[0].name
            params = [_emitter_var(a, source) for a in e.items[1:]]
            emitters.append((rel, True, tuple(params)))

    verifiers = [vexpr.parse_verifier(v) for v in verifier_forms.items]
    return cst.compile_constraint(spec_id, emitters, verifiers, arities, source)


def _emitter_var(form, source):
    if not isinstance(form, Sym) or form.name in _SPECIAL:
        raise LoadError(f"{source}: emitter arguments must be distinct variables")
    return form.name


def _render_constraint(form):
    from .reader import print_form

    return print_form(form)


# ---------------------------------------------------------------------------
# Queries

def parse_query(form, program: Program) -> Query:
    if not isinstance(form, Lst) or not form.items or not isinstance(form.items[0], Sym):
        raise LoadError("a query must be (run N (q) goals...) or (run* (q) goals...)")
    op = form.items[0].name
    if op not in ("run", "run*"):
        raise LoadError(f"a query must start with run or run*, got '{op}'")
    items = list(form.items[1:])
    if op == "run":
        if not items or not isinstance(items[0], Num):
            raise LoadError("run needs an answer count")
        n = items[0].value
        if n < 1:
            raise LoadError(f"answer count must be positive, got {n}")
        items = items[1:]
    else:
        n = ALL
    if not items or not isinstance(items[0], Lst) or len(items[0].items) != 1:
        raise LoadError("the query variable list must hold exactly one variable")
    qname = _sym_name(items[0].items[0], "the query variable")
    goal_forms = items[1:]
    if not goal_forms:
        raise LoadError("a query needs at least one goal")

    arities = {name: rel.arity for name, rel in program.relations.items()}
    scope = {qname}
    env = {qname: Var(0)}
    goals = tuple(
        _compile_goal(g, scope, program, arities)(env) for g in goal_forms
    )

    diagnostics = _safety_seq(goal_forms, set(), "query")
    if diagnostics:
        raise LoadError("unsafe query:\n  " + "\n  ".join(diagnostics))
    from .reader import print_form

    return Query(n, qname, goals, print_form(form))


# ---------------------------------------------------------------------------
# Safety

def check_safety_forms(forms, arities) -> List[str]:
    """Static binding-order check: head parameters and every variable fed to
    a negative call must be bound by an earlier positive call or by
    unification with a ground/bound term."""
    diagnostics = []
    for form in forms:
        if not (isinstance(form, Lst) and form.items and isinstance(form.items[0], Sym)):
            continue
        if form.items[0].name != "defineo":
            continue
        name, params = _parse_header(form)
        body = form.items[2:]
        bound = set()
        diags = _safety_seq(body, bound, f"clause '{name}'")
        diagnostics.extend(diags)
        for p in params:
            if p not in bound:
                diagnostics.append(
                    f"clause '{name}': head parameter '{p}' is never bound "
                    "by a positive call or ground unification"
                )
    return diagnostics


def _term_vars(form, acc):
    if isinstance(form, Sym):
        acc.add(form.name)
    elif isinstance(form, Lst):
        if form.items and isinstance(form.items[0], Sym) and form.items[0].name == "quote":
            return
        if form.items and isinstance(form.items[0], Sym) and form.items[0].name in (
            "quasiquote",
            "unquote",
        ):
            for i in form.items[1:]:
                _pattern_vars(i, acc)
            return
        for i in form.items:
            _term_vars(i, acc)
        if form.tail is not None:
            _term_vars(form.tail, acc)


def _pattern_vars(form, acc):
    if isinstance(form, Lst):
        if form.items and isinstance(form.items[0], Sym) and form.items[0].name == "unquote":
            _term_vars(form.items[1], acc)
            return
        for i in form.items:
            _pattern_vars(i, acc)
        if form.tail is not None:
            _pattern_vars(form.tail, acc)


def _is_ground_form(form):
    if isinstance(form, Num):
        return True
    if isinstance(form, Lst) and form.items and isinstance(form.items[0], Sym):
        if form.items[0].name == "quote":
            return True
        if form.items[0].name == "quasiquote":
            acc = set()
            _pattern_vars(form.items[1], acc)
            return not acc
    return False


def _safety_seq(goal_forms, bound, where, allow_unbound=frozenset()):
    diags = []
    for g in goal_forms:
        if not (isinstance(g, Lst) and g.items and isinstance(g.items[0], Sym)):
            continue
        op = g.items[0].name
        if op == "==":
            a, b = g.items[1], g.items[2]
            va, vb = set(), set()
            _term_vars(a, va)
            _term_vars(b, vb)
            a_known = _is_ground_form(a) or (va and va <= bound)
            b_known = _is_ground_form(b) or (vb and vb <= bound)
            if a_known:
                bound |= vb
            elif b_known:
                bound |= va
        elif op == "fresh":
            names = {v.name for v in g.items[1].items if isinstance(v, Sym)}
            inner = set(bound) - names
            diags.extend(_safety_seq(g.items[2:], inner, where, allow_unbound))
            bound |= inner - names
        elif op == "conde":
            ends = []
            for br in g.items[1:]:
                if isinstance(br, Lst):
                    b2 = set(bound)
                    diags.extend(_safety_seq(br.items, b2, where, allow_unbound))
                    ends.append(b2)
            if ends:
                common = ends[0]
                for e in ends[1:]:
                    common &= e
                bound |= common
        elif op == "noto":
            inner = g.items[1] if len(g.items) == 2 else None
            if isinstance(inner, Lst):
                acc = set()
                for a in inner.items[1:]:
                    _term_vars(a, acc)
                for v in sorted(acc - bound - set(allow_unbound)):
                    diags.append(
                        f"{where}: variable '{v}' is unbound at the negative call "
                        f"(noto {inner.items[0].name} ...)"
                    )
        else:
            # positive call: its arguments come out ground
            acc = set()
            for a in g.items[1:]:
                _term_vars(a, acc)
            bound |= acc
    return diags


# ---------------------------------------------------------------------------
# Entry points

def load_program(text: str) -> Program:
    return parse_program(read(text))


def load_files(paths) -> Program:
    chunks = []
    for p in paths:
        with open(p, "r", encoding="utf-8") as fh:
            chunks.append(fh.read())
    return load_program("\n".join(chunks))


def compile_query(text: str, program: Program) -> Query:
    forms = read(text)
    if len(forms) != 1:
        raise LoadError(f"expected exactly one query form, got {len(forms)}")
    return parse_query(forms[0], program)
