"""Boolean/arithmetic expression language used in verifier position.

Operator surface set: = != > < >= <= + - * abs not and or eq? symbol-hash.
Comparisons and arithmetic work on integers, eq? on symbols.  symbol-hash
maps to a deterministic rank: the symbol's index in the code-point
lexicographic ordering of the program's symbol universe.  Python integers
are unbounded, so arithmetic never wraps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import LoadError, VerifierError

TRUE_EXPR = True  # the implicit top conjunct


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class SymLit:
    name: str


@dataclass(frozen=True)
class VarRef:
    name: str


@dataclass(frozen=True)
class Arith:
    op: str  # + - * abs
    args: Tuple


@dataclass(frozen=True)
class SymRank:
    arg: object


@dataclass(frozen=True)
class Cmp:
    op: str  # = != > < >= <=
    lhs: object
    rhs: object


@dataclass(frozen=True)
class SymEq:
    lhs: object
    rhs: object


@dataclass(frozen=True)
class BoolOp:
    op: str  # and or not
    args: Tuple


_CMP_OPS = {"=", "!=", ">", "<", ">=", "<="}
_ARITH_OPS = {"+", "-", "*"}


def free_vars(e) -> set:
    if isinstance(e, VarRef):
        return {e.name}
    if isinstance(e, (Arith, BoolOp)):
        out = set()
        for a in e.args:
            out |= free_vars(a)
        return out
    if isinstance(e, (Cmp, SymEq)):
        return free_vars(e.lhs) | free_vars(e.rhs)
    if isinstance(e, SymRank):
        return free_vars(e.arg)
    return set()


def conjoin(exprs) -> BoolOp:
    """The handler form: (and e1 ... en true)."""
    return BoolOp("and", tuple(exprs) + (BoolOp("and", ()),))


def parse_verifier(form):
    """Compile a surface form (from the reader) into an expression AST.

    `form` uses the reader's conventions: ints are IntLit, quoted symbols
    are SymLit, bare identifiers are VarRef, lists are operator
    applications.  Raises LoadError on unknown operators or bad arity.
    """
    from .reader import Lst, Num, Sym  # local import: reader has no deps on us

    def go(f):
        if isinstance(f, Num):
            return IntLit(f.value)
        if isinstance(f, Sym):
            return VarRef(f.name)
        if isinstance(f, Lst):
            if f.tail is not None:
                raise LoadError(f"dotted list in verifier expression at {f.pos()}")
            if not f.items or not isinstance(f.items[0], Sym):
                raise LoadError(f"expected an operator application at {f.pos()}")
            op = f.items[0].name
            args = f.items[1:]
            if op == "quote":
                if len(args) != 1 or not isinstance(args[0], Sym):
                    raise LoadError(f"quote in a verifier takes one symbol at {f.pos()}")
                return SymLit(args[0].name)
            if op in _CMP_OPS:
                _arity(op, args, 2, f)
                return Cmp(op, go(args[0]), go(args[1]))
            if op == "eq?":
                _arity(op, args, 2, f)
                return SymEq(go(args[0]), go(args[1]))
            if op == "abs":
                _arity(op, args, 1, f)
                return Arith("abs", (go(args[0]),))
            if op in _ARITH_OPS:
                if not args:
                    raise LoadError(f"operator '{op}' needs at least one argument at {f.pos()}")
                return Arith(op, tuple(go(a) for a in args))
            if op == "not":
                _arity(op, args, 1, f)
                return BoolOp("not", (go(args[0]),))
            if op in ("and", "or"):
                return BoolOp(op, tuple(go(a) for a in args))
            if op == "symbol-hash":
                _arity(op, args, 1, f)
                return SymRank(go(args[0]))
            raise LoadError(f"unknown verifier operator '{op}' at {f.pos()}")
        raise LoadError("unsupported verifier form")

    return go(form)


def _arity(op, args, n, form):
    if len(args) != n:
        raise LoadError(
            f"operator '{op}' takes {n} argument(s), got {len(args)} at {form.pos()}"
        )


def sym_rank(name: str, universe) -> int:
    """Deterministic total-order rank of a symbol within the program's
    symbol universe (code-point lexicographic)."""
    try:
        return universe.rank(name)
    except KeyError:
        raise VerifierError(f"symbol '{name}' is not in the program's symbol universe")


class SymbolUniverse:
    """Sorted symbol table giving each symbol a stable rank."""

    def __init__(self, symbols):
        self._sorted = sorted(set(symbols))
        self._ranks = {s: i for i, s in enumerate(self._sorted)}

    def rank(self, name: str) -> int:
        return self._ranks[name]

    def __contains__(self, name):
        return name in self._ranks

    def __iter__(self):
        return iter(self._sorted)

    def __len__(self):
        return len(self._sorted)


def compile_verifier(e):
    """Compile an expression AST into a closure (env, universe) -> value.

    Same semantics as eval_verifier; constraint checking evaluates the same
    expression thousands of times, so the AST walk is paid once here.
    """
    if isinstance(e, IntLit):
        v = e.value
        return lambda env, u: v
    if isinstance(e, SymLit):
        s = e.name
        return lambda env, u: s
    if isinstance(e, VarRef):
        name = e.name

        def ref(env, u):
            try:
                return env[name]
            except KeyError:
                raise VerifierError(f"unbound verifier variable '{name}'")

        return ref
    if isinstance(e, SymRank):
        arg = compile_verifier(e.arg)

        def rank(env, u):
            v = arg(env, u)
            if not isinstance(v, str):
                raise VerifierError(f"expected a symbol, got {v!r}")
            if u is None:
                raise VerifierError("symbol-hash used without a loaded symbol universe")
            return sym_rank(v, u)

        return rank
    if isinstance(e, Arith):
        args = [compile_verifier(a) for a in e.args]
        op = e.op

        def arith(env, u):
            vals = []
            for a in args:
                v = a(env, u)
                if not isinstance(v, int) or isinstance(v, bool):
                    raise VerifierError(f"expected an integer, got {v!r}")
                vals.append(v)
            if op == "abs":
                return abs(vals[0])
            if op == "+":
                return sum(vals)
            if op == "*":
                out = 1
                for v in vals:
                    out *= v
                return out
            if len(vals) == 1:
                return -vals[0]
            out = vals[0]
            for v in vals[1:]:
                out -= v
            return out

        return arith
    if isinstance(e, Cmp):
        lhs, rhs = compile_verifier(e.lhs), compile_verifier(e.rhs)
        import operator

        opfn = {
            "=": operator.eq,
            "!=": operator.ne,
            ">": operator.gt,
            "<": operator.lt,
            ">=": operator.ge,
            "<=": operator.le,
        }[e.op]

        def cmp(env, u):
            a, b = lhs(env, u), rhs(env, u)
            if not isinstance(a, int) or isinstance(a, bool):
                raise VerifierError(f"expected an integer, got {a!r}")
            if not isinstance(b, int) or isinstance(b, bool):
                raise VerifierError(f"expected an integer, got {b!r}")
            return opfn(a, b)

        return cmp
    if isinstance(e, SymEq):
        lhs, rhs = compile_verifier(e.lhs), compile_verifier(e.rhs)

        def symeq(env, u):
            a, b = lhs(env, u), rhs(env, u)
            if not isinstance(a, str) or not isinstance(b, str):
                raise VerifierError(f"eq? expects symbols, got {a!r}, {b!r}")
            return a == b

        return symeq
    if isinstance(e, BoolOp):
        args = [compile_verifier(a) for a in e.args]
        op = e.op

        def chk(fn, env, u):
            v = fn(env, u)
            if not isinstance(v, bool):
                raise VerifierError(f"expected a boolean, got {v!r}")
            return v

        if op == "not":
            inner = args[0]
            return lambda env, u: not chk(inner, env, u)
        if op == "and":
            return lambda env, u: all(chk(a, env, u) for a in args)
        return lambda env, u: any(chk(a, env, u) for a in args)
    raise VerifierError(f"cannot compile {e!r}")


def eval_verifier(e, env, universe=None) -> bool:
    """Strict evaluation over a ground environment (name -> int | symbol).

    True means the enclosing integrity constraint is violated.  and/or
    short-circuit left to right.  Type clashes raise VerifierError.
    """

    def num(x):
        v = go(x)
        if not isinstance(v, int) or isinstance(v, bool):
            raise VerifierError(f"expected an integer, got {v!r}")
        return v

    def sym(x):
        v = go(x)
        if not isinstance(v, str):
            raise VerifierError(f"expected a symbol, got {v!r}")
        return v

    def go(x):
        if isinstance(x, IntLit):
            return x.value
        if isinstance(x, SymLit):
            return x.name
        if isinstance(x, VarRef):
            try:
                return env[x.name]
            except KeyError:
                raise VerifierError(f"unbound verifier variable '{x.name}'")
        if isinstance(x, SymRank):
            if universe is None:
                raise VerifierError("symbol-hash used without a loaded symbol universe")
            return sym_rank(sym(x.arg), universe)
        if isinstance(x, Arith):
            if x.op == "abs":
                return abs(num(x.args[0]))
            vals = [num(a) for a in x.args]
            if x.op == "+":
                out = 0
                for v in vals:
                    out += v
                return out
            if x.op == "*":
                out = 1
                for v in vals:
                    out *= v
                return out
            # '-': unary negation or left-fold subtraction
            if len(vals) == 1:
                return -vals[0]
            out = vals[0]
            for v in vals[1:]:
                out -= v
            return out
        if isinstance(x, Cmp):
            a, b = num(x.lhs), num(x.rhs)
            return {
                "=": a == b,
                "!=": a != b,
                ">": a > b,
                "<": a < b,
                ">=": a >= b,
                "<=": a <= b,
            }[x.op]
        if isinstance(x, SymEq):
            return sym(x.lhs) == sym(x.rhs)
        if isinstance(x, BoolOp):
            if x.op == "not":
                return not boolean(x.args[0])
            if x.op == "and":
                return all(boolean(a) for a in x.args)
            return any(boolean(a) for a in x.args)
        raise VerifierError(f"cannot evaluate {x!r}")

    def boolean(x):
        v = go(x)
        if not isinstance(v, bool):
            raise VerifierError(f"expected a boolean, got {v!r}")
        return v

    return boolean(e)
