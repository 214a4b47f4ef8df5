"""Logic terms, substitutions, unification, and reification.

Term kinds: `Var` (logic variable), Python `str` (symbol), Python `int`
(integer), `Pair` (cons cell), and the `NIL` sentinel (empty list).  Proper
lists are right-nested pairs ending in NIL.  Symbols and integers are
deliberately distinct kinds: ``unify(1, "1")`` fails.

Substitutions are plain dicts treated as immutable; extension copies.  Every
operation here is pure, so values can be shared freely across search
branches and threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


@dataclass(frozen=True)
class Var:
    """A logic variable, identified by a counter unique within one query."""

    id: int

    def __repr__(self):
        return f"?{self.id}"


class _EmptyList:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "()"


NIL = _EmptyList()


@dataclass(frozen=True)
class Pair:
    head: "Term"
    tail: "Term"

    def __repr__(self):
        return print_term(self)


Term = Union[Var, str, int, Pair, _EmptyList]
Subst = dict  # Var id -> Term

FAIL = None  # unify's failure marker


def from_list(items, tail: Term = NIL) -> Term:
    """Build a right-nested Pair chain from a Python sequence."""
    out = tail
    for item in reversed(items):
        out = Pair(item, out)
    return out


def to_list(t: Term) -> Optional[list]:
    """Flatten a proper list term, or None if t is improper/not a list."""
    out = []
    while isinstance(t, Pair):
        out.append(t.head)
        t = t.tail
    return out if t is NIL else None


def walk(t: Term, s: Subst) -> Term:
    """Chase variable bindings until a non-variable or unbound variable."""
    while isinstance(t, Var):
        nxt = s.get(t.id)
        if nxt is None:
            return t
        t = nxt
    return t


def walk_star(t: Term, s: Subst) -> Term:
    """walk, recursing into pairs."""
    t = walk(t, s)
    if isinstance(t, Pair):
        return Pair(walk_star(t.head, s), walk_star(t.tail, s))
    return t


def occurs(v: Var, t: Term, s: Subst) -> bool:
    t = walk(t, s)
    if isinstance(t, Var):
        return t.id == v.id
    if isinstance(t, Pair):
        return occurs(v, t.head, s) or occurs(v, t.tail, s)
    return False


def unify(a: Term, b: Term, s: Subst) -> Optional[Subst]:
    """Least extension of s making a and b equal, or FAIL.

    The occurs-check is always on, so no binding chain can become cyclic.
    The input substitution is never mutated.
    """
    a, b = walk(a, s), walk(b, s)
    if isinstance(a, Var) and isinstance(b, Var) and a.id == b.id:
        return s
    if isinstance(a, Var):
        if occurs(a, b, s):
            return FAIL
        out = dict(s)
        out[a.id] = b
        return out
    if isinstance(b, Var):
        if occurs(b, a, s):
            return FAIL
        out = dict(s)
        out[b.id] = a
        return out
    if isinstance(a, Pair) and isinstance(b, Pair):
        s1 = unify(a.head, b.head, s)
        if s1 is FAIL:
            return FAIL
        return unify(a.tail, b.tail, s1)
    # symbols (str), integers (int), NIL: plain equality, kinds distinct
    if type(a) is type(b) and a == b:
        return s
    return FAIL


def is_ground(t: Term, s: Subst) -> bool:
    t = walk(t, s)
    if isinstance(t, Var):
        return False
    if isinstance(t, Pair):
        return is_ground(t.head, s) and is_ground(t.tail, s)
    return True


def reify(t: Term, s: Subst) -> Term:
    """Resolve t under s and rename residual variables _.0, _.1, ... in
    first-encounter order."""
    t = walk_star(t, s)
    names: dict[int, str] = {}

    def rename(u: Term) -> Term:
        if isinstance(u, Var):
            if u.id not in names:
                names[u.id] = f"_.{len(names)}"
            return names[u.id]
        if isinstance(u, Pair):
            return Pair(rename(u.head), rename(u.tail))
        return u

    return rename(t)


def print_term(t: Term) -> str:
    """Render a term the way answers are printed: (1 2), (a . b), _.0."""
    if isinstance(t, Pair):
        parts = []
        while isinstance(t, Pair):
            parts.append(print_term(t.head))
            t = t.tail
        if t is NIL:
            return "(" + " ".join(parts) + ")"
        return "(" + " ".join(parts) + " . " + print_term(t) + ")"
    if t is NIL:
        return "()"
    if isinstance(t, Var):
        return f"?{t.id}"
    return str(t)
