"""Brute-force stable-model semantics, independent of the resolution engine.

A loaded program is grounded to a propositional image: every clause is
normalized to disjunctive branches, every variable (parameters and fresh
locals alike) is instantiated over the program's constant universe, and
ground equalities are evaluated away.  Constraints ground the same way,
with their verifier expressions evaluated during instantiation so only the
violating instances survive as pure atom-set constraints.

Interpretations are enumerated exhaustively (bit masks, ascending); an
interpretation is a stable model when it equals the least fixpoint of its
own reduct.  The inner enumeration loop runs in a compiled kernel when one
was built, with a pure-Python fallback selected at import.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from . import kernel
from .engine import (
    CallNeg,
    CallPos,
    Conj,
    Disj,
    Fresh,
    Program,
    Unify,
)
from .errors import GroundingError, VerifierError
from .terms import Pair, Var

DEFAULT_ATOM_CAP = 22  # 2^22 interpretations
DEFAULT_INSTANTIATION_CAP = 1_000_000

Atom = Tuple[str, tuple]


@dataclass(frozen=True)
class GroundRule:
    head: Atom
    pos: Tuple[Atom, ...]
    neg: Tuple[Atom, ...]


@dataclass(frozen=True)
class GroundConstraint:
    pos: Tuple[Atom, ...]
    neg: Tuple[Atom, ...]


@dataclass
class GroundProgram:
    atoms: Tuple[Atom, ...]
    rules: Tuple[GroundRule, ...]
    constraints: Tuple[GroundConstraint, ...]
    index: Dict[Atom, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {a: i for i, a in enumerate(self.atoms)}


def _atom_str(atom: Atom) -> str:
    rel, args = atom
    if not args:
        return rel
    return f"{rel}({','.join(str(a) for a in args)})"


def dump(g: GroundProgram) -> str:
    """One rule per line; ':- body.' lines for constraints."""
    lines = []
    for r in g.rules:
        body = [_atom_str(a) for a in r.pos] + [f"not {_atom_str(a)}" for a in r.neg]
        if body:
            lines.append(f"{_atom_str(r.head)} :- {', '.join(body)}.")
        else:
            lines.append(f"{_atom_str(r.head)}.")
    for c in g.constraints:
        body = [_atom_str(a) for a in c.pos] + [f"not {_atom_str(a)}" for a in c.neg]
        lines.append(f":- {', '.join(body)}.")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Grounding

def _ground_term_eq(a, b) -> bool:
    if isinstance(a, Pair) and isinstance(b, Pair):
        return _ground_term_eq(a.head, b.head) and _ground_term_eq(a.tail, b.tail)
    if isinstance(a, Var) or isinstance(b, Var):
        raise GroundingError("unbound variable survived instantiation")
    return type(a) is type(b) and a == b


def _atomic_args(args) -> tuple:
    for a in args:
        if not isinstance(a, (int, str)):
            raise GroundingError(
                "relation arguments must be symbols or integers for grounding"
            )
    return tuple(args)


def _normalize(goal, universe, budget):
    """Normalize a ground-instantiated goal into disjunctive branches of
    (equations, positive atoms, negative atoms)."""
    if isinstance(goal, Unify):
        return [([(goal.a, goal.b)], [], [])]
    if isinstance(goal, CallPos):
        return [([], [(goal.relation, _atomic_args(goal.args))], [])]
    if isinstance(goal, CallNeg):
        return [([], [], [(goal.relation, _atomic_args(goal.args))])]
    if isinstance(goal, Conj):
        out = [([], [], [])]
        for sub in goal.goals:
            subs = _normalize(sub, universe, budget)
            combined = []
            for eqs, pos, neg in out:
                for e2, p2, n2 in subs:
                    combined.append((eqs + e2, pos + p2, neg + n2))
                    if len(combined) > budget[0]:
                        raise GroundingError("grounding blew up while normalizing a clause")
            out = combined
        return out
    if isinstance(goal, Disj):
        out = []
        for sub in goal.goals:
            out.extend(_normalize(sub, universe, budget))
        return out
    if isinstance(goal, Fresh):
        out = []
        count = len(universe) ** goal.count
        budget[0] -= count
        if budget[0] < 0:
            raise GroundingError("grounding blew up while instantiating fresh variables")
        for tup in itertools.product(universe, repeat=goal.count):
            out.extend(_normalize(goal.build(*tup), universe, budget))
        return out
    raise GroundingError(f"cannot ground goal {goal!r}")


def ground_program(
    program: Program,
    atom_cap: int = DEFAULT_ATOM_CAP,
    instantiation_cap: int = DEFAULT_INSTANTIATION_CAP,
) -> GroundProgram:
    universe = program.universe or ()
    atoms: Dict[Atom, None] = {}
    rules: List[GroundRule] = []

    def note(atom):
        atoms.setdefault(atom, None)

    for name in program.relation_order():
        rel = program.relations[name]
        count = len(universe) ** rel.arity
        if count > instantiation_cap:
            raise GroundingError(f"too many instances of relation '{name}' ({count})")
        for tup in itertools.product(universe, repeat=rel.arity):
            head = (name, tup)
            goal = rel.positive_entry(tup)
            for eqs, pos, neg in _normalize(goal, universe, [instantiation_cap]):
                if all(_ground_term_eq(a, b) for a, b in eqs):
                    note(head)
                    for a in pos:
                        note(a)
                    for a in neg:
                        note(a)
                    rules.append(GroundRule(head, tuple(pos), tuple(neg)))

    constraints = _ground_constraints(program, universe, instantiation_cap, note)

    if len(atoms) > atom_cap:
        raise GroundingError(
            f"atom cap exceeded: {len(atoms)} ground atoms (cap {atom_cap})"
        )
    return GroundProgram(tuple(atoms), tuple(rules), tuple(constraints))


def _ground_constraints(program, universe, cap, note):
    out = []
    for spec in program.specs:
        names = [p for slot in spec.slots for p in slot.params]
        count = len(universe) ** len(names) if names else 1
        if count > cap:
            raise GroundingError(
                f"too many instances of constraint {spec.describe()} ({count})"
            )
        for tup in itertools.product(universe, repeat=len(names)):
            env = dict(zip(names, tup))
            try:
                violating = spec.check(env, program.sym_universe)
            except VerifierError:
                continue  # ill-typed instantiation can never be emitted
            if not violating:
                continue
            pos, neg, seen = [], [], set()
            self_paired = False
            for slot in spec.slots:
                args = tuple(env[p] for p in slot.params)
                key = (slot.relation, slot.positive, args)
                if key in seen:
                    self_paired = True  # one atom cannot fill two slots
                    break
                seen.add(key)
                (pos if slot.positive else neg).append((slot.relation, args))
            if self_paired:
                continue
            for a in pos + neg:
                note(a)
            out.append(GroundConstraint(tuple(pos), tuple(neg)))
    return out


# ---------------------------------------------------------------------------
# Stable-model semantics

def reduct(g: GroundProgram, m: frozenset) -> GroundProgram:
    """Drop rules whose negative body intersects m; keep positive bodies."""
    rules = tuple(
        GroundRule(r.head, r.pos, ())
        for r in g.rules
        if not any(a in m for a in r.neg)
    )
    return GroundProgram(g.atoms, rules, ())


def minimal_model(g: GroundProgram) -> frozenset:
    """Least fixpoint of the immediate-consequence step (negation-free)."""
    if any(r.neg for r in g.rules):
        raise ValueError("minimal_model needs a negation-free program")
    model = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.head not in model and all(a in model for a in r.pos):
                model.add(r.head)
                changed = True
    return frozenset(model)


def _masks(g: GroundProgram):
    idx = g.index
    heads, pos, neg = [], [], []
    for r in g.rules:
        heads.append(1 << idx[r.head])
        p = 0
        for a in r.pos:
            p |= 1 << idx[a]
        n = 0
        for a in r.neg:
            n |= 1 << idx[a]
        pos.append(p)
        neg.append(n)
    cpos, cneg = [], []
    for c in g.constraints:
        p = 0
        for a in c.pos:
            p |= 1 << idx[a]
        n = 0
        for a in c.neg:
            n |= 1 << idx[a]
        cpos.append(p)
        cneg.append(n)
    return heads, pos, neg, cpos, cneg


def stable_models(g: GroundProgram) -> List[frozenset]:
    """Every stable model surviving the integrity constraints, enumerated in
    ascending bit order."""
    heads, pos, neg, cpos, cneg = _masks(g)
    bits = kernel.enumerate_stable(len(g.atoms), heads, pos, neg, cpos, cneg)
    out = []
    for m in bits:
        out.append(frozenset(a for a, i in g.index.items() if m >> i & 1))
    return out


def filter_by_constraints(models, constraints) -> List[frozenset]:
    """Drop every model satisfying some constraint's full body."""
    out = []
    for m in models:
        violated = any(
            all(a in m for a in c.pos) and not any(a in m for a in c.neg)
            for c in constraints
        )
        if not violated:
            out.append(m)
    return out


def encode_constraint_as_rule(g: GroundProgram) -> GroundProgram:
    """Rewrite each constraint ':- body' as 'fail_i :- body, not fail_i'."""
    atoms = list(g.atoms)
    rules = list(g.rules)
    for i, c in enumerate(g.constraints):
        fail = (f"%fail{i}", ())
        atoms.append(fail)
        rules.append(GroundRule(fail, c.pos, c.neg + (fail,)))
    return GroundProgram(tuple(atoms), tuple(rules), ())


def project(models, relations) -> List[frozenset]:
    """Distinct projections of models onto the given relation names."""
    rels = set(relations)
    out = set()
    for m in models:
        out.add(frozenset(a for a in m if a[0] in rels))
    return sorted(out, key=lambda s: sorted(s))


def atom_members(models) -> set:
    """Union of all models: the brave consequences."""
    out = set()
    for m in models:
        out |= m
    return out
