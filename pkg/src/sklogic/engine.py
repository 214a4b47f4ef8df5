"""Goal construction and top-down resolution under stable-model semantics.

Every relation defined through the program gets two entries: the positive
body as written, and a derived negative body (the complement, with negation
pushed through to the leaves).  Resolution keeps a branch-local table of
truth assignments for ground atoms; a call first consults the table, and on
success converts its in-progress mark into a proven one, reports the atom
to the constraint store, and fails the branch if a constraint handler
fires.

Loop policy: a positive call that re-enters an atom already being proven
fails when the path back is purely positive (no support, minimality), and
succeeds from the in-progress assumption when at least one negation
boundary lies in between.  A negative call re-entering an atom already
being refuted succeeds from the assumption.  Opposite-polarity re-entry is
a contradiction and fails.

Answers are finalized before being reported: the candidate is extended to a
total assignment over the program's ground atoms (backtracking over both
polarities, checkpoints live), and every constraint is re-checked against
the completed model.  Candidates with no surviving completion are dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from . import constraints as cst
from .errors import DepthLimitError, GroundingError, LoadError, NonGroundError
from .terms import Pair, Var, is_ground, reify, unify, walk_star
from .verifier import SymbolUniverse

ALL = None  # answer count for run*

DEFAULT_DEPTH_BOUND = 400
DEFAULT_MAX_ANSWERS = 10000
DEFAULT_ATOM_CAP = 20000

SUSPEND = object()  # scheduling tick yielded at every relation call


# ---------------------------------------------------------------------------
# Goals

@dataclass(frozen=True)
class Unify:
    a: object
    b: object


@dataclass(frozen=True)
class NotUnify:
    """Succeeds exactly when unification of a and b fails; extends nothing."""

    a: object
    b: object


@dataclass(frozen=True)
class Conj:
    goals: Tuple


@dataclass(frozen=True)
class Disj:
    goals: Tuple


@dataclass(frozen=True)
class Fresh:
    count: int
    build: Callable  # (vars...) -> Goal


@dataclass(frozen=True)
class ForAllUniverse:
    """Conjunction of build(values) over every tuple of universe elements.

    Produced by complementing a Fresh: refuting an existential means
    refuting every instance, and the program's constants are the domain.
    """

    count: int
    build: Callable  # (values...) -> Goal, already negated


@dataclass(frozen=True)
class CallPos:
    relation: str
    args: Tuple


@dataclass(frozen=True)
class CallNeg:
    relation: str
    args: Tuple


def noto(goal: CallPos) -> CallNeg:
    """Negation operator over a positive relation call."""
    if not isinstance(goal, CallPos):
        raise LoadError("noto can only be applied to a relation call")
    return CallNeg(goal.relation, goal.args)


def _scan_goal(g, calls: set) -> bool:
    """Collect called relations; True when a negative call occurs."""
    if isinstance(g, (Unify, NotUnify)):
        return False
    if isinstance(g, (Conj, Disj)):
        has_neg = False
        for sub in g.goals:
            has_neg |= _scan_goal(sub, calls)
        return has_neg
    if isinstance(g, CallPos):
        calls.add(g.relation)
        return False
    if isinstance(g, CallNeg):
        calls.add(g.relation)
        return True
    if isinstance(g, Fresh):
        vs = tuple(Var(-1000 - i) for i in range(g.count))
        return _scan_goal(g.build(*vs), calls)
    if isinstance(g, ForAllUniverse):
        vs = tuple(Var(-1000 - i) for i in range(g.count))
        return _scan_goal(g.build(*vs), calls)
    raise TypeError(f"not a goal: {g!r}")


def negate_goal(g):
    """Push negation through a goal tree down to calls and unifications."""
    if isinstance(g, Unify):
        return NotUnify(g.a, g.b)
    if isinstance(g, NotUnify):
        return Unify(g.a, g.b)
    if isinstance(g, Conj):
        return Disj(tuple(negate_goal(x) for x in g.goals))
    if isinstance(g, Disj):
        return Conj(tuple(negate_goal(x) for x in g.goals))
    if isinstance(g, CallPos):
        return CallNeg(g.relation, g.args)
    if isinstance(g, CallNeg):
        return CallPos(g.relation, g.args)
    if isinstance(g, Fresh):
        build = g.build
        return ForAllUniverse(g.count, lambda *vals: negate_goal(build(*vals)))
    raise LoadError(f"cannot negate goal {g!r}")


# ---------------------------------------------------------------------------
# Relations and programs

@dataclass
class RelationDef:
    name: str
    arity: int
    params: Tuple[str, ...]
    make_body: Callable  # (args...) -> Goal, the positive body
    make_negative: Callable = None  # filled in by Program.freeze

    def __post_init__(self):
        # goal trees are immutable, so ground instantiations are shared
        self._pos_cache = {}
        self._neg_cache = {}

    def positive_entry(self, args):
        if all(type(a) in (int, str) for a in args):
            goal = self._pos_cache.get(args)
            if goal is None:
                goal = self._pos_cache[args] = self.make_body(*args)
            return goal
        return self.make_body(*args)

    def negative_entry(self, args):
        if all(type(a) in (int, str) for a in args):
            goal = self._neg_cache.get(args)
            if goal is None:
                goal = self._neg_cache[args] = self.make_negative(*args)
            return goal
        return self.make_negative(*args)


# table statuses
TRUE_PROVEN = "T"
TRUE_IN_PROGRESS = "T?"
FALSE_ASSUMED = "F"
FALSE_IN_PROGRESS = "F?"


class State:
    """One resolution state: substitution, assumption table, handler store.

    All components are persistent: extension builds a new State, siblings
    never observe each other's bindings.  `seq` numbers emissions so that
    answer-time constraint checks can respect emission order.
    """

    __slots__ = ("subst", "table", "handlers", "fresh", "seq")

    def __init__(self, subst, table, handlers, fresh, seq):
        self.subst = subst
        self.table = table
        self.handlers = handlers
        self.fresh = fresh
        self.seq = seq

    @classmethod
    def empty(cls, fresh=0):
        return cls({}, {}, (), fresh, 0)

    def with_subst(self, subst):
        return State(subst, self.table, self.handlers, self.fresh, self.seq)

    def with_mark(self, atom, entry):
        table = dict(self.table)
        table[atom] = entry
        return State(self.subst, table, self.handlers, self.fresh, self.seq)

    def proven(self, atom, status, handlers):
        table = dict(self.table)
        table[atom] = (status, self.seq)
        return State(self.subst, table, handlers, self.fresh, self.seq + 1)

    def with_fresh(self, fresh):
        return State(self.subst, self.table, self.handlers, fresh, self.seq)

    def proven_atoms(self):
        """Group proven atoms for the constraint sweep."""
        out = {}
        for (rel, args), (status, val) in self.table.items():
            if status == TRUE_PROVEN:
                out.setdefault((rel, True), []).append((args, val))
            elif status == FALSE_ASSUMED:
                out.setdefault((rel, False), []).append((args, val))
        for lst in out.values():
            lst.sort(key=lambda pair: pair[1])
        return out


class Program:
    """An immutable (after freeze) set of relations plus constraint specs."""

    def __init__(self):
        self.relations: dict = {}
        self._order: list = []
        self.specs: list = []
        self.symbols: set = set()
        self.integers: set = set()
        self.inconsistent = False
        self.sym_universe: Optional[SymbolUniverse] = None
        self.universe: Optional[tuple] = None
        self._ground_atoms = None
        self._frozen = False

    def define(self, name, params, make_body):
        """Register a relation; its complement is derived at freeze time."""
        if name in self.relations:
            old = self.relations[name]
            if old.arity != len(params):
                raise LoadError(
                    f"relation '{name}' already defined with arity {old.arity}"
                )
            raise LoadError(f"relation '{name}' is already defined")
        rel = RelationDef(name, len(params), tuple(params), make_body)
        self.relations[name] = rel
        self._order.append(name)
        return rel

    def relation_order(self):
        return tuple(self._order)

    def note_constant(self, value):
        if isinstance(value, str):
            self.symbols.add(value)
        elif isinstance(value, int):
            self.integers.add(value)

    def add_spec(self, spec):
        self.specs.append(spec)

    def freeze(self):
        """Finish loading: fix the constant universe and build complements."""
        self.sym_universe = SymbolUniverse(self.symbols)
        self.universe = tuple(sorted(self.integers)) + tuple(self.sym_universe)
        for rel in self.relations.values():
            body = rel.make_body
            rel.make_negative = lambda *args, _b=body: negate_goal(_b(*args))
        for spec in self.specs:
            if not spec.slots and cst.evaluate_handler(
                cst.PartialHandler(spec.id, 0, ()), spec, self.sym_universe
            ):
                self.inconsistent = True
        self.definite_relations = self._find_definite()
        self._definite_holds = {}
        self._frozen = True
        return self

    def _find_definite(self):
        """Relations whose positive bodies never reach a negation; their
        truth is independent of any candidate's assumptions."""
        calls: dict = {}
        negated: set = set()
        for name, rel in self.relations.items():
            seen_calls: set = set()
            has_neg = _scan_goal(rel.make_body(*(Var(-1 - i) for i in range(rel.arity))),
                                 seen_calls)
            calls[name] = seen_calls
            if has_neg:
                negated.add(name)
        # propagate: anything calling a negated relation is itself dynamic
        changed = True
        while changed:
            changed = False
            for name in self.relations:
                if name in negated:
                    continue
                if any(c in negated for c in calls[name]):
                    negated.add(name)
                    changed = True
        return frozenset(self.relations) - negated

    def ground_atoms(self, cap=DEFAULT_ATOM_CAP):
        """Every (relation, argument-tuple) over the constant universe, in
        definition order.  This is the engine's completion domain."""
        if self._ground_atoms is None:
            atoms = []
            for name in self._order:
                rel = self.relations[name]
                count = len(self.universe) ** rel.arity
                if len(atoms) + count > cap:
                    raise GroundingError(
                        f"ground atom cap exceeded ({len(atoms) + count} > {cap})"
                    )
                for tup in itertools.product(self.universe, repeat=rel.arity):
                    atoms.append((name, tup))
            self._ground_atoms = tuple(atoms)
        return self._ground_atoms


# ---------------------------------------------------------------------------
# The solver

class Solver:
    def __init__(
        self,
        program: Program,
        depth_bound=DEFAULT_DEPTH_BOUND,
        max_answers=DEFAULT_MAX_ANSWERS,
        atom_cap=DEFAULT_ATOM_CAP,
        on_violation=None,
    ):
        self.program = program
        self.depth_bound = depth_bound
        self.max_answers = max_answers
        self.atom_cap = atom_cap
        self.on_violation = on_violation
        self._cost_sorted_specs = None
        self._verdict_cache: dict = {}
        self._tick = 0

    # -- goal dispatch ------------------------------------------------------

    def solve(self, goal, state, depth=0, ndepth=0):
        """Yield every state in which the goal holds (interleaved among
        SUSPEND scheduling ticks, which callers skip)."""
        if isinstance(goal, Unify):
            s = unify(goal.a, goal.b, state.subst)
            if s is not None:
                yield state.with_subst(s)
        elif isinstance(goal, NotUnify):
            if unify(goal.a, goal.b, state.subst) is None:
                yield state
        elif isinstance(goal, Conj):
            yield from self._conj(goal.goals, 0, state, depth, ndepth)
        elif isinstance(goal, Disj):
            yield from self._disj(goal.goals, state, depth, ndepth)
        elif isinstance(goal, Fresh):
            base = state.fresh
            vs = tuple(Var(base + i) for i in range(goal.count))
            inner = goal.build(*vs)
            yield from self.solve(inner, state.with_fresh(base + goal.count), depth, ndepth)
        elif isinstance(goal, ForAllUniverse):
            universe = self.program.universe or ()
            goals = tuple(
                goal.build(*tup)
                for tup in itertools.product(universe, repeat=goal.count)
            )
            yield from self._conj(goals, 0, state, depth, ndepth)
        elif isinstance(goal, CallPos):
            yield from self._call(goal.relation, goal.args, True, state, depth, ndepth)
        elif isinstance(goal, CallNeg):
            yield from self._call(goal.relation, goal.args, False, state, depth, ndepth)
        else:
            raise TypeError(f"not a goal: {goal!r}")

    def _conj(self, goals, i, state, depth, ndepth):
        if i == len(goals):
            yield state
            return
        for item in self.solve(goals[i], state, depth, ndepth):
            if item is SUSPEND:
                yield SUSPEND
            else:
                yield from self._conj(goals, i + 1, item, depth, ndepth)

    def _disj(self, goals, state, depth, ndepth):
        # Binary interleave, folded right: streams swap at every scheduling
        # tick, so a branch that only ever produces ticks cannot starve its
        # siblings, while earlier branches still dominate exploration.
        acc = self.solve(goals[-1], state, depth, ndepth)
        for g in reversed(goals[:-1]):
            acc = _interleave(self.solve(g, state, depth, ndepth), acc)
        yield from acc

    # -- relation calls -----------------------------------------------------

    def _call(self, name, args, positive, state, depth, ndepth):
        # scheduling tick: lets sibling disjuncts advance (thinned to one
        # tick per few calls to keep generator churn down)
        self._tick = (self._tick + 1) & 7
        if self._tick == 0:
            yield SUSPEND
        rel = self.program.relations.get(name)
        if rel is None:
            raise LoadError(f"call to undefined relation '{name}'")
        if depth >= self.depth_bound:
            raise DepthLimitError(name, self.depth_bound)

        wargs = tuple(walk_star(a, state.subst) for a in args)
        if all(is_ground(t, state.subst) for t in wargs):
            atom = (name, wargs)
            entry = state.table.get(atom)
            if entry is not None:
                yield from self._table_hit(entry, positive, state, ndepth)
                return
            if positive:
                marked = state.with_mark(atom, (TRUE_IN_PROGRESS, ndepth))
                body = rel.positive_entry(wargs)
                body_ndepth = ndepth
            else:
                marked = state.with_mark(atom, (FALSE_IN_PROGRESS, ndepth + 1))
                body = rel.negative_entry(wargs)
                body_ndepth = ndepth + 1
            for item in self.solve(body, marked, depth + 1, body_ndepth):
                if item is SUSPEND:
                    yield SUSPEND
                else:
                    yield from self._settle(name, wargs, positive, item)
        else:
            # Non-ground entry: the table cannot index the call yet; safety
            # says the body grounds the arguments before success.
            body = rel.positive_entry(wargs) if positive else rel.negative_entry(wargs)
            body_ndepth = ndepth if positive else ndepth + 1
            for item in self.solve(body, state, depth + 1, body_ndepth):
                if item is SUSPEND:
                    yield SUSPEND
                    continue
                final_args = tuple(walk_star(a, item.subst) for a in wargs)
                if not all(is_ground(t, item.subst) for t in final_args):
                    raise NonGroundError(name)
                yield from self._settle(name, final_args, positive, item)

    def _table_hit(self, entry, positive, state, ndepth):
        status, val = entry
        if positive:
            if status == TRUE_PROVEN:
                yield state
            elif status == TRUE_IN_PROGRESS and ndepth > val:
                # re-entry across a negation boundary: succeed by assumption
                yield state
            # same-depth re-entry is an unsupported positive loop: fail;
            # FALSE_* is a contradiction: fail
        else:
            if status in (FALSE_ASSUMED, FALSE_IN_PROGRESS):
                yield state
            # TRUE_* is a contradiction: fail

    def _settle(self, name, wargs, positive, state):
        """The hidden epilogue of every call: update the table, then run the
        constraint checkpoints (updater + checker)."""
        atom = (name, wargs)
        entry = state.table.get(atom)
        if entry is not None:
            status = entry[0]
            if positive:
                if status == TRUE_PROVEN:
                    yield state  # already proven on this branch: no re-emission
                    return
                if status in (FALSE_ASSUMED, FALSE_IN_PROGRESS):
                    return
                # TRUE_IN_PROGRESS: this success closes the proof; convert below
            else:
                if status == FALSE_ASSUMED:
                    yield state
                    return
                if status in (TRUE_PROVEN, TRUE_IN_PROGRESS):
                    return

        handlers, violations = cst.on_emission(
            name, positive, wargs, state.handlers,
            self.program.specs, self.program.sym_universe,
        )
        if violations:
            if self.on_violation:
                for spec, env in violations:
                    self.on_violation(spec, env)
            return
        status = TRUE_PROVEN if positive else FALSE_ASSUMED
        yield state.proven(atom, status, handlers)

    # -- queries ------------------------------------------------------------

    def ask(self, goals, qvar=None, n=1, fresh_base=None):
        """Solve goals from the empty state; reify qvar per accepted answer."""
        if self.program.inconsistent:
            return []
        if qvar is None:
            qvar = Var(0)
        if fresh_base is None:
            fresh_base = qvar.id + 1
        self._tick = 0  # queries interleave identically no matter what ran before
        limit = self.max_answers if n is ALL else min(n, self.max_answers)
        state0 = State.empty(fresh_base)
        answers = []
        for item in self.solve(Conj(tuple(goals)), state0, 0, 0):
            if item is SUSPEND:
                continue
            if self._accept(item):
                answers.append(reify(qvar, item.subst))
                if len(answers) >= limit:
                    break
        return answers

    # -- answer finalization --------------------------------------------------

    def _accept(self, state) -> bool:
        """Answer-time finalization.

        Constraints are re-checked against the candidate's closed world
        (committed atoms plus positive derivation, everything else false),
        which catches constraints whose emitters the query never executed.
        The candidate must also extend to a total consistent assignment of
        the program's ground atoms, which ties query answers to stable
        models of the whole program.
        """
        # the verdict depends only on what the branch committed to (entries
        # carry emission order), and many branches commit to the same atoms
        key = frozenset(state.table.items())
        cached = self._verdict_cache.get(key)
        if cached is not None:
            return cached
        verdict = self._accept_uncached(state)
        self._verdict_cache[key] = verdict
        return verdict

    def _accept_uncached(self, state) -> bool:
        specs = self.program.specs
        try:
            atoms = self.program.ground_atoms(self.atom_cap)
        except GroundingError:
            # no finite completion domain: check constraints against what
            # the branch actually proved and skip the stability search
            violation = cst.find_violation(
                specs,
                cst.proven_instances(state.proven_atoms()),
                self.program.sym_universe,
            )
            return violation is None

        world = ClosedWorld(self.program, state)
        return cst.finalize_answer(
            self._specs_by_cost(),
            self.program.sym_universe,
            world.slot_instances,
            stability=lambda: self._extends_to_total(state, atoms),
        )

    def _specs_by_cost(self):
        # check the cheapest instance spaces first; acceptance is
        # order-independent, only the reported violation changes
        if self._cost_sorted_specs is None:
            u = max(len(self.program.universe or ()), 1)
            self._cost_sorted_specs = sorted(
                self.program.specs,
                key=lambda s: (sum(u ** len(slot.params) for slot in s.slots), s.id),
            )
        return self._cost_sorted_specs

    def _extends_to_total(self, state, atoms) -> bool:
        """Search for a completion of the candidate that is a stable
        assignment.  Resolution alone can leak unfounded mutual support
        (two atoms proving each other through a nested negative context),
        so every total leaf is re-validated by a least-fixpoint check."""
        for leaf in self._completions(state, atoms):
            true_atoms = {
                atom for atom, entry in leaf.table.items() if entry[0] == TRUE_PROVEN
            }
            if is_stable_assignment(self.program, true_atoms, atoms):
                return True
        return False

    def _completions(self, state, atoms):
        """Extend a candidate to total assignments over the ground atoms,
        backtracking across both polarities with checkpoints live."""
        n = len(atoms)
        if n == 0:
            yield state
            return

        def decide(i, st):
            rel, args = atoms[i]
            return self._states(self.solve(Disj((CallPos(rel, args), CallNeg(rel, args))), st))

        stack = [decide(0, state)]
        while stack:
            nxt = next(stack[-1], _DONE)
            if nxt is _DONE:
                stack.pop()
                continue
            if len(stack) == n:
                yield nxt
            else:
                stack.append(decide(len(stack), nxt))

    def _states(self, stream):
        for item in stream:
            if item is not SUSPEND:
                yield item


class ClosedWorld:
    """The answer-time reading of a candidate: atoms the branch committed to
    keep their truth value, everything else is derived positively or
    defaults to false.

    Derivation is negation-as-failure over the positive bodies, with cycles
    failing (an atom cannot support itself), so unfounded recursion comes
    out false.  Results are memoized per candidate; an atom first reached
    inside its own complement's derivation settles as false and its
    complement as true, giving one deterministic default world.
    """

    def __init__(self, program: Program, state: State):
        self.program = program
        self.state = state
        self._memo: dict = {}
        self._visiting: set = set()

    def holds(self, relation: str, args: tuple) -> bool:
        atom = (relation, args)
        if relation in self.program.definite_relations:
            # candidate-independent: resolution can never contradict the
            # derivation of a negation-free relation, so share program-wide
            shared = self.program._definite_holds
            if atom not in shared:
                shared[atom] = self._derive(relation, atom)
            return shared[atom]
        entry = self.state.table.get(atom)
        if entry is not None:
            return entry[0] in (TRUE_PROVEN, TRUE_IN_PROGRESS)
        if atom in self._memo:
            return self._memo[atom]
        return self._derive(relation, atom)

    def _derive(self, relation, atom):
        if atom in self._visiting:
            return False
        rel = self.program.relations.get(relation)
        if rel is None:
            return False
        self._visiting.add(atom)
        result = self._eval(rel.positive_entry(atom[1]))
        self._visiting.discard(atom)
        self._memo[atom] = result
        return result

    def _eval(self, goal) -> bool:
        if isinstance(goal, Unify):
            return _ground_equal(goal.a, goal.b)
        if isinstance(goal, NotUnify):
            return not _ground_equal(goal.a, goal.b)
        if isinstance(goal, Conj):
            return all(self._eval(g) for g in goal.goals)
        if isinstance(goal, Disj):
            return any(self._eval(g) for g in goal.goals)
        if isinstance(goal, CallPos):
            return self.holds(goal.relation, goal.args)
        if isinstance(goal, CallNeg):
            return not self.holds(goal.relation, goal.args)
        if isinstance(goal, Fresh):
            universe = self.program.universe or ()
            return any(
                self._eval(goal.build(*tup))
                for tup in itertools.product(universe, repeat=goal.count)
            )
        if isinstance(goal, ForAllUniverse):
            universe = self.program.universe or ()
            return all(
                self._eval(goal.build(*tup))
                for tup in itertools.product(universe, repeat=goal.count)
            )
        raise TypeError(f"cannot evaluate goal {goal!r}")

    def slot_instances(self, relation: str, positive: bool, arity: int):
        """Constraint-slot fillers offered by this world (see
        constraints.find_violation)."""
        universe = self.program.universe or ()
        out = []
        for tup in itertools.product(universe, repeat=arity):
            if self.holds(relation, tup) != positive:
                continue
            entry = self.state.table.get((relation, tup))
            seq = None
            if entry is not None and entry[0] in (TRUE_PROVEN, FALSE_ASSUMED):
                seq = entry[1]
            out.append((tup, seq))
        return out


def _ground_equal(a, b) -> bool:
    if isinstance(a, Pair) and isinstance(b, Pair):
        return _ground_equal(a.head, b.head) and _ground_equal(a.tail, b.tail)
    if isinstance(a, Var) or isinstance(b, Var):
        return False
    return type(a) is type(b) and a == b


def is_stable_assignment(program: Program, true_atoms: set, atoms=None) -> bool:
    """Check that a total assignment supports itself: the atoms derivable
    with every negative call resolved against the assignment must be
    exactly the atoms assigned true."""
    if atoms is None:
        atoms = program.ground_atoms()

    def holds(goal, derived):
        if isinstance(goal, Unify):
            return _ground_equal(goal.a, goal.b)
        if isinstance(goal, NotUnify):
            return not _ground_equal(goal.a, goal.b)
        if isinstance(goal, Conj):
            return all(holds(g, derived) for g in goal.goals)
        if isinstance(goal, Disj):
            return any(holds(g, derived) for g in goal.goals)
        if isinstance(goal, CallPos):
            return (goal.relation, goal.args) in derived
        if isinstance(goal, CallNeg):
            return (goal.relation, goal.args) not in true_atoms
        if isinstance(goal, Fresh):
            universe = program.universe or ()
            return any(
                holds(goal.build(*tup), derived)
                for tup in itertools.product(universe, repeat=goal.count)
            )
        raise TypeError(f"cannot evaluate goal {goal!r}")

    derived: set = set()
    changed = True
    while changed:
        changed = False
        for atom in atoms:
            if atom in derived:
                continue
            rel = program.relations[atom[0]]
            if holds(rel.positive_entry(atom[1]), derived):
                if atom not in true_atoms:
                    return False  # the least fixpoint already exceeds the assignment
                derived.add(atom)
                changed = True
    return len(derived) == len(true_atoms)


_DONE = object()


def _interleave(first, second):
    cur, other = first, second
    while True:
        item = next(cur, _DONE)
        if item is _DONE:
            yield from other
            return
        yield item
        if item is SUSPEND:
            cur, other = other, cur


def run_query(program, n, qvar, goals, **solver_opts):
    """Convenience wrapper: solve goals and return reified answers.

    n is a positive count or ALL.  qvar is the query variable; goals may
    reference it.
    """
    if n is not ALL and n < 1:
        raise LoadError("answer count must be positive")
    return Solver(program, **solver_opts).ask(goals, qvar=qvar, n=n)
