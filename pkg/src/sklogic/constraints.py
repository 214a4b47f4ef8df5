"""Integrity constraints: emitter patterns, verifier expressions, and the
partial handlers that accumulate during resolution.

A constraint is an ordered list of signed relation patterns ("emitters")
plus a boolean expression over their variables.  During resolution each
newly proven ground atom is reported here; matching handlers extend (the
originals stay, since the same values may open a fresh handler), and a
handler whose slots are all filled is evaluated at once and discarded.
A true verifier means the constraint is violated and the branch must die.

At answer time, `finalize_answer` re-checks every constraint against the
candidate model, filling slots from proofs rather than live emissions; this
is what rejects answers whose offending emitters were never executed by the
query itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from . import verifier as vexpr
from .errors import LoadError


@dataclass(frozen=True)
class Slot:
    relation: str
    positive: bool
    params: Tuple[str, ...]

    def key(self):
        return (self.relation, self.positive)


@dataclass(frozen=True)
class ConstraintSpec:
    id: int
    slots: Tuple[Slot, ...]
    verifier: object  # verifier expression AST (the conjoined handler form)
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "check", vexpr.compile_verifier(self.verifier))

    def describe(self):
        return self.source or f"constraint #{self.id}"


@dataclass(frozen=True)
class PartialHandler:
    spec_id: int
    next_slot: int
    env: Tuple[Tuple[str, object], ...]  # bindings for filled slots, in slot order
    atoms: Tuple = ()  # ground atoms that filled the slots, for self-pair checks

    def env_dict(self):
        return dict(self.env)


def compile_constraint(spec_id, emitters, verifiers, relation_arities, source=""):
    """Build a ConstraintSpec from parsed pieces.

    emitters: list of (relation, positive, param-name tuple)
    verifiers: list of verifier expression ASTs
    relation_arities: name -> arity mapping of the loaded program
    """
    slots = []
    seen_vars = {}
    for relation, positive, params in emitters:
        if relation not in relation_arities:
            raise LoadError(f"{source}: unknown relation '{relation}' in constraint")
        if relation_arities[relation] != len(params):
            raise LoadError(
                f"{source}: relation '{relation}' takes "
                f"{relation_arities[relation]} argument(s), got {len(params)}"
            )
        for p in params:
            if p in seen_vars:
                raise LoadError(
                    f"{source}: variable '{p}' is used by two emitters; "
                    "rewrite with a fresh variable and an equality verifier"
                )
            seen_vars[p] = True
        slots.append(Slot(relation, positive, tuple(params)))

    conj = vexpr.conjoin(verifiers)
    for name in vexpr.free_vars(conj):
        if name not in seen_vars:
            raise LoadError(
                f"{source}: verifier variable '{name}' is not bound by any emitter"
            )
    if not slots and vexpr.free_vars(conj):
        raise LoadError(f"{source}: a constraint without emitters cannot use variables")
    return ConstraintSpec(spec_id, tuple(slots), conj, source)


def evaluate_handler(handler: PartialHandler, spec: ConstraintSpec, universe=None) -> bool:
    """Evaluate a complete handler; True means the constraint is violated."""
    return spec.check(handler.env_dict(), universe)


def on_emission(relation, positive, args, store, specs, universe=None):
    """Feed one freshly proven ground atom to the handler store.

    Returns (new_store, violations) where violations lists (spec, env) pairs
    whose completed handlers evaluated true.  Handlers extend against the
    store as it was before this event, so one emission fills at most one
    slot per handler instance and an atom never pairs with itself.
    """
    atom = (relation, positive, args)
    violations = []
    kept = list(store)

    def settle(handler, spec):
        if handler.next_slot == len(spec.slots):
            if evaluate_handler(handler, spec, universe):
                violations.append((spec, handler.env_dict()))
        else:
            kept.append(handler)

    for handler in store:
        spec = specs[handler.spec_id]
        slot = spec.slots[handler.next_slot]
        if slot.relation == relation and slot.positive == positive:
            if atom in handler.atoms:
                continue
            extended = PartialHandler(
                handler.spec_id,
                handler.next_slot + 1,
                handler.env + tuple(zip(slot.params, args)),
                handler.atoms + (atom,),
            )
            settle(extended, spec)

    for spec in specs:
        if not spec.slots:
            continue
        slot = spec.slots[0]
        if slot.relation == relation and slot.positive == positive:
            spawned = PartialHandler(
                spec.id, 1, tuple(zip(slot.params, args)), (atom,)
            )
            settle(spawned, spec)

    return tuple(kept), violations


def find_violation(specs, slot_instances, universe=None) -> Optional[tuple]:
    """Check a candidate answer against every constraint, at answer time.

    slot_instances(relation, positive, arity) must return the fillers the
    candidate offers for such a slot as a list of (args, seq) pairs: for a
    positive slot, the atoms holding in the candidate's world; for a
    negative slot, the atoms refuted there.  seq is the emission order for
    atoms the resolution actually proved, or None for answer-time
    derivations.

    Slots are filled in every combination that never reuses one ground
    atom and that keeps emission order within slots of the same relation
    and sign (live emission could only ever have filled them in that
    order).  Returns the violating (spec, env) or None.
    """
    for spec in specs:
        hit = _spec_violation(spec, slot_instances, universe)
        if hit is not None:
            return (spec, hit)
    return None


def _spec_violation(spec, slot_instances, universe):
    nslots = len(spec.slots)
    if nslots == 0:
        if spec.check({}, universe):
            return {}
        return None
    candidates = [None] * nslots  # built lazily: earlier slots often empty

    def slot_candidates(i):
        if candidates[i] is None:
            slot = spec.slots[i]
            candidates[i] = slot_instances(slot.relation, slot.positive, len(slot.params))
        return candidates[i]

    env: dict = {}
    used: list = []
    last_seq: dict = {}  # slot key -> seq of the latest ordered fill

    def fill(i):
        if i == nslots:
            if spec.check(env, universe):
                return dict(env)
            return None
        slot = spec.slots[i]
        key = slot.key()
        floor = last_seq.get(key)
        for args, seq in slot_candidates(i):
            atom = (slot.relation, slot.positive, args)
            if atom in used:
                continue
            if floor is not None and seq is not None and seq <= floor:
                continue
            used.append(atom)
            prev_floor = floor
            if seq is not None:
                last_seq[key] = seq
            for name, val in zip(slot.params, args):
                env[name] = val
            hit = fill(i + 1)
            if hit is not None:
                return hit
            for name in slot.params:
                del env[name]
            used.pop()
            if prev_floor is None:
                last_seq.pop(key, None)
            else:
                last_seq[key] = prev_floor
        return None

    return fill(0)


def proven_instances(proven):
    """slot_instances view over the atoms a branch actually proved:
    proven maps (relation, positive) -> list of (args, seq)."""

    def instances(relation, positive, arity):
        return proven.get((relation, positive), ())

    return instances


def finalize_answer(specs, universe, slot_instances, stability=None) -> bool:
    """Accept or reject a candidate answer.

    The candidate survives when no constraint can be completed against it
    (find_violation) and, if a stability check was supplied, when its
    assumptions extend to a total consistent assignment (the engine passes
    a closure performing that completion search).
    """
    if find_violation(specs, slot_instances, universe) is not None:
        return False
    if stability is not None and not stability():
        return False
    return True
