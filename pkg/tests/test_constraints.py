import itertools

import pytest

from sklogic.constraints import (
    ConstraintSpec,
    PartialHandler,
    Slot,
    compile_constraint,
    evaluate_handler,
    find_violation,
    on_emission,
    proven_instances,
)
from sklogic.errors import LoadError
from sklogic.reader import read
from sklogic.verifier import parse_verifier

ARITIES = {"pick": 2, "free": 2, "num": 1, "row": 1}


def spec_from(text_emitters, text_verifiers, spec_id=0):
    emitters = []
    for e in text_emitters:
        if e.startswith("(noto"):
            inner = read(e)[0].items[1]
            emitters.append((inner.items[0].name, False, tuple(s.name for s in inner.items[1:])))
        else:
            form = read(e)[0]
            emitters.append((form.items[0].name, True, tuple(s.name for s in form.items[1:])))
    verifiers = [parse_verifier(read(v)[0]) for v in text_verifiers]
    return compile_constraint(spec_id, emitters, verifiers, ARITIES)


SAME_ROW = spec_from(["(pick x y)", "(pick u v)"], ["(= x u)", "(not (= y v))"])


def test_compile_two_slots():
    assert len(SAME_ROW.slots) == 2
    assert SAME_ROW.slots[0] == Slot("pick", True, ("x", "y"))


def test_compile_zero_slot_spec():
    spec = spec_from([], ["(= 1 1)"])
    assert not spec.slots
    assert evaluate_handler(PartialHandler(spec.id, 0, ()), spec) is True


def test_shared_variable_rejected():
    with pytest.raises(LoadError) as e:
        spec_from(["(pick x y)", "(pick x v)"], ["(not (= y v))"])
    assert "two emitters" in str(e.value)


def test_unknown_relation_rejected():
    with pytest.raises(LoadError):
        spec_from(["(zag x)"], [])


def test_arity_mismatch_rejected():
    with pytest.raises(LoadError):
        spec_from(["(pick x)"], [])


def test_unbound_verifier_variable_rejected():
    with pytest.raises(LoadError):
        spec_from(["(pick x y)"], ["(= x w)"])


def test_variable_free_requirement_for_zero_slots():
    with pytest.raises(LoadError):
        spec_from([], ["(= x 1)"])


# ---------------------------------------------------------------------------
# The two-emitter walkthrough

def test_second_emission_violates():
    specs = [SAME_ROW]
    store, violations = on_emission("pick", True, (1, 1), (), specs)
    assert not violations
    assert len(store) == 1  # one partial handler waiting for its second pick
    store, violations = on_emission("pick", True, (1, 2), store, specs)
    assert violations  # (and (= 1 1) (not (= 1 2))) is true
    spec, env = violations[0]
    assert env == {"x": 1, "y": 1, "u": 1, "v": 2}


def test_benign_second_emission_retains_two_partials():
    specs = [SAME_ROW]
    store, _ = on_emission("pick", True, (1, 1), (), specs)
    store, violations = on_emission("pick", True, (2, 1), store, specs)
    assert not violations
    # the completed handler was discarded; both emissions wait as first slots
    assert len(store) == 2
    assert {h.env for h in store} == {(("x", 1), ("y", 1)), (("x", 2), ("y", 1))}


def test_store_growth_is_linear_without_violations():
    specs = [SAME_ROW]
    store = ()
    for k in range(1, 6):
        store, violations = on_emission("pick", True, (k, k), store, specs)
        assert not violations
        assert len(store) == k


def test_one_emitter_negative_free():
    spec = spec_from(["(noto (free x y))"], [])
    store, violations = on_emission("free", False, (2, 3), (), [spec])
    assert violations  # the handler is just top: any emission violates
    assert not store


def test_positive_emission_ignores_negative_slot():
    spec = spec_from(["(noto (free x y))"], [])
    store, violations = on_emission("free", True, (2, 3), (), [spec])
    assert not violations and not store


def test_atom_never_pairs_with_itself():
    specs = [spec_from(["(pick x y)", "(pick u v)"], ["(= x u)", "(= y v)"])]
    store, violations = on_emission("pick", True, (1, 1), (), specs)
    assert not violations
    # re-emitting the same atom extends the other handler but never fills
    # two slots of one handler with one atom
    store, violations = on_emission("pick", True, (2, 2), store, specs)
    assert not violations


def test_evaluate_handler_examples():
    h = PartialHandler(SAME_ROW.id, 2, (("x", 1), ("y", 1), ("u", 1), ("v", 2)))
    assert evaluate_handler(h, SAME_ROW) is True
    h = PartialHandler(SAME_ROW.id, 2, (("x", 1), ("y", 1), ("u", 2), ("v", 1)))
    assert evaluate_handler(h, SAME_ROW) is False
    h = PartialHandler(SAME_ROW.id, 2, (("x", 1), ("y", 3), ("u", 2), ("v", 4)))
    assert evaluate_handler(h, SAME_ROW) is False


# ---------------------------------------------------------------------------
# Answer-time completion machinery

def test_find_violation_from_proven_atoms():
    proven = {
        ("num", True): [((2,), 0)],
        ("row", False): [((2,), 1)],
    }
    spec = spec_from(["(num x)", "(noto (row u))"], ["(= x u)"])
    hit = find_violation([spec], proven_instances(proven))
    assert hit is not None
    assert hit[1] == {"x": 2, "u": 2}


def test_find_violation_respects_same_relation_order():
    asc = spec_from(["(pick x y)", "(pick u v)"], ["(> x u)"])
    # emitted in ascending first-coordinate order: no pair has x > u
    proven = {("pick", True): [((1, 2), 0), ((2, 4), 1), ((3, 1), 2)]}
    assert find_violation([asc], proven_instances(proven)) is None
    # reversed emission order violates
    proven = {("pick", True): [((3, 1), 0), ((1, 2), 1)]}
    assert find_violation([asc], proven_instances(proven)) is not None


def test_find_violation_cross_relation_is_order_free():
    spec = spec_from(["(num x)", "(noto (row u))"], ["(= x u)"])
    proven = {
        ("num", True): [((2,), 5)],  # emitted after the row refutation
        ("row", False): [((2,), 1)],
    }
    assert find_violation([spec], proven_instances(proven)) is not None


# ---------------------------------------------------------------------------
# Order robustness (checked against a pair oracle)

def brute_pair_violation(spec, atoms):
    """Does any assignment of distinct atoms to the two slots, in either
    order, satisfy the verifier?  (Only for guard-symmetric two-slot
    specs.)"""
    for a, b in itertools.permutations(atoms, 2):
        env = dict(zip(spec.slots[0].params, a)) | dict(zip(spec.slots[1].params, b))
        if evaluate_handler(PartialHandler(spec.id, 2, tuple(env.items())), spec):
            return True
    return False


SYMMETRIC_SPECS = [
    spec_from(["(pick x y)", "(pick u v)"], ["(= x u)", "(not (= y v))"]),
    spec_from(["(pick x y)", "(pick u v)"], ["(= y v)", "(not (= x u))"]),
    spec_from(
        ["(pick x y)", "(pick u v)"],
        ["(= (abs (- x u)) (abs (- y v)))", "(not (= x u))", "(not (= y v))"],
    ),
]


@pytest.mark.parametrize("spec", SYMMETRIC_SPECS)
@pytest.mark.parametrize(
    "atoms",
    [
        [(1, 1), (1, 2)],
        [(1, 1), (2, 1)],
        [(1, 1), (2, 2)],
        [(1, 2), (2, 4), (3, 1)],
        [(1, 2), (2, 4), (3, 1), (4, 3)],
        [(1, 1), (2, 3), (3, 1), (1, 3)],
    ],
)
def test_emission_order_does_not_change_violation(spec, atoms):
    expected = brute_pair_violation(spec, atoms)
    for perm in itertools.permutations(atoms):
        store = ()
        seen = False
        for atom in perm:
            store, violations = on_emission("pick", True, atom, store, [spec])
            seen = seen or bool(violations)
        assert seen == expected, f"order {perm} disagrees with the pair oracle"
