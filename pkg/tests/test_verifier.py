import itertools

import pytest
from hypothesis import given, strategies as st

from sklogic.errors import LoadError, VerifierError
from sklogic.reader import read
from sklogic.verifier import (
    BoolOp,
    Cmp,
    SymbolUniverse,
    VarRef,
    compile_verifier,
    conjoin,
    eval_verifier,
    parse_verifier,
    sym_rank,
)


def parse(text):
    return parse_verifier(read(text)[0])


def test_parse_simple_comparison():
    e = parse("(= x u)")
    assert isinstance(e, Cmp) and e.op == "="
    assert e.lhs == VarRef("x") and e.rhs == VarRef("u")


def test_parse_nested_arithmetic():
    e = parse("(= (abs (- x u)) (abs (- y v)))")
    assert isinstance(e, Cmp)


def test_unknown_operator_rejected():
    with pytest.raises(LoadError):
        parse("(zip x)")


def test_arity_checked():
    with pytest.raises(LoadError):
        parse("(abs x y)")
    with pytest.raises(LoadError):
        parse("(= x)")


def test_two_pair_exchange_true_then_false():
    e = parse("(and (= X U) (not (= Y V)))")
    assert eval_verifier(e, {"X": 1, "Y": 1, "U": 1, "V": 2}) is True
    assert eval_verifier(e, {"X": 1, "Y": 1, "U": 2, "V": 1}) is False
    assert eval_verifier(e, {"X": 1, "Y": 3, "U": 2, "V": 4}) is False


def test_diagonal_arithmetic():
    e = parse("(= (abs (- 1 3)) (abs (- 2 4)))")
    assert eval_verifier(e, {}) is True


def test_neq_sugar():
    e = parse("(!= 1 2)")
    assert eval_verifier(e, {}) is True


def test_unbound_variable_is_diagnostic():
    with pytest.raises(VerifierError):
        eval_verifier(parse("(= x 1)"), {})


def test_type_mismatch_is_diagnostic():
    with pytest.raises(VerifierError):
        eval_verifier(parse("(= x 1)"), {"x": "red"})
    with pytest.raises(VerifierError):
        eval_verifier(parse("(eq? x y)"), {"x": 1, "y": 2})


def test_conjoin_includes_top():
    e = conjoin([])
    assert eval_verifier(e, {}) is True


def test_large_integers_do_not_wrap():
    e = parse("(> (* x x) 0)")
    assert eval_verifier(e, {"x": 10**30}) is True


# ---------------------------------------------------------------------------
# symbol ranking

STATES = ["AZ", "CA", "CO", "NV", "NM", "UT", "DFW", "SEA", "red", "green", "blue"]


def test_sym_rank_lexicographic():
    u = SymbolUniverse(STATES)
    assert sym_rank("AZ", u) < sym_rank("CA", u)
    assert sym_rank("DFW", u) < sym_rank("SEA", u)
    assert sym_rank("CO", u) > sym_rank("AZ", u)


def test_sym_rank_unknown_symbol():
    u = SymbolUniverse(["a"])
    with pytest.raises(VerifierError):
        sym_rank("zzz", u)


def test_symbol_hash_surface_name():
    u = SymbolUniverse(STATES)
    e = parse("(> (symbol-hash n1) (symbol-hash n2))")
    assert eval_verifier(e, {"n1": "CO", "n2": "AZ"}, u) is True
    assert eval_verifier(e, {"n1": "AZ", "n2": "CO"}, u) is False


def test_sym_rank_strict_total_order():
    u = SymbolUniverse(STATES)
    ranks = {s: sym_rank(s, u) for s in STATES}
    for s in STATES:
        assert not ranks[s] < ranks[s]
    for a, b in itertools.permutations(STATES, 2):
        assert (ranks[a] < ranks[b]) != (ranks[b] < ranks[a])
    for a, b, c in itertools.permutations(STATES, 3):
        if ranks[a] < ranks[b] and ranks[b] < ranks[c]:
            assert ranks[a] < ranks[c]


# ---------------------------------------------------------------------------
# De Morgan spot checks and compiled-form agreement

@given(st.booleans(), st.booleans())
def test_de_morgan(a, b):
    lit = {True: "(= 1 1)", False: "(= 1 2)"}
    e1 = parse(f"(not (and {lit[a]} {lit[b]}))")
    e2 = parse(f"(or (not {lit[a]}) (not {lit[b]}))")
    assert eval_verifier(e1, {}) == eval_verifier(e2, {})
    e3 = parse(f"(not (or {lit[a]} {lit[b]}))")
    e4 = parse(f"(and (not {lit[a]}) (not {lit[b]}))")
    assert eval_verifier(e3, {}) == eval_verifier(e4, {})


@given(
    st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)
)
def test_compiled_matches_interpreted(x, y, u, v):
    env = {"x": x, "y": y, "u": u, "v": v}
    for text in [
        "(and (= x u) (not (= y v)))",
        "(= (abs (- x u)) (abs (- y v)))",
        "(or (> x u) (<= y v) (!= x v))",
        "(> (+ x y 1) (* u v))",
    ]:
        e = parse(text)
        assert compile_verifier(e)(env, None) == eval_verifier(e, env)
