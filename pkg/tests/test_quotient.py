import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmfree.quotient import (
    FuelExhausted,
    QuotientAlgebra,
    RewriteSystem,
    RuleError,
    identity_violation,
    normalize,
    parse_rule,
    quotient_equal,
    satisfies_all,
    satisfies_identity,
)
from hmfree.signature import Algebra, validate_signature
from hmfree.terms import Gen, Op, enumerate_terms, free_extension, parse_term

from oracles import monoid_term, multiset_of, word_of

SIG = validate_signature({2: ["m"], 0: ["u"]})
MONOID_RULES = (
    "vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))",
    "vars: a; m(u(),a) -> a",
    "vars: a; m(a,u()) -> a",
)
COMM_RULES = MONOID_RULES + ("m(y,x) -> m(x,y)", "vars: a; m(y,m(x,a)) -> m(x,m(y,a))")
MONOID = RewriteSystem(SIG, MONOID_RULES)
COMM = RewriteSystem(SIG, COMM_RULES)
Z5 = Algebra.from_functions(SIG, range(5), {(2, "m"): lambda a, b: (a + b) % 5, (0, "u"): lambda: 0})


def P(text):
    return parse_term(text)


def test_normalize_examples():
    assert normalize(P("m(m(x,y),u())"), MONOID) == P("m(x,y)")
    empty = RewriteSystem(SIG, ())
    t = P("m(m(x,u()),y)")
    assert normalize(t, empty) == t
    swap = RewriteSystem(SIG, ("vars: a,b; m(a,b) -> m(b,a)",), fuel=10)
    with pytest.raises(FuelExhausted) as info:
        normalize(P("m(x,y)"), swap)
    assert info.value.fuel == 10


def test_fuel_is_exact():
    # leftmost-innermost: inner pair, then the root, then the new inner pair
    t = P("m(m(m(x,x),x),x)")
    assert normalize(t, RewriteSystem(SIG, MONOID_RULES), fuel=3) == P("m(x,m(x,m(x,x)))")
    with pytest.raises(FuelExhausted):
        normalize(t, RewriteSystem(SIG, MONOID_RULES).with_fuel(2))


def _min_fuel(t, rules, warm_up=()):
    k = 0
    while True:
        R = RewriteSystem(SIG, rules)
        for w in warm_up:
            normalize(w, R)
        try:
            normalize(t, R, fuel=k)
            return k
        except FuelExhausted:
            k += 1


def test_fuel_exact_with_warm_cache():
    # cached subterm results still charge the steps they cost
    t = P("m(m(m(x,x),x),x)")
    big = Op("m", (t, Op("m", (t, Gen("y")))))
    cold = _min_fuel(big, MONOID_RULES)
    assert cold > 0
    assert _min_fuel(big, MONOID_RULES, warm_up=[t, P("m(m(x,x),x)")]) == cold


def test_quotient_equal_examples():
    assert quotient_equal(P("m(x,m(y,z))"), P("m(m(x,y),z)"), MONOID)
    assert not quotient_equal(P("x"), P("y"), MONOID)
    assert quotient_equal(P("m(u(),x)"), P("x"), MONOID)
    assert quotient_equal(P("m(y,m(x,y))"), P("m(x,m(y,y))"), COMM)
    assert not quotient_equal(P("m(y,x)"), P("m(x,y)"), MONOID)


def test_satisfies_identity_examples():
    assoc = parse_rule("vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))")
    assert satisfies_identity(Z5, assoc)
    left_zero = Algebra.from_functions(SIG, range(2), {(2, "m"): lambda a, b: a, (0, "u"): lambda: 0})
    left_unit = parse_rule("vars: a; m(u(),a) -> a")
    assert not satisfies_identity(left_zero, left_unit)
    env, lhs, rhs = identity_violation(left_zero, left_unit)
    assert env == {"a": 1} and (lhs, rhs) == (0, 1)
    refl = parse_rule("vars: a; m(a,a) -> m(a,a)")
    assert satisfies_identity(left_zero, refl)


def test_generator_constants_are_quantified():
    # the sorting rules name x and y; Z5 is commutative, so they hold for every value
    assert satisfies_all(Z5, COMM.rules)
    free_monoid_quot = Algebra.from_functions(
        SIG, ["", "a", "b"], {(2, "m"): lambda s, t: (s + t)[:1], (0, "u"): lambda: ""}
    )
    assert not satisfies_identity(free_monoid_quot, parse_rule("m(y,x) -> m(x,y)"))


def test_rule_validation():
    with pytest.raises(RuleError):
        parse_rule("vars: a; a -> m(a,a)")
    with pytest.raises(RuleError):
        parse_rule("vars: a,b; m(a,u()) -> b")
    with pytest.raises(RuleError):
        parse_rule("m(x,y)")
    with pytest.raises(RuleError):
        parse_rule("vars: x; m(x,y) -> x(")


def test_rule_text_round_trip():
    for text in COMM_RULES:
        r = parse_rule(text)
        assert parse_rule(str(r)) == r


def test_rules_must_fit_signature():
    with pytest.raises(RuleError):
        RewriteSystem(SIG, ("vars: a; s(a) -> a",))


def test_quotient_algebra_elements():
    Q = QuotientAlgebra(["x"], MONOID)
    F = Q.free()
    assert Q.element(P("m(u(),x)")) == Gen("x")
    assert F.apply(2, "m", (Gen("x"), Op("u"))) == Gen("x")


@pytest.mark.parametrize("gens", [["x"], ["x", "y"]])
def test_monoid_normal_forms_are_words(gens):
    """Terms with the same word semantics share one normal form and vice versa."""
    seen = {}
    for t in enumerate_terms(SIG, gens, 3):
        nf = normalize(t, MONOID)
        assert nf == normalize(monoid_term(word_of(t)), MONOID)
        seen.setdefault(word_of(t), set()).add(nf)
    assert all(len(v) == 1 for v in seen.values())
    assert len({next(iter(v)) for v in seen.values()}) == len(seen)


def test_comm_normal_forms_are_multisets():
    seen = {}
    for t in enumerate_terms(SIG, ["x", "y"], 3):
        seen.setdefault(multiset_of(t), set()).add(normalize(t, COMM))
    assert all(len(v) == 1 for v in seen.values())
    assert len({next(iter(v)) for v in seen.values()}) == len(seen)


SAMPLE = enumerate_terms(SIG, ["x", "y"], 2)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SAMPLE), st.sampled_from(SAMPLE), st.sampled_from(SAMPLE))
def test_quotient_equal_is_equivalence(a, b, c):
    for R in (MONOID, COMM):
        assert quotient_equal(a, a, R)
        assert quotient_equal(a, b, R) == quotient_equal(b, a, R)
        if quotient_equal(a, b, R) and quotient_equal(b, c, R):
            assert quotient_equal(a, c, R)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SAMPLE), st.sampled_from(SAMPLE))
def test_normalize_idempotent_and_congruent(a, b):
    for R in (MONOID, COMM):
        na, nb = normalize(a, R), normalize(b, R)
        assert normalize(na, R) == na
        assert quotient_equal(Op("m", (a, b)), Op("m", (na, nb)), R)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SAMPLE), st.sampled_from(SAMPLE), st.integers(0, 4), st.integers(0, 4))
def test_soundness_against_model(a, b, vx, vy):
    h = free_extension({"x": vx, "y": vy}, Z5)
    for R in (MONOID, COMM):
        if quotient_equal(a, b, R):
            assert h(a) == h(b)


def test_soundness_in_noncommutative_model():
    # words over {0,1} truncated to length 2: a monoid but not commutative
    carrier = ["", "0", "1", "00", "01", "10", "11"]
    W = Algebra.from_functions(SIG, carrier, {(2, "m"): lambda s, t: (s + t)[:2], (0, "u"): lambda: ""})
    assert satisfies_all(W, MONOID.rules)
    for vx, vy in itertools.product(carrier, repeat=2):
        h = free_extension({"x": vx, "y": vy}, W)
        for a in SAMPLE:
            assert h(a) == h(normalize(a, MONOID))
