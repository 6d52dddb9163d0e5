import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmfree.embedding import (
    MetricError,
    Retraction,
    RetractionError,
    build_retraction_metric,
    build_retraction_uniform,
    lemma1_check,
    lemma1_injectivity,
    retract_problems,
    theorem2_pipeline,
    verify_retract,
)
from hmfree.hm import hm_embed
from hmfree.quotient import RewriteSystem
from hmfree.signature import validate_signature
from hmfree.stepfn import stepfn_new

from oracles import all_functions, injective, multisets_up_to, words_up_to

SIG = validate_signature({2: ["m"], 0: ["u"]})
MONOID_RULES = (
    "vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))",
    "vars: a; m(u(),a) -> a",
    "vars: a; m(a,u()) -> a",
)
COMM_RULES = MONOID_RULES + ("m(y,x) -> m(x,y)", "vars: a; m(y,m(x,a)) -> m(x,m(y,a))")
HALF = Q(1, 2)


def metric(points, pairs):
    d = {(p, p): 0 for p in points}
    for (p, q), v in pairs.items():
        d[(p, q)] = d[(q, p)] = v
    return d


def test_verify_retract_examples():
    r = Retraction(("x", "y"), ("x",), {"x": hm_embed("x"), "y": stepfn_new([0, HALF, 1], ["x", "x"])})
    assert verify_retract(r)
    bad = Retraction(("x", "y"), ("x", "y"), {"x": stepfn_new([0, HALF, 1], ["x", "y"]), "y": hm_embed("y")})
    assert not verify_retract(bad)
    assert any("not the constant" in p for p in retract_problems(bad))
    ident = Retraction(("x", "y"), ("x", "y"), {"x": hm_embed("x"), "y": hm_embed("y")})
    assert verify_retract(ident)


def test_retract_problems_are_specific():
    r = Retraction(("x", "y"), ("x", "z"), {"x": hm_embed("x"), "y": hm_embed("y"), "w": hm_embed("x")})
    problems = " | ".join(retract_problems(r))
    assert "outside ambient" in problems
    assert "outside the subspace" in problems
    assert "outside the ambient set" in problems
    assert not verify_retract(Retraction(("x", "y"), ("x",), {"x": hm_embed("x")}))


def test_uniform_builder_examples():
    r = build_retraction_uniform(["x"], ["x", "y"])
    assert r("y") == hm_embed("x")
    r = build_retraction_uniform(["a", "b"], ["a", "b", "y"])
    assert r("y") == stepfn_new([0, HALF, 1], ["a", "b"])
    assert verify_retract(r)
    with pytest.raises(RetractionError):
        build_retraction_uniform([], ["y"])
    with pytest.raises(RetractionError):
        build_retraction_uniform(["z"], ["y"])


def test_metric_builder_examples():
    pts = ["a", "b", "y"]
    r = build_retraction_metric(pts, metric(pts, {("a", "b"): 2, ("a", "y"): 1, ("b", "y"): 1}), ["a", "b"])
    assert r("y") == stepfn_new([0, HALF, 1], ["a", "b"])
    r = build_retraction_metric(pts, metric(pts, {("a", "b"): 2, ("a", "y"): 1, ("b", "y"): 2}), ["a", "b"])
    assert r("y") == hm_embed("a")
    assert r("a") == hm_embed("a") and r("b") == hm_embed("b")


def test_metric_builder_three_way_tie():
    pts = ["a", "b", "c", "y"]
    d = metric(pts, {("a", "b"): 2, ("a", "c"): 2, ("b", "c"): 2, ("a", "y"): 1, ("b", "y"): 1, ("c", "y"): 1})
    r = build_retraction_metric(pts, d, ["a", "b", "c"])
    assert r("y").breaks == (0, Q(1, 3), Q(2, 3), 1)


def test_metric_validation():
    pts = ["a", "y"]
    with pytest.raises(MetricError, match="missing"):
        build_retraction_metric(pts, {("a", "a"): 0}, ["a"])
    with pytest.raises(MetricError, match="exact"):
        build_retraction_metric(pts, metric(pts, {("a", "y"): 0.5}), ["a"])
    with pytest.raises(MetricError, match="triangle"):
        p3 = ["a", "b", "y"]
        build_retraction_metric(p3, metric(p3, {("a", "b"): 5, ("a", "y"): 1, ("b", "y"): 1}), ["a"])
    d = metric(pts, {("a", "y"): 1})
    d[("y", "a")] = 2
    with pytest.raises(MetricError, match="!="):
        build_retraction_metric(pts, d, ["a"])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.data())
def test_built_retractions_are_retractions(n, data):
    Y = [f"p{i}" for i in range(n)]
    X = data.draw(st.lists(st.sampled_from(Y), min_size=1, unique=True))
    assert verify_retract(build_retraction_uniform(X, Y))
    # a random metric: integer distances in [1, 2] always satisfy the triangle inequality
    d = {(p, p): 0 for p in Y}
    for p, q in itertools.combinations(Y, 2):
        d[(p, q)] = d[(q, p)] = data.draw(st.integers(1, 2))
    r = build_retraction_metric(Y, d, X)
    assert verify_retract(r)
    for y in Y:
        near = min(d[(y, x)] for x in X)
        assert set(r(y).values) == {x for x in X if d[(y, x)] == near} or y in X


def test_lemma1_examples():
    f = {1: "a", 2: "b"}
    assert lemma1_injectivity(f, {"a": 0, "b": 1, "c": 2})
    out = lemma1_check({1: "a", 2: "a"}, {"a": 0})
    assert out.vacuous and not out.f_injective
    out = lemma1_check(f, {"a": 0, "b": 0, "c": 1})
    assert out.vacuous and out.f_injective
    with pytest.raises(ValueError):
        lemma1_check(f, {"a": 0})


def test_lemma1_exhaustive_small():
    for na, nb, nc in itertools.product(range(4), repeat=3):
        A, B, C = range(na), "abc"[:nb], "xyz"[:nc]
        for f in all_functions(A, B):
            for g in all_functions(B, C):
                out = lemma1_check(f, g)
                gf = {k: g[v] for k, v in f.items()}
                assert out.composite_injective == injective(gf)
                assert out.f_injective == injective(f)


# the pipeline -------------------------------------------------------------------


def _run(X, Y, rules, depth, r=None):
    R = None if rules is None else RewriteSystem(SIG, rules)
    return theorem2_pipeline(SIG, X, Y, r or build_retraction_uniform(X, Y), R, depth)


def test_pipeline_monoid_x_in_y():
    rep = _run(["x"], ["x", "y"], MONOID_RULES, 2)
    assert rep.ok
    assert rep.domain_classes == rep.image_classes == len(words_up_to("x", 4))
    assert rep.lemma_vacuous is False


def test_pipeline_identity_inclusion_reduces_to_h_identity():
    rep = _run(["x", "y"], ["x", "y"], MONOID_RULES, 2)
    assert rep.ok
    assert rep.domain_classes == len(words_up_to("xy", 4))


def test_pipeline_comm_counts():
    rep = _run(["x", "y"], ["x", "y"], COMM_RULES, 2)
    assert rep.ok
    assert rep.domain_classes == len(multisets_up_to("xy", 4))


def test_pipeline_absolutely_free():
    rep = _run(["x"], ["x", "y", "z"], None, 2)
    assert rep.ok and rep.domain_classes == rep.terms_checked


def test_pipeline_metric_retraction():
    pts = ["x", "y", "z"]
    d = metric(pts, {("x", "y"): 1, ("x", "z"): 1, ("y", "z"): 1})
    r = build_retraction_metric(pts, d, ["x", "y"])
    rep = _run(["x", "y"], pts, COMM_RULES, 2, r)
    assert rep.ok


def test_pipeline_reports_broken_retraction():
    twisted = Retraction(("x", "y"), ("x",), {"x": stepfn_new([0, Q(1, 3), 1], ["x", "y"]), "y": hm_embed("x")})
    rep = _run(["x"], ["x", "y"], MONOID_RULES, 1, twisted)
    assert not rep.ok
    assert rep.retract
    assert not rep.square_v.ok and rep.square_v.failures[0]["witness"] == "x"
    assert not rep.main.ok


def test_pipeline_subspace_mismatch():
    rep = _run(["x"], ["x", "y"], None, 1, build_retraction_uniform(["y"], ["x", "y"]))
    assert not rep.ok
    assert any("different subspace" in p for p in rep.retract)


def test_pipeline_report_json_shape():
    data = _run(["x"], ["x", "y"], MONOID_RULES, 1).to_json()
    assert data["identities"] == {"square_v": "pass", "main": "pass", "well_defined": "pass"}
    assert set(data["injectivity"]) >= {"domain_classes", "image_classes", "injective"}
    assert data["status"] == "pass"
