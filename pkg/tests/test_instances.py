import json

import pytest

from hmfree.instances import (
    InstanceError,
    algebra_from_json,
    algebra_to_json,
    fixture_path,
    load_instance,
    read_instance,
    shipped_fixtures,
)
from hmfree.signature import Algebra, validate_signature
from hmfree.stepfn import stepfn_new

SIG = validate_signature({2: ["m"], 0: ["u"]})


def base(**extra):
    doc = {"schema_version": 1, "signature": {"2": ["m"], "0": ["u"]}}
    doc.update(extra)
    return doc


Z2_JSON = {"carrier": ["0", "1"], "ops": {"m": {"0": {"0": "0", "1": "1"}, "1": {"0": "1", "1": "0"}}, "u": "0"}}


def test_fixtures_are_shipped():
    names = {p.stem for p in shipped_fixtures()}
    assert {"monoid", "identity_inclusion", "broken_retraction", "non_homomorphism", "eps_boundary"} <= names
    assert fixture_path("monoid").exists()
    with pytest.raises(FileNotFoundError):
        fixture_path("nope")


@pytest.mark.parametrize("path", shipped_fixtures(), ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    inst = read_instance(path)
    once = inst.to_json()
    again = load_instance(json.loads(json.dumps(once))).to_json()
    assert once == again


def test_algebra_round_trip():
    A = algebra_from_json(Z2_JSON, SIG, "Z2")
    assert A.apply(2, "m", ("1", "1")) == "0"
    assert algebra_to_json(A) == Z2_JSON


def test_ambiguous_labels_use_arity_suffix():
    sig = validate_signature({2: ["m"], 1: ["m"]})
    A = Algebra.from_functions(sig, ["0", "1"], {(2, "m"): lambda a, b: a, (1, "m"): lambda a: "0"})
    data = algebra_to_json(A)
    assert set(data["ops"]) == {"m/1", "m/2"}
    assert algebra_from_json(data, sig) == A
    with pytest.raises(InstanceError, match="several arities"):
        algebra_from_json({"carrier": ["0"], "ops": {"m": {"0": "0"}}}, sig)


def test_non_string_algebras_cannot_be_written():
    A = Algebra.from_functions(SIG, [0, 1], {(2, "m"): lambda a, b: a, (0, "u"): lambda: 0})
    with pytest.raises(InstanceError):
        algebra_to_json(A)


def test_load_errors():
    with pytest.raises(InstanceError, match="schema_version"):
        load_instance({"signature": {}})
    with pytest.raises(InstanceError, match="schema_version"):
        load_instance({"schema_version": 99, "signature": {}})
    with pytest.raises(InstanceError, match="no signature"):
        load_instance({"schema_version": 1})
    with pytest.raises(InstanceError):
        load_instance([])
    with pytest.raises(InstanceError, match="generator set"):
        load_instance(base(generator_sets={"X": ["x", "x"]}))
    with pytest.raises(InstanceError, match="rewrite system"):
        load_instance(base(rewrite_systems={"R": {"rules": ["m(x"]}}))
    with pytest.raises(InstanceError, match="no algebra or generator set"):
        load_instance(base(maps={"f": {"domain": "Q", "codomain": "Q", "table": {}}}))
    with pytest.raises(InstanceError, match="unknown builder"):
        load_instance(
            base(
                generator_sets={"X": ["x"]},
                retractions={"r": {"ambient": "X", "subspace": "X", "builder": "magic"}},
            )
        )


def test_read_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InstanceError, match="not valid JSON"):
        read_instance(p)


def test_fuel_override():
    inst = load_instance(base(rewrite_systems={"R": {"rules": ["vars: a; m(u(),a) -> a"], "fuel": 50}}), fuel=7)
    assert inst.rewrite_systems["R"].fuel == 7


def test_retraction_forms():
    doc = base(
        generator_sets={"X": ["x"], "Y": ["x", "y"]},
        retractions={
            "u": {"ambient": "Y", "subspace": "X", "builder": "uniform"},
            "m": {
                "ambient": "Y",
                "subspace": "X",
                "builder": "metric",
                "metric": {"x": {"x": "0", "y": "1/2"}, "y": {"x": "1/2", "y": "0"}},
            },
            "t": {"ambient": "Y", "subspace": "X", "table": {"x": "[0,1)->x", "y": "[0,1/2)->x; [1/2,1)->x"}},
        },
    )
    inst = load_instance(doc)
    for name in "umt":
        assert inst.retractions[name]("y") == stepfn_new([0, 1], ["x"])
    assert load_instance(inst.to_json()).to_json() == inst.to_json()


def test_spaces_and_stepfns_load():
    doc = base(
        spaces={"S": {"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}},
        stepfns={"f": "[0,1/4)->p; [1/4,1)->q", "g": {"pieces": [["0", "p"], ["1/2", "q"]]}},
    )
    inst = load_instance(doc)
    assert len(inst.spaces["S"].opens) == 3
    assert str(inst.stepfns["g"]) == "[0,1/2)->p; [1/2,1)->q"
    assert load_instance(inst.to_json()).to_json() == inst.to_json()
