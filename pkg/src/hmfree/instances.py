"""Instance files: one JSON document holding named signatures' worth of data.

Layout (every section except ``schema_version`` and ``signature`` optional)::

    {
      "schema_version": 1,
      "signature": {"2": ["m"], "0": ["u"]},
      "algebras": {"Z5": {"carrier": ["0", ...],
                          "ops": {"m": {"0": {"0": "0", ...}, ...}, "u": "0"}}},
      "generator_sets": {"X": ["x"], "Y": ["x", "y"]},
      "rewrite_systems": {"monoid": {"rules": ["vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))"],
                                     "fuel": 10000}},
      "maps": {"shift": {"domain": "Z5", "codomain": "Z5", "table": {"0": "1", ...}}},
      "spaces": {"S": {"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}},
      "stepfns": {"f": "[0,1/4)->p; [1/4,1/2)->q; [1/2,1)->p"},
      "retractions": {"r": {"ambient": "Y", "subspace": "X", "builder": "uniform"}},
      "diagrams": {...},
      "embeddings": {...}
    }

Operation tables nest one object level per argument; a nullary table is the
bare value.  A label used at several arities is keyed ``label/n``.  Map
domains and codomains name an algebra or a generator set.  Retractions are
built by ``"uniform"``, by ``"metric"`` (with ``"metric": {p: {q: "d"}}``),
or listed explicitly with ``"table": {y: stepfn}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .embedding import Retraction, build_retraction_metric, build_retraction_uniform
from .quotient import RewriteSystem, RuleError
from .signature import Algebra, CarrierMap, Signature, validate_signature
from .stepfn import rational, stepfn_from_json
from .topology import validate_space

SCHEMA_VERSION = 1


class InstanceError(ValueError):
    pass


def op_key(sig: Signature, n: int, c: str) -> str:
    return c if len(sig.arities_of(c)) == 1 else f"{c}/{n}"


def _resolve_op(sig: Signature, key: str) -> tuple[int, str]:
    if "/" in key:
        c, _, n = key.rpartition("/")
        if n.isdigit() and sig.has(int(n), c):
            return int(n), c
    arities = sig.arities_of(key)
    if len(arities) == 1:
        return arities[0], key
    if not arities:
        raise InstanceError(f"operation {key!r} is not in the signature")
    raise InstanceError(f"operation {key!r} has several arities; write it as {key}/n")


def _nest(table, carrier, n):
    if n == 0:
        return table[()]
    out = {}
    for x in carrier:
        sub = {args[1:]: v for args, v in table.items() if args[0] == x}
        out[x] = _nest(sub, carrier, n - 1)
    return out


def _unnest(obj, n, prefix=()):
    if n == 0:
        yield prefix, obj
        return
    if not isinstance(obj, dict):
        raise InstanceError(f"operation table too shallow at {list(prefix)}")
    for k, v in obj.items():
        yield from _unnest(v, n - 1, prefix + (k,))


def algebra_to_json(A: Algebra) -> dict:
    for x in A.carrier:
        if not isinstance(x, str):
            raise InstanceError("only algebras with string elements can be written to JSON")
    sig = A.signature
    return {
        "carrier": list(A.carrier),
        "ops": {op_key(sig, n, c): _nest(A.ops[(n, c)], A.carrier, n) for n, c in sig.operations()},
    }


def algebra_from_json(obj: dict, sig: Signature, name: str = "") -> Algebra:
    try:
        carrier = tuple(obj["carrier"])
        raw_ops = obj["ops"]
    except (KeyError, TypeError):
        raise InstanceError(f"algebra {name!r} needs 'carrier' and 'ops'") from None
    ops = {}
    for key, nested in raw_ops.items():
        n, c = _resolve_op(sig, key)
        ops[(n, c)] = dict(_unnest(nested, n))
    return Algebra(sig, carrier, ops, name)


def _rules_to_json(R: RewriteSystem) -> dict:
    return {"rules": [str(r) for r in R.rules], "fuel": R.fuel}


def _metric_from_json(obj) -> dict:
    return {(p, q): rational(v) for p, row in obj.items() for q, v in row.items()}


def _retraction_to_json(r: Retraction, ambient: str, subspace: str) -> dict:
    return {
        "ambient": ambient,
        "subspace": subspace,
        "table": {y: str(r.table[y]) for y in r.ambient},
    }


@dataclass
class Instance:
    signature: Signature
    algebras: dict = field(default_factory=dict)
    generator_sets: dict = field(default_factory=dict)
    rewrite_systems: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    map_ends: dict = field(default_factory=dict)
    spaces: dict = field(default_factory=dict)
    stepfns: dict = field(default_factory=dict)
    retractions: dict = field(default_factory=dict)
    retraction_ends: dict = field(default_factory=dict)
    diagrams: dict = field(default_factory=dict)
    embeddings: dict = field(default_factory=dict)

    def carrier(self, name: str) -> tuple:
        if name in self.algebras:
            return self.algebras[name].carrier
        if name in self.generator_sets:
            return self.generator_sets[name]
        raise InstanceError(f"no algebra or generator set named {name!r}")

    def lookup(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise InstanceError(f"no {section[:-1].replace('_', ' ')} named {name!r}")
        return table[name]

    def to_json(self) -> dict:
        out: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "signature": self.signature.to_json()}
        if self.algebras:
            out["algebras"] = {k: algebra_to_json(A) for k, A in self.algebras.items()}
        if self.generator_sets:
            out["generator_sets"] = {k: list(v) for k, v in self.generator_sets.items()}
        if self.rewrite_systems:
            out["rewrite_systems"] = {k: _rules_to_json(R) for k, R in self.rewrite_systems.items()}
        if self.maps:
            out["maps"] = {
                k: {"domain": self.map_ends[k][0], "codomain": self.map_ends[k][1], "table": dict(m.table)}
                for k, m in self.maps.items()
            }
        if self.spaces:
            out["spaces"] = {k: S.to_json() for k, S in self.spaces.items()}
        if self.stepfns:
            out["stepfns"] = {k: str(f) for k, f in self.stepfns.items()}
        if self.retractions:
            out["retractions"] = {
                k: _retraction_to_json(r, *self.retraction_ends[k]) for k, r in self.retractions.items()
            }
        if self.diagrams:
            out["diagrams"] = self.diagrams
        if self.embeddings:
            out["embeddings"] = self.embeddings
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)


def load_instance(obj: dict, fuel: int | None = None) -> Instance:
    """Validate and cross-link a parsed instance document."""
    if not isinstance(obj, dict):
        raise InstanceError("instance must be a JSON object")
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise InstanceError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    if "signature" not in obj:
        raise InstanceError("instance has no signature")
    sig = validate_signature(obj["signature"])
    inst = Instance(sig)
    for name, a in obj.get("algebras", {}).items():
        inst.algebras[name] = algebra_from_json(a, sig, name)
    for name, gens in obj.get("generator_sets", {}).items():
        gens = tuple(gens)
        if not gens or len(set(gens)) != len(gens):
            raise InstanceError(f"generator set {name!r} must be nonempty with distinct names")
        inst.generator_sets[name] = gens
    for name, R in obj.get("rewrite_systems", {}).items():
        try:
            inst.rewrite_systems[name] = RewriteSystem(
                sig, tuple(R.get("rules", [])), int(fuel if fuel is not None else R.get("fuel", 10_000))
            )
        except RuleError as exc:
            raise InstanceError(f"rewrite system {name!r}: {exc}") from None
    for name, m in obj.get("maps", {}).items():
        try:
            dom, cod = m["domain"], m["codomain"]
            inst.maps[name] = CarrierMap(m["table"], inst.carrier(dom), inst.carrier(cod))
        except KeyError as exc:
            raise InstanceError(f"map {name!r} lacks field {exc}") from None
        inst.map_ends[name] = (dom, cod)
    for name, S in obj.get("spaces", {}).items():
        inst.spaces[name] = validate_space(S["points"], S["opens"])
    for name, f in obj.get("stepfns", {}).items():
        inst.stepfns[name] = stepfn_from_json(f)
    for name, entry in obj.get("retractions", {}).items():
        inst.retractions[name] = _build_retraction(inst, name, entry)
        inst.retraction_ends[name] = (entry["ambient"], entry["subspace"])
    inst.diagrams = obj.get("diagrams", {})
    inst.embeddings = obj.get("embeddings", {})
    return inst


def _build_retraction(inst: Instance, name: str, entry: dict) -> Retraction:
    try:
        Y = inst.lookup("generator_sets", entry["ambient"])
        X = inst.lookup("generator_sets", entry["subspace"])
    except KeyError as exc:
        raise InstanceError(f"retraction {name!r} lacks field {exc}") from None
    if "table" in entry:
        return Retraction(Y, X, {y: stepfn_from_json(f) for y, f in entry["table"].items()})
    builder = entry.get("builder", "uniform")
    if builder == "uniform":
        return build_retraction_uniform(X, Y)
    if builder == "metric":
        return build_retraction_metric(Y, _metric_from_json(entry["metric"]), X)
    raise InstanceError(f"retraction {name!r}: unknown builder {builder!r}")


def read_instance(path: str | Path, fuel: int | None = None) -> Instance:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}: not valid JSON ({exc})") from None
    return load_instance(obj, fuel)


FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    p = FIXTURES / (name if name.endswith(".json") else name + ".json")
    if not p.exists():
        raise FileNotFoundError(p)
    return p


def shipped_fixtures() -> list[Path]:
    return sorted(FIXTURES.glob("*.json"))
