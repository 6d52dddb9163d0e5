"""
Checking the embedding argument on finite data
==============================================

With X a subset of Y, a retraction r sends each point of Y to a step
function over X and fixes X.  The pipeline checks, term by term, that the
free algebra over X maps injectively into the free algebra over Y through
the constant embedding, the retraction and the homomorphism h.
"""

from fractions import Fraction

from hmfree import (
    RewriteSystem,
    build_retraction_metric,
    build_retraction_uniform,
    check_h_identity,
    lemma1_injectivity,
    theorem2_pipeline,
    validate_signature,
)

sig = validate_signature({2: ["m"], 0: ["u"]})
monoid = RewriteSystem(
    sig,
    [
        "vars: a; m(u(), a) -> a",
        "vars: a; m(a, u()) -> a",
        "vars: a,b,c; m(m(a, b), c) -> m(a, m(b, c))",
    ],
)

X, Y = ["x"], ["x", "y"]
r = build_retraction_uniform(X, Y)
print(r("y"))

# Points outside X can instead split between their nearest points of X.
h = Fraction(1, 2)
line = {"x": 0, "y": h, "z": 1}
d = {(p, q): abs(line[p] - line[q]) for p in line for q in line}
print(build_retraction_metric(["x", "y", "z"], d, ["x", "z"])("y"))

print(check_h_identity(sig, Y, 2, monoid).summary())

rep = theorem2_pipeline(sig, X, Y, r, monoid, depth=3)
print(rep.summary())

# Injectivity of the composite forces injectivity of the first map.
print(lemma1_injectivity({1: "a", 2: "b"}, {"a": "A", "b": "B"}))
