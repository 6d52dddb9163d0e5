"""
Finite topological spaces
=========================

A finite space is a set of points with a family of open sets closed under
unions and intersections.  This is enough to experiment with embeddings
and closed embeddings on small examples.
"""

from hmfree.topology import (
    ContinuousMap,
    all_topologies,
    is_closed,
    is_closed_embedding,
    is_embedding,
    sierpinski,
    topologies_up_to_homeomorphism,
    validate_space,
)

S = sierpinski("a", "b")  # {a} is open, {b} is closed
print(sorted(map(sorted, S.opens)))
print(is_closed({"b"}, S), is_closed({"a"}, S))

point = validate_space(["p"], [[], ["p"]])
print(is_closed_embedding(ContinuousMap(point, S, {"p": "b"})))
into_a = ContinuousMap(point, S, {"p": "a"})
print(is_embedding(into_a), is_closed_embedding(into_a))

print(sum(1 for _ in all_topologies("abc")), "topologies on three points")
print(len(topologies_up_to_homeomorphism("abc")), "up to homeomorphism")

# A collapsing map can hide that the first map was not closed.
g = ContinuousMap(S, point, {"a": "p", "b": "p"})
print(is_closed_embedding(into_a.then(g)), is_closed_embedding(into_a))
