"""Finite topological spaces, continuous maps and closed embeddings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Hashable, Iterable, Iterator, Mapping, Sequence


class TopologyError(ValueError):
    pass


def _key(s: frozenset):
    return (len(s), sorted(map(repr, s)))


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple
    opens: frozenset

    def __post_init__(self) -> None:
        points = tuple(dict.fromkeys(self.points))
        opens = frozenset(frozenset(u) for u in self.opens)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "opens", opens)
        problem = topology_problem(points, opens)
        if problem:
            raise TopologyError(problem)

    def sorted_opens(self) -> list[frozenset]:
        return sorted(self.opens, key=_key)

    def closed_sets(self) -> set[frozenset]:
        full = frozenset(self.points)
        return {full - u for u in self.opens}

    def closure(self, S: Iterable) -> frozenset:
        """Smallest closed superset of ``S``."""
        S = frozenset(S)
        _check_subset(S, self)
        out = frozenset(self.points)
        for c in self.closed_sets():
            if S <= c:
                out &= c
        return out

    def subspace(self, S: Iterable) -> FiniteSpace:
        S = frozenset(S)
        _check_subset(S, self)
        return FiniteSpace(tuple(p for p in self.points if p in S), {u & S for u in self.opens})

    def to_json(self) -> dict:
        return {"points": list(self.points), "opens": [sorted(u, key=repr) for u in self.sorted_opens()]}


def topology_problem(points: Sequence, opens: Iterable[frozenset]) -> str | None:
    full = frozenset(points)
    opens = set(opens)
    for u in opens:
        if not u <= full:
            return f"open set {sorted(map(str, u))} has points outside the space"
    if frozenset() not in opens:
        return "the empty set is not open"
    if full not in opens:
        return "the full set is not open"
    for u, v in itertools.combinations(opens, 2):
        if u | v not in opens:
            return f"union {sorted(map(str, u | v))} of open sets is missing"
        if u & v not in opens:
            return f"intersection {sorted(map(str, u & v))} of open sets is missing"
    return None


def validate_space(points: Sequence, opens: Iterable[Iterable]) -> FiniteSpace:
    return FiniteSpace(tuple(points), frozenset(frozenset(u) for u in opens))


def discrete(points: Sequence) -> FiniteSpace:
    pts = tuple(points)
    subsets = itertools.chain.from_iterable(itertools.combinations(pts, k) for k in range(len(pts) + 1))
    return validate_space(pts, subsets)


def indiscrete(points: Sequence) -> FiniteSpace:
    return validate_space(points, [(), points])


def sierpinski(open_point="a", closed_point="b") -> FiniteSpace:
    return validate_space((open_point, closed_point), [(), (open_point,), (open_point, closed_point)])


def _check_subset(S: frozenset, X: FiniteSpace) -> None:
    unknown = S - set(X.points)
    if unknown:
        raise TopologyError(f"unknown points {sorted(map(str, unknown))}")


def is_open(S: Iterable, X: FiniteSpace) -> bool:
    S = frozenset(S)
    _check_subset(S, X)
    return S in X.opens


def is_closed(S: Iterable, X: FiniteSpace) -> bool:
    S = frozenset(S)
    _check_subset(S, X)
    return frozenset(X.points) - S in X.opens


def preimage(table: Mapping, U: Iterable) -> frozenset:
    U = set(U)
    return frozenset(x for x, y in table.items() if y in U)


def continuity_problem(source: FiniteSpace, target: FiniteSpace, table: Mapping) -> str | None:
    for x in source.points:
        if x not in table:
            return f"map undefined at {x}"
        if table[x] not in set(target.points):
            return f"image of {x} is not a point of the target"
    for U in target.sorted_opens():
        if preimage(table, U) not in source.opens:
            return f"preimage of open {sorted(map(str, U))} is not open"
    return None


@dataclass(frozen=True, eq=False)
class ContinuousMap:
    source: FiniteSpace
    target: FiniteSpace
    table: Mapping

    def __post_init__(self) -> None:
        table = dict(self.table)
        problem = continuity_problem(self.source, self.target, table)
        if problem:
            raise TopologyError(problem)
        object.__setattr__(self, "table", MappingProxyType(table))

    def __call__(self, x: Hashable) -> Hashable:
        return self.table[x]

    def then(self, g: ContinuousMap) -> ContinuousMap:
        """``g ∘ self``."""
        if g.source != self.target:
            raise TopologyError("maps are not composable")
        return ContinuousMap(self.source, g.target, {x: g(self(x)) for x in self.source.points})

    def image(self) -> frozenset:
        return frozenset(self.table.values())

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.source.points)


def is_embedding(f: ContinuousMap) -> bool:
    """Injective, and every open of the source is a preimage of a target open."""
    if not f.is_injective():
        return False
    pulled = {preimage(f.table, U) for U in f.target.opens}
    return pulled == set(f.source.opens)


def is_closed_embedding(f: ContinuousMap) -> bool:
    return is_embedding(f) and is_closed(f.image(), f.target)


def all_topologies(points: Sequence) -> Iterator[FiniteSpace]:
    """Every topology on ``points``, by brute force over families of subsets."""
    pts = tuple(points)
    full = frozenset(pts)
    subsets = [
        frozenset(c)
        for k in range(1, len(pts))
        for c in itertools.combinations(pts, k)
    ]
    for mask in range(1 << len(subsets)):
        fam = {frozenset(), full} | {s for i, s in enumerate(subsets) if mask >> i & 1}
        if topology_problem(pts, fam) is None:
            yield FiniteSpace(pts, frozenset(fam))


def all_families(points: Sequence) -> Iterator[frozenset]:
    """Every family of subsets of ``points`` (valid topologies or not)."""
    pts = tuple(points)
    subsets = [frozenset(c) for k in range(len(pts) + 1) for c in itertools.combinations(pts, k)]
    for mask in range(1 << len(subsets)):
        yield frozenset(s for i, s in enumerate(subsets) if mask >> i & 1)


def continuous_maps(X: FiniteSpace, Y: FiniteSpace) -> Iterator[ContinuousMap]:
    for images in itertools.product(Y.points, repeat=len(X.points)):
        table = dict(zip(X.points, images))
        if continuity_problem(X, Y, table) is None:
            yield ContinuousMap(X, Y, table)


def are_homeomorphic(X: FiniteSpace, Y: FiniteSpace) -> bool:
    if len(X.points) != len(Y.points) or len(X.opens) != len(Y.opens):
        return False
    for perm in itertools.permutations(Y.points):
        table = dict(zip(X.points, perm))
        if {frozenset(table[p] for p in u) for u in X.opens} == set(Y.opens):
            return True
    return False


def topologies_up_to_homeomorphism(points: Sequence) -> list[FiniteSpace]:
    reps: list[FiniteSpace] = []
    for T in all_topologies(points):
        if not any(are_homeomorphic(T, R) for R in reps):
            reps.append(T)
    return reps
