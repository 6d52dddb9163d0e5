"""Signatures, finite algebras and carrier maps.

A signature assigns to each arity ``n`` a finite set ``E_n`` of parameter
labels; every label names one ``n``-ary operation.  An algebra interprets
each ``(n, c)`` by an explicit table ``carrier^n -> carrier``.  Everything
here is finite, so homomorphism and subalgebra predicates are exhaustive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence


class SignatureError(ValueError):
    """Malformed signature, or two objects that should share one do not."""


class AlgebraError(ValueError):
    """Operation table is not total or not closed over the carrier."""


class MapError(ValueError):
    """A carrier map is partial or leaves its codomain."""


@dataclass(frozen=True)
class Signature:
    """Per-arity parameter sets.  ``params`` is a sorted tuple of
    ``(arity, labels)`` pairs so that signatures compare and hash by value."""

    params: tuple[tuple[int, tuple[str, ...]], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for n, labels in self.params:
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise SignatureError(f"arity must be a natural number, got {n!r}")
            if n in seen:
                raise SignatureError(f"arity {n} listed twice")
            seen.add(n)
            if not labels:
                raise SignatureError(f"empty parameter set for arity {n}")
            if len(set(labels)) != len(labels):
                dup = next(c for c in labels if labels.count(c) > 1)
                raise SignatureError(f"duplicate label {dup!r} in arity {n}")

    @classmethod
    def of(cls, raw: Mapping[Any, Iterable[str]]) -> Signature:
        return validate_signature(raw)

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.params)

    def labels(self, n: int) -> tuple[str, ...]:
        for m, labels in self.params:
            if m == n:
                return labels
        return ()

    def operations(self) -> Iterator[tuple[int, str]]:
        """All ``(n, c)`` pairs, by arity then declaration order."""
        for n, labels in self.params:
            for c in labels:
                yield n, c

    def has(self, n: int, c: str) -> bool:
        return c in self.labels(n)

    def arities_of(self, c: str) -> tuple[int, ...]:
        return tuple(n for n, labels in self.params if c in labels)

    def to_json(self) -> dict[str, list[str]]:
        return {str(n): list(labels) for n, labels in self.params}

    def __str__(self) -> str:
        body = ", ".join(f"{n}: {{{', '.join(ls)}}}" for n, ls in self.params)
        return "{" + body + "}"


def validate_signature(raw: Mapping[Any, Iterable[str]]) -> Signature:
    """Build a :class:`Signature` from ``{arity: labels}``.

    Arity keys may be ints or decimal strings (as they come out of JSON).
    Label order is kept; it fixes the enumeration order of terms.

    >>> validate_signature({2: ["m"], 0: ["u"]})
    Signature(params=((0, ('u',)), (2, ('m',))))
    """
    params = []
    for key, labels in raw.items():
        try:
            n = int(key)
        except (TypeError, ValueError):
            raise SignatureError(f"arity key {key!r} is not an integer") from None
        if isinstance(labels, str):
            raise SignatureError(f"labels for arity {n} must be a list, got a string")
        labels = tuple(labels)
        for c in labels:
            if not isinstance(c, str) or not c:
                raise SignatureError(f"parameter label must be a nonempty string, got {c!r}")
        params.append((n, labels))
    params.sort(key=lambda p: p[0])
    return Signature(tuple(params))


def _freeze_ops(ops):
    return MappingProxyType({k: MappingProxyType(dict(v)) for k, v in ops.items()})


@dataclass(frozen=True, eq=False)
class Algebra:
    """A finite algebra: carrier plus one total table per ``(n, c)``.

    ``ops[(n, c)]`` maps ``n``-tuples of carrier elements to a carrier
    element.  Construction validates totality and closure.
    """

    signature: Signature
    carrier: tuple
    ops: Mapping[tuple[int, str], Mapping[tuple, Hashable]]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        carrier = tuple(self.carrier)
        if not carrier:
            raise AlgebraError("carrier must be nonempty")
        if len(set(carrier)) != len(carrier):
            raise AlgebraError("carrier elements must be distinct")
        object.__setattr__(self, "carrier", carrier)
        elems = set(carrier)
        expected = set(self.signature.operations())
        got = set(self.ops)
        if got - expected:
            raise AlgebraError(f"operations not in signature: {sorted(got - expected)}")
        if expected - got:
            raise AlgebraError(f"missing operation tables: {sorted(expected - got)}")
        for (n, c), table in self.ops.items():
            for args in itertools.product(carrier, repeat=n):
                if args not in table:
                    raise AlgebraError(f"table for {c}/{n} undefined at {args}")
                if table[args] not in elems:
                    raise AlgebraError(
                        f"{c}{args} = {table[args]!r} lies outside the carrier"
                    )
            if len(table) != len(elems) ** n:
                raise AlgebraError(f"table for {c}/{n} has entries outside carrier^{n}")
        object.__setattr__(self, "ops", _freeze_ops(self.ops))

    @classmethod
    def from_functions(
        cls,
        signature: Signature,
        carrier: Sequence,
        funcs: Mapping[tuple[int, str], Callable[..., Hashable]],
        name: str = "",
    ) -> Algebra:
        """Tabulate Python callables ``funcs[(n, c)](*args)`` over the carrier."""
        carrier = tuple(carrier)
        ops = {
            key: {args: funcs[key](*args) for args in itertools.product(carrier, repeat=key[0])}
            for key in funcs
        }
        return cls(signature, carrier, ops, name)

    def apply(self, n: int, c: str, args: Sequence) -> Hashable:
        try:
            table = self.ops[(n, c)]
        except KeyError:
            raise SignatureError(f"no operation {c}/{n} in {self.signature}") from None
        return table[tuple(args)]

    def restrict(self, subset: Iterable) -> Algebra:
        """The subalgebra on ``subset`` (which must be closed)."""
        keep = set(subset)
        subset = [x for x in self.carrier if x in keep]
        ops = {
            (n, c): {args: table[args] for args in itertools.product(subset, repeat=n)}
            for (n, c), table in self.ops.items()
        }
        return Algebra(self.signature, tuple(subset), ops, self.name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.carrier == other.carrier
            and {k: dict(v) for k, v in self.ops.items()} == {k: dict(v) for k, v in other.ops.items()}
        )

    __hash__ = None

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Algebra{label} |carrier|={len(self.carrier)} sig={self.signature}>"


@dataclass(frozen=True, eq=False)
class CarrierMap:
    """A total function between finite carriers.

    ``domain`` and ``codomain`` are element tuples; pass an :class:`Algebra`
    and its carrier is used.
    """

    table: Mapping
    domain: tuple
    codomain: tuple

    def __post_init__(self) -> None:
        dom = _carrier_of(self.domain)
        cod = _carrier_of(self.codomain)
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "codomain", cod)
        table = dict(self.table)
        missing = [x for x in dom if x not in table]
        if missing:
            raise MapError(f"map undefined on {missing[0]!r}")
        extra = set(table) - set(dom)
        if extra:
            raise MapError(f"map defined outside its domain: {sorted(map(repr, extra))}")
        cod_set = set(cod)
        for x in dom:
            if table[x] not in cod_set:
                raise MapError(f"image of {x!r} is {table[x]!r}, not in the codomain")
        object.__setattr__(self, "table", MappingProxyType(table))

    @classmethod
    def from_function(cls, fn: Callable, domain, codomain) -> CarrierMap:
        dom = _carrier_of(domain)
        return cls({x: fn(x) for x in dom}, dom, codomain)

    @classmethod
    def identity(cls, carrier) -> CarrierMap:
        dom = _carrier_of(carrier)
        return cls({x: x for x in dom}, dom, dom)

    def __call__(self, x):
        return self.table[x]

    def then(self, other: CarrierMap) -> CarrierMap:
        """``other ∘ self``."""
        if set(self.codomain) - set(other.domain):
            raise MapError("maps are not composable")
        return CarrierMap({x: other(self(x)) for x in self.domain}, self.domain, other.codomain)

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.domain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CarrierMap):
            return NotImplemented
        return (
            set(self.domain) == set(other.domain)
            and set(self.codomain) == set(other.codomain)
            and dict(self.table) == dict(other.table)
        )

    __hash__ = None


def _carrier_of(x) -> tuple:
    if isinstance(x, Algebra):
        return x.carrier
    return tuple(x)


def _same_signature(*algebras: Algebra) -> None:
    first = algebras[0].signature
    for a in algebras[1:]:
        if a.signature != first:
            raise SignatureError(f"signature mismatch: {first} vs {a.signature}")


def homomorphism_violation(h: CarrierMap | Mapping | Callable, A: Algebra, B: Algebra):
    """First ``(n, c, args)`` where ``h`` fails to commute with ``c``, else None."""
    _same_signature(A, B)
    fn = h if callable(h) else h.__getitem__
    b_elems = set(B.carrier)
    for x in A.carrier:
        if fn(x) not in b_elems:
            raise MapError(f"h({x!r}) = {fn(x)!r} is not in the codomain carrier")
    for n, c in A.signature.operations():
        for args in itertools.product(A.carrier, repeat=n):
            lhs = B.apply(n, c, [fn(a) for a in args])
            rhs = fn(A.apply(n, c, args))
            if lhs != rhs:
                return (n, c, args, lhs, rhs)
    return None


def is_homomorphism(h: CarrierMap | Mapping | Callable, A: Algebra, B: Algebra) -> bool:
    """Check ``e_n^B(c, h(x_1..x_n)) == h(e_n^A(c, x_1..x_n))`` exhaustively."""
    return homomorphism_violation(h, A, B) is None


def is_subalgebra(A: Algebra, S: Iterable) -> bool:
    S = set(S)
    unknown = S - set(A.carrier)
    if unknown:
        raise AlgebraError(f"elements not in the carrier: {sorted(map(repr, unknown))}")
    members = [x for x in A.carrier if x in S]
    for n, c in A.signature.operations():
        for args in itertools.product(members, repeat=n):
            if A.apply(n, c, args) not in S:
                return False
    return True


def product_algebra(factors: Sequence[Algebra]) -> Algebra:
    """Cartesian product with componentwise operations; elements are tuples."""
    factors = list(factors)
    if not factors:
        raise AlgebraError("product of an empty family")
    _same_signature(*factors)
    sig = factors[0].signature
    carrier = tuple(itertools.product(*(f.carrier for f in factors)))

    def op(n, c):
        def go(*args):
            return tuple(
                f.apply(n, c, [a[i] for a in args]) for i, f in enumerate(factors)
            )
        return go

    funcs = {(n, c): op(n, c) for n, c in sig.operations()}
    name = " x ".join(f.name or "?" for f in factors)
    return Algebra.from_functions(sig, carrier, funcs, name=name)


def projection(factors: Sequence[Algebra], i: int) -> CarrierMap:
    P = product_algebra(factors)
    return CarrierMap({p: p[i] for p in P.carrier}, P.carrier, factors[i].carrier)
