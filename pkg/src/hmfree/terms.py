"""Terms of the absolutely free algebra F(X) and its universal property.

A term is a generator leaf :class:`Gen`, a rule variable :class:`Var` (only
inside rewrite rules), or an operation node :class:`Op`.  Generator names may
be any hashable value, which is how terms over step functions (the algebra
F(HM(X))) are represented.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .signature import Algebra, CarrierMap, Signature, SignatureError


class TermError(ValueError):
    """Ill-formed term: wrong arity, unknown label or generator, bad syntax."""


class _Node:
    """Immutable term node with a cached structural hash."""

    __slots__ = ("_key", "_hash")

    def __init__(self, *key):
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash((type(self).__name__, key)))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self):
            return NotImplemented if not isinstance(other, _Node) else False
        return self._hash == other._hash and self._key == other._key

    def __reduce__(self):
        return (type(self), self._key)


class Gen(_Node):
    """Generator leaf; the image of ``name`` under i_X."""

    __slots__ = ()

    def __init__(self, name: Hashable):
        super().__init__(name)

    @property
    def name(self) -> Hashable:
        return self._key[0]

    def __repr__(self) -> str:
        return f"Gen({self.name!r})"

    def __str__(self) -> str:
        return str(self.name)


class Var(_Node):
    __slots__ = ()

    def __init__(self, name: str):
        super().__init__(name)

    @property
    def name(self) -> str:
        return self._key[0]

    def __repr__(self) -> str:
        return f"Var({self.name!r})"

    def __str__(self) -> str:
        return self.name


class Op(_Node):
    __slots__ = ()

    def __init__(self, label: str, children: tuple = ()):
        super().__init__(label, tuple(children))

    @property
    def label(self) -> str:
        return self._key[0]

    @property
    def children(self) -> tuple:
        return self._key[1]

    @property
    def arity(self) -> int:
        return len(self._key[1])

    def __repr__(self) -> str:
        return f"Op({self.label!r}, {self.children!r})"

    def __str__(self) -> str:
        return f"{self.label}({', '.join(map(str, self.children))})"


Term = Gen | Var | Op


def generator(x: Hashable, generators: Iterable | None = None) -> Gen:
    if generators is not None and x not in set(generators):
        raise TermError(f"unknown generator {x!r}")
    return Gen(x)


def term_build(sig: Signature, n: int, c: str, children: Sequence[Term]) -> Op:
    children = tuple(children)
    if len(children) != n:
        raise TermError(f"{c} expects {n} arguments, got {len(children)}")
    if not sig.has(n, c):
        raise TermError(f"unknown operation {c}/{n} in signature {sig}")
    return Op(c, children)


def depth(t: Term) -> int:
    """Node depth: leaves and nullary nodes have depth 0."""
    if isinstance(t, Op) and t.children:
        return 1 + max(depth(s) for s in t.children)
    return 0


def size(t: Term) -> int:
    if isinstance(t, Op):
        return 1 + sum(size(s) for s in t.children)
    return 1


def leaves(t: Term) -> Iterable[Term]:
    if isinstance(t, Op):
        for s in t.children:
            yield from leaves(s)
    else:
        yield t


def check_term(t: Term, sig: Signature, generators: Iterable | None = None) -> Term:
    """Raise :class:`TermError` unless ``t`` is well formed; return ``t``."""
    gens = None if generators is None else set(generators)
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Op):
            if not sig.has(s.arity, s.label):
                raise TermError(f"unknown operation {s.label}/{s.arity} in signature {sig}")
            stack.extend(s.children)
        elif isinstance(s, Gen):
            if gens is not None and s.name not in gens:
                raise TermError(f"unknown generator {s.name!r}")
        elif not isinstance(s, Var):
            raise TermError(f"not a term: {s!r}")
    return t


def fold(t: Term, leaf: Callable[[Term], object], node: Callable[[int, str, list], object], memo: dict | None = None):
    """Catamorphism over a term with sharing of repeated subterms.

    Pass the same ``memo`` to successive calls to share work between terms.
    """
    memo = {} if memo is None else memo

    def go(s):
        try:
            return memo[s]
        except KeyError:
            pass
        if isinstance(s, Op):
            out = node(s.arity, s.label, [go(k) for k in s.children])
        else:
            out = leaf(s)
        memo[s] = out
        return out

    return go(t)


class FreeAlgebra:
    """F(X) over ``sig``, optionally modulo a rewrite system.

    Elements are terms (normal forms when ``system`` is given).  Carries the
    same ``apply(n, c, args)`` interface as a finite :class:`Algebra`.
    """

    def __init__(self, sig: Signature, generators: Iterable | None = None, system=None):
        self.signature = sig
        self.generators = None if generators is None else tuple(generators)
        self.system = system

    def apply(self, n: int, c: str, args: Sequence[Term]) -> Term:
        if not self.signature.has(n, c):
            raise SignatureError(f"no operation {c}/{n} in {self.signature}")
        t = Op(c, tuple(args))
        return self.normal(t)

    def unit(self, x: Hashable) -> Term:
        """The canonical map i_X."""
        return self.normal(Gen(x))

    def normal(self, t: Term) -> Term:
        if self.system is None:
            return t
        from .quotient import normalize

        return normalize(t, self.system)

    def __repr__(self) -> str:
        rules = "" if self.system is None else f" / {len(self.system.rules)} rules"
        return f"<FreeAlgebra {self.signature} over {self.generators}{rules}>"


def _as_function(f) -> Callable:
    if callable(f):
        return f
    if isinstance(f, Mapping):
        def look(x):
            try:
                return f[x]
            except KeyError:
                raise TermError(f"unknown generator {x!r}") from None
        return look
    return f


def free_extension(f, K) -> Callable[[Term], Hashable]:
    """The unique homomorphism F(X) -> K extending ``f`` on generators.

    ``K`` is anything with ``apply(n, c, args)``: a finite :class:`Algebra`,
    a :class:`FreeAlgebra`, an HM algebra.  ``f`` is a mapping, a
    :class:`CarrierMap` or a callable on generator names.
    """
    fn = _as_function(f)
    if isinstance(K, Algebra) and isinstance(f, CarrierMap):
        if set(f.codomain) - set(K.carrier):
            raise SignatureError("generator map does not land in the target algebra")

    def leaf(s):
        if isinstance(s, Gen):
            return fn(s.name)
        raise TermError(f"cannot evaluate rule variable {s} without an assignment")

    memo: dict = {}

    def evaluate(t: Term):
        return fold(t, leaf, K.apply, memo)

    return evaluate


def evaluate(t: Term, K, env: Mapping) -> Hashable:
    """Evaluate ``t`` in ``K`` with ``env`` assigning every leaf (Gen or Var)."""

    def leaf(s):
        try:
            return env[s]
        except KeyError:
            raise TermError(f"no value assigned to {s}") from None

    return fold(t, leaf, K.apply)


def relabel(t: Term, f, memo: dict | None = None) -> Term:
    """Replace every generator ``x`` by ``f(x)``, keeping the shape."""
    fn = _as_function(f)
    return fold(
        t,
        lambda s: Gen(fn(s.name)) if isinstance(s, Gen) else s,
        lambda n, c, kids: Op(c, tuple(kids)),
        memo,
    )


def induced_map(f) -> Callable[[Term], Term]:
    """F(f): the term transformer with F(f)(Gen(x)) == Gen(f(x))."""
    fn = _as_function(f)
    memo: dict = {}
    return lambda t: relabel(t, fn, memo)


def enumerate_terms(sig: Signature, generators: Sequence, depth_bound: int) -> list[Term]:
    """All terms of node depth <= ``depth_bound``, without repeats.

    Order: generators, then nullary nodes, then each deeper level in turn;
    within a level, operations in signature order and children in
    lexicographic order of the previous listing.
    """
    if depth_bound < 0:
        raise ValueError("depth must be >= 0")
    gens = list(dict.fromkeys(generators))
    ops = list(sig.operations())
    level0 = [Gen(x) for x in gens] + [Op(c) for n, c in ops if n == 0]
    out = list(level0)
    prev_count = 0
    for _ in range(depth_bound):
        pool = out
        new = []
        for n, c in ops:
            if n == 0:
                continue
            for kids in itertools.product(range(len(pool)), repeat=n):
                # at least one child must come from the newest level
                if max(kids) < prev_count:
                    continue
                new.append(Op(c, tuple(pool[k] for k in kids)))
        prev_count = len(pool)
        out = pool + new
    return out


# text form ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_'.]*)|([(),])|(\S))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(3):
            raise TermError(f"unexpected character {m.group(3)!r} at {m.start(3)} in {text!r}")
        yield m.group(1) or m.group(2)
        pos = m.end()


def parse_term(text: str, variables: Iterable[str] = ()) -> Term:
    """Parse the prefix form ``m(x, m(y, y))``.

    A bare identifier is a generator unless listed in ``variables``; a
    nullary operation is written with empty parentheses, ``u()``.
    """
    variables = set(variables)
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise TermError(f"expected {expected or 'a term'} in {text!r}, got {tok!r}")
        pos += 1
        return tok

    def term():
        name = take()
        if name in "(),":
            raise TermError(f"unexpected {name!r} in {text!r}")
        if peek() != "(":
            return Var(name) if name in variables else Gen(name)
        take("(")
        kids = []
        if peek() != ")":
            kids.append(term())
            while peek() == ",":
                take(",")
                kids.append(term())
        take(")")
        return Op(name, tuple(kids))

    t = term()
    if pos != len(toks):
        raise TermError(f"trailing input after term in {text!r}")
    return t


def format_term(t: Term) -> str:
    return str(t)


def term_to_json(t: Term):
    if isinstance(t, Gen):
        return {"gen": t.name}
    if isinstance(t, Var):
        return {"var": t.name}
    return {"op": t.label, "args": [term_to_json(s) for s in t.children]}


def term_from_json(obj) -> Term:
    if not isinstance(obj, dict):
        raise TermError(f"term node must be an object, got {obj!r}")
    if set(obj) == {"gen"}:
        return Gen(obj["gen"])
    if set(obj) == {"var"}:
        return Var(obj["var"])
    if "op" in obj and set(obj) <= {"op", "args"}:
        return Op(obj["op"], tuple(term_from_json(a) for a in obj.get("args", [])))
    raise TermError(f"unrecognised term node {obj!r}")
