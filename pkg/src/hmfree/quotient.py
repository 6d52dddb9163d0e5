"""Equationally presented classes: oriented rules, normal forms, identities.

Rules are applied leftmost-innermost, first matching rule in declaration
order.  Every rewrite step costs one unit of fuel; running out raises
:class:`FuelExhausted` instead of returning a term that might not be normal.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .signature import Algebra, Signature
from .terms import FreeAlgebra, Gen, Op, Term, TermError, Var, check_term, evaluate, leaves, parse_term

DEFAULT_FUEL = 10_000
CACHE_LIMIT = 500_000


class FuelExhausted(RuntimeError):
    def __init__(self, term: Term, fuel: int):
        super().__init__(f"no normal form for {term} within {fuel} rewrite steps")
        self.term = term
        self.fuel = fuel


class RuleError(ValueError):
    pass


def _vars(t: Term) -> set[str]:
    return {s.name for s in leaves(t) if isinstance(s, Var)}


@dataclass(frozen=True)
class RewriteRule:
    lhs: Term
    rhs: Term
    variables: frozenset = field(default=frozenset())

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", frozenset(self.variables))
        if isinstance(self.lhs, Var):
            raise RuleError(f"left-hand side is a bare variable: {self.lhs}")
        used = _vars(self.lhs) | _vars(self.rhs)
        undeclared = used - self.variables
        if undeclared:
            raise RuleError(f"undeclared variables {sorted(undeclared)}")
        loose = _vars(self.rhs) - _vars(self.lhs)
        if loose:
            raise RuleError(f"variables {sorted(loose)} occur on the right only in {self}")
        gens = {s.name for s in leaves(self.lhs) if isinstance(s, Gen)}
        gens |= {s.name for s in leaves(self.rhs) if isinstance(s, Gen)}
        if gens & self.variables:
            raise RuleError(f"names used both as variable and generator: {sorted(gens & self.variables)}")

    def generators(self) -> tuple:
        """Generator constants mentioned by the rule, first-occurrence order."""
        seen = dict.fromkeys(
            s.name for side in (self.lhs, self.rhs) for s in leaves(side) if isinstance(s, Gen)
        )
        return tuple(seen)

    def __str__(self) -> str:
        head = f"vars: {','.join(sorted(self.variables))}; " if self.variables else ""
        return f"{head}{self.lhs} -> {self.rhs}"


_RULE = re.compile(r"^\s*(?:vars\s*:\s*(?P<vars>[^;]*);)?(?P<lhs>.*?)->(?P<rhs>.*)$", re.S)


def parse_rule(text: str) -> RewriteRule:
    """Parse ``vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))``."""
    m = _RULE.match(text)
    if not m:
        raise RuleError(f"rule must look like 'vars: a,b; lhs -> rhs': {text!r}")
    names = [v.strip() for v in (m.group("vars") or "").split(",") if v.strip()]
    if len(set(names)) != len(names):
        raise RuleError(f"duplicate variable in {text!r}")
    try:
        lhs = parse_term(m.group("lhs"), names)
        rhs = parse_term(m.group("rhs"), names)
    except TermError as exc:
        raise RuleError(str(exc)) from None
    return RewriteRule(lhs, rhs, frozenset(names))


@dataclass(frozen=True)
class RewriteSystem:
    signature: Signature
    rules: tuple = ()
    fuel: int = DEFAULT_FUEL

    def __post_init__(self) -> None:
        rules = tuple(parse_rule(r) if isinstance(r, str) else r for r in self.rules)
        object.__setattr__(self, "rules", rules)
        if self.fuel <= 0:
            raise RuleError("fuel must be positive")
        for r in rules:
            try:
                check_term(r.lhs, self.signature)
                check_term(r.rhs, self.signature)
            except TermError as exc:
                raise RuleError(f"rule {r}: {exc}") from None

        # term -> (normal form, steps taken); see normalize()
        object.__setattr__(self, "_cache", {})

    def with_fuel(self, fuel: int) -> RewriteSystem:
        return RewriteSystem(self.signature, self.rules, fuel)


@dataclass(frozen=True)
class QuotientAlgebra:
    """F(X) for the class presented by ``system``; elements are normal forms."""

    generators: tuple
    system: RewriteSystem

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))

    def free(self) -> FreeAlgebra:
        return FreeAlgebra(self.system.signature, self.generators, self.system)

    def element(self, t: Term) -> Term:
        check_term(t, self.system.signature, self.generators)
        return normalize(t, self.system)


def match(pattern: Term, t: Term, subst: dict | None = None) -> dict | None:
    """Syntactic matching; returns the extended substitution or None."""
    subst = {} if subst is None else subst
    if isinstance(pattern, Var):
        bound = subst.get(pattern.name)
        if bound is None:
            subst[pattern.name] = t
            return subst
        return subst if bound == t else None
    if isinstance(pattern, Gen):
        return subst if pattern == t else None
    if not isinstance(t, Op) or t.label != pattern.label or t.arity != pattern.arity:
        return None
    for p, s in zip(pattern.children, t.children):
        if match(p, s, subst) is None:
            return None
    return subst


def substitute(t: Term, subst: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return subst[t.name]
    if isinstance(t, Op):
        return Op(t.label, tuple(substitute(s, subst) for s in t.children))
    return t


def normalize(t: Term, R: RewriteSystem, fuel: int | None = None) -> Term:
    """Leftmost-innermost normal form of ``t`` under ``R``.

    Raises :class:`FuelExhausted` once more than ``fuel`` (default
    ``R.fuel``) rewrite steps would be needed.
    """
    budget = R.fuel if fuel is None else fuel
    if not R.rules:
        return t
    cache = R._cache
    if len(cache) > CACHE_LIMIT:
        cache.clear()
    spent = 0

    def charge(n):
        nonlocal spent
        spent += n
        if spent > budget:
            raise FuelExhausted(t, budget)

    def step_at_root(s):
        for rule in R.rules:
            sub = match(rule.lhs, s)
            if sub is not None:
                charge(1)
                return substitute(rule.rhs, sub)
        return None

    # Normalizing a subterm does not depend on its context, so a finished
    # subterm is cached with the number of steps it took; reusing it charges
    # those steps again and the budget behaves exactly as without the cache.
    def nf(s):
        hit = cache.get(s)
        if hit is not None:
            charge(hit[1])
            return hit[0]
        start = spent
        cur = s
        if isinstance(cur, Op) and cur.children:
            cur = Op(cur.label, tuple(nf(k) for k in cur.children))
        while True:
            nxt = step_at_root(cur)
            if nxt is None:
                break
            cur = Op(nxt.label, tuple(nf(k) for k in nxt.children)) if isinstance(nxt, Op) else nxt
        cache[s] = (cur, spent - start)
        return cur

    return nf(t)


def quotient_equal(t1: Term, t2: Term, R: RewriteSystem, fuel: int | None = None) -> bool:
    return normalize(t1, R, fuel) == normalize(t2, R, fuel)


def identity_violation(A: Algebra, rule: RewriteRule):
    """First assignment under which ``lhs`` and ``rhs`` differ in ``A``, else None.

    Generator constants in the rule are quantified like variables, since a
    rule holds in every quotient F(X) only if it holds for all choices of
    generator images.
    """
    leaves_ = [Var(v) for v in sorted(rule.variables)] + [Gen(g) for g in rule.generators()]
    for values in itertools.product(A.carrier, repeat=len(leaves_)):
        env = dict(zip(leaves_, values))
        lhs = evaluate(rule.lhs, A, env)
        rhs = evaluate(rule.rhs, A, env)
        if lhs != rhs:
            return {str(k): v for k, v in env.items()}, lhs, rhs
    return None


def satisfies_identity(A: Algebra, rule: RewriteRule) -> bool:
    return identity_violation(A, rule) is None


def satisfies_all(A: Algebra, rules: Iterable[RewriteRule]) -> bool:
    return all(satisfies_identity(A, r) for r in rules)
