"""HM as a functor on algebras.

``HM(A)`` has as elements the step functions with values in the carrier of
``A``; operations act pointwise.  The carrier is infinite, so it is only ever
handled through its operations and through finite samples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .quotient import RewriteRule, RewriteSystem, identity_violation, normalize
from .report import Report
from .signature import Algebra, Signature, SignatureError
from .stepfn import StepFn, StepFnError, pointwise_map, zip_many
from .terms import FreeAlgebra, Gen, Term, Var, enumerate_terms, evaluate, free_extension, induced_map


def hm_embed(x: Hashable) -> StepFn:
    """hm_X: the constant step function at ``x``."""
    return StepFn.constant(x)


def lift_op(A, n: int, c: str, fs: Sequence[StepFn]) -> StepFn:
    """e_n^HM(c, f_1..f_n)(t) = e_n(c, f_1(t)..f_n(t)).

    ``A`` is any object with ``apply(n, c, args)`` and a ``signature``.
    """
    if not A.signature.has(n, c):
        raise SignatureError(f"no operation {c}/{n} in {A.signature}")
    fs = list(fs)
    if len(fs) != n:
        raise SignatureError(f"{c} expects {n} arguments, got {len(fs)}")
    if isinstance(A, Algebra):
        elems = set(A.carrier)
        for f in fs:
            bad = [v for v in f.values if v not in elems]
            if bad:
                raise StepFnError(f"step function takes value {bad[0]!r} outside the carrier")
    if n == 0:
        return hm_embed(A.apply(0, c, ()))
    return pointwise_map(lambda args: A.apply(n, c, args), zip_many(fs))


class HMAlgebra:
    """HM(A) for a finite algebra or a free algebra ``A``."""

    def __init__(self, base):
        self.base = base
        self.signature = base.signature

    def apply(self, n: int, c: str, fs: Sequence[StepFn]) -> StepFn:
        return lift_op(self.base, n, c, fs)

    embed = staticmethod(hm_embed)

    def __repr__(self) -> str:
        return f"HM({self.base!r})"


def check_naturality_square(f: Callable | Mapping, sample: Iterable, rhs: Callable | None = None) -> Report:
    """HM(f) . hm_X == hm_Y . f on every point of ``sample``.

    ``rhs`` replaces the right-hand path; tests use it to inject a broken
    diagram and confirm the checker notices.
    """
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    right = rhs if rhs is not None else (lambda x: hm_embed(fn(x)))
    rep = Report("naturality of hm")
    for x in sample:
        rep.compare(x, pointwise_map(fn, hm_embed(x)), right(x))
    return rep


def check_embedding_homomorphism(A: Algebra) -> Report:
    """hm_A is a homomorphism A -> HM(A): every op, every tuple."""
    rep = Report(f"hm is a homomorphism on {A.name or 'algebra'}")
    for n, c in A.signature.operations():
        for args in itertools.product(A.carrier, repeat=n):
            lhs = lift_op(A, n, c, [hm_embed(x) for x in args])
            rhs = hm_embed(A.apply(n, c, args))
            rep.compare({"op": c, "args": args}, lhs, rhs)
    return rep


def check_lift_naturality(p: Callable | Mapping, A: Algebra, B: Algebra, sample: Sequence[StepFn]) -> Report:
    """HM(p) commutes with the lifted operations whenever ``p`` is a homomorphism.

    Each ``n``-ary operation is tried on every ``n``-tuple from ``sample``.
    """
    if A.signature != B.signature:
        raise SignatureError("signature mismatch")
    fn = p.__getitem__ if isinstance(p, Mapping) else p
    rep = Report("HM(p) commutes with lifted operations")
    for n, c in A.signature.operations():
        for fs in itertools.product(sample, repeat=n):
            lhs = pointwise_map(fn, lift_op(A, n, c, fs))
            rhs = lift_op(B, n, c, [pointwise_map(fn, f) for f in fs])
            rep.compare({"op": c, "args": fs}, lhs, rhs)
    return rep


# sampling -------------------------------------------------------------------

def _grid(max_den: int) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q)})


def random_stepfn(rng: random.Random, values: Sequence, max_den: int = 8, max_pieces: int = 4) -> StepFn:
    k = rng.randint(1, max_pieces)
    cuts = sorted(rng.sample(_grid(max_den), k - 1))
    vals = [rng.choice(list(values)) for _ in range(k)]
    return StepFn((Fraction(0), *cuts, Fraction(1)), tuple(vals))


@dataclass(frozen=True)
class SampledHMValued:
    """A finite, deterministic sample of HM(A): all constants, some random
    step functions, and a bounded closure under the lifted operations."""

    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @classmethod
    def build(
        cls,
        A: Algebra,
        n_random: int = 6,
        seed: int = 0,
        closure_rounds: int = 1,
        max_size: int = 40,
        max_den: int = 8,
        max_pieces: int = 4,
    ) -> SampledHMValued:
        rng = random.Random(seed)
        out = dict.fromkeys(hm_embed(x) for x in A.carrier)
        for _ in range(n_random):
            out[random_stepfn(rng, A.carrier, max_den, max_pieces)] = None
        H = HMAlgebra(A)
        for _ in range(closure_rounds):
            current = list(out)
            for n, c in A.signature.operations():
                for fs in itertools.product(current, repeat=n):
                    if len(out) >= max_size:
                        break
                    out[H.apply(n, c, fs)] = None
        return cls(tuple(out))


def check_hm_preserves_identities(A: Algebra, rule: RewriteRule, sample: Iterable[StepFn]) -> Report:
    """If ``A`` satisfies ``rule``, so does HM(A), on every sample assignment.

    A violation in ``A`` itself is reported first, with its witness.
    """
    rep = Report(f"HM preserves {rule}")
    bad = identity_violation(A, rule)
    if bad is not None:
        env, lhs, rhs = bad
        rep.fail({"base_algebra": env}, lhs, rhs)
        return rep
    leaves = [Var(v) for v in sorted(rule.variables)] + [Gen(g) for g in rule.generators()]
    H = HMAlgebra(A)
    sample = list(sample)
    for values in itertools.product(sample, repeat=len(leaves)):
        env = dict(zip(leaves, values))
        rep.compare(
            {str(k): v for k, v in env.items()},
            evaluate(rule.lhs, H, env),
            evaluate(rule.rhs, H, env),
        )
    return rep


# the comparison map h: F(HM(X)) -> HM(F(X)) --------------------------------

def build_h(sig: Signature, X: Sequence, system: RewriteSystem | None = None) -> Callable[[Term], StepFn]:
    """The homomorphism h with h . i_HM(X) == HM(i_X).

    Input terms have step functions over ``X`` as generators; the output is
    a step function whose values are terms over ``X`` (normal forms when a
    rewrite system is given).
    """
    X = tuple(X)
    members = set(X)
    FX = FreeAlgebra(sig, X, system)

    def hm_unit(f: StepFn) -> StepFn:
        if not isinstance(f, StepFn):
            raise StepFnError(f"generator of F(HM(X)) must be a step function, got {f!r}")
        bad = [v for v in f.values if v not in members]
        if bad:
            raise StepFnError(f"generator step function takes value {bad[0]!r} outside X")
        return pointwise_map(FX.unit, f)

    return free_extension(hm_unit, HMAlgebra(FX))


def check_h_identity(
    sig: Signature, X: Sequence, depth: int, system: RewriteSystem | None = None
) -> Report:
    """h . F(hm_X) == hm_F(X) on every term over ``X`` up to ``depth``."""
    h = build_h(sig, X, system)
    F_hm = induced_map(hm_embed)
    rep = Report(f"h.F(hm_X) = hm_F(X), depth {depth}")
    for t in enumerate_terms(sig, X, depth):
        lhs = h(F_hm(t))
        nf = t if system is None else normalize(t, system)
        rep.compare(t, lhs, hm_embed(nf))
    return rep
