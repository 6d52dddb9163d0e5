"""HM-valued retracts and the end-to-end embedding argument.

For ``X ⊆ Y`` and a map ``r: Y -> HM(X)`` extending ``hm_X``, the pipeline
checks, term by term, that ``hm_F(X) = h . F(r) . F(e)`` and then reads off
injectivity of ``F(e)`` on normal forms via the set-level cancellation lemma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Hashable, Mapping, Sequence

from .hm import build_h, hm_embed
from .quotient import RewriteSystem, normalize
from .report import Report, plain
from .signature import Signature
from .stepfn import StepFn
from .terms import enumerate_terms, induced_map


class RetractionError(ValueError):
    pass


class MetricError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Retraction:
    ambient: tuple
    subspace: tuple
    table: Mapping

    def __post_init__(self) -> None:
        object.__setattr__(self, "ambient", tuple(self.ambient))
        object.__setattr__(self, "subspace", tuple(self.subspace))
        object.__setattr__(self, "table", MappingProxyType(dict(self.table)))

    def __call__(self, y: Hashable) -> StepFn:
        return self.table[y]


def retract_problems(r: Retraction) -> list[str]:
    """Every way in which ``r`` fails to be an HM-valued retraction."""
    problems = []
    amb = set(r.ambient)
    sub = set(r.subspace)
    if not sub <= amb:
        problems.append(f"subspace points outside ambient: {plain(sub - amb)}")
    for y in r.ambient:
        if y not in r.table:
            problems.append(f"r undefined at {y}")
            continue
        f = r.table[y]
        if not isinstance(f, StepFn):
            problems.append(f"r({y}) is not a step function")
            continue
        stray = [v for v in f.values if v not in sub]
        if stray:
            problems.append(f"r({y}) takes value {stray[0]} outside the subspace")
    for x in r.subspace:
        if x in r.table and r.table[x] != hm_embed(x):
            problems.append(f"r({x}) = {r.table[x]} is not the constant at {x}")
    extra = set(r.table) - amb
    if extra:
        problems.append(f"r defined outside the ambient set: {plain(extra)}")
    return problems


def verify_retract(r: Retraction) -> bool:
    return not retract_problems(r)


def build_retraction_uniform(X: Sequence, Y: Sequence) -> Retraction:
    """Points of ``X`` go to constants; every other point of ``Y`` to the
    step function splitting [0, 1) into ``|X|`` equal pieces, one per point
    of ``X`` in the given order."""
    X, Y = tuple(X), tuple(Y)
    if not X:
        raise RetractionError("subspace must be nonempty")
    if set(X) - set(Y):
        raise RetractionError("subspace is not contained in the ambient set")
    k = len(X)
    spread = StepFn(tuple(Fraction(i, k) for i in range(k + 1)), X)
    return Retraction(Y, X, {y: hm_embed(y) if y in set(X) else spread for y in Y})


def validate_metric(points: Sequence, d: Mapping) -> None:
    """``d[(p, q)]`` must be an exact rational metric on ``points``."""
    for p in points:
        for q in points:
            if (p, q) not in d:
                raise MetricError(f"distance d({p}, {q}) missing")
            v = d[(p, q)]
            if not isinstance(v, (int, Fraction)) or isinstance(v, bool):
                raise MetricError(f"d({p}, {q}) = {v!r} is not an exact rational")
            if p == q and v != 0:
                raise MetricError(f"d({p}, {p}) = {v} is not zero")
            if p != q and v <= 0:
                raise MetricError(f"d({p}, {q}) = {v} must be positive")
            if d[(q, p)] != v:
                raise MetricError(f"d({p}, {q}) != d({q}, {p})")
    for p in points:
        for q in points:
            for s in points:
                if d[(p, s)] > d[(p, q)] + d[(q, s)]:
                    raise MetricError(f"triangle inequality fails at {p}, {q}, {s}")


def build_retraction_metric(Y: Sequence, d: Mapping, X: Sequence) -> Retraction:
    """Send ``y ∉ X`` to a step function over its nearest points in ``X``.

    Pieces follow ``X`` order; lengths are the normalized inverse distances
    of the nearest tier.  All tier members are equidistant, so this is an
    equal split, but the weights are computed as written so that a wider
    tier rule can be swapped in.
    """
    X, Y = tuple(X), tuple(Y)
    if not X:
        raise RetractionError("subspace must be nonempty")
    if set(X) - set(Y):
        raise RetractionError("subspace is not contained in the ambient set")
    d = {k: Fraction(v) if isinstance(v, int) and not isinstance(v, bool) else v for k, v in d.items()}
    validate_metric(Y, d)
    in_x = set(X)
    table = {}
    for y in Y:
        if y in in_x:
            table[y] = hm_embed(y)
            continue
        near = min(d[(y, x)] for x in X)
        tier = [x for x in X if d[(y, x)] == near]
        weights = [1 / d[(y, x)] for x in tier]
        total = sum(weights)
        breaks = [Fraction(0)]
        for w in weights[:-1]:
            breaks.append(breaks[-1] + w / total)
        breaks.append(Fraction(1))
        table[y] = StepFn(tuple(breaks), tuple(tier))
    return Retraction(Y, X, table)


# set-level cancellation ----------------------------------------------------

def _fn(f) -> Callable:
    return f.__getitem__ if isinstance(f, Mapping) else f


def is_injective(f: Mapping) -> bool:
    return len(set(f.values())) == len(f)


@dataclass(frozen=True)
class Lemma1Outcome:
    f_injective: bool
    composite_injective: bool

    @property
    def vacuous(self) -> bool:
        return not self.composite_injective

    @property
    def holds(self) -> bool:
        return self.f_injective or not self.composite_injective


class LemmaViolation(AssertionError):
    pass


def lemma1_check(f: Mapping, g: Mapping) -> Lemma1Outcome:
    """Injectivity of ``f`` and of ``g . f``; raises if the implication breaks."""
    missing = [v for v in f.values() if v not in g]
    if missing:
        raise ValueError(f"not composable: g undefined at {missing[0]!r}")
    gf = {x: g[f[x]] for x in f}
    out = Lemma1Outcome(is_injective(f), is_injective(gf))
    if not out.holds:
        raise LemmaViolation("g.f is injective but f is not")
    return out


def lemma1_injectivity(f: Mapping, g: Mapping) -> bool:
    """Whether ``f`` is injective, after checking that injective ``g . f``
    forces it."""
    return lemma1_check(f, g).f_injective


# the pipeline --------------------------------------------------------------

@dataclass
class PipelineReport:
    terms_checked: int = 0
    retract: list = field(default_factory=list)
    square_v: Report = field(default_factory=lambda: Report("F(hm_X) = F(r).F(e)"))
    main: Report = field(default_factory=lambda: Report("hm_F(X) = h.F(r).F(e)"))
    well_defined: Report = field(default_factory=lambda: Report("h.F(r) constant on F(Y) classes"))
    domain_classes: int = 0
    image_classes: int = 0
    injective: bool | None = None
    lemma_vacuous: bool | None = None

    @property
    def ok(self) -> bool:
        return (
            not self.retract
            and self.square_v.ok
            and self.main.ok
            and self.well_defined.ok
            and bool(self.injective)
        )

    def to_json(self) -> dict:
        return {
            "terms_checked": self.terms_checked,
            "retract": {"status": "fail" if self.retract else "pass", "problems": self.retract},
            "identities": {
                "square_v": "pass" if self.square_v.ok else "fail",
                "main": "pass" if self.main.ok else "fail",
                "well_defined": "pass" if self.well_defined.ok else "fail",
            },
            "checks": [self.square_v.to_json(), self.main.to_json(), self.well_defined.to_json()],
            "injectivity": {
                "domain_classes": self.domain_classes,
                "image_classes": self.image_classes,
                "injective": self.injective,
                "lemma_vacuous": self.lemma_vacuous,
            },
            "status": "pass" if self.ok else "fail",
        }

    def summary(self) -> str:
        lines = [
            f"{'PASS' if self.ok else 'FAIL'} embedding pipeline: {self.terms_checked} terms",
            f"  retract: {'ok' if not self.retract else '; '.join(self.retract)}",
            "  " + self.square_v.summary(),
            "  " + self.main.summary(),
            "  " + self.well_defined.summary(),
            f"  injectivity: {self.domain_classes} classes over X -> "
            f"{self.image_classes} classes over Y, injective={self.injective}",
        ]
        return "\n".join(lines)


def theorem2_pipeline(
    sig: Signature,
    X: Sequence,
    Y: Sequence,
    r: Retraction,
    system: RewriteSystem | None = None,
    depth: int = 2,
) -> PipelineReport:
    """Check ``hm_F(X) = h . F(r) . F(e)`` on every term over ``X`` to ``depth``.

    A failed retraction check is recorded (not raised) and the identities are
    still evaluated, so a broken ``r`` also shows up as concrete witnesses.
    """
    X, Y = tuple(X), tuple(Y)
    rep = PipelineReport()
    rep.retract = retract_problems(r)
    if set(X) - set(Y):
        rep.retract.append("X is not contained in Y")
    if tuple(r.subspace) != X and set(r.subspace) != set(X):
        rep.retract.append("retraction is for a different subspace")

    def nf(t):
        return t if system is None else normalize(t, system)

    h = build_h(sig, X, system)
    F_e = induced_map({x: x for x in X})
    F_r = induced_map(lambda y: r.table.get(y))
    F_hm = induced_map(hm_embed)
    hF_r = {}
    dom_to_img = {}
    for t in enumerate_terms(sig, X, depth):
        rep.terms_checked += 1
        te = F_e(t)                                    # (i)
        tr = F_r(te)                                   # (ii)
        rep.square_v.compare(t, F_hm(t), tr)           # (v)
        try:
            lhs = h(tr)                                # (iii)
        except (ValueError, TypeError) as exc:
            rep.main.fail(t, f"h undefined: {exc}", hm_embed(nf(t)))
            continue
        rep.main.compare(t, lhs, hm_embed(nf(t)))      # (iv)
        # (vi) classes in F(X) and F(Y), and g = h.F(r) on F(Y) classes
        dom, img = nf(t), nf(te)
        prev = dom_to_img.setdefault(dom, img)
        if prev != img:
            rep.well_defined.fail({"class": dom}, prev, img)
        if img in hF_r:
            rep.well_defined.compare({"class": img, "term": t}, hF_r[img], lhs)
        else:
            hF_r[img] = lhs
            rep.well_defined.passed_case()
    rep.domain_classes = len(dom_to_img)
    rep.image_classes = len(set(dom_to_img.values()))
    try:
        outcome = lemma1_check(dom_to_img, hF_r)
    except (ValueError, LemmaViolation):
        rep.injective = False
        return rep
    rep.lemma_vacuous = outcome.vacuous
    # the conclusion is only earned when g.f is injective
    rep.injective = outcome.f_injective and not outcome.vacuous
    return rep
