"""Piecewise-constant functions on [0, 1) with exact rational breakpoints.

These are the points of the Hartman-Mycielski space HM(X).  A step function
holds ``values[i]`` on the half-open piece ``[breaks[i], breaks[i+1])``.
Construction always normalizes (adjacent equal values are merged), so two
step functions are equal as functions iff they compare equal.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Collection, Hashable, Iterable, Mapping, Sequence


class StepFnError(ValueError):
    pass


class NeighborhoodError(ValueError):
    """The base point does not qualify for the requested subbasic set."""


def rational(x) -> Fraction:
    """Exact rational from an int, Fraction or ``"p/q"`` string.  Floats are refused."""
    if type(x) is Fraction:
        return x
    if isinstance(x, bool):
        raise StepFnError(f"not a rational: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise StepFnError(f"not a rational: {x!r}") from None
    raise StepFnError(f"breakpoints must be exact rationals, got {type(x).__name__} {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True, eq=False)
class StepFn:
    breaks: tuple
    values: tuple

    def __post_init__(self) -> None:
        breaks = tuple(rational(b) for b in self.breaks)
        values = tuple(self.values)
        if len(breaks) != len(values) + 1:
            raise StepFnError(
                f"{len(values)} values need {len(values) + 1} breakpoints, got {len(breaks)}"
            )
        if breaks[0] != 0 or breaks[-1] != 1:
            raise StepFnError(f"breakpoints must run from 0 to 1, got {breaks[0]}..{breaks[-1]}")
        for a, b in zip(breaks, breaks[1:]):
            if not a < b:
                raise StepFnError(f"breakpoints not strictly increasing at {a}, {b}")
        keep_b = [breaks[0]]
        keep_v = [values[0]]
        for b, v in zip(breaks[1:-1], values[1:]):
            if v != keep_v[-1]:
                keep_b.append(b)
                keep_v.append(v)
        keep_b.append(breaks[-1])
        object.__setattr__(self, "breaks", tuple(keep_b))
        object.__setattr__(self, "values", tuple(keep_v))
        object.__setattr__(self, "_hash", hash((self.breaks, self.values)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, StepFn):
            return NotImplemented
        return self._hash == other._hash and self.breaks == other.breaks and self.values == other.values

    @classmethod
    def constant(cls, x: Hashable) -> StepFn:
        return cls((0, 1), (x,))

    @property
    def pieces(self) -> list[tuple[Fraction, Fraction, Hashable]]:
        return [(a, b, v) for a, b, v in zip(self.breaks, self.breaks[1:], self.values)]

    def is_constant(self) -> bool:
        return len(self.values) == 1

    def __call__(self, t) -> Hashable:
        return value_at(self, t)

    def __str__(self) -> str:
        return "; ".join(f"[{a},{b})->{v}" for a, b, v in self.pieces)

    def __repr__(self) -> str:
        return f"StepFn({self})"


def stepfn_new(breaks: Sequence, vals: Sequence) -> StepFn:
    return StepFn(tuple(breaks), tuple(vals))


def value_at(f: StepFn, t) -> Hashable:
    t = rational(t)
    if not 0 <= t < 1:
        raise StepFnError(f"t = {t} is outside [0, 1)")
    return f.values[bisect.bisect_right(f.breaks, t) - 1]


def pointwise_map(p: Callable | Mapping, f: StepFn) -> StepFn:
    """HM(p): compose ``p`` after ``f`` piece by piece."""
    if not callable(p) and isinstance(p, Mapping):
        table = p

        def p(v):
            try:
                return table[v]
            except KeyError:
                raise StepFnError(f"map undefined on value {v!r}") from None

    return StepFn(f.breaks, tuple(p(v) for v in f.values))


def zip_many(fs: Sequence[StepFn]) -> StepFn:
    """Common refinement; the value on each piece is the tuple of inputs."""
    fs = list(fs)
    if not fs:
        raise StepFnError("zip_many needs at least one step function")
    breaks = refine(fs)
    idx = [0] * len(fs)
    values = []
    for a in breaks[:-1]:
        for i, f in enumerate(fs):
            while f.breaks[idx[i] + 1] <= a:
                idx[i] += 1
        values.append(tuple(f.values[i] for f, i in zip(fs, idx)))
    return StepFn(tuple(breaks), tuple(values))


def _interval(a, b) -> tuple[Fraction, Fraction]:
    a, b = rational(a), rational(b)
    if not 0 <= a < b <= 1:
        raise StepFnError(f"need 0 <= a < b <= 1, got a={a}, b={b}")
    return a, b


def measure_where(f: StepFn, a, b, V: Collection) -> Fraction:
    """Exact Lebesgue measure of ``{t in [a, b) : f(t) not in V}``."""
    a, b = _interval(a, b)
    total = Fraction(0)
    for lo, hi, v in f.pieces:
        if v in V:
            continue
        overlap = min(hi, b) - max(lo, a)
        if overlap > 0:
            total += overlap
    return total


def is_constant_on(f: StepFn, a, b) -> bool:
    a, b = _interval(a, b)
    return not any(a < x < b for x in f.breaks)


def in_neighborhood(g: StepFn, a, b, V: Collection, eps, base: StepFn) -> bool:
    """Membership of ``g`` in the subbasic set N(a, b, V, eps) around ``base``.

    ``base`` must be constant on ``[a, b)`` with its value in ``V``;
    otherwise :class:`NeighborhoodError` is raised.  The inequality is strict.
    """
    a, b = _interval(a, b)
    eps = rational(eps)
    if eps <= 0:
        raise NeighborhoodError(f"eps must be positive, got {eps}")
    if not is_constant_on(base, a, b):
        raise NeighborhoodError(f"base is not constant on [{a},{b}): {base}")
    if value_at(base, a) not in V:
        raise NeighborhoodError(f"base value {value_at(base, a)!r} on [{a},{b}) is not in V")
    return measure_where(g, a, b, V) < eps


# text and JSON forms --------------------------------------------------------

_PIECE = re.compile(r"^\s*\[\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*->\s*(.+?)\s*$")


def parse_stepfn(text: str, value: Callable[[str], Hashable] = str) -> StepFn:
    """Parse ``[0,1/2)->x; [1/2,1)->y``.  Pieces must tile [0, 1) in order."""
    breaks = []
    vals = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        m = _PIECE.match(chunk)
        if not m:
            raise StepFnError(f"bad piece {chunk.strip()!r}; expected '[a,b)->value'")
        lo, hi = rational(m.group(1)), rational(m.group(2))
        if breaks and breaks[-1] != lo:
            raise StepFnError(f"piece starting at {lo} does not continue from {breaks[-1]}")
        if not breaks:
            breaks.append(lo)
        breaks.append(hi)
        vals.append(value(m.group(3)))
    if not vals:
        raise StepFnError("empty step function")
    return StepFn(tuple(breaks), tuple(vals))


def stepfn_to_json(f: StepFn, value: Callable = lambda v: v) -> dict:
    return {"pieces": [[format_rational(a), value(v)] for a, v in zip(f.breaks, f.values)]}


def stepfn_from_json(obj, value: Callable = lambda v: v) -> StepFn:
    """Inverse of :func:`stepfn_to_json`: ``{"pieces": [["0", x], ["1/2", y]]}``.

    Each pair is a piece start and its value; the last piece runs to 1.
    """
    if isinstance(obj, str):
        return parse_stepfn(obj, value)
    try:
        pieces = obj["pieces"]
        starts = [rational(s) for s, _ in pieces]
        vals = [value(v) for _, v in pieces]
    except (KeyError, TypeError, ValueError) as exc:
        raise StepFnError(f"bad step function object {obj!r}: {exc}") from None
    return StepFn(tuple(starts) + (Fraction(1),), tuple(vals))


def refine(fs: Iterable[StepFn]) -> list[Fraction]:
    """Sorted union of breakpoints."""
    return sorted(set().union(*(f.breaks for f in fs)))
