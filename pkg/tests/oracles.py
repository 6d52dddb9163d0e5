"""Independent oracles.

Nothing here imports the rewriting engine, the evaluator or the step
function code paths under test; each oracle recomputes its answer from
first principles (word semantics, brute-force grids, plain recursion).
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import lcm

from hmfree.terms import Gen, Op


def word_of(t):
    """Monoid semantics: m is concatenation, u the empty word."""
    if isinstance(t, Gen):
        return (t.name,)
    if t.label == "u":
        return ()
    return word_of(t.children[0]) + word_of(t.children[1])


def multiset_of(t):
    return tuple(sorted(Counter(word_of(t)).items()))


def words_up_to(alphabet, max_len):
    """Every word of length <= max_len, by plain itertools enumeration."""
    out = []
    for k in range(max_len + 1):
        out.extend(itertools.product(alphabet, repeat=k))
    return out


def multisets_up_to(alphabet, max_size):
    out = []
    for k in range(max_size + 1):
        out.extend(itertools.combinations_with_replacement(alphabet, k))
    return out


def free_term_count(n_gens, n_nullary, binary_labels, depth):
    """Number of terms of node depth <= depth over binary and nullary ops."""
    total = n_gens + n_nullary
    for _ in range(depth):
        total = n_gens + n_nullary + binary_labels * total * total
    return total


def naive_eval(t, table, f):
    """Plain recursion, no memo; ``table[(n, c)]`` is a Python function."""
    if isinstance(t, Gen):
        return f[t.name]
    args = [naive_eval(s, table, f) for s in t.children]
    return table[(len(args), t.label)](*args)


def sample_value(breaks, values, t):
    """Value at t by linear scan over half-open pieces."""
    for i in range(len(values)):
        if breaks[i] <= t < breaks[i + 1]:
            return values[i]
    raise ValueError(t)


def grid_measure(breaks, values, a, b, V):
    """Measure of {t in [a, b): f(t) not in V} on a grid fine enough to be exact."""
    a, b = Fraction(a), Fraction(b)
    den = lcm(*(Fraction(x).denominator for x in breaks), a.denominator, b.denominator)
    cell = Fraction(1, den)
    total = Fraction(0)
    k = 0
    while k * cell < 1:
        lo = k * cell
        if a <= lo and lo + cell <= b and sample_value(breaks, values, lo + cell / 2) not in V:
            total += cell
        k += 1
    return total


def injective(table):
    return len(set(table.values())) == len(table)


def is_topology(points, family):
    full = frozenset(points)
    fam = set(family)
    if frozenset() not in fam or full not in fam:
        return False
    return all(u | v in fam and u & v in fam for u in fam for v in fam)


def all_functions(dom, cod):
    for images in itertools.product(cod, repeat=len(dom)):
        yield dict(zip(dom, images))


def monoid_term(word):
    """A right-nested term spelling ``word``; used to pick concrete examples."""
    if not word:
        return Op("u")
    t = Gen(word[-1])
    for x in reversed(word[:-1]):
        t = Op("m", (Gen(x), t))
    return t
