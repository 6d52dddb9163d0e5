"""
Step functions on [0, 1)
========================

HM(A) is the set of step functions from [0, 1) to A with finitely many
pieces.  Breakpoints are exact rationals, so measures and neighbourhood
tests never round.
"""

from fractions import Fraction

from hmfree import (
    Algebra,
    HMAlgebra,
    StepFn,
    hm_embed,
    in_neighborhood,
    lift_op,
    measure_where,
    pointwise_map,
    stepfn_new,
    validate_signature,
    value_at,
)

f = stepfn_new([0, Fraction(1, 4), 1], ["p", "q"])
g = stepfn_new([0, Fraction(1, 2), 1], ["p", "q"])
print(f)
print(g)

# Adjacent equal pieces merge, so equal functions have equal representations.
print(stepfn_new([0, Fraction(1, 3), 1], ["p", "p"]) == StepFn.constant("p"))

# Pieces are half-open: the breakpoint belongs to the right-hand piece.
print(value_at(g, Fraction(1, 2)), value_at(g, Fraction(499, 1000)))

# measure_where counts the set where f leaves V
print("f leaves {p} on a set of measure", measure_where(f, 0, 1, {"p"}))

# A basic neighbourhood of the constant p: functions that leave {p} on a set
# of measure strictly below eps.  The boundary case is excluded.
base = StepFn.constant("p")
print(in_neighborhood(g, 0, 1, {"p"}, Fraction(3, 5), base))
print(in_neighborhood(g, 0, 1, {"p"}, Fraction(1, 2), base))

# Operations lift pointwise.
sig = validate_signature({2: ["m"], 0: ["u"]})
Z5 = Algebra.from_functions(sig, range(5), {(2, "m"): lambda a, b: (a + b) % 5, (0, "u"): lambda: 0})
a = stepfn_new([0, Fraction(1, 2), 1], [1, 4])
b = stepfn_new([0, Fraction(1, 3), 1], [3, 1])
print(lift_op(Z5, 2, "m", [a, b]))

# The constant embedding A -> HM(A) is a homomorphism.
HZ5 = HMAlgebra(Z5)
print(HZ5.apply(2, "m", [hm_embed(2), hm_embed(4)]) == hm_embed(1))

# HM is a functor: a map on values acts piece by piece.
print(pointwise_map(lambda v: 2 * v % 5, a))
