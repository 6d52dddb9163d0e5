"""
Free algebras and their universal property
==========================================

A signature lists operation symbols by arity.  Terms over a set of
generators form the free algebra F(X); any assignment of the generators
into a finite algebra K extends to exactly one homomorphism F(X) -> K.
"""

from hmfree import (
    Algebra,
    RewriteSystem,
    enumerate_terms,
    free_extension,
    induced_map,
    is_homomorphism,
    normalize,
    parse_rule,
    parse_term,
    satisfies_identity,
    validate_signature,
)
from hmfree.terms import format_term

sig = validate_signature({2: ["m"], 0: ["u"]})

# Z5 under addition, with 0 as the unit
Z5 = Algebra.from_functions(sig, range(5), {(2, "m"): lambda a, b: (a + b) % 5, (0, "u"): lambda: 0})
print(Z5)

# Send x to 1 and y to 1.  The extension evaluates any term.
h = free_extension({"x": 1, "y": 1}, Z5)
t = parse_term("m(x, m(y, y))")
print(format_term(t), "->", h(t))

# Doubling mod 5 is an endomorphism; tripling plus one is not.
print("double is a homomorphism:", is_homomorphism(lambda a: 2 * a % 5, Z5, Z5))
print("3a+1 is a homomorphism:  ", is_homomorphism(lambda a: (3 * a + 1) % 5, Z5, Z5))

# Terms up to depth 1 over {x}: two leaves, then every m(.,.) over them.
for s in enumerate_terms(sig, ["x"], 1):
    print("  ", format_term(s))

# F(f) renames generators and keeps the shape of a term.
rename = induced_map({"x": "y", "y": "y"})
print(format_term(rename(t)))

# Monoid laws as oriented rules.  Normal forms are right-nested words.
monoid = RewriteSystem(
    sig,
    [
        "vars: a; m(u(), a) -> a",
        "vars: a; m(a, u()) -> a",
        "vars: a,b,c; m(m(a, b), c) -> m(a, m(b, c))",
    ],
)
print(format_term(normalize(parse_term("m(m(x, u()), m(y, x))"), monoid)))

# Z5 satisfies associativity; a left-zero magma does not satisfy the unit law.
print(satisfies_identity(Z5, parse_rule("vars: a,b,c; m(m(a, b), c) -> m(a, m(b, c))")))
left_zero = Algebra.from_functions(sig, range(2), {(2, "m"): lambda a, b: a, (0, "u"): lambda: 0})
print(satisfies_identity(left_zero, parse_rule("vars: a; m(u(), a) -> a")))
