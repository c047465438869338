"""
The generators of F as exact breakpoint maps
============================================

Build x0 and x1, look at their orbitals, and check both relations of the
two-generator presentation as equalities of normalized maps.
"""

from fractions import Fraction as F

from plthompson import X0, X1, commutator, compose, conjugate, generator, invert, orbitals_of, power

# every map is stored as its breakpoint list, with exact rationals
print("x0:", [(str(x), str(y)) for x, y in X0.points])
print("x1:", [(str(x), str(y)) for x, y in X1.points])

# composition is in word order: x0 x1 applies x0 first
print("x0 x1 at 1/2 =", compose(X0, X1)(F(1, 2)))

# x1 moves points only in (1/2, 1), pushing them right
print("orbitals of x1:", orbitals_of(X1))

# the infinite presentation: conjugating x_j by x_i shifts the index
for i, j in [(0, 1), (0, 2), (1, 3)]:
    print(f"x{j}^x{i} == x{j + 1}:", conjugate(generator(j), generator(i)) == generator(j + 1))

# the two relators of the finite presentation vanish
a = compose(X0, invert(X1))
print("[x0 x1^-1, x1^x0]   is identity:", commutator(a, conjugate(X1, X0)).is_identity())
print("[x0 x1^-1, x1^x0^2] is identity:", commutator(a, conjugate(X1, power(X0, 2))).is_identity())
