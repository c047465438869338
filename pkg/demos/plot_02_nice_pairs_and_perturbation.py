"""
Building a nice pair and perturbing it
======================================

Start from f0 = x0, pick a point p in its orbital, and bridge f1 from the
identity up to f0.  Then push a small bump through a perturbation step and
watch the pair stay standard.
"""

from fractions import Fraction as F

from plthompson import (
    X0, NicePairSpec, OrbitalChoice, PerturbationStep, analyze_orbital, build_nice_pair,
    decide_oracle, decide_structural, make_plmap, orbitals_of, perturb,
)

# f1 is the identity below p f0^-1 = 3/4 and below 13/16, and equals f0 above p = 7/8
filler = make_plmap([(0, 0), (F(3, 4), F(3, 4)), (F(13, 16), F(13, 16)), (F(7, 8), F(15, 16)), (1, 1)])
f0, f1 = build_nice_pair(NicePairSpec(X0, [OrbitalChoice(0, F(7, 8), filler)]))
print("f1:", [(str(x), str(y)) for x, y in f1.points])

an = analyze_orbital(f0, f1, orbitals_of(f0)[0])
print("p =", an.p_or_rho, " r =", an.r, " nice:", an.nice, " conditions:", an.conditions)

# a bump on (3/4, 13/16), where f1 is still the identity
h = make_plmap([(0, 0), (F(3, 4), F(3, 4)), (F(49, 64), F(25, 32)), (F(13, 16), F(13, 16)), (1, 1)])
for t, k in [(1, 0), (0, 1), (2, -1)]:
    g1 = perturb(f0, f1, PerturbationStep(0, h, t, k))
    v = decide_structural(f0, g1)
    print(f"t={t:+d} k={k:+d}: structural {v.decision.value}, oracle {decide_oracle(f0, g1)}")
