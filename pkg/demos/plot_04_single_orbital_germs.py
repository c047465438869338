"""
One orbital, tied endpoint germs
================================

f0 = x1^2 x2^-1 x1^-1 and f1 = x1 x2^2 x3^-1 x2^-1 x1^-1 generate a standard
copy of F inside (1/2, 3/4).  Together with x0 they have support (0, 1),
but the germs at 0 and 1 of every element are governed by the same
exponent sum of x0.
"""

from plthompson.counterexample import format_demo, run_demo

print(format_demo(run_demo(n_words=1000, seed=0)))
