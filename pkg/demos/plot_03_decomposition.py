"""
Taking a standard pair apart
============================

Generate a standard pair by a chain of perturbations, recover a nice pair
plus the steps that rebuild it, and replay the steps.
"""

from plthompson import decompose, replay
from plthompson.corpus import random_pair

cp = random_pair(1, mode="perturb-chain")
print("f0 breakpoints:", len(cp.f0.points), " f1 breakpoints:", len(cp.f1.points))

trace = decompose(cp.f0, cp.f1)
for ot in trace.orbitals:
    print(f"orbital {ot.orbital}: p = {ot.p}, alpha = {ot.alpha}, |S| = {len(ot.working_set)}")
for st in trace.steps:
    print(f"  step on orbital {st.orbital}: {st.case.value}, t = {st.t}, k = {st.k}")

# replaying from the recovered nice pair gives back the input exactly
print("round trip exact:", replay(cp.f0, trace.nice_f1, trace.steps) == cp.f1)
