"""Exact piecewise-linear homeomorphisms of [0, 1] and standard copies of
Thompson's group F inside them."""

from .plmap import (
    IDENTITY, Interval, PLMap, PLMapError, commutator, compose, conjugate, evaluate,
    flip, invert, make_plmap, power,
)
from .orbitals import Orbital, Sign, orbitals_of, subgroup_support
from .words import X0, X1, eval_word, generator, is_in_F, is_in_F_prime, parse_word
from .classify import Decision, analyze_orbital, decide_oracle, decide_structural
from .construct import (
    NicePairSpec, OrbitalChoice, PerturbationStep, build_nice_pair, common_root, decompose,
    perturb, replay,
)

__version__ = "0.1.0"
