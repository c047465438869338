from fractions import Fraction as F

import pytest

from plthompson.classify import (
    Category, Decision, End, PreconditionError, analyze_orbital, analyzable_orbitals,
    containment_check, decide_oracle, decide_structural, nesting_check,
    shared_orbital_commute_check, ubiquity_witness,
)
from plthompson.orbitals import Orbital, Sign, orbitals_of
from plthompson.plmap import (
    IDENTITY, Interval, coincidence_set, commutator, compose, flip, invert,
    make_plmap, power, splice,
)
from plthompson.words import X0, X1, check_standard_relations, eval_word

from conftest import corpus_pairs

UP = Sign.UP
FULL = Orbital(F(0), F(1), UP)


def bump(lo, hi, up=True):
    """Single bump on (lo, hi): the midpoint moves halfway to the far end."""
    lo, hi = F(lo), F(hi)
    mid = (lo + hi) / 2
    y = (mid + hi) / 2 if up else (lo + mid) / 2
    return make_plmap([(0, 0), (lo, lo), (mid, y), (hi, hi), (1, 1)] if lo > 0 else
                      [(0, 0), (mid, y), (hi, hi), (1, 1)] if hi < 1 else [(0, 0), (mid, y), (1, 1)])


class TestNesting:
    def test_x0_x1(self):
        assert nesting_check(X0, X1)

    def test_straddle(self):
        c = nesting_check(bump(0, F(1, 2)), bump(F(1, 4), F(3, 4)))
        assert not c
        a, b = c.witness
        assert (a.lo, a.hi, b.lo, b.hi) == (0, F(1, 2), F(1, 4), F(3, 4))

    def test_identity(self):
        assert nesting_check(X0, IDENTITY)

    def test_f0_orbital_inside_f1_orbital(self):
        # nested the wrong way round
        c = containment_check(bump(F(1, 4), F(1, 2)), X0)
        assert not c


class TestSharedOrbital:
    def test_equal_maps(self):
        assert shared_orbital_commute_check(X0, X0)

    def test_powers(self):
        assert shared_orbital_commute_check(X0, power(X0, 2))

    def test_nudged_square(self):
        sq = power(X0, 2)
        i = 2
        pts = list(sq.points)
        x, y = pts[i]
        pts[i] = (x, (y + pts[i + 1][1]) / 2)
        g = make_plmap(pts)
        assert orbitals_of(g) == [FULL]
        assert commutator(X0, g) != IDENTITY  # oracle
        assert not shared_orbital_commute_check(X0, g)


class TestAnalyzeOrbital:
    def test_standard_generators(self):
        an = analyze_orbital(X0, X1, FULL)
        assert an.p_or_rho == F(3, 4) and an.r == F(3, 4)
        assert all(an.conditions.values())
        assert an.f1_orbitals == [Orbital(F(1, 2), F(1), UP)]
        assert an.categories == [Category.MAIN]
        # b1 f0 = x0(1/2) = 3/4 >= p = 3/4
        assert X0(F(1, 2)) >= an.p_or_rho and an.nice

    def test_first_orbital_touching_left_end(self):
        g = splice(X1, [(0, F(1, 4), bump(0, F(1, 4)))])
        an = analyze_orbital(X0, g, FULL)
        assert an.f1_orbitals[0].lo == 0
        assert not an.conditions["i"]

    def test_no_f1_orbitals(self):
        with pytest.raises(PreconditionError):
            analyze_orbital(X0, IDENTITY, FULL)

    def test_not_an_orbital(self):
        with pytest.raises(PreconditionError):
            analyze_orbital(X0, X1, Orbital(F(0), F(1, 2), UP))

    def test_down_bump_mirrors_up_bump(self):
        f0, f1 = flip(X0), flip(X1)
        (orb,) = orbitals_of(f0)
        assert orb.sign is Sign.DOWN
        an = analyze_orbital(f0, f1, orb)
        # rho is the mirror image of p = 3/4
        assert an.p_or_rho == F(1, 4) and an.r == F(1, 4)
        assert all(an.conditions.values()) and an.nice
        assert an.categories == [Category.MAIN]

    def test_demo_pair(self):
        f0, f1 = eval_word("x1^2 x2^-1 x1^-1"), eval_word("x1 x2^2 x3^-1 x2^-1 x1^-1")
        (orb,) = orbitals_of(f0)
        an = analyze_orbital(f0, f1, orb)
        assert (orb.lo, orb.hi) == (F(1, 2), F(3, 4))
        assert an.p_or_rho == an.r == F(11, 16)
        assert all(an.conditions.values())


class TestDecideStructural:
    def test_standard_generators(self):
        assert decide_structural(X0, X1).decision is Decision.STANDARD

    def test_commuting(self):
        v = decide_structural(X0, power(X0, 2))
        assert v.decision is Decision.NOT_STANDARD and v.reason.rule == "commuting"

    def test_first_orbital_at_zero(self):
        g = splice(X1, [(0, F(1, 2), bump(0, F(1, 2)))])
        assert orbitals_of(g)[0] == Orbital(F(0), F(1, 2), UP)
        assert not check_standard_relations(X0, g).rel1  # oracle
        v = decide_structural(X0, g)
        assert v.decision is Decision.NOT_STANDARD
        assert v.reason.rule == "condition-i"

    def test_straddling_pair(self):
        v = decide_structural(bump(0, F(1, 2)), bump(F(1, 4), F(3, 4)))
        assert v.decision is Decision.NOT_STANDARD and v.reason.rule == "nests"

    def test_mirrored_pair(self):
        assert decide_structural(flip(X0), flip(X1)).decision is Decision.STANDARD

    def test_inverse_generators(self):
        # (x0^-1, x1^-1) generates F but not via x0 -> f0, x1 -> f1 as a standard pair
        assert decide_structural(invert(X0), invert(X1)).standard == \
            decide_oracle(invert(X0), invert(X1))


class TestOracle:
    def test_standard(self):
        assert decide_oracle(X0, X1)

    def test_equal(self):
        assert not decide_oracle(X0, X0)

    def test_perturbed(self):
        h = make_plmap([(0, 0), (F(1, 2), F(1, 2)), (F(17, 32), F(35, 64)), (F(9, 16), F(9, 16)), (1, 1)])
        assert decide_oracle(X0, compose(h, X1))


class TestUbiquityWitness:
    def test_standard_generators(self):
        w = ubiquity_witness(X0, X1)
        assert w.W == Interval(F(0), F(1)) and w.label == "f1" and w.end is End.NEAR_HI

    def test_demo_pair(self):
        f0, f1 = eval_word("x1^2 x2^-1 x1^-1"), eval_word("x1 x2^2 x3^-1 x2^-1 x1^-1")
        w = ubiquity_witness(f0, f1)
        assert w.W == Interval(F(1, 2), F(3, 4))
        assert w.label in ("f0", "f1", "f0 f1^-1", "f1^f0")

    def test_commuting_pair(self):
        with pytest.raises(PreconditionError):
            ubiquity_witness(X0, power(X0, 3))


# -- corpus invariants ----------------------------------------------------------

def _up_view(f0, f1, orb):
    if orb.sign is UP:
        return f0, f1, orb
    return flip(f0), flip(f1), orb.flipped()


def test_soundness_against_oracle():
    for cp in corpus_pairs():
        v = decide_structural(cp.f0, cp.f1)
        if v.decision is not Decision.INDETERMINATE:
            assert v.standard == decide_oracle(cp.f0, cp.f1), cp.seed


def test_constructed_pairs_are_oracle_standard():
    for cp in corpus_pairs():
        assert cp.expected == decide_oracle(cp.f0, cp.f1), cp.seed


def test_necessity_of_conditions():
    for cp in corpus_pairs():
        if cp.expected:
            for orb in analyzable_orbitals(cp.f0, cp.f1):
                assert analyze_orbital(cp.f0, cp.f1, orb).passes, cp.seed


def test_rel2_holds_whenever_conditions_hold():
    seen_rel1_failure = False
    for cp in corpus_pairs():
        v = decide_structural(cp.f0, cp.f1)
        if v.reason.rule in ("commuting", "nests", "nested", "eqcommute") or \
                any(not a.passes for a in v.analyses):
            continue
        r = check_standard_relations(cp.f0, cp.f1)
        assert r.rel2, cp.seed
        seen_rel1_failure |= not r.rel1
    assert seen_rel1_failure  # the corpus reaches pairs where only rel1 fails


def test_coincidences_sit_between_last_orbital_and_p():
    for cp in corpus_pairs():
        if not cp.expected:
            continue
        for orb in analyzable_orbitals(cp.f0, cp.f1):
            g0, g1, o = _up_view(cp.f0, cp.f1, orb)
            an = analyze_orbital(g0, g1, o)
            bn, p = an.f1_orbitals[-1].lo, an.p_or_rho
            for c in coincidence_set(g0, g1):
                for q in {c.lo, c.hi}:
                    if o.lo < q < p:
                        assert bn < q < p, cp.seed


def test_first_orbital_image_reaches_r():
    for cp in corpus_pairs():
        if not cp.expected:
            continue
        for orb in analyzable_orbitals(cp.f0, cp.f1):
            g0, g1, o = _up_view(cp.f0, cp.f1, orb)
            an = analyze_orbital(g0, g1, o)
            assert g0(an.f1_orbitals[0].lo) >= an.r, cp.seed


def test_nice_pairs_have_no_outside_orbitals():
    for cp in corpus_pairs():
        if cp.mode != "nice":
            continue
        v = decide_structural(cp.f0, cp.f1)
        assert v.decision is Decision.STANDARD
        assert all(a.nice and not a.outside() for a in v.analyses), cp.seed


def test_witness_exists_on_every_standard_corpus_pair():
    for cp in corpus_pairs()[:200]:
        if cp.expected:
            w = ubiquity_witness(cp.f0, cp.f1)
            assert w.W.lo < w.W.hi
