"""Decide whether a pair (f0, f1) generates a standard copy of F.

Two independent routes are provided.  :func:`decide_oracle` evaluates the
two relators of the finite presentation directly.  :func:`decide_structural`
looks only at orbital arrangements, agreement points and the Main / Inside /
Outside classification of the f1-orbitals, and needs a relator-style check
only on the Outside orbitals.

Down-bumps of f0 are analysed by reflecting both maps through ``x -> 1-x``,
which turns them into up-bumps, and mapping the results back.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .orbitals import Orbital, Sign, orbitals_of, subgroup_support
from .plmap import (
    Interval, PLMap, Side, agreement_bound, coincidence_points, commutator,
    compose, conjugate, evaluate, flip, invert, is_identity_on, moved_breakpoint,
    restrict,
)
from .words import check_standard_relations


class PreconditionError(ValueError):
    pass


class Category(enum.Enum):
    MAIN = "main"
    INSIDE = "inside"
    OUTSIDE = "outside"
    UNCATEGORIZED = "uncategorized"


class Decision(enum.Enum):
    STANDARD = "standard"
    NOT_STANDARD = "not_standard"
    INDETERMINATE = "indeterminate"


CONDITION_NAMES = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class Check:
    """Boolean outcome plus an optional witness for failures."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class OrbitalAnalysis:
    orbital: Orbital
    f1_orbitals: List[Orbital]
    p_or_rho: Optional[Fraction]
    r: Optional[Fraction]
    conditions: Dict[str, bool]
    categories: List[Category]
    nice: bool
    coincidences: list = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return all(self.conditions.values())

    def outside(self) -> List[Orbital]:
        return [b for b, c in zip(self.f1_orbitals, self.categories) if c is Category.OUTSIDE]

    def first_failed(self) -> Optional[str]:
        for name in CONDITION_NAMES:
            if not self.conditions[name]:
                return name
        return None


@dataclass
class Reason:
    rule: str
    orbital: Optional[object] = None
    witness: Optional[object] = None
    detail: str = ""


@dataclass
class Verdict:
    decision: Decision
    reason: Reason
    analyses: List[OrbitalAnalysis] = field(default_factory=list)

    @property
    def standard(self) -> bool:
        return self.decision is Decision.STANDARD


# -- orbital arrangement checks ---------------------------------------------

def nesting_check(f0: PLMap, f1: PLMap) -> Check:
    """Every meeting pair (A of f0, B of f1) is nested one way or the other."""
    for a in orbitals_of(f0):
        for b in orbitals_of(f1):
            A, B = a.interval, b.interval
            if A.meets(B) and not (A.contains_interval(B) or B.contains_interval(A)):
                return Check(False, (a, b))
    return Check(True)


def containment_check(f0: PLMap, f1: PLMap) -> Check:
    """No f0-orbital sits strictly inside an f1-orbital."""
    for a in orbitals_of(f0):
        for b in orbitals_of(f1):
            if b.interval.contains_interval(a.interval) and a.interval != b.interval:
                return Check(False, (a, b))
    return Check(True)


def common_orbitals(f0: PLMap, f1: PLMap) -> List[Interval]:
    ones = {b.interval for b in orbitals_of(f1)}
    return [a.interval for a in orbitals_of(f0) if a.interval in ones]


def shared_orbital_commute_check(f0: PLMap, f1: PLMap) -> Check:
    """f0 and f1 commute on each orbital they share."""
    c = commutator(f0, f1)
    for iv in common_orbitals(f0, f1):
        if not is_identity_on(c, iv):
            moved = next((x for x, y in c.points if iv.lo < x < iv.hi and x != y), None)
            return Check(False, (iv, moved))
    return Check(True)


def f1_orbitals_in(f1: PLMap, orb) -> List[Orbital]:
    A = Interval(orb.lo, orb.hi)
    return [b for b in orbitals_of(f1) if b.interval.meets(A)]


# -- per-orbital analysis ---------------------------------------------------

def _analyze_up(f0: PLMap, f1: PLMap, orb: Orbital) -> OrbitalAnalysis:
    a, c = orb.lo, orb.hi
    bs = f1_orbitals_in(f1, orb)
    f0_inv = invert(f0)
    b1, bn, dn = bs[0].lo, bs[-1].lo, bs[-1].hi

    p = agreement_bound(f0, f1, c, Side.FROM_RIGHT)
    if p is not None and p <= a:
        p = None
    coins = coincidence_points(f0, f1, (a, c))
    r = coins[0].lo if coins else None

    cond = {
        "i": a < b1,
        "ii": p is not None and p < c,
        "iii": dn == c,
        "iv": p is not None and evaluate(f0, bn) >= p,
        "v": evaluate(f0, b1) > bn,
    }
    nice = all(cond.values()) and evaluate(f0, b1) >= p

    cats = []
    outside_win = inside_win = None
    if p is not None and r is not None:
        pf = evaluate(f0_inv, p)
        outside_win = Interval(evaluate(f0_inv, r), pf)
        inside_win = Interval(pf, bn)
    for k, b in enumerate(bs):
        B = b.interval
        if k == len(bs) - 1 and b.hi == c:
            cats.append(Category.MAIN)
        elif outside_win is not None and outside_win.contains_interval(B):
            cats.append(Category.OUTSIDE)
        elif inside_win is not None and inside_win.contains_interval(B):
            cats.append(Category.INSIDE)
        else:
            cats.append(Category.UNCATEGORIZED)
    return OrbitalAnalysis(orb, bs, p, r, cond, cats, nice, coins)


def _unflip_analysis(an: OrbitalAnalysis, orb: Orbital) -> OrbitalAnalysis:
    def back(x):
        return None if x is None else 1 - x

    coins = [type(cc)(1 - cc.hi, 1 - cc.lo) for cc in reversed(an.coincidences)]
    return OrbitalAnalysis(
        orbital=orb,
        f1_orbitals=[b.flipped() for b in reversed(an.f1_orbitals)],
        p_or_rho=back(an.p_or_rho),
        r=back(an.r),
        conditions=dict(an.conditions),
        categories=list(reversed(an.categories)),
        nice=an.nice,
        coincidences=coins,
    )


def analyze_orbital(f0: PLMap, f1: PLMap, orb: Orbital) -> OrbitalAnalysis:
    """Points p (or rho) and r, conditions i-v, and f1-orbital categories on ``orb``.

    For a down-bump the returned ``p_or_rho`` is the maximal rho with
    f0 == f1 on [a, rho] and ``r`` is the maximal coincidence.
    """
    if orb not in orbitals_of(f0):
        raise PreconditionError(f"{orb} is not an orbital of f0")
    bs = f1_orbitals_in(f1, orb)
    if not bs:
        raise PreconditionError(f"{orb} is disjoint from the support of f1")
    for b in bs:
        if b.interval == orb.interval:
            raise PreconditionError(f"{orb} is a common orbital of f0 and f1")
        if not orb.interval.contains_interval(b.interval):
            raise PreconditionError(f"f1-orbital {b} is not nested inside {orb}")
    if orb.sign is Sign.UP:
        return _analyze_up(f0, f1, orb)
    up = _analyze_up(flip(f0), flip(f1), orb.flipped())
    return _unflip_analysis(up, orb)


def analyzable_orbitals(f0: PLMap, f1: PLMap) -> List[Orbital]:
    """f0-orbitals that properly contain f1-orbitals."""
    out = []
    for a in orbitals_of(f0):
        bs = f1_orbitals_in(f1, a)
        if bs and all(b.interval != a.interval for b in bs):
            out.append(a)
    return out


def orbital_piece(f: PLMap, b: Orbital) -> PLMap:
    """``f`` on the closure of one of its orbitals, identity elsewhere."""
    return restrict(f, b.interval)


def outside_commute_failure(f0: PLMap, f1: PLMap, an: OrbitalAnalysis):
    """First Outside orbital whose f0-image piece of f1^f0 fails to commute
    with f0 f1^-1, as ``(orbital, witness point)``; None when all commute."""
    f2 = conjugate(f1, f0)
    d = compose(f0, invert(f1))
    for b in an.outside():
        image = Orbital(evaluate(f0, b.lo), evaluate(f0, b.hi), b.sign)
        piece = orbital_piece(f2, image)
        c = commutator(d, piece)
        if not c.is_identity():
            return b, moved_breakpoint(c)
    return None


# -- decisions --------------------------------------------------------------

def decide_oracle(f0: PLMap, f1: PLMap) -> bool:
    """Both relators trivial and the pair does not commute."""
    return check_standard_relations(f0, f1).standard


def decide_structural(f0: PLMap, f1: PLMap) -> Verdict:
    cc = commutator(f0, f1)
    if cc.is_identity():
        return Verdict(Decision.NOT_STANDARD, Reason("commuting", detail="f0 and f1 commute"))

    nest = nesting_check(f0, f1)
    if not nest:
        a, b = nest.witness
        return Verdict(Decision.NOT_STANDARD,
                       Reason("nests", orbital=a, witness=b,
                              detail="an f0-orbital and an f1-orbital overlap without nesting"))
    cont = containment_check(f0, f1)
    if not cont:
        a, b = cont.witness
        return Verdict(Decision.NOT_STANDARD,
                       Reason("nested", orbital=a, witness=b,
                              detail="an f0-orbital lies strictly inside an f1-orbital"))
    shared = shared_orbital_commute_check(f0, f1)
    if not shared:
        iv, x = shared.witness
        return Verdict(Decision.NOT_STANDARD,
                       Reason("eqcommute", orbital=iv, witness=x,
                              detail="f0 and f1 fail to commute on a common orbital"))

    analyses = [analyze_orbital(f0, f1, a) for a in analyzable_orbitals(f0, f1)]
    for an in analyses:
        failed = an.first_failed()
        if failed is not None:
            return Verdict(Decision.NOT_STANDARD,
                           Reason(f"condition-{failed}", orbital=an.orbital,
                                  witness=_condition_witness(an, failed),
                                  detail=f"condition {failed} fails"),
                           analyses)
    for an in analyses:
        bad = outside_commute_failure(f0, f1, an)
        if bad is not None:
            b, x = bad
            return Verdict(Decision.NOT_STANDARD,
                           Reason("outside-commute", orbital=an.orbital, witness=x,
                                  detail=f"image of outside orbital {b} does not commute "
                                         "with f0 f1^-1"),
                           analyses)
    for an in analyses:
        for b, cat in zip(an.f1_orbitals, an.categories):
            if cat is Category.UNCATEGORIZED:
                return Verdict(Decision.INDETERMINATE,
                               Reason("uncategorized", orbital=an.orbital, witness=b,
                                      detail="an f1-orbital is neither main, inside nor outside"),
                               analyses)
    return Verdict(Decision.STANDARD,
                   Reason("all-orbitals-ok",
                          detail="all orbitals nice or outside-commuting"),
                   analyses)


def _condition_witness(an: OrbitalAnalysis, name: str):
    bs = an.f1_orbitals
    up = an.orbital.sign is Sign.UP
    if name == "i":
        return bs[0].lo if up else bs[-1].hi
    if name == "iii":
        return bs[-1].hi if up else bs[0].lo
    if name in ("ii", "iv"):
        return an.p_or_rho
    return bs[0].lo if up else bs[-1].hi


# -- ubiquity ---------------------------------------------------------------

class End(enum.Enum):
    NEAR_LO = "near_lo"
    NEAR_HI = "near_hi"


class WitnessNotFound(RuntimeError):
    pass


def moves_near(h: PLMap, point: Fraction, from_right: bool) -> bool:
    """Whether ``h`` moves points arbitrarily close to a point it fixes."""
    slope = h.slope_right(point) if from_right else h.slope_left(point)
    return slope != 1


# (label, word over {f0: 0, f1: 1}) -- f0 f1^-1 and f1^f0
CANDIDATES = (
    ("f0", ((0, 1),)),
    ("f1", ((1, 1),)),
    ("f0 f1^-1", ((0, 1), (1, -1))),
    ("f1^f0", ((0, -1), (1, 1), (0, 1))),
)


@dataclass(frozen=True)
class UbiquityWitness:
    W: Interval
    label: str
    element: Tuple[Tuple[int, int], ...]
    end: End


def ubiquity_witness(f0: PLMap, f1: PLMap) -> UbiquityWitness:
    """An orbital W of <f0, f1> and a candidate element moving points near
    exactly one end of W."""
    if not decide_oracle(f0, f1):
        raise PreconditionError("pair does not generate a standard copy of F")
    from .words import eval_word_over
    gens = (f0, f1)
    for W in subgroup_support(gens):
        for label, word in CANDIDATES:
            h = eval_word_over(word, gens)
            lo = moves_near(h, W.lo, True)
            hi = moves_near(h, W.hi, False)
            if lo != hi:
                return UbiquityWitness(W, label, word, End.NEAR_LO if lo else End.NEAR_HI)
    raise WitnessNotFound("no candidate element moves points near exactly one end")
