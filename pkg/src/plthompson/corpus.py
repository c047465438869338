"""Deterministic random pairs for differential testing.

Every pair is seeded: nice pairs, nice pairs pushed through chains of
perturbation steps, and mutants that deliberately break one of the
necessary conditions.  All constructive pieces are elements of F (dyadic
breakpoints, power-of-two slopes), which keeps denominators small; a pair
exceeding the size bounds is regenerated from the same random stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .classify import analyze_orbital, decide_oracle
from .construct import (
    NicePairSpec, OrbitalChoice, PerturbationStep, build_nice_pair, perturb,
)
from .orbitals import Orbital, Sign, orbitals_of
from .plmap import (
    IDENTITY, PLMap, conjugate, evaluate, flip, invert, make_plmap, power, splice,
)
from .words import eval_word_over, generator

MODES = (
    "nice",
    "perturb-chain",
    "mutate-condition-i",
    "mutate-condition-v",
    "mutate-outside-bump",
    "mutate-nudge",
    "mutate-commuting",
)
# modes whose oracle verdict is fixed by construction
CONSTRUCTIVE = ("nice", "perturb-chain")


@dataclass(frozen=True)
class GenParams:
    max_orbitals: int = 3
    max_steps: int = 5
    room_probability: float = 0.8
    max_denominator: int = 2 ** 20
    max_breakpoints: int = 32
    max_attempts: int = 200


class CorpusPair(NamedTuple):
    f0: PLMap
    f1: PLMap
    expected: bool
    mode: str
    seed: int


# -- dyadic building blocks -------------------------------------------------

def _dyadic_cut(rng: random.Random, lo: Fraction, hi: Fraction, bits: int = 3) -> Fraction:
    """A dyadic point strictly inside (lo, hi)."""
    n = 2 ** bits
    return lo + (hi - lo) * Fraction(rng.randrange(1, n), n)


def _level_fitting(length: Fraction) -> int:
    """Least e with 2^-e <= length / 2; an aligned interval of that size fits."""
    e = 0
    while Fraction(1, 2 ** e) > length / 2:
        e += 1
    return e


def aligned_interval(rng: random.Random, lo: Fraction, hi: Fraction,
                     extra_depth: int = 2) -> Tuple[Fraction, Fraction]:
    """Random interval ``[j/2^e, (j+1)/2^e]`` inside ``[lo, hi]``."""
    e = _level_fitting(hi - lo) + rng.randint(0, extra_depth)
    n = 2 ** e
    jmin = -((-lo * n) // 1)
    jmax = (hi * n) // 1 - 1
    j = rng.randint(int(jmin), int(jmax))
    return Fraction(j, n), Fraction(j + 1, n)


def _embed(pts) -> PLMap:
    full = [(Fraction(0), Fraction(0))] + [(Fraction(x), Fraction(y)) for x, y in pts] \
        + [(Fraction(1), Fraction(1))]
    dedup = []
    for pt in full:
        if not dedup or dedup[-1][0] != pt[0]:
            dedup.append(pt)
    return make_plmap(dedup)


def _transport(unit: PLMap, lo: Fraction, hi: Fraction) -> PLMap:
    """Affine copy of ``unit`` on [lo, hi], identity elsewhere."""
    L = hi - lo
    return _embed([(lo + L * x, lo + L * y) for x, y in unit.points])


def unit_bump(rng: random.Random, sign: Sign, depth: int = 1) -> PLMap:
    """Element of F whose only orbital is (0, 1), moving in direction ``sign``."""
    m = rng.randint(1, 2)
    w = [(rng.randint(0, 2), rng.choice((-1, 1))) for _ in range(rng.randint(0, depth))]
    gens = [generator(0), generator(1), generator(2)]
    g = conjugate(power(generator(0), m), eval_word_over(w, gens))
    return g if sign is Sign.UP else invert(g)


def random_bump(rng: random.Random, lo: Fraction, hi: Fraction, sign: Sign,
                depth: int = 1) -> PLMap:
    """Bump of F on an aligned dyadic interval inside [lo, hi]."""
    a, b = aligned_interval(rng, lo, hi)
    return _transport(unit_bump(rng, sign, depth), a, b)


def _binary_pieces(length: Fraction) -> List[Fraction]:
    out, rest, k = [], length, 0
    while rest:
        piece = Fraction(1, 2 ** k)
        if piece <= rest:
            out.append(piece)
            rest -= piece
        k += 1
    return out


def dyadic_bridge(rng: random.Random, src: Tuple[Fraction, Fraction],
                  dst: Tuple[Fraction, Fraction], extra: int = 2):
    """Breakpoints of an F-type map from interval ``src`` onto ``dst``.

    Both intervals are cut into pieces of power-of-two length with the same
    count; pieces are matched in order, so every slope is a power of two.
    """
    ps = _binary_pieces(src[1] - src[0])
    qs = _binary_pieces(dst[1] - dst[0])
    rng.shuffle(ps)
    rng.shuffle(qs)
    target = max(len(ps), len(qs)) + rng.randint(0, extra)
    for pieces in (ps, qs):
        while len(pieces) < target:
            i = rng.randrange(len(pieces))
            half = pieces[i] / 2
            pieces[i:i + 1] = [half, half]
    pts = [(src[0], dst[0])]
    x, y = src[0], dst[0]
    for a, b in zip(ps, qs):
        x, y = x + a, y + b
        pts.append((x, y))
    return pts


def random_f0(rng: random.Random, params: GenParams) -> PLMap:
    m = rng.randint(1, params.max_orbitals)
    cuts = sorted(rng.sample(range(1, 8), m - 1))
    bounds = [Fraction(0)] + [Fraction(c, 8) for c in cuts] + [Fraction(1)]
    pieces = []
    for lo, hi in zip(bounds, bounds[1:]):
        a, b = aligned_interval(rng, lo, hi, extra_depth=1)
        if rng.random() < 0.25:
            mid = (a + b) / 2  # two orbitals sharing a fixed endpoint
            spans = [(a, mid), (mid, b)]
        else:
            spans = [(a, b)]
        for u, v in spans:
            sign = rng.choice((Sign.UP, Sign.DOWN))
            pieces.append((u, v, _transport(unit_bump(rng, sign), u, v)))
    return splice(IDENTITY, pieces)


# -- working in up-bump coordinates ----------------------------------------

def _up_view(f: PLMap, orb: Orbital) -> Tuple[PLMap, Orbital]:
    return (f, orb) if orb.sign is Sign.UP else (flip(f), orb.flipped())


def _down_back(f: PLMap, orb: Orbital) -> PLMap:
    return f if orb.sign is Sign.UP else flip(f)


@dataclass
class _NiceOrbital:
    index: int
    orbital: Orbital
    p_up: Fraction
    # stretch past p f0^-1 where f1 is still the identity, in up-coordinates
    room_up: Optional[Tuple[Fraction, Fraction]]


def _random_filler(rng, f0u: PLMap, u: Fraction, p: Fraction, room: bool):
    pf = evaluate(f0u, p)
    if room:
        beta = _dyadic_cut(rng, u, p)
        pts = [(u, u)] + dyadic_bridge(rng, (beta, p), (beta, pf))
        return _embed(pts), (u, beta)
    return _embed(dyadic_bridge(rng, (u, p), (u, pf))), None


def _random_nice(rng: random.Random, params: GenParams):
    f0 = random_f0(rng, params)
    orbs = orbitals_of(f0)
    chosen = [i for i in range(len(orbs)) if rng.random() < 0.7] or [rng.randrange(len(orbs))]
    choices, powers, info = [], {}, []
    for i, orb in enumerate(orbs):
        if i not in chosen:
            if rng.random() < 0.5:
                powers[i] = rng.choice((1, -1, 2))
            continue
        f0u, ou = _up_view(f0, orb)
        p = _dyadic_cut(rng, ou.lo, ou.hi)
        u = f0u.preimage(p)
        filler_u, room = _random_filler(rng, f0u, u, p, rng.random() < params.room_probability)
        point = p if orb.sign is Sign.UP else 1 - p
        choices.append(OrbitalChoice(i, point, _down_back(filler_u, orb)))
        info.append(_NiceOrbital(i, orb, p, room))
    f0, f1 = build_nice_pair(NicePairSpec(f0, choices, powers))
    return f0, f1, info


def _perturb_chain(rng, f0: PLMap, f1: PLMap, info: List[_NiceOrbital],
                   n_steps: int) -> PLMap:
    roomy = [o for o in info if o.room_up is not None]
    if not roomy or n_steps == 0:
        return f1
    per = {o.index: 0 for o in roomy}
    for _ in range(n_steps):
        per[rng.choice(roomy).index] += 1
    for o in roomy:
        n = per[o.index]
        if not n:
            continue
        lo, hi = o.room_up
        # consecutive slots applied left to right, so each window check sees
        # the previous step's agreement point at or below the next support
        cuts = [lo + (hi - lo) * Fraction(j, n) for j in range(n + 1)]
        for a, b in zip(cuts, cuts[1:]):
            h_up = random_bump(rng, a, b, rng.choice((Sign.UP, Sign.DOWN)), depth=0)
            t, k = 0, 0
            while t == 0 and k == 0:
                t, k = rng.randint(-2, 2), rng.randint(-2, 2)
            f1 = perturb(f0, f1, PerturbationStep(o.index, _down_back(h_up, o.orbital), t, k))
    return f1


def _insert_bump(rng, f1: PLMap, lo: Fraction, hi: Fraction) -> PLMap:
    """Replace part of the identity stretch (lo, hi) of ``f1`` by a bump."""
    a, b = aligned_interval(rng, lo, hi)
    bump = _transport(unit_bump(rng, rng.choice((Sign.UP, Sign.DOWN)), 0), a, b)
    return splice(f1, [(a, b, bump)])


def _identity_gaps(f: PLMap, lo: Fraction, hi: Fraction) -> List[Tuple[Fraction, Fraction]]:
    gaps, cur = [], lo
    for b in orbitals_of(f):
        if b.hi <= lo or b.lo >= hi:
            continue
        if b.lo > cur:
            gaps.append((cur, b.lo))
        cur = max(cur, b.hi)
    if cur < hi:
        gaps.append((cur, hi))
    return gaps


def _outside_bump(rng, f0: PLMap, g1: PLMap, o: _NiceOrbital) -> Optional[PLMap]:
    """Insert a bump into an identity gap of ``g1`` inside the Outside window."""
    f0u, ou = _up_view(f0, o.orbital)
    g1u, _ = _up_view(g1, o.orbital)
    an = analyze_orbital(f0u, g1u, ou)
    if an.p_or_rho is None or an.r is None:
        return None
    gaps = _identity_gaps(g1u, f0u.preimage(an.r), f0u.preimage(an.p_or_rho))
    if not gaps:
        return None
    lo, hi = rng.choice(gaps)
    return _down_back(_insert_bump(rng, g1u, lo, hi), o.orbital)


def _mutate(rng, mode: str, f0: PLMap, f1: PLMap, info: List[_NiceOrbital]) -> PLMap:
    if mode == "mutate-commuting":
        return power(f0, rng.choice((1, 2, -1, 3)))
    if mode == "mutate-nudge":
        i = rng.randrange(1, len(f1.points) - 1)
        x, _ = f1.points[i]
        lo, hi = f1.points[i - 1][1], f1.points[i + 1][1]
        pts = list(f1.points)
        pts[i] = (x, _dyadic_cut(rng, lo, hi))
        return make_plmap(pts)
    o = rng.choice(info)
    f0u, _ = _up_view(f0, o.orbital)
    f1u, ou = _up_view(f1, o.orbital)
    u = f0u.preimage(o.p_up)
    inner = [b for b in orbitals_of(f1u) if ou.lo <= b.lo and b.hi <= ou.hi]
    bn = inner[-1].lo
    if mode == "mutate-condition-i":
        # an orbital starting exactly at the left end of the f0-orbital
        b = ou.lo + Fraction(1, 2 ** (_level_fitting(u - ou.lo) + rng.randint(0, 2)))
        bump = _transport(unit_bump(rng, rng.choice((Sign.UP, Sign.DOWN)), 0), ou.lo, b)
        g = splice(f1u, [(ou.lo, b, bump)])
    elif mode == "mutate-condition-v":
        g = _insert_bump(rng, f1u, ou.lo, f0u.preimage(bn))
    elif mode == "mutate-outside-bump":
        if o.room_up is not None and rng.random() < 0.75:
            g1 = _perturb_chain(rng, f0, f1, [o], rng.randint(1, 2))
            out = _outside_bump(rng, f0, g1, o)
            if out is not None:
                return out
        # below the Outside window, where the new orbital fits no category
        g = _insert_bump(rng, f1u, max(ou.lo, f0u.preimage(bn)), u)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _down_back(g, o.orbital)


def within_bounds(maps: Sequence[PLMap], params: GenParams = GenParams()) -> bool:
    for f in maps:
        if len(f.points) > params.max_breakpoints:
            return False
        if any(v.denominator > params.max_denominator for pt in f.points for v in pt):
            return False
    return True


def random_pair(seed: int, params: GenParams = GenParams(), mode: Optional[str] = None,
                n_steps: Optional[int] = None) -> CorpusPair:
    """Seeded pair; ``expected`` is the oracle verdict.

    For constructive modes the verdict holds by construction; for mutants it
    is whatever the oracle reports after mutation.
    """
    rng = random.Random(seed)
    if mode is None:
        mode = rng.choice(MODES)
    elif mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    for _ in range(params.max_attempts):
        f0, f1, info = _random_nice(rng, params)
        if not within_bounds((f0, f1), params):
            continue
        if mode == "nice":
            return CorpusPair(f0, f1, True, mode, seed)
        if mode == "perturb-chain":
            steps = rng.randint(1, params.max_steps) if n_steps is None else n_steps
            g1 = _perturb_chain(rng, f0, f1, info, steps)
        else:
            g1 = _mutate(rng, mode, f0, f1, info)
        if within_bounds((g1,), params):
            expected = True if mode == "perturb-chain" else decide_oracle(f0, g1)
            return CorpusPair(f0, g1, expected, mode, seed)
    raise RuntimeError(f"seed {seed}: no pair within size bounds")


def corpus(n: int, seed: int = 0, params: GenParams = GenParams()) -> List[CorpusPair]:
    return [random_pair(seed + i, params) for i in range(n)]
