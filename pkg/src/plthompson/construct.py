"""Building, perturbing and decomposing standard generating pairs.

A nice pair is assembled orbital by orbital: on a chosen up-bump ``(a, c)``
of ``f0`` with a point ``p`` inside it, ``f1`` is the identity up to
``p f0^-1``, equal to ``f0`` from ``p`` on, and a filler in between.
Arbitrary standard pairs are reached from nice ones by perturbation steps
``g1 = h^t f0^-1 h^k f0 f1``; :func:`decompose` recovers such a chain for a
given standard pair and :func:`replay` folds it back.

Down-bumps are handled by reflecting through ``x -> 1-x``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .classify import PreconditionError, analyzable_orbitals, analyze_orbital, decide_oracle
from .orbitals import Orbital, Sign, orbitals_of
from .plmap import (
    IDENTITY, Interval, PLMap, PLMapError, Q, Side, agreement_bound,
    coincidence_points, commutator, compose, conjugate, evaluate, flip, invert,
    is_identity_on, make_plmap, power, product, restrict, splice,
)


class ConstructionError(ValueError):
    pass


class WindowError(ConstructionError):
    """A perturbation's h is not supported in its admissible window."""


class RootError(ConstructionError):
    pass


class DecompositionError(RuntimeError):
    pass


class StepCase(enum.Enum):
    FIRST_ORBITAL = "first_orbital"
    FIRST_GAP = "first_gap"
    COMMON_ROOT = "common_root"


# -- nice pairs -------------------------------------------------------------

@dataclass
class OrbitalChoice:
    """Nice-orbital data: ``point`` is p for an up-bump, rho for a down-bump.

    ``filler`` supplies f1 on the bridge ``[p f0^-1, p]``; it must send
    ``p f0^-1`` to itself and ``p`` to ``p f0``.  None means a single linear
    segment.
    """

    index: int
    point: Fraction
    filler: Optional[PLMap] = None


@dataclass
class NicePairSpec:
    f0: PLMap
    choices: List[OrbitalChoice]
    # f1 = f0^n on these (unchosen) f0-orbitals
    powers: Dict[int, int] = field(default_factory=dict)
    # extra f1 support off Supp(f0)
    extra: Optional[PLMap] = None


def _embed(points) -> PLMap:
    pts = [(Fraction(0), Fraction(0))] + list(points) + [(Fraction(1), Fraction(1))]
    dedup = []
    for pt in pts:
        if not dedup or dedup[-1][0] != pt[0]:
            dedup.append(pt)
    return make_plmap(dedup)


def _nice_piece_up(f0: PLMap, a, c, p, filler: Optional[PLMap]) -> PLMap:
    if not a < p < c:
        raise ConstructionError(f"point {p} is not inside the orbital ({a}, {c})")
    u = f0.preimage(p)
    pf = evaluate(f0, p)
    pts = [(a, a), (u, u)]
    if filler is not None:
        if evaluate(filler, u) != u or evaluate(filler, p) != pf:
            raise ConstructionError("filler does not match f1 at the ends of the bridge")
        pts += [(x, y) for x, y in filler.points if u < x < p]
    pts.append((p, pf))
    pts += [(x, y) for x, y in f0.points if p < x < c]
    pts.append((c, c))
    return _embed(pts)


def nice_piece(f0: PLMap, orb: Orbital, point, filler: Optional[PLMap] = None) -> PLMap:
    """f1 on one nice orbital of f0, identity elsewhere."""
    point = Q(point)
    if filler is not None and not isinstance(filler, PLMap):
        filler = make_plmap(filler)
    if orb.sign is Sign.UP:
        return _nice_piece_up(f0, orb.lo, orb.hi, point, filler)
    fl = orb.flipped()
    return flip(_nice_piece_up(flip(f0), fl.lo, fl.hi, 1 - point,
                               flip(filler) if filler is not None else None))


def build_nice_pair(spec: NicePairSpec) -> Tuple[PLMap, PLMap]:
    f0 = spec.f0
    orbs = orbitals_of(f0)
    if not spec.choices:
        raise ConstructionError("a nice pair needs at least one chosen orbital")
    used = set()
    pieces = []
    for ch in spec.choices:
        if not 0 <= ch.index < len(orbs) or ch.index in used:
            raise ConstructionError(f"bad or repeated orbital index {ch.index}")
        used.add(ch.index)
        orb = orbs[ch.index]
        pieces.append((orb.lo, orb.hi, nice_piece(f0, orb, ch.point, ch.filler)))
    for idx, n in spec.powers.items():
        if not 0 <= idx < len(orbs) or idx in used:
            raise ConstructionError(f"bad or repeated orbital index {idx}")
        used.add(idx)
        orb = orbs[idx]
        pieces.append((orb.lo, orb.hi, power(f0, n)))
    base = spec.extra if spec.extra is not None else IDENTITY
    for orb in orbs:
        if not is_identity_on(base, orb.interval):
            raise ConstructionError(f"extra map moves points of the f0-orbital {orb}")
    return f0, splice(base, pieces)


# -- perturbation -----------------------------------------------------------

@dataclass
class PerturbationStep:
    orbital: int
    h: PLMap
    t: int
    k: int
    case: Optional[StepCase] = None
    # optional explicit bound s in (p, c); None accepts any s
    s: Optional[Fraction] = None


def _window_up(f0: PLMap, f1: PLMap, a, c, s) -> Interval:
    p = agreement_bound(f0, f1, c, Side.FROM_RIGHT)
    if p is None or p <= a:
        raise WindowError("f0 and f1 do not agree on any segment ending at the orbital's top")
    lo = f0.preimage(p)
    if s is None:
        return Interval(lo, c)
    s = Q(s)
    if not p < s < c:
        raise WindowError(f"s = {s} is not in (p, c) = ({p}, {c})")
    return Interval(lo, f0.preimage(s))


def perturbation_window(f0: PLMap, f1: PLMap, orb: Orbital, s=None) -> Interval:
    """Open interval that must contain Supp(h) for a step on ``orb``."""
    if orb.sign is Sign.UP:
        return _window_up(f0, f1, orb.lo, orb.hi, s)
    fl = orb.flipped()
    w = _window_up(flip(f0), flip(f1), fl.lo, fl.hi, None if s is None else 1 - Q(s))
    return Interval(1 - w.hi, 1 - w.lo)


def _check_support(h: PLMap, win: Interval, orb: Orbital, explicit_s: bool):
    for o in orbitals_of(h):
        inside = win.lo <= o.lo and o.hi <= win.hi
        if explicit_s is False:
            # any s in (p, c) will do, so only the far orbital end is excluded
            far = orb.hi if orb.sign is Sign.UP else orb.lo
            inside = inside and o.lo != far and o.hi != far
        if not inside:
            raise WindowError(f"h moves {o}, outside the window {win}")


def perturbed(f0: PLMap, f1: PLMap, h: PLMap, t: int, k: int) -> PLMap:
    """``h^t f0^-1 h^k f0 f1`` with no window check."""
    return product(power(h, t), conjugate(power(h, k), f0), f1)


def perturb(f0: PLMap, f1: PLMap, step: PerturbationStep) -> PLMap:
    orbs = orbitals_of(f0)
    if not 0 <= step.orbital < len(orbs):
        raise ConstructionError(f"f0 has no orbital {step.orbital}")
    orb = orbs[step.orbital]
    win = perturbation_window(f0, f1, orb, step.s)
    _check_support(step.h, win, orb, step.s is not None)
    return perturbed(f0, f1, step.h, step.t, step.k)


def replay(f0: PLMap, nice_f1: PLMap, steps: Sequence[PerturbationStep]) -> PLMap:
    g = nice_f1
    for st in steps:
        g = perturb(f0, g, st)
    return g


def replay_trace(f0: PLMap, trace: "DecompositionTrace") -> PLMap:
    return replay(f0, trace.nice_f1, trace.steps)

# -- common roots -----------------------------------------------------------

@dataclass(frozen=True)
class RootCertificate:
    root: PLMap
    exp_g: int
    exp_h: int


def _exponents(q: Fraction) -> Dict[int, int]:
    from sympy import factorint

    out = dict(factorint(q.numerator)) if q.numerator > 1 else {}
    if q.denominator > 1:
        for prime, e in factorint(q.denominator).items():
            out[prime] = out.get(prime, 0) - e
    return out


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _common_base(lg: Fraction, lh: Fraction) -> Tuple[int, int]:
    """Integers (m, n) with lg = beta^m, lh = beta^n for a common beta."""
    eg, eh = _exponents(lg), _exponents(lh)
    if not eg or not eh:
        raise RootError("a leading slope equals 1")
    primes = sorted(set(eg) | set(eh))
    vg = [eg.get(q, 0) for q in primes]
    vh = [eh.get(q, 0) for q in primes]
    content = 0
    for e in vg:
        content = math.gcd(content, e)
    base = [e // content for e in vg]
    lead = next(b for b in base if b)
    if lead < 0:
        base = [-b for b in base]
        content = -content
    j = next(i for i, b in enumerate(base) if b)
    n, rem = divmod(vh[j], base[j])
    if rem or [n * b for b in base] != vh:
        raise RootError(f"leading slopes {lg} and {lh} are not powers of a common base")
    return content, n


def common_root(g: PLMap, h: PLMap, orb) -> RootCertificate:
    """Common root of two maps sharing the orbital ``orb`` and commuting there.

    The root is ``g^u h^v`` restricted to ``orb``, with ``u m + v n = gcd(m, n)``
    for the exponents of the leading slopes over a common base.
    """
    iv = Interval(Q(orb[0]), Q(orb[1])) if not hasattr(orb, "lo") else Interval(orb.lo, orb.hi)
    for f in (g, h):
        if not any(o.interval == iv for o in orbitals_of(f)):
            raise RootError(f"{iv} is not an orbital of both maps")
    gr, hr = restrict(g, iv), restrict(h, iv)
    if not commutator(gr, hr).is_identity():
        raise RootError(f"maps do not commute on {iv}")
    m, n = _common_base(gr.slope_right(iv.lo), hr.slope_right(iv.lo))
    d, u, v = _ext_gcd(abs(m), abs(n))
    u = u if m > 0 else -u
    v = v if n > 0 else -v
    root = compose(power(gr, u), power(hr, v))
    eg, eh = m // d, n // d
    if eg < 0:
        root, eg, eh = invert(root), -eg, -eh
    if power(root, eg) != gr or power(root, eh) != hr:
        raise RootError(f"commuting maps on {iv} are not powers of the candidate root")
    return RootCertificate(root, eg, eh)


# -- decomposition ----------------------------------------------------------

@dataclass
class OrbitalTrace:
    orbital: int
    p: Fraction
    alpha: Fraction
    working_set: List[Tuple[Interval, str]]


@dataclass
class DecompositionTrace:
    nice_pair: Tuple[PLMap, PLMap]
    steps: List[PerturbationStep]
    orbitals: List[OrbitalTrace] = field(default_factory=list)

    @property
    def nice_f1(self) -> PLMap:
        return self.nice_pair[1]


def _decompose_up(f0: PLMap, g1: PLMap, a, c, index: int):
    p = agreement_bound(f0, g1, c, Side.FROM_RIGHT)
    coins = coincidence_points(f0, g1, (a, c))
    if p is None or not coins:
        raise DecompositionError(f"orbital {index}: no agreement segment at the top")
    alpha = coins[0].lo
    pf = f0.preimage(p)
    if evaluate(g1, pf) != pf or not pf < alpha:
        raise DecompositionError(f"orbital {index}: g1 does not fix p f0^-1 below alpha")

    pts = [(a, a), (pf, pf)]
    pts += [(x, y) for x, y in g1.points if pf < x < alpha]
    pts.append((alpha, evaluate(f0, alpha)))
    pts += [(x, y) for x, y in f0.points if alpha < x < c]
    pts.append((c, c))
    piece = _embed(pts)

    nice_ivs = {o.interval for o in orbitals_of(piece)}
    work: List[Tuple[Interval, str, object]] = []
    for b in orbitals_of(g1):
        if a <= b.lo and b.hi <= c and b.interval not in nice_ivs:
            work.append((Interval(evaluate(f0, b.lo), evaluate(f0, b.hi)), "b", b))
    gap = compose(f0, invert(g1))
    for o in orbitals_of(gap):
        if alpha <= o.lo and o.hi <= c:
            work.append((o.interval, "q", o))
    work.sort(key=lambda t: (t[0].lo, t[0].hi, t[1]))
    working_set = [(iv, kind) for iv, kind, _ in work]

    f2 = conjugate(g1, f0)
    f0_inv = invert(f0)
    steps = []
    i = 0
    while i < len(work):
        iv, kind, orb = work[i]
        if i + 1 < len(work) and work[i + 1][0].lo < iv.hi:
            if work[i + 1][0] != iv:
                raise DecompositionError(f"overlapping intervals {iv} and {work[i + 1][0]}")
            cert = common_root(restrict(f2, iv), restrict(gap, iv), iv)
            h = conjugate(cert.root, f0_inv)
            steps.append(PerturbationStep(index, h, cert.exp_g, -cert.exp_h,
                                          StepCase.COMMON_ROOT))
            i += 2
            continue
        if kind == "b":
            steps.append(PerturbationStep(index, restrict(g1, orb.interval), 1, 0,
                                          StepCase.FIRST_ORBITAL))
        else:
            psi = restrict(gap, iv)
            steps.append(PerturbationStep(index, conjugate(invert(psi), f0_inv), 0, 1,
                                          StepCase.FIRST_GAP))
        i += 1
    return piece, steps, OrbitalTrace(index, p, alpha, working_set)


def _flip_step(st: PerturbationStep) -> PerturbationStep:
    return replace(st, h=flip(st.h), s=None if st.s is None else 1 - st.s)


def decompose(f0: PLMap, g1: PLMap) -> DecompositionTrace:
    """Nice pair plus perturbation steps reproducing the standard pair (f0, g1).

    Working sets are scanned from the end of the orbital where f1 is the
    identity: left to right on up-bumps, right to left on down-bumps.
    """
    if not decide_oracle(f0, g1):
        raise PreconditionError("pair does not generate a standard copy of F")
    orbs = orbitals_of(f0)
    targets = {(o.lo, o.hi) for o in analyzable_orbitals(f0, g1)}
    pieces, steps, traces = [], [], []
    for idx, orb in enumerate(orbs):
        if (orb.lo, orb.hi) not in targets:
            continue
        an = analyze_orbital(f0, g1, orb)
        if an.nice and not an.outside():
            continue
        if orb.sign is Sign.UP:
            piece, st, tr = _decompose_up(f0, g1, orb.lo, orb.hi, idx)
        else:
            fl = orb.flipped()
            piece, st, tr = _decompose_up(flip(f0), flip(g1), fl.lo, fl.hi, idx)
            piece = flip(piece)
            st = [_flip_step(s) for s in st]
            tr = OrbitalTrace(idx, 1 - tr.p, 1 - tr.alpha,
                              [(Interval(1 - iv.hi, 1 - iv.lo), kind)
                               for iv, kind in reversed(tr.working_set)])
        pieces.append((orb.lo, orb.hi, piece))
        steps.extend(st)
        traces.append(tr)
    nice_f1 = splice(g1, pieces) if pieces else g1
    trace = DecompositionTrace((f0, nice_f1), steps, traces)
    if replay(f0, nice_f1, steps) != g1:
        raise DecompositionError("replaying the recovered steps does not reproduce g1")
    return trace
