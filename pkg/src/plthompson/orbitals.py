"""Supports and orbitals of maps and of finitely generated subgroups."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .plmap import Interval, PLMap, RationalLike, Q, evaluate, invert, format_rational

DEFAULT_ITER_CAP = 10_000


def iteration_cap() -> int:
    """Iteration cap, overridable through ``PLF_ITER_CAP``."""
    raw = os.environ.get("PLF_ITER_CAP")
    return int(raw) if raw else DEFAULT_ITER_CAP


class Sign(enum.Enum):
    UP = "up"
    DOWN = "down"

    def flipped(self) -> "Sign":
        return Sign.DOWN if self is Sign.UP else Sign.UP


@dataclass(frozen=True)
class Orbital:
    lo: Fraction
    hi: Fraction
    sign: Sign

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi

    def flipped(self) -> "Orbital":
        return Orbital(1 - self.hi, 1 - self.lo, self.sign.flipped())

    def __str__(self) -> str:
        return f"({format_rational(self.lo)}, {format_rational(self.hi)}, {self.sign.value})"


def orbitals_of(f: PLMap) -> List[Orbital]:
    """Maximal open intervals moved by ``f``, in increasing order."""
    # Refine the breakpoint grid by the interior fixed points of each
    # segment so that y - x has constant sign between grid points.
    grid: List[Tuple[Fraction, Fraction]] = []
    pts = f.points
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        grid.append((x0, y0 - x0))
        d0, d1 = y0 - x0, y1 - x1
        if d0 != 0 and d1 != 0 and (d0 < 0) != (d1 < 0):
            root = x0 + d0 * (x1 - x0) / (d0 - d1)
            grid.append((root, Fraction(0)))
    grid.append((pts[-1][0], Fraction(0)))

    out: List[Orbital] = []
    start = None
    sign = None
    for (u, du), (v, dv) in zip(grid, grid[1:]):
        mid = (du + dv) / 2
        seg_sign = None if mid == 0 else (Sign.UP if mid > 0 else Sign.DOWN)
        if seg_sign is not None and start is None:
            start, sign = u, seg_sign
        if start is not None and dv == 0:
            out.append(Orbital(start, v, sign))
            start = None
    return out


def fixed_points_scan(f: PLMap, samples: Iterable[Fraction]) -> List[Fraction]:
    """Sample points fixed by ``f``; used as an independent check on orbitals."""
    return [x for x in samples if evaluate(f, x) == x]


def support_contains(orbs: Sequence[Orbital], x: Fraction) -> bool:
    return any(o.lo < x < o.hi for o in orbs)


def subgroup_support(gens: Sequence[PLMap]) -> List[Interval]:
    """Orbitals of the group generated by ``gens``.

    The support of the group is the union of the generators' supports, so
    overlapping orbitals merge.  Orbitals that merely share an endpoint stay
    separate: that endpoint is fixed by every generator.
    """
    if not gens:
        raise ValueError("need at least one generator")
    ivs = sorted(o.interval for g in gens for o in orbitals_of(g))
    merged: List[Interval] = []
    for iv in ivs:
        if merged and iv.lo < merged[-1].hi:
            merged[-1] = Interval(merged[-1].lo, max(merged[-1].hi, iv.hi))
        else:
            merged.append(iv)
    return merged


def find_orbital(f: PLMap, orb) -> Orbital:
    lo, hi = (orb.lo, orb.hi) if hasattr(orb, "lo") else map(Q, orb)
    for o in orbitals_of(f):
        if o.lo == lo and o.hi == hi:
            return o
    raise ValueError(f"({lo}, {hi}) is not an orbital of the map")


def boundary_slopes(f: PLMap, orb) -> Tuple[Fraction, Fraction]:
    """Leading and trailing slopes of ``f`` on one of its orbitals."""
    o = find_orbital(f, orb)
    return f.slope_right(o.lo), f.slope_left(o.hi)


def corresponding_orbital(orb: Orbital, h: PLMap) -> Orbital:
    """Orbital ``(lo h, hi h)`` of the conjugate ``g^h``."""
    return Orbital(evaluate(h, orb.lo), evaluate(h, orb.hi), orb.sign)


def iterate_toward_end(f: PLMap, x: RationalLike, n: int, cap: int = None) -> Fraction:
    """``x f^n`` computed pointwise; ``x`` must be moved by ``f``."""
    x = Q(x)
    cap = iteration_cap() if cap is None else cap
    if abs(n) > cap:
        raise ValueError(f"|n| = {abs(n)} exceeds the iteration cap {cap}")
    if evaluate(f, x) == x:
        raise ValueError(f"{x} is a fixed point of the map")
    step = f if n >= 0 else invert(f)
    for _ in range(abs(n)):
        x = evaluate(step, x)
    return x


def steps_to_reach(f: PLMap, x: RationalLike, target: Fraction, eps: Fraction,
                   cap: int = None) -> int:
    """Least n >= 0 with ``|x f^n - target| < eps``; raises past the cap."""
    x = Q(x)
    cap = iteration_cap() if cap is None else cap
    for n in range(cap + 1):
        if abs(x - target) < eps:
            return n
        x = evaluate(f, x)
    raise ValueError(f"not within {eps} of {target} after {cap} steps")
