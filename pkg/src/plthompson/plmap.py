"""Exact piecewise-linear homeomorphisms of the unit interval.

Maps are stored as a normalized breakpoint sequence of exact rationals, so
two maps are equal as functions exactly when their breakpoint tuples are
equal.  Composition follows word order: ``f * g`` applies ``f`` first and
then ``g``.
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]
Point = Tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class PLMapError(ValueError):
    """Raised for breakpoint data that does not describe a PL homeomorphism."""


def Q(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    return Fraction(value)


def is_power_of_two_int(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def is_dyadic(q: Fraction) -> bool:
    return is_power_of_two_int(q.denominator)


def is_power_of_two(q: Fraction) -> bool:
    """True iff ``q == 2**n`` for some integer ``n`` (negative allowed)."""
    if q <= 0:
        return False
    return (q.numerator == 1 or is_power_of_two_int(q.numerator)) and \
        is_power_of_two_int(q.denominator)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi

    def contains_interval(self, other: "Interval") -> bool:
        """Set containment of open intervals."""
        return self.lo <= other.lo and other.hi <= self.hi

    def meets(self, other: "Interval") -> bool:
        """Open intervals share at least one point."""
        return self.lo < other.hi and other.lo < self.hi

    def __str__(self) -> str:
        return f"({format_rational(self.lo)}, {format_rational(self.hi)})"


def interval(lo: RationalLike, hi: RationalLike) -> Interval:
    lo, hi = Q(lo), Q(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo < 0 or hi > 1:
        raise ValueError(f"interval ({lo}, {hi}) leaves [0,1]")
    return Interval(lo, hi)


def _as_interval(window) -> Interval:
    if isinstance(window, Interval):
        return window
    lo, hi = window
    return interval(lo, hi)


def _collinear(p: Point, q: Point, r: Point) -> bool:
    return (q[1] - p[1]) * (r[0] - q[0]) == (r[1] - q[1]) * (q[0] - p[0])


def _normalize(points: Sequence[Point]) -> Tuple[Point, ...]:
    out = [points[0]]
    for pt in points[1:]:
        if len(out) >= 2 and _collinear(out[-2], out[-1], pt):
            out[-1] = pt
        else:
            out.append(pt)
    return tuple(out)


class PLMap:
    """Orientation-preserving PL homeomorphism of [0, 1].

    Build instances with :func:`make_plmap`; the constructor assumes its
    input is already validated and normalized.
    """

    __slots__ = ("points", "xs", "ys", "_hash")

    def __init__(self, points: Tuple[Point, ...]):
        self.points = points
        self.xs = tuple(p[0] for p in points)
        self.ys = tuple(p[1] for p in points)
        self._hash = hash(points)

    # -- evaluation -------------------------------------------------------

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate(self, x)

    def preimage(self, y: RationalLike) -> Fraction:
        return _interpolate(self.ys, self.xs, Q(y))

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        pts = self.points
        return tuple((pts[i + 1][1] - pts[i][1]) / (pts[i + 1][0] - pts[i][0])
                     for i in range(len(pts) - 1))

    def slope_right(self, x: Fraction) -> Fraction:
        """Right derivative at ``x`` (``x < 1``)."""
        i = bisect_right(self.xs, x) - 1
        i = min(i, len(self.xs) - 2)
        return self.slopes[i]

    def slope_left(self, x: Fraction) -> Fraction:
        """Left derivative at ``x`` (``x > 0``)."""
        i = bisect_left(self.xs, x)
        i = max(i, 1)
        return self.slopes[i - 1]

    def is_identity(self) -> bool:
        return len(self.points) == 2

    # -- group structure --------------------------------------------------

    def __mul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def __invert__(self) -> "PLMap":
        return invert(self)

    def __pow__(self, n: int) -> "PLMap":
        return power(self, n)

    def __xor__(self, other: "PLMap") -> "PLMap":
        # f ^ g is the conjugate g^-1 f g
        return conjugate(self, other)

    # -- value semantics --------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.points == other.points

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        body = ", ".join(f"({format_rational(x)}, {format_rational(y)})"
                         for x, y in self.points)
        return f"PLMap([{body}])"


IDENTITY = PLMap(((ZERO, ZERO), (ONE, ONE)))


def identity() -> PLMap:
    return IDENTITY


def make_plmap(pairs: Iterable[Tuple[RationalLike, RationalLike]]) -> PLMap:
    """Validate breakpoint pairs and return the normalized map.

    Pairs may arrive unsorted; collinear interior points are dropped.
    """
    pts = sorted((Q(x), Q(y)) for x, y in pairs)
    if not pts:
        raise PLMapError("no breakpoints given")
    if pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
        raise PLMapError("breakpoints must start at (0,0) and end at (1,1)")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not x0 < x1:
            raise PLMapError(f"x-coordinates not strictly increasing at {x1}")
        if not y0 < y1:
            raise PLMapError(f"y-coordinates not strictly increasing at x={x1}")
    return PLMap(_normalize(pts))


def is_normalized(pairs: Sequence[Tuple[Fraction, Fraction]]) -> bool:
    pts = [(Q(x), Q(y)) for x, y in pairs]
    try:
        f = make_plmap(pts)
    except PLMapError:
        return False
    return list(f.points) == pts


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction],
                 x: Fraction) -> Fraction:
    if x < 0 or x > 1:
        raise ValueError(f"{x} lies outside [0,1]")
    i = bisect_left(xs, x)
    if xs[i] == x:
        return ys[i]
    x0, x1, y0, y1 = xs[i - 1], xs[i], ys[i - 1], ys[i]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def evaluate(f: PLMap, x: RationalLike) -> Fraction:
    """Image of ``x`` under ``f`` (written ``xf`` in word order)."""
    return _interpolate(f.xs, f.ys, Q(x))


def compose(f: PLMap, g: PLMap) -> PLMap:
    """Word-order product ``fg``: apply ``f``, then ``g``."""
    if f.is_identity():
        return g
    if g.is_identity():
        return f
    # Merge the breakpoints of f (by their images) with those of g; every
    # value v in the merge yields the point (v f^-1, v g).
    fx, fy, gx, gy = f.xs, f.ys, g.xs, g.ys
    i = j = 0
    pts = [(fx[0], gy[0])]
    while i < len(fy) - 1 or j < len(gx) - 1:
        a, b = fy[i + 1], gx[j + 1]
        if a <= b:
            i += 1
            x = fx[i]
            if a == b:
                j += 1
                y = gy[j]
            else:
                y = gy[j] + (gy[j + 1] - gy[j]) * (a - gx[j]) / (gx[j + 1] - gx[j])
        else:
            j += 1
            y = gy[j]
            x = fx[i] + (fx[i + 1] - fx[i]) * (b - fy[i]) / (fy[i + 1] - fy[i])
        pts.append((x, y))
    return PLMap(_normalize(pts))


def invert(f: PLMap) -> PLMap:
    return PLMap(tuple((y, x) for x, y in f.points))


def power(f: PLMap, n: int) -> PLMap:
    if n < 0:
        return power(invert(f), -n)
    result, base = IDENTITY, f
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def product(*maps: PLMap) -> PLMap:
    result = IDENTITY
    for m in maps:
        result = compose(result, m)
    return result


def conjugate(f: PLMap, g: PLMap) -> PLMap:
    """``f^g = g^-1 f g``."""
    return compose(compose(invert(g), f), g)


def commutator(f: PLMap, g: PLMap) -> PLMap:
    """``[f, g] = f g f^-1 g^-1`` in word order."""
    return product(f, g, invert(f), invert(g))


def commutes(f: PLMap, g: PLMap) -> bool:
    return compose(f, g) == compose(g, f)


def flip(f: PLMap) -> PLMap:
    """Conjugate by the reflection ``x -> 1 - x``; swaps up- and down-bumps."""
    return PLMap(tuple((ONE - x, ONE - y) for x, y in reversed(f.points)))


class Side(enum.Enum):
    FROM_RIGHT = "from_right"
    FROM_LEFT = "from_left"


def _grid(f: PLMap, g: PLMap, *extra: Fraction) -> list:
    return sorted(set(f.xs) | set(g.xs) | set(extra))


def agreement_bound(f: PLMap, g: PLMap, anchor: RationalLike,
                    side: Side) -> Union[Fraction, None]:
    """Far end of the longest closed segment at ``anchor`` where f == g.

    ``FROM_RIGHT`` looks at segments ``[p, anchor]`` and returns the minimal
    ``p``; ``FROM_LEFT`` looks at ``[anchor, rho]`` and returns the maximal
    ``rho``.  Agreement at the single point ``anchor`` does not count.
    """
    anchor = Q(anchor)
    if evaluate(f, anchor) != evaluate(g, anchor):
        return None
    grid = _grid(f, g, anchor)
    i = grid.index(anchor)
    step = -1 if side is Side.FROM_RIGHT else 1
    end = anchor
    j = i + step
    while 0 <= j < len(grid):
        u = grid[j]
        if evaluate(f, u) != evaluate(g, u):
            break
        end = u
        j += step
    return None if end == anchor else end


class Coincidence(NamedTuple):
    """A component of ``{x : f(x) == g(x)}``; ``lo == hi`` when isolated."""

    lo: Fraction
    hi: Fraction

    @property
    def isolated(self) -> bool:
        return self.lo == self.hi


def coincidence_set(f: PLMap, g: PLMap) -> list:
    """All components of the agreement set of ``f`` and ``g`` on [0, 1]."""
    grid = _grid(f, g)
    diffs = [evaluate(f, x) - evaluate(g, x) for x in grid]
    pieces = []
    for i in range(len(grid) - 1):
        u, v, du, dv = grid[i], grid[i + 1], diffs[i], diffs[i + 1]
        if du == 0 and dv == 0:
            pieces.append((u, v))
        elif du == 0:
            pieces.append((u, u))
        elif (du < 0) != (dv < 0) and dv != 0:
            root = u + du * (v - u) / (du - dv)
            pieces.append((root, root))
    if diffs[-1] == 0:
        pieces.append((grid[-1], grid[-1]))
    merged = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return [Coincidence(lo, hi) for lo, hi in merged]


def coincidence_points(f: PLMap, g: PLMap, window) -> list:
    """Agreement components of ``f`` and ``g`` meeting the open ``window``.

    Isolated crossings come back with ``lo == hi``; agreement subintervals
    are reported by their endpoints, clipped to the window.
    """
    w = _as_interval(window)
    out = []
    for c in coincidence_set(f, g):
        lo, hi = max(c.lo, w.lo), min(c.hi, w.hi)
        if c.isolated:
            if w.lo < c.lo < w.hi:
                out.append(c)
        elif lo < hi:
            out.append(Coincidence(lo, hi))
    return out


def is_identity_on(f: PLMap, window) -> bool:
    """True iff ``f`` fixes every point of the closed window."""
    w = _as_interval(window)
    if evaluate(f, w.lo) != w.lo or evaluate(f, w.hi) != w.hi:
        return False
    return all(y == x for x, y in f.points if w.lo < x < w.hi)


def moved_breakpoint(f: PLMap) -> Union[Fraction, None]:
    """Least breakpoint that ``f`` moves, or None for the identity."""
    for x, y in f.points:
        if x != y:
            return x
    return None


def splice(base: PLMap, pieces: Iterable[Tuple[Fraction, Fraction, PLMap]]) -> PLMap:
    """Map equal to ``piece`` on each ``[lo, hi]`` and to ``base`` elsewhere.

    Pieces must be disjoint (touching allowed) and each piece must agree
    with ``base`` at both ends of its interval.
    """
    pieces = sorted(pieces, key=lambda t: t[0])
    pts = []
    cursor = ZERO
    for lo, hi, m in pieces:
        lo, hi = Q(lo), Q(hi)
        if lo < cursor or not lo < hi:
            raise PLMapError("splice intervals overlap or are empty")
        if evaluate(m, lo) != evaluate(base, lo) or evaluate(m, hi) != evaluate(base, hi):
            raise PLMapError(f"piece on [{lo}, {hi}] does not match the base map at its ends")
        pts.extend((x, y) for x, y in base.points if cursor <= x < lo)
        pts.append((lo, evaluate(m, lo)))
        pts.extend((x, y) for x, y in m.points if lo < x < hi)
        pts.append((hi, evaluate(m, hi)))
        cursor = hi
    pts.extend((x, y) for x, y in base.points if x > cursor or (x == cursor and not pts))
    dedup = []
    for pt in pts:
        if not dedup or dedup[-1][0] != pt[0]:
            dedup.append(pt)
    return make_plmap(dedup)


def restrict(f: PLMap, window) -> PLMap:
    """``f`` on the closed window, identity elsewhere (window ends must be fixed)."""
    w = _as_interval(window)
    return splice(IDENTITY, [(w.lo, w.hi, f)])
