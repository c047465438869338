"""Words in the generators x0, x1, x2, ... and membership in F and F'."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

from .plmap import (
    IDENTITY, PLMap, commutator, compose, conjugate, invert, is_dyadic,
    is_power_of_two, make_plmap, moved_breakpoint, power,
)

X0 = make_plmap([(0, 0), (Fraction(1, 4), Fraction(1, 2)),
                 (Fraction(1, 2), Fraction(3, 4)), (1, 1)])
X1 = make_plmap([(0, 0), (Fraction(1, 2), Fraction(1, 2)),
                 (Fraction(5, 8), Fraction(3, 4)),
                 (Fraction(3, 4), Fraction(7, 8)), (1, 1)])


class WordSyntaxError(ValueError):
    pass


Letter = Tuple[int, int]


class GenWord(tuple):
    """Freely reduced sequence of ``(index, exponent)`` letters."""

    def __new__(cls, letters: Iterable[Letter] = ()):
        out = []
        for idx, exp in letters:
            if idx < 0:
                raise ValueError(f"negative generator index {idx}")
            if exp == 0:
                continue
            if out and out[-1][0] == idx:
                merged = out[-1][1] + exp
                out.pop()
                if merged:
                    out.append((idx, merged))
            else:
                out.append((idx, exp))
        return super().__new__(cls, out)

    def __mul__(self, other: "GenWord") -> "GenWord":
        return GenWord(list(self) + list(other))

    def inverse(self) -> "GenWord":
        return GenWord((i, -e) for i, e in reversed(self))

    def __str__(self) -> str:
        return " ".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self)

    def __repr__(self) -> str:
        return f"GenWord({list(self)!r})"


_TOKEN = re.compile(r"x(\d+)(?:\^([+-]?\d+))?\Z")


def parse_word(text: str) -> GenWord:
    """Parse ``"x1^2 x2^-1 x1^-1"`` style text into a reduced word."""
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"malformed token {tok!r}")
        letters.append((int(m.group(1)), int(m.group(2) or 1)))
    return GenWord(letters)


@lru_cache(maxsize=None)
def generator(k: int) -> PLMap:
    """``x_k``; for k >= 2 this is ``x1`` conjugated by ``x0^(k-1)``."""
    if k == 0:
        return X0
    if k == 1:
        return X1
    return conjugate(generator(k - 1), X0)


def eval_word(w) -> PLMap:
    if isinstance(w, str):
        w = parse_word(w)
    result = IDENTITY
    for idx, exp in w:
        result = compose(result, power(generator(idx), exp))
    return result


def eval_word_over(w: Sequence[Tuple[int, int]], gens: Sequence[PLMap]) -> PLMap:
    """Evaluate a word whose letter indices refer to ``gens``."""
    result = IDENTITY
    for idx, exp in w:
        result = compose(result, power(gens[idx], exp))
    return result


def is_in_F(f: PLMap) -> bool:
    return all(is_dyadic(x) and is_dyadic(y) for x, y in f.points) and \
        all(is_power_of_two(s) for s in f.slopes)


def is_in_F_prime(f: PLMap) -> bool:
    """Membership in the commutator subgroup: both end slopes equal 1."""
    if not is_in_F(f):
        raise ValueError("map is not an element of F")
    s = f.slopes
    return s[0] == 1 and s[-1] == 1


@dataclass(frozen=True)
class RelationReport:
    """Outcome of the standard relations for a candidate pair.

    Each ``*_witness`` is the least breakpoint moved by the corresponding
    commutator, present only when that commutator is not the identity.
    """

    rel1: bool
    rel2: bool
    commuting: bool
    rel1_witness: Optional[Fraction] = None
    rel2_witness: Optional[Fraction] = None
    commuting_witness: Optional[Fraction] = None

    @property
    def standard(self) -> bool:
        return self.rel1 and self.rel2 and not self.commuting


def relators(f0: PLMap, f1: PLMap) -> Tuple[PLMap, PLMap]:
    """The two relator elements of the finite presentation, evaluated on (f0, f1)."""
    a = compose(f0, invert(f1))
    f2 = conjugate(f1, f0)
    f3 = conjugate(f2, f0)
    return commutator(a, f2), commutator(a, f3)


def check_standard_relations(f0: PLMap, f1: PLMap) -> RelationReport:
    c1, c2 = relators(f0, f1)
    cc = commutator(f0, f1)
    return RelationReport(
        rel1=c1.is_identity(),
        rel2=c2.is_identity(),
        commuting=cc.is_identity(),
        rel1_witness=moved_breakpoint(c1),
        rel2_witness=moved_breakpoint(c2),
        commuting_witness=moved_breakpoint(cc),
    )
