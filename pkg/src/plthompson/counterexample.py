"""A standard copy of F whose join with x0 has a single orbital.

The pair f0 = x1^2 x2^-1 x1^-1, f1 = x1 x2^2 x3^-1 x2^-1 x1^-1 generates a
standard copy of F supported in (1/2, 3/4).  Adding x0 gives a subgroup
with one orbital (0, 1), yet every element is the identity near 0 exactly
when it is the identity near 1: the germs at the two ends are tied
together, since both are read off from the exponent sum of x0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .classify import decide_oracle
from .orbitals import subgroup_support
from .plmap import Interval, PLMap, format_rational
from .words import X0, eval_word, eval_word_over

F0_WORD = "x1^2 x2^-1 x1^-1"
F1_WORD = "x1 x2^2 x3^-1 x2^-1 x1^-1"
LABELS = ("x0", "f0", "f1")


def demo_generators() -> Tuple[PLMap, PLMap, PLMap]:
    return X0, eval_word(F0_WORD), eval_word(F1_WORD)


def germs(f: PLMap) -> Tuple[Fraction, Fraction]:
    """Slopes at 0 (from the right) and at 1 (from the left)."""
    return f.slope_right(0), f.slope_left(1)


@dataclass
class GermRow:
    label: str
    slope0: Fraction
    slope1: Fraction

    @property
    def identity_near_0(self) -> bool:
        return self.slope0 == 1

    @property
    def identity_near_1(self) -> bool:
        return self.slope1 == 1


@dataclass
class DemoReport:
    standard: bool
    support: List[Interval]
    table: List[GermRow]
    n_words: int
    seed: int
    biconditional_failures: List[str] = field(default_factory=list)
    product_failures: List[str] = field(default_factory=list)
    identity_both_ends: int = 0

    @property
    def single_orbital(self) -> bool:
        return self.support == [Interval(Fraction(0), Fraction(1))]

    @property
    def ok(self) -> bool:
        return (self.standard and self.single_orbital and not self.biconditional_failures
                and not self.product_failures)


def random_word(rng: random.Random, max_len: int = 20):
    n = rng.randint(1, max_len)
    return [(rng.randrange(3), rng.choice((-1, 1))) for _ in range(n)]


def word_text(w) -> str:
    return " ".join(LABELS[i] + ("" if e == 1 else f"^{e}") for i, e in w)


def run_demo(n_words: int = 1000, seed: int = 0, max_len: int = 20) -> DemoReport:
    x0, f0, f1 = demo_generators()
    gens = (x0, f0, f1)
    report = DemoReport(
        standard=decide_oracle(f0, f1),
        support=subgroup_support(list(gens)),
        table=[GermRow(lab, *germs(g)) for lab, g in zip(LABELS, gens)],
        n_words=n_words,
        seed=seed,
    )
    rng = random.Random(seed)
    for _ in range(n_words):
        w = random_word(rng, max_len)
        s0, s1 = germs(eval_word_over(w, gens))
        if (s0 == 1) != (s1 == 1):
            report.biconditional_failures.append(word_text(w))
        if s0 * s1 != 1:
            report.product_failures.append(word_text(w))
        if s0 == 1 and s1 == 1:
            report.identity_both_ends += 1
    return report


def format_demo(r: DemoReport) -> str:
    lines = [
        f"f0 = {F0_WORD}",
        f"f1 = {F1_WORD}",
        f"decide_oracle(f0, f1): {'standard' if r.standard else 'not standard'}",
        "support of <x0, f0, f1>: " + ", ".join(
            f"({format_rational(iv.lo)}, {format_rational(iv.hi)})" for iv in r.support),
        "",
        "germ    slope@0  slope@1  id-near-0  id-near-1",
    ]
    for row in r.table:
        lines.append(f"{row.label:<7} {format_rational(row.slope0):<8} "
                     f"{format_rational(row.slope1):<8} {str(row.identity_near_0):<10} "
                     f"{row.identity_near_1}")
    lines += [
        "",
        f"sampled words: {r.n_words} (seed {r.seed}, length <= 20)",
        f"identity near 0 <=> identity near 1: "
        f"{'holds' if not r.biconditional_failures else 'FAILS'} "
        f"({len(r.biconditional_failures)} failures, {r.identity_both_ends} words trivial at both ends)",
        f"slope@0 * slope@1 = 1: "
        f"{'holds' if not r.product_failures else 'FAILS'} ({len(r.product_failures)} failures)",
    ]
    for w in (r.biconditional_failures + r.product_failures)[:5]:
        lines.append(f"  counterexample word: {w}")
    return "\n".join(lines) + "\n"
