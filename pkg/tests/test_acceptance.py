"""End-to-end acceptance checks, one per criterion.

Each check prints a single PASS/FAIL line with its timing; the lines are
collected again in the pytest terminal summary.  Run stand-alone with
``python tests/test_acceptance.py`` to see only those lines.
"""

import contextlib
import io
import random
import sys
import time
from fractions import Fraction as F

from plthompson.classify import (
    Decision, analyzable_orbitals, analyze_orbital, containment_check, decide_oracle,
    decide_structural, nesting_check, shared_orbital_commute_check,
)
from plthompson.cli import main as cli_main
from plthompson.construct import common_root, decompose, replay
from plthompson.corpus import random_pair
from plthompson.counterexample import demo_generators, run_demo
from plthompson.orbitals import Sign, boundary_slopes, corresponding_orbital, orbitals_of, subgroup_support
from plthompson.plmap import (
    IDENTITY, Interval, coincidence_set, commutator, compose, conjugate, flip, format_rational, invert,
    is_dyadic, is_power_of_two, power, restrict,
)
from plthompson.words import X0, X1, eval_word, generator, is_in_F, is_in_F_prime

RESULTS = []
N_CORPUS = 520


def report(n, ok, detail, elapsed, limit=None):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"{status} criterion {n}: {detail} [{elapsed:.2f}s{budget}]"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


def random_word(rng, max_index=3, max_len=6):
    n = rng.randint(0, max_len)
    return " ".join(f"x{rng.randint(0, max_index)}^{rng.choice((-1, 1))}" for _ in range(n))


_CORPUS = []


def fresh_corpus():
    if not _CORPUS:
        _CORPUS.extend(random_pair(seed) for seed in range(N_CORPUS))
    return _CORPUS


def up_view(f0, f1, orb):
    if orb.sign is Sign.UP:
        return f0, f1, orb
    return flip(f0), flip(f1), orb.flipped()


# -- criteria -------------------------------------------------------------------

def test_criterion_1_standard_generators():
    t = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["check-pair", "--word", "x0", "--word", "x1", "--method", "both"])
    a = compose(X0, invert(X1))
    rel1 = commutator(a, conjugate(X1, X0)) == IDENTITY
    rel2 = commutator(a, conjugate(X1, power(X0, 2))) == IDENTITY
    out = buf.getvalue().strip()
    ok = code == 0 and out == "standard (both methods agree)" and rel1 and rel2
    report(1, ok, f"check-pair x0 x1 -> '{out}', exit {code}; relations {rel1}/{rel2}",
           time.perf_counter() - t, 1)


def test_criterion_2_tower():
    t = time.perf_counter()
    bad = [(i, j) for i in range(6) for j in range(i + 1, 6)
           if conjugate(generator(j), generator(i)) != generator(j + 1)]
    report(2, not bad, f"x_j^(x_i) = x_(j+1) for all 0 <= i < j <= 5, failures {bad}",
           time.perf_counter() - t, 1)


def test_criterion_3_differential():
    t = time.perf_counter()
    pairs = fresh_corpus()
    disagree, unresolved, indeterminate = [], [], 0
    bound = 2 ** 20
    too_big = [cp.seed for cp in pairs
               if any(v.denominator > bound for f in (cp.f0, cp.f1) for pt in f.points for v in pt)]
    for cp in pairs:
        v = decide_structural(cp.f0, cp.f1)
        oracle = decide_oracle(cp.f0, cp.f1)
        if v.decision is Decision.INDETERMINATE:
            indeterminate += 1
            if oracle is None:
                unresolved.append(cp.seed)
        elif v.standard != oracle:
            disagree.append(cp.seed)
    modes = sorted({cp.mode for cp in pairs})
    ok = len(pairs) >= 500 and not disagree and not unresolved and not too_big
    report(3, ok, f"{len(pairs)} pairs over {len(modes)} modes, {len(disagree)} disagreements, "
                  f"indeterminate {indeterminate}/{len(pairs)} ({100 * indeterminate / len(pairs):.1f}%) "
                  f"all resolved by oracle, oversized {len(too_big)}",
           time.perf_counter() - t, 60)


def test_criterion_4_necessity():
    t = time.perf_counter()
    violations, checked = [], 0
    for cp in fresh_corpus():
        if not decide_oracle(cp.f0, cp.f1):
            continue
        if not nesting_check(cp.f0, cp.f1):
            violations.append((cp.seed, "nests"))
        if not containment_check(cp.f0, cp.f1):
            violations.append((cp.seed, "nested"))
        for orb in analyzable_orbitals(cp.f0, cp.f1):
            checked += 1
            g0, g1, o = up_view(cp.f0, cp.f1, orb)
            an = analyze_orbital(g0, g1, o)
            if not an.passes:
                violations.append((cp.seed, f"condition {an.first_failed()}"))
                continue
            bn, p = an.f1_orbitals[-1].lo, an.p_or_rho
            for c in coincidence_set(g0, g1):
                for q in {c.lo, c.hi}:
                    if o.lo < q < p and not bn < q:
                        violations.append((cp.seed, "coincidence below last f1-orbital"))
            if g0(an.f1_orbitals[0].lo) < an.r:
                violations.append((cp.seed, "first orbital image below r"))
    report(4, not violations, f"{checked} orbitals of oracle-positive pairs, violations {violations[:5]}",
           time.perf_counter() - t)


def test_criterion_5_rel2_sufficiency():
    t = time.perf_counter()
    failures, n, rel1_fails = [], 0, 0
    for cp in fresh_corpus():
        f0, f1 = cp.f0, cp.f1
        if commutator(f0, f1) == IDENTITY:
            continue
        if not (nesting_check(f0, f1) and containment_check(f0, f1) and shared_orbital_commute_check(f0, f1)):
            continue
        if not all(analyze_orbital(f0, f1, o).passes for o in analyzable_orbitals(f0, f1)):
            continue
        n += 1
        a = compose(f0, invert(f1))
        if commutator(a, conjugate(f1, power(f0, 2))) != IDENTITY:
            failures.append(cp.seed)
        rel1_fails += commutator(a, conjugate(f1, f0)) != IDENTITY
    ok = not failures and n > 0 and rel1_fails > 0
    report(5, ok, f"rel2 exact on {n - len(failures)}/{n} pairs passing i-v, "
                  f"{rel1_fails} of them failing rel1", time.perf_counter() - t)


def test_criterion_6_round_trip():
    t = time.perf_counter()
    pairs = [cp for cp in fresh_corpus() if cp.expected][:100]
    bad = []
    steps = 0
    for cp in pairs:
        tr = decompose(cp.f0, cp.f1)
        steps += len(tr.steps)
        if replay(cp.f0, tr.nice_f1, tr.steps) != cp.f1:
            bad.append((cp.seed, "replay"))
        f0, f1 = tr.nice_pair
        for o in analyzable_orbitals(f0, f1):
            an = analyze_orbital(f0, f1, o)
            if not an.nice or an.outside():
                bad.append((cp.seed, "nice pair"))
    ok = len(pairs) == 100 and not bad
    report(6, ok, f"{len(pairs)} standard pairs, {steps} steps replayed, failures {bad[:5]}",
           time.perf_counter() - t, 30)


def test_criterion_7_common_root():
    t = time.perf_counter()
    rng = random.Random(2024)
    bad, n = [], 0
    while n < 100:
        phi = eval_word(random_word(rng, max_index=2, max_len=3))
        orbs = orbitals_of(phi)
        if not orbs:
            continue
        o = rng.choice(orbs)
        m, k = rng.choice([i for i in range(-6, 7) if i]), rng.choice([i for i in range(-6, 7) if i])
        piece = restrict(phi, o.interval)
        g, h = power(piece, m), power(piece, k)
        cert = common_root(g, h, o.interval)
        if power(cert.root, cert.exp_g) != g or power(cert.root, cert.exp_h) != h:
            bad.append((str(phi), m, k))
        n += 1
    report(7, not bad, f"{n} (phi, m, n) triples, certificate failures {len(bad)}",
           time.perf_counter() - t)


def test_criterion_8_covariance():
    t = time.perf_counter()
    rng = random.Random(8)
    bad, n, orbs_seen = [], 0, 0
    while n < 200:
        f, h = eval_word(random_word(rng)), eval_word(random_word(rng))
        g = conjugate(f, h)
        orbs = orbitals_of(f)
        if [corresponding_orbital(o, h) for o in orbs] != orbitals_of(g):
            bad.append(n)
        for o in orbs:
            if boundary_slopes(g, corresponding_orbital(o, h)) != boundary_slopes(f, o):
                bad.append(n)
        orbs_seen += len(orbs)
        n += 1
    report(8, not bad, f"{n} (f, h) pairs, {orbs_seen} orbitals, mismatches {len(bad)}",
           time.perf_counter() - t)


def test_criterion_9_demo():
    t = time.perf_counter()
    x0, f0, f1 = demo_generators()
    standard = decide_oracle(f0, f1)
    support = subgroup_support([x0, f0, f1])
    r = run_demo(1000, seed=0, max_len=20)
    ok = standard and support == [Interval(F(0), F(1))] and r.ok
    report(9, ok, f"oracle standard {standard}, support {[(format_rational(i.lo), format_rational(i.hi)) for i in support]}, "
                  f"1000 words: {len(r.biconditional_failures)} biconditional and "
                  f"{len(r.product_failures)} slope-product failures",
           time.perf_counter() - t, 30)


def test_criterion_10_membership():
    t = time.perf_counter()
    rng = random.Random(10)
    bad, in_prime = [], 0
    for i in range(200):
        f = eval_word(random_word(rng, max_index=4, max_len=8))
        dyadic = all(is_dyadic(x) and is_dyadic(y) for x, y in f.points)
        slopes = all(is_power_of_two(s) for s in f.slopes)
        ends = f.slope_right(0) == 1 and f.slope_left(1) == 1
        if not (dyadic and slopes and is_in_F(f)) or is_in_F_prime(f) != ends:
            bad.append(i)
        in_prime += ends
    report(10, not bad, f"200 words in F, {in_prime} in F', mismatches {len(bad)}",
           time.perf_counter() - t)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[2]) if kv[0].startswith("test_criterion_") else 0):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
