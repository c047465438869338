import sys
from fractions import Fraction
from functools import lru_cache

from hypothesis import HealthCheck, settings, strategies as st

from plthompson.corpus import random_pair
from plthompson.plmap import make_plmap
from plthompson.words import GenWord, eval_word

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

CORPUS_SIZE = 520


@lru_cache(maxsize=None)
def corpus_pairs():
    """The shared differential corpus; generated once per session."""
    return tuple(random_pair(seed) for seed in range(CORPUS_SIZE))


def _points_from(xs, ys):
    return [(Fraction(0), Fraction(0))] + list(zip(xs, ys)) + [(Fraction(1), Fraction(1))]


@st.composite
def pl_maps(draw, max_breaks=5, bits=6):
    """Homeomorphisms with dyadic breakpoints and arbitrary rational slopes."""
    n = 2 ** bits
    k = draw(st.integers(0, max_breaks))
    xs = sorted(draw(st.sets(st.integers(1, n - 1), min_size=k, max_size=k)))
    ys = sorted(draw(st.sets(st.integers(1, n - 1), min_size=k, max_size=k)))
    return make_plmap(_points_from([Fraction(x, n) for x in xs], [Fraction(y, n) for y in ys]))


@st.composite
def gen_words(draw, max_index=3, max_len=6):
    letters = draw(st.lists(
        st.tuples(st.integers(0, max_index), st.sampled_from([-2, -1, 1, 2])),
        max_size=max_len))
    return GenWord(letters)


@st.composite
def f_elements(draw, max_index=3, max_len=5):
    return eval_word(draw(gen_words(max_index, max_len)))


rationals_01 = st.builds(Fraction, st.integers(0, 64), st.just(64))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
