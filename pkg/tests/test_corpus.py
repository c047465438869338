from plthompson.classify import decide_oracle
from plthompson.corpus import CONSTRUCTIVE, MODES, GenParams, corpus, random_pair, within_bounds
from plthompson.orbitals import orbitals_of
from plthompson.words import is_in_F

from conftest import corpus_pairs


def test_deterministic():
    for seed in (0, 5, 17):
        a, b = random_pair(seed), random_pair(seed)
        assert (a.f0, a.f1, a.expected, a.mode) == (b.f0, b.f1, b.expected, b.mode)


def test_nice_seed_is_standard():
    cp = random_pair(1, mode="nice")
    assert cp.expected and decide_oracle(cp.f0, cp.f1)


def test_condition_i_mutant_touches_left_end():
    cp = random_pair(2, mode="mutate-condition-i")
    assert not cp.expected and not decide_oracle(cp.f0, cp.f1)
    f1_orbs = orbitals_of(cp.f1)
    assert any(b.lo == o.lo or b.hi == o.hi
               for o in orbitals_of(cp.f0) for b in f1_orbs if o.lo <= b.lo and b.hi <= o.hi)


def test_empty_chain_is_the_nice_pair():
    a = random_pair(3, mode="perturb-chain", n_steps=0)
    b = random_pair(3, mode="nice")
    assert (a.f0, a.f1) == (b.f0, b.f1)


def test_every_mode_is_generated():
    for mode in MODES:
        cp = random_pair(40, mode=mode)
        assert cp.mode == mode
        if mode in CONSTRUCTIVE:
            assert cp.expected


def test_corpus_helper():
    pairs = corpus(5, seed=100)
    assert [cp.seed for cp in pairs] == list(range(100, 105))


def test_bounds_and_mix():
    params = GenParams()
    pairs = corpus_pairs()
    modes = {cp.mode for cp in pairs}
    assert modes == set(MODES)
    assert 0.3 < sum(cp.expected for cp in pairs) / len(pairs) < 0.8
    for cp in pairs:
        assert within_bounds([cp.f0, cp.f1], params), cp.seed
        assert is_in_F(cp.f0)
        if cp.mode != "mutate-nudge":
            assert is_in_F(cp.f1), cp.seed
