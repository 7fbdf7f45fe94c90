import itertools

import numpy as np
import pytest

from affine_group import (
    compose, elements_up_to_length, find_wmax, generator, identity,
    is_in_Wplus, length, longest_finite_element, weight_from_element,
)
from bruhat import (
    BruhatCache, BruhatError, OracleBoundError, bruhat_leq,
    enumerate_Wplus_ideal, enumerate_Wplus_ideal_by_lifting,
    interval_lower_sets, lower_interval, subword_oracle, wplus_descent,
)
from weights import RankConfig


def in_positive_root_cone(diff_eps):
    partial = 0
    for e in diff_eps[:-1]:
        partial += e
        if partial < 0:
            return False
    return True


def oracle_sweep(n, max_length):
    elements = [x for level in elements_up_to_length(n, n + 1, max_length) for x in level]
    for w in elements:
        below = lower_interval(w)
        cache = BruhatCache(w)
        for v in elements:
            assert bruhat_leq(v, w, cache) == (v in below), (v.key, w.key)


def test_trivial_comparisons(wmax3):
    e = identity(3, 4)
    assert bruhat_leq(e, wmax3)
    assert bruhat_leq(wmax3, wmax3)
    assert not bruhat_leq(wmax3, e)
    assert not bruhat_leq(generator(0, 3, 4), generator(1, 3, 4))


@pytest.mark.parametrize("n", [2, 3])
def test_lifting_agrees_with_subword_oracle(n):
    oracle_sweep(n, 8)


@pytest.mark.slow
def test_lifting_agrees_with_subword_oracle_rank_3_long():
    oracle_sweep(3, 10)


def test_subword_oracle_trivial_cases(wmax3):
    assert subword_oracle(identity(3, 4), wmax3)
    assert subword_oracle(generator(0, 3, 4), wmax3)


def test_subword_oracle_bound(wmax3, monkeypatch):
    with pytest.raises(OracleBoundError):
        subword_oracle(identity(3, 4), wmax3, max_length=6)
    monkeypatch.setenv("RIGHTSETS_ORACLE_MAXLEN", "5")
    with pytest.raises(OracleBoundError):
        subword_oracle(identity(3, 4), longest_finite_element(3, 4))


def test_lower_interval_sizes():
    assert lower_interval(identity(3, 4)) == {identity(3, 4)}
    assert len(lower_interval(generator(2, 3, 4))) == 2
    # the finite Weyl group of A_3 has 24 elements
    assert len(lower_interval(longest_finite_element(3, 4))) == 24


def test_cache_rejects_other_right_argument(wmax3):
    with pytest.raises(BruhatError):
        bruhat_leq(identity(3, 4), wmax3, BruhatCache(identity(3, 4)))


def test_cache_soundness_on_the_a4_ideal(ideal4):
    shared = {w.key: BruhatCache(w) for w in ideal4}
    for v, w in itertools.product(ideal4, repeat=2):
        assert bruhat_leq(v, w, shared[w.key]) == bruhat_leq(v, w)


def test_cache_soundness_on_random_pairs():
    elements = [x for level in elements_up_to_length(3, 4, 8) for x in level]
    rng = np.random.default_rng(7)
    shared, intervals = {}, {}
    for i, j in rng.integers(0, len(elements), size=(10_000, 2)):
        v, w = elements[i], elements[j]
        if w.key not in shared:
            shared[w.key] = BruhatCache(w)
            intervals[w.key] = lower_interval(w)
        assert bruhat_leq(v, w, shared[w.key]) == bruhat_leq(v, w) == (v in intervals[w.key])
    assert sum(cache.stats()["hits"] for cache in shared.values()) > 0


def test_cache_stats_count_memo_hits_after_a_partial_walk(wmax3):
    cache = BruhatCache(wmax3)
    e = identity(3, 4)
    assert bruhat_leq(e, wmax3, cache)
    assert (cache.stats()["hits"], cache.stats()["misses"]) == (0, 1)
    # s drops to e at depth 1, a state stored by the first walk
    s = generator(cache.step_at(0), 3, 4)
    assert bruhat_leq(s, wmax3, cache)
    assert (cache.stats()["hits"], cache.stats()["misses"]) == (1, 1)
    assert bruhat_leq(e, wmax3, cache)
    assert cache.stats()["hits"] == 2
    assert len(cache) == cache.stats()["entries"] > 0


def test_ideal_sizes(ideal3, ideal4, wmax3, wmax4):
    assert len(ideal3) == 8
    assert len(ideal4) == 52
    assert wmax3 in ideal3 and wmax4 in ideal4
    assert ideal4.members[0] == wmax4


def test_ideal_members_and_order(ideal4, wmax4):
    lengths = [length(m) for m in ideal4]
    assert lengths == sorted(lengths, reverse=True)
    for m in ideal4:
        assert is_in_Wplus(m)
        assert bruhat_leq(m, wmax4)


def test_lifting_enumeration_matches(ideal3, ideal4, wmax3, wmax4, cfg3, cfg4):
    assert enumerate_Wplus_ideal_by_lifting(wmax3, cfg3).members == ideal3.members
    assert enumerate_Wplus_ideal_by_lifting(wmax4, cfg4).members == ideal4.members


def test_parallel_filter_matches(ideal3, wmax3, cfg3):
    assert enumerate_Wplus_ideal(wmax3, cfg3, workers=2).members == ideal3.members


def test_wplus_descent_chain_reaches_w0(wmax4):
    x = wmax4
    while (step := wplus_descent(x)) is not None:
        x = compose(x, generator(step, 4, 5))
        assert is_in_Wplus(x)
    assert x == longest_finite_element(4, 5)


@pytest.mark.parametrize("ideal_name", ["ideal3", "ideal4"])
def test_interval_lower_sets_match_comparisons(ideal_name, request):
    ideal = request.getfixturevalue(ideal_name)
    masks = interval_lower_sets(ideal)
    assert masks.shape == (len(ideal), len(ideal))
    assert np.all(np.diag(masks))
    for (k, w), (j, v) in itertools.product(enumerate(ideal), repeat=2):
        assert masks[k, j] == bruhat_leq(v, w)


def test_partial_order_laws(ideal3):
    members = list(ideal3)
    for u, v in itertools.product(members, repeat=2):
        if bruhat_leq(u, v) and bruhat_leq(v, u):
            assert u == v
        if bruhat_leq(u, v) and u != v:
            assert length(u) < length(v)
    for u, v, w in itertools.product(members, repeat=3):
        if bruhat_leq(u, v) and bruhat_leq(v, w):
            assert bruhat_leq(u, w)


def test_bruhat_refines_root_order(ideal4):
    for v, w in itertools.product(ideal4, repeat=2):
        if bruhat_leq(v, w):
            top, low = weight_from_element(w).epsilon, weight_from_element(v).epsilon
            assert in_positive_root_cone([a - b for a, b in zip(top, low)])


# Counts agree with an independent check over affine permutations
# (Bruhat comparison by the window counting criterion) on all dominant
# regular candidates: 8, 52, 478, 5706 for A_3 .. A_6.
@pytest.mark.slow
@pytest.mark.parametrize("n, size", [(5, 478), (6, 5706)])
def test_large_ideal_cardinality(n, size):
    cfg = RankConfig(n)
    wmax = find_wmax(cfg)
    ideal = enumerate_Wplus_ideal(wmax, cfg)
    assert len(ideal) == size
    assert enumerate_Wplus_ideal_by_lifting(wmax, cfg).members == ideal.members
