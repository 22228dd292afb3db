import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp
from scipy import stats

from sbm_lab import kernels
from sbm_lab.graph import SbmModel, Partition, is_member
from sbm_lab.sampler import (SeedSpec, derive_seed, derive_seeds, sample_iid,
                             sample_uniform, splitmix64, uniform_block_counts,
                             uniform_block_counts_batch)

TOY = SbmModel([1, 2], [[0, 2], [0, 0]])  # one block pair with 2 positions, 2 edges


def stars_and_bars_outcomes(positions, m):
    """Every arrangement of m stars among positions - 1 bars, decoded by hand."""
    out = []
    for stars in itertools.combinations(range(positions + m - 1), m):
        counts = [0] * positions
        bar = 0
        for slot in range(positions + m - 1):
            if slot in stars:
                counts[bar] += 1
            else:
                bar += 1
        out.append(tuple(counts))
    return out


def test_toy_enumeration_oracle():
    outcomes = stars_and_bars_outcomes(2, 2)
    assert sorted(outcomes) == [(0, 2), (1, 1), (2, 0)]
    assert len(set(stars_and_bars_outcomes(4, 29))) == 4960


@st.composite
def small_models(draw):
    p = draw(st.integers(1, 4))
    sizes = draw(hnp.arrays(np.int64, p, elements=st.integers(1, 6)))
    M = draw(hnp.arrays(np.int64, (p, p), elements=st.integers(0, 40)))
    return SbmModel(sizes, M)


@given(small_models(), st.integers(0, 2 ** 64 - 1), st.sampled_from([sample_uniform, sample_iid]))
def test_samples_are_in_the_ensemble(model, seed, sampler):
    g = sampler(model, SeedSpec(seed))
    assert is_member(g, model, model.partition())


@given(small_models(), st.integers(0, 2 ** 32))
def test_sample_respects_custom_partition(model, seed):
    rng = np.random.default_rng(seed)
    part = Partition(rng.permutation(model.partition().assignment))
    assert is_member(sample_uniform(model, seed, part), model, part)


def test_single_configuration_ensemble():
    model = SbmModel([1], [[2]])
    for k in range(20):
        assert sample_uniform(model, SeedSpec(3, k)).W.tolist() == [[2]]


def test_zero_model_gives_empty_graph():
    g = sample_iid(SbmModel([3, 2], np.zeros((2, 2))), 0)
    assert g.total_edges == 0


def test_determinism_byte_for_byte():
    model = SbmModel([5, 3], [[40, 2], [7, 30]])
    a = sample_uniform(model, SeedSpec(99, 4)).W.tobytes()
    b = sample_uniform(model, SeedSpec(99, 4)).W.tobytes()
    c = sample_uniform(model, SeedSpec(99, 5)).W.tobytes()
    assert a == b and a != c


@pytest.mark.skipif(kernels.numba_backend is None, reason="numba not installed")
def test_backends_produce_identical_samples(monkeypatch):
    model = SbmModel([6, 4, 4], [[300, 3, 0], [5, 40, 1], [0, 2, 16]])
    graphs = []
    for be in (kernels.numpy_backend, kernels.numba_backend):
        monkeypatch.setattr(kernels, "floyd_subset", be.floyd_subset)
        monkeypatch.setattr(kernels, "stars_to_counts", be.stars_to_counts)
        graphs.append(sample_uniform(model, SeedSpec(7, 1)))
    assert graphs[0] == graphs[1]


def _toy_frequencies(sampler, n):
    counts = Counter()
    for k in range(n):
        W = sampler(TOY, SeedSpec(2026, k)).W
        counts[(int(W[0, 1]), int(W[0, 2]))] += 1
    return {key: v / n for key, v in counts.items()}


def test_uniform_toy_frequencies():
    freq = _toy_frequencies(sample_uniform, 100_000)
    assert set(freq) == set(stars_and_bars_outcomes(2, 2))
    for f in freq.values():
        assert abs(f - 1 / 3) <= 0.02


def test_iid_toy_frequencies():
    # oracle: both edges independently choose one of two positions
    placements = Counter(tuple(np.bincount(p, minlength=2)) for p in itertools.product(range(2), repeat=2))
    expect = {k: v / 4 for k, v in placements.items()}
    freq = _toy_frequencies(sample_iid, 40_000)
    for key, f in expect.items():
        assert abs(freq[key] - f) <= 0.02


def test_block_counts_are_exact(rng):
    for positions, m in [(1, 10), (7, 0), (50, 3), (3, 500), (10_000, 2000)]:
        c = uniform_block_counts(rng, positions, m)
        assert c.shape == (positions,) and c.sum() == m and (c >= 0).all()


def _chi_square_p(positions, m, n_draws, seed):
    outcomes = sorted(set(stars_and_bars_outcomes(positions, m)))
    index = {o: i for i, o in enumerate(outcomes)}
    draws = uniform_block_counts_batch(np.random.default_rng(seed), positions, m, n_draws)
    assert (draws.sum(axis=1) == m).all()
    # encode each count vector in base m+1
    codes = draws @ ((m + 1) ** np.arange(positions))
    table = {int(np.array(o) @ ((m + 1) ** np.arange(positions))): index[o] for o in outcomes}
    uniq, freq = np.unique(codes, return_counts=True)
    observed = np.zeros(len(outcomes))
    for code, f in zip(uniq.tolist(), freq.tolist()):
        observed[table[code]] = f
    return stats.chisquare(observed).pvalue


def test_chi_square_small_pair():
    assert _chi_square_p(3, 4, 60_000, 1) > 1e-3


def test_derive_seed_reference_values():
    # first output of the reference splitmix64 generator with state 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert derive_seed(0, 0) == 0xE220A8397B1DCDAF
    assert derive_seed(0, 1) == 0x6E789E6AA1B965F4
    assert derive_seed(12345, 7) == derive_seed(12345, 7)


def test_derive_seeds_matches_scalar():
    idx = np.arange(0, 5000, 37)
    vec = derive_seeds(2 ** 63 + 17, idx)
    assert [int(x) for x in vec] == [derive_seed(2 ** 63 + 17, int(i)) for i in idx]


def test_derive_seed_no_collisions():
    seeds = derive_seeds(0xDEADBEEF, np.arange(1_000_000))
    assert np.unique(seeds).size == 1_000_000


@pytest.mark.parametrize("index", [0, 1, 999_999])
def test_derived_stream_equidistributed(index):
    u = SeedSpec(42, index).rng().random(100_000)
    sigma = np.sqrt(1 / 12 / u.size)
    assert abs(u.mean() - 0.5) < 4 * sigma


def test_derive_seed_rejects_negative():
    with pytest.raises(ValueError):
        derive_seed(-1, 0)
