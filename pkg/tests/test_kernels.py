import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toric_exc import kernels
from toric_exc._accel import HAVE_NUMBA, USE_NUMBA


def brute_count(W, h, ub):
    ranges = [range(int(u) + 1) for u in ub]
    return sum(bool(np.all(W @ np.array(y) <= h)) for y in itertools.product(*ranges))


@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10_000))
def test_count_points_agree(rho, d, seed):
    rng = np.random.default_rng(seed)
    W = rng.integers(-3, 4, (rho, d)).astype(np.int64)
    h = rng.integers(-4, 7, rho).astype(np.int64)
    ub = rng.integers(0, 5, d).astype(np.int64)
    expect = brute_count(W, h, ub)
    assert kernels.count_points_np(W, h, ub) == expect
    assert kernels.count_points_nb(W, h, ub) == expect
    assert kernels.count_points_nb(W, h, ub, 1) == min(expect, 1)
    assert kernels.count_points_np(W, h, ub, 1) == min(expect, 1)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_floor_split_agree(m):
    rng = np.random.default_rng(m)
    G = rng.integers(-3, 4, (6, 3)).astype(np.int64)
    a = rng.integers(-5, 6, 6).astype(np.int64)
    out_nb = kernels.floor_split_nb(G, a, m)
    out_np = kernels.floor_split_np(G, a, m)
    assert out_nb.shape == (m ** 3, 6)
    assert np.array_equal(out_nb, out_np)
    chis = list(itertools.product(range(m), repeat=3))
    ref = np.array([[(ai + int(np.dot(c, g))) // m for ai, g in zip(a, G)] for c in chis])
    assert np.array_equal(out_np, ref)


def test_floor_is_floor_not_truncation():
    G = np.array([[1], [-1]], dtype=np.int64)
    a = np.array([-1, -1], dtype=np.int64)
    out = kernels.floor_split(G, a, 2)
    # chi = 0: floor(-1/2) = -1 twice; chi = 1: floor(0/2) = 0, floor(-2/2) = -1
    assert out.tolist() == [[-1, -1], [0, -1]]


@given(st.integers(1, 5), st.integers(2, 8), st.integers(0, 3), st.integers(0, 10_000))
def test_count_hitting_sets_agree(p, N, s, seed):
    s = min(s, N)
    rng = np.random.default_rng(seed)
    member = rng.random((p, N)) < 0.4
    expect = sum(all(member[q, list(c)].any() for q in range(p)) for c in itertools.combinations(range(N), s))
    assert kernels.count_hitting_sets_np(member, s) == expect
    assert kernels.count_hitting_sets_nb(member, s) == expect


def test_dispatch_matches_flag():
    if USE_NUMBA:
        assert kernels.count_points is kernels.count_points_nb
    else:
        assert kernels.count_points is kernels.count_points_np
    assert USE_NUMBA <= HAVE_NUMBA
