import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from toric_exc.lattice import OrthantSystem, UnboundedRegionError


def brute(W, h, R):
    pts = [y for y in itertools.product(range(R + 1), repeat=W.shape[1]) if np.all(W @ np.array(y) <= h)]
    return pts


def test_simplex_count():
    W = np.array([[1, 1]])
    sys_ = OrthantSystem(W)
    assert sys_.bounded
    assert sys_.count([3]) == 10
    assert sys_.count([-1]) == 0
    assert not sys_.exists([-1])


def test_unbounded_count_raises_but_exists_decides():
    W = np.array([[1, -1]])
    sys_ = OrthantSystem(W)
    assert not sys_.bounded
    assert sys_.exists([-5])
    with pytest.raises(UnboundedRegionError):
        sys_.count([0])


def test_empty_unbounded_region_counts_zero():
    sys_ = OrthantSystem(np.array([[1, -1], [-1, 1]]))
    assert sys_.count([-1, -1]) == 0


@settings(max_examples=150)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 100_000))
def test_bounded_regions_match_brute(rho, d, seed):
    rng = np.random.default_rng(seed)
    W = rng.integers(-2, 3, (rho, d))
    # force boundedness with a positive row
    W = np.vstack([W, np.ones((1, d), dtype=np.int64)])
    h = np.append(rng.integers(-3, 5, rho), rng.integers(0, 6))
    sys_ = OrthantSystem(W)
    pts = brute(W, h, int(h[-1]) if h[-1] >= 0 else 0)
    assert sys_.count(h) == len(pts)
    assert sys_.exists(h) == bool(pts)
    ub = sys_.upper_bounds(h)
    if pts:
        assert all(np.all(np.array(p) <= ub) for p in pts)


@settings(max_examples=100)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 100_000))
def test_exists_many_matches_single(rho, d, seed):
    rng = np.random.default_rng(seed)
    W = rng.integers(-2, 3, (rho, d))
    H = rng.integers(-4, 5, (12, rho))
    sys_ = OrthantSystem(W)
    many = sys_.exists_many(H)
    assert many.tolist() == [sys_.exists(h) for h in H]
    # any nonempty region reaches into a box of modest size
    for h, e in zip(H, many):
        assert e == bool(brute(W, h, 12)) or e
