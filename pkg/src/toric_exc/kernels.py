"""Hot integer kernels.

Each kernel exists twice: a numba-compiled loop (``*_nb``) and a vectorised
numpy implementation (``*_np``). The public name dispatches on
:data:`toric_exc._accel.USE_NUMBA`. Everything is ``int64``; callers are
responsible for keeping magnitudes far below ``2**62``.
"""
import itertools

import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "count_points",
    "floor_split",
    "count_hitting_sets",
    "count_points_nb",
    "count_points_np",
    "floor_split_nb",
    "floor_split_np",
    "count_hitting_sets_nb",
    "count_hitting_sets_np",
]


def _suffix_min(W, ub):
    rho, d = W.shape
    suf = np.zeros((d + 1, rho), dtype=np.int64)
    for k in range(d - 1, -1, -1):
        suf[k] = suf[k + 1] + np.minimum(W[:, k], 0) * ub[k]
    return suf


# ---------------------------------------------------------------------------
# integer points y in [0, ub] with W y <= h


@njit(cache=True)
def _count_points_loop(W, h, ub, limit):
    rho, d = W.shape
    suf = np.zeros((d + 1, rho), dtype=np.int64)
    for k in range(d - 1, -1, -1):
        for j in range(rho):
            w = W[j, k]
            suf[k, j] = suf[k + 1, j] + (w * ub[k] if w < 0 else 0)
    partial = np.zeros((d + 1, rho), dtype=np.int64)
    y = np.zeros(d, dtype=np.int64)
    y[0] = -1
    count = 0
    k = 0
    while k >= 0:
        y[k] += 1
        if y[k] > ub[k]:
            k -= 1
            continue
        ok = True
        dead = True
        for j in range(rho):
            val = partial[k, j] + W[j, k] * y[k]
            if val + suf[k + 1, j] > h[j]:
                ok = False
                if W[j, k] < 0:
                    dead = False
            partial[k + 1, j] = val
        if not ok:
            if dead:
                # every violated row grows with y[k]: nothing further at this level
                k -= 1
            continue
        if k == d - 1:
            count += 1
            if limit > 0 and count >= limit:
                return count
        else:
            k += 1
            y[k] = -1
    return count


def count_points_nb(W, h, ub, limit=0):
    W = np.ascontiguousarray(W, dtype=np.int64)
    h = np.ascontiguousarray(h, dtype=np.int64)
    ub = np.ascontiguousarray(ub, dtype=np.int64)
    if W.shape[1] == 0:
        return int(np.all(h >= 0))
    if np.any(ub < 0):
        return 0
    return int(_count_points_loop(W, h, ub, int(limit)))


def count_points_np(W, h, ub, limit=0):
    W = np.asarray(W, dtype=np.int64)
    h = np.asarray(h, dtype=np.int64)
    ub = np.asarray(ub, dtype=np.int64)
    rho, d = W.shape
    if d == 0:
        return int(np.all(h >= 0))
    if np.any(ub < 0):
        return 0
    suf = _suffix_min(W, ub)
    partial = np.zeros((1, rho), dtype=np.int64)
    for k in range(d):
        steps = np.arange(ub[k] + 1, dtype=np.int64)
        grown = partial[:, None, :] + steps[None, :, None] * W[:, k][None, None, :]
        grown = grown.reshape(-1, rho)
        partial = grown[np.all(grown + suf[k + 1] <= h, axis=1)]
        if partial.shape[0] == 0:
            return 0
    n = partial.shape[0]
    return int(min(n, limit)) if limit > 0 else int(n)


# ---------------------------------------------------------------------------
# Bondal rounding: floor((a + G chi) / m) for chi in {0..m-1}^n, lexicographic


def _characters(n, m):
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((m,) * n, dtype=np.int64).reshape(n, -1).T
    return np.ascontiguousarray(grid)


@njit(cache=True)
def _floor_split_loop(G, a, m):
    N, n = G.shape
    total = 1
    for _ in range(n):
        total *= m
    out = np.empty((total, N), dtype=np.int64)
    chi = np.zeros(n, dtype=np.int64)
    for idx in range(total):
        rem = idx
        for k in range(n - 1, -1, -1):
            chi[k] = rem % m
            rem //= m
        for j in range(N):
            s = a[j]
            for k in range(n):
                s += G[j, k] * chi[k]
            q = s // m
            out[idx, j] = q
    return out


def floor_split_nb(G, a, m):
    G = np.ascontiguousarray(G, dtype=np.int64)
    a = np.ascontiguousarray(a, dtype=np.int64)
    return _floor_split_loop(G, a, int(m))


def floor_split_np(G, a, m):
    G = np.asarray(G, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64)
    chars = _characters(G.shape[1], int(m))
    return np.floor_divide(chars @ G.T + a[None, :], int(m))


# ---------------------------------------------------------------------------
# number of s-subsets of {0..N-1} meeting every row of a membership matrix


@njit(cache=True)
def _count_hitting_loop(member, s):
    p, N = member.shape
    if s > N:
        return 0
    idx = np.arange(s)
    count = 0
    while True:
        ok = True
        for q in range(p):
            hit = False
            for t in range(s):
                if member[q, idx[t]]:
                    hit = True
                    break
            if not hit:
                ok = False
                break
        if ok:
            count += 1
        i = s - 1
        while i >= 0 and idx[i] == N - s + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for t in range(i + 1, s):
            idx[t] = idx[t - 1] + 1
    return count


def count_hitting_sets_nb(member, s):
    member = np.ascontiguousarray(member, dtype=np.bool_)
    if s == 0:
        return int(member.shape[0] == 0)
    return int(_count_hitting_loop(member, int(s)))


def count_hitting_sets_np(member, s, chunk=1 << 16):
    member = np.asarray(member, dtype=bool)
    p, N = member.shape
    if s == 0:
        return int(p == 0)
    combos = itertools.combinations(range(N), s)
    count = 0
    while True:
        block = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, chunk)),
            dtype=np.int64,
        )
        if block.size == 0:
            return count
        block = block.reshape(-1, s)
        hits = member[:, block].any(axis=2)
        count += int(hits.all(axis=0).sum())


if USE_NUMBA:
    count_points = count_points_nb
    floor_split = floor_split_nb
    count_hitting_sets = count_hitting_sets_nb
else:  # pragma: no cover - exercised with TORIC_EXC_NUMBA=0
    count_points = count_points_np
    floor_split = floor_split_np
    count_hitting_sets = count_hitting_sets_np
