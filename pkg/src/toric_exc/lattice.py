"""Integer points of ``{y in Z^d : y >= 0, W y <= h}`` for a fixed ``W``.

The matrix ``W`` is fixed per instance and ``h`` varies, so the work that
depends only on ``W`` (candidate vertex bases and extreme rays of the
recession cone) is done once. For a given ``h`` the exact LP maximum of
every coordinate is read off the feasible basic solutions; it bounds a box
that the enumeration kernel then searches.

Unbounded regions are still decided exactly: every integer point can be
translated by integer combinations of extreme rays into
``conv(vertices) + [0, 1) * rays``, so the box grows by the ray sum.
"""
from __future__ import annotations

import itertools

import numpy as np

from . import intlinalg
from .kernels import count_points

__all__ = ["UnboundedRegionError", "OrthantSystem"]


class UnboundedRegionError(ValueError):
    """Counting was requested on a region with infinitely many points."""


def _adjugate(M):
    s = len(M)
    if s == 1:
        return [[1]]
    adj = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            adj[j][i] = (-1) ** (i + j) * intlinalg.det(minor)
    return adj


class OrthantSystem:
    """Region ``{y >= 0 : W y <= h}`` with ``W`` an integer ``rho x d`` matrix."""

    def __init__(self, W):
        W = np.asarray(W, dtype=np.int64)
        if W.ndim != 2:
            raise ValueError("W must be a matrix")
        self.W = W
        self.rho, self.d = W.shape
        Wl = W.tolist()
        self._groups = []
        for s in range(1, min(self.rho, self.d) + 1):
            Ss, Ts, adjs, dets = [], [], [], []
            for S in itertools.combinations(range(self.d), s):
                for T in itertools.combinations(range(self.rho), s):
                    M = [[Wl[t][c] for c in S] for t in T]
                    dt = intlinalg.det(M)
                    if dt == 0:
                        continue
                    adj = _adjugate(M)
                    if dt < 0:
                        dt = -dt
                        adj = [[-x for x in row] for row in adj]
                    Ss.append(S)
                    Ts.append(T)
                    adjs.append(adj)
                    dets.append(dt)
            if Ss:
                S_arr = np.array(Ss, dtype=np.int64)
                self._groups.append((
                    S_arr,
                    np.array(Ts, dtype=np.int64),
                    np.array(adjs, dtype=np.int64),
                    np.array(dets, dtype=np.int64),
                    W[:, S_arr].transpose(1, 0, 2),  # (K, rho, s)
                ))
        self.rays = self._extreme_rays(Wl)
        self.bounded = not self.rays
        self._ray_sum = (np.sum(np.array(self.rays, dtype=np.int64), axis=0)
                         if self.rays else np.zeros(self.d, dtype=np.int64))

    def _extreme_rays(self, Wl):
        rays = set()
        for s in range(1, min(self.rho + 1, self.d) + 1):
            for S in itertools.combinations(range(self.d), s):
                sub = [[Wl[t][c] for c in S] for t in range(self.rho)]
                for T in itertools.combinations(range(self.rho), s - 1):
                    if s == 1:
                        vec = [1]
                    else:
                        vec = intlinalg.integer_nullvector([sub[t] for t in T])
                        if vec is None:
                            continue
                        if all(x <= 0 for x in vec):
                            vec = [-x for x in vec]
                        if not all(x > 0 for x in vec):
                            continue
                    if all(sum(a * b for a, b in zip(row, vec)) <= 0 for row in sub):
                        full = [0] * self.d
                        for c, x in zip(S, vec):
                            full[c] = x
                        rays.add(tuple(full))
        return sorted(rays)

    def upper_bounds(self, h):
        """Box ``[0, ub]`` containing a point of every nonempty region; ``None`` if empty."""
        h = np.asarray(h, dtype=np.int64)
        ub = np.zeros(self.d, dtype=np.int64)
        feasible = bool(np.all(h >= 0))  # the vertex y = 0
        for S, T, adj, dets, WS in self._groups:
            num = np.einsum("kij,kj->ki", adj, h[T])
            ok = np.all(num >= 0, axis=1)
            if not ok.any():
                continue
            lhs = np.einsum("kjs,ks->kj", WS, num)
            ok &= np.all(lhs <= dets[:, None] * h[None, :], axis=1)
            if not ok.any():
                continue
            feasible = True
            fl = num[ok] // dets[ok][:, None]
            np.maximum.at(ub, S[ok].ravel(), fl.ravel())
        if not feasible:
            return None
        if not self.bounded:
            ub = ub + self._ray_sum
        return ub

    def upper_bounds_many(self, H):
        """Vectorised :meth:`upper_bounds` over the rows of ``H``.

        Returns ``(feasible, ub)``: a boolean mask and an ``(m, d)`` array of
        bounds, meaningful only where ``feasible`` holds.
        """
        H = np.asarray(H, dtype=np.int64).reshape(-1, self.rho)
        m = H.shape[0]
        ub = np.zeros((m, self.d), dtype=np.int64)
        feasible = np.all(H >= 0, axis=1)
        rows = np.arange(m)[:, None]
        for S, T, adj, dets, WS in self._groups:
            hT = H[:, T]  # (m, K, s)
            num = np.einsum("kij,mkj->mki", adj, hT)
            ok = np.all(num >= 0, axis=2)
            if not ok.any():
                continue
            lhs = np.einsum("kjs,mks->mkj", WS, num)
            ok &= np.all(lhs <= dets[None, :, None] * H[:, None, :], axis=2)
            if not ok.any():
                continue
            feasible |= ok.any(axis=1)
            fl = np.where(ok[:, :, None], num // dets[None, :, None], 0)
            for j in range(S.shape[1]):
                cols = S[:, j]
                np.maximum.at(ub, (np.broadcast_to(rows, fl.shape[:2]), np.broadcast_to(cols, fl.shape[:2])),
                              fl[:, :, j])
        if not self.bounded:
            ub += self._ray_sum
        return feasible, ub

    def exists_many(self, H):
        """Boolean array: does each row of ``H`` give a nonempty region."""
        H = np.asarray(H, dtype=np.int64).reshape(-1, self.rho)
        feasible, ub = self.upper_bounds_many(H)
        out = np.zeros(H.shape[0], dtype=bool)
        for i in np.flatnonzero(feasible):
            out[i] = count_points(self.W, H[i], ub[i], 1) > 0
        return out

    def exists(self, h) -> bool:
        ub = self.upper_bounds(h)
        if ub is None:
            return False
        return count_points(self.W, h, ub, 1) > 0

    def count(self, h) -> int:
        ub = self.upper_bounds(h)
        if ub is None:
            return 0
        if not self.bounded:
            raise UnboundedRegionError("region is nonempty and unbounded")
        return count_points(self.W, h, ub, 0)
