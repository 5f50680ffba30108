"""Push-forward of line bundles under the toric Frobenius ``F_m``.

Two independent computations of the summands are provided: Thomsen's
division-with-remainder on local cone coordinates, and Bondal's rounding
``[(D + D_chi) / m]`` over characters ``chi`` of ``(Z/m)^n``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import intlinalg
from .fan import Fan
from .kernels import floor_split
from .picard import class_group

__all__ = [
    "ConeFrame",
    "CartierData",
    "SplitResult",
    "StabilizationError",
    "BondalImage",
    "cone_frames",
    "cartier_data",
    "transition_divisor",
    "thomsen_split",
    "bondal_split",
    "bondal_image",
    "b_prime",
    "character_grid",
]


class StabilizationError(RuntimeError):
    """The torus image did not stabilise within ``m_max``; ``partial`` holds what was found."""

    def __init__(self, msg, partial):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class ConeFrame:
    index: int
    cone: tuple
    A: np.ndarray = field(repr=False, compare=False)
    B: np.ndarray = field(repr=False, compare=False)


def cone_frames(fan: Fan):
    """``A_i`` has the cone's ray generators as rows, ``B_i = A_i^{-1}``."""
    out = []
    for i, cone in enumerate(fan.max_cones):
        A = fan.cone_matrix(cone)
        B = intlinalg.unimodular_inverse(A)
        out.append(ConeFrame(i, cone, np.array(A, dtype=np.int64), np.array(B, dtype=np.int64)))
    return out


@dataclass(frozen=True)
class CartierData:
    """Local exponents ``u_i`` of the divisor on each maximal cone, in cone coordinates."""

    cones: tuple
    u: tuple

    def transition(self, frames, i, j):
        """``u_ij = u_j - C_ij u_i`` with ``C_ij = A_j B_i``."""
        C = frames[j].A @ frames[i].B
        return np.asarray(self.u[j]) - C @ np.asarray(self.u[i])


def cartier_data(fan: Fan, div) -> CartierData:
    """``u_i`` is the coefficient vector of ``div`` on the rays of cone ``i``.

    In the coordinates ``x_1..x_n`` of the affine chart, where ``x_j``
    vanishes on the ``j``-th ray, this is the exponent vector of the local
    monomial whose divisor agrees with ``div`` on the chart.
    """
    div = [int(x) for x in div]
    if len(div) != fan.n_rays:
        raise ValueError(f"divisor has {len(div)} coefficients, fan has {fan.n_rays} rays")
    return CartierData(fan.max_cones, tuple(tuple(div[j] for j in c) for c in fan.max_cones))


def transition_divisor(fan: Fan, data: CartierData, i: int, j: int):
    """Coefficients of ``div(x^{u_ij})`` on the rays of cone ``j`` (as a map ``ray -> coef``).

    Compatibility means these vanish on the rays shared by the two cones; a
    divisor is principal exactly when every transition vector is zero.
    """
    frames = cone_frames(fan)
    uij = data.transition(frames, i, j)
    return {r: int(x) for r, x in zip(fan.max_cones[j], uij)}


@dataclass
class SplitResult:
    """Multiset of summand classes with total multiplicity ``m^n``."""

    counts: Counter
    m: int

    @property
    def total(self):
        return sum(self.counts.values())

    def classes(self):
        return sorted(self.counts)

    def to_json(self, encode=list):
        return [{"class": encode(c), "mult": self.counts[c]} for c in sorted(self.counts)]

    def __eq__(self, other):
        return isinstance(other, SplitResult) and self.counts == other.counts

    def __contains__(self, cls):
        return tuple(cls) in self.counts


def character_grid(n: int, m: int) -> np.ndarray:
    """All of ``{0..m-1}^n`` in lexicographic order, shape ``(m^n, n)``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    grids = np.meshgrid(*[np.arange(m, dtype=np.int64)] * n, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _tally(fan, divisors, basis_rays, m):
    pres = class_group(fan, basis_rays)
    classes = pres.classify_many(divisors)
    uniq, counts = np.unique(classes, axis=0, return_counts=True)
    return SplitResult(Counter({tuple(int(x) for x in row): int(k) for row, k in zip(uniq, counts)}), m)


def thomsen_divisors(fan: Fan, div, m: int, anchor: int = 0) -> np.ndarray:
    """``(m^n, n_rays)`` array of the divisors ``D_v`` produced by Thomsen's algorithm."""
    if m < 1:
        raise ValueError("m must be at least 1")
    frames = cone_frames(fan)
    if not 0 <= anchor < len(frames):
        raise ValueError(f"anchor cone {anchor} out of range")
    data = cartier_data(fan, div)
    V = character_grid(fan.dim, m)
    out = np.full((V.shape[0], fan.n_rays), np.iinfo(np.int64).min, dtype=np.int64)
    Bl = frames[anchor].B
    ul = np.asarray(data.u[anchor], dtype=np.int64)
    for i, fr in enumerate(frames):
        C = fr.A @ Bl
        uli = np.asarray(data.u[i], dtype=np.int64) - C @ ul
        t = np.floor_divide(V @ C.T + uli, m)  # remainders land in 0..m-1
        cols = list(fr.cone)
        prev = out[:, cols]
        seen = prev != np.iinfo(np.int64).min
        if np.any(seen & (prev != t)):
            raise AssertionError(f"cone {i} disagrees with an earlier cone on a shared ray")
        out[:, cols] = t
    if np.any(out == np.iinfo(np.int64).min):
        raise ValueError("some ray lies in no maximal cone")
    return out


def thomsen_split(fan: Fan, div, m: int, anchor: int = 0, basis_rays=None) -> SplitResult:
    """Summands of ``F_m* O(div)`` by division with remainder from anchor cone ``anchor``."""
    return _tally(fan, thomsen_divisors(fan, div, m, anchor), basis_rays, m)


def bondal_divisors(fan: Fan, div, m: int, chi_lift=None) -> np.ndarray:
    """``floor((a_j + <chi, g_j>) / m)`` for every character ``chi``.

    ``chi_lift`` optionally adds ``m * lift`` to each character (an
    ``(m^n, n)`` integer array), to test independence of the lift.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    G = fan.ray_matrix()
    a = np.asarray(div, dtype=np.int64)
    if chi_lift is None:
        return floor_split(G, a, m)
    chi = character_grid(fan.dim, m) + m * np.asarray(chi_lift, dtype=np.int64)
    return np.floor_divide(a[None, :] + chi @ G.T, m)


def bondal_split(fan: Fan, div, m: int, basis_rays=None, chi_lift=None) -> SplitResult:
    """Summands of ``F_m* O(div)`` by Bondal's rounding formula."""
    return _tally(fan, bondal_divisors(fan, div, m, chi_lift), basis_rays, m)


@dataclass
class BondalImage:
    """Torus image ``B``: classes, the fixed representatives ``B0`` and the stabilisation point."""

    classes: list
    representatives: list
    stabilized_at: int
    window: int

    def to_json(self, encode=list):
        return {"classes": [encode(c) for c in self.classes],
                "representatives": [list(r) for r in self.representatives],
                "stabilized_at": self.stabilized_at, "window": self.window,
                "heuristic": "union over m until unchanged for `window` consecutive m"}


def bondal_image(fan: Fan, window: int = 4, m_max: int = 64, basis_rays=None) -> BondalImage:
    """Union of ``bondal_split(0, m)`` representatives over ``m`` until stable."""
    if window < 1:
        raise ValueError("window must be positive")
    zero = np.zeros(fan.n_rays, dtype=np.int64)
    G = fan.ray_matrix()
    reps = set()
    stable = 0
    last_growth = 1
    for m in range(1, m_max + 1):
        new = {tuple(int(x) for x in row) for row in np.unique(floor_split(G, zero, m), axis=0)}
        if new - reps:
            reps |= new
            stable = 0
            last_growth = m
        else:
            stable += 1
        if stable >= window:
            pres = class_group(fan, basis_rays)
            reps_sorted = sorted(reps)
            classes = sorted({pres.classify(r) for r in reps_sorted})
            return BondalImage(classes, reps_sorted, last_growth, window)
    pres = class_group(fan, basis_rays)
    partial = sorted({pres.classify(r) for r in reps})
    raise StabilizationError(f"torus image still growing at m_max={m_max}", partial)


def b_prime(fan: Fan, image: BondalImage | None = None, basis_rays=None) -> list:
    """Classes of divisors within entrywise distance one of a representative in ``B0``."""
    if image is None:
        image = bondal_image(fan, basis_rays=basis_rays)
    pres = class_group(fan, basis_rays)
    eps = np.array(list(itertools.product((-1, 0, 1), repeat=fan.n_rays)), dtype=np.int64)
    found = set()
    for rep in image.representatives:
        cl = pres.classify_many(eps + np.asarray(rep, dtype=np.int64))
        found.update(tuple(int(x) for x in row) for row in np.unique(cl, axis=0))
    return sorted(found)
