"""Line-bundle cohomology from sign patterns of torus-invariant representatives.

A class ``c`` has a representative ``r = sum r_j D_j`` in sign pattern ``I``
when ``r_j >= 0`` on ``I`` and ``r_j <= -1`` off ``I``. With a frame (a
maximal cone whose complement is a basis of the class group) the frame
coefficients are free and the others are affine in them, so each pattern is
an integer program of the form handled by :class:`OrthantSystem`.

``H^j(L)`` is the sum over patterns of (number of representatives) times
``h~_{n-j-1}(C_I)``; the full pattern gives ``H^0`` and the empty one ``H^n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import intlinalg
from .batyrev import FamilyParams
from .fan import Fan, primitive_collections
from .homology import (PrimComplex, SizeBoundError, forbidden_sets, forbidden_sets_picard3,
                       max_rays, snf_homology)
from .lattice import OrthantSystem, UnboundedRegionError
from .picard import class_group

__all__ = [
    "SignPattern",
    "GroupedSystem",
    "CohomologyTable",
    "ExtReport",
    "fan_forbidden",
    "h0",
    "representation_exists",
    "is_acyclic",
    "acyclic_many",
    "is_acyclic_family",
    "acyclic_family_many",
    "family_system",
    "family_patterns",
    "cohomology_dims",
    "ext_vanishing",
    "UnboundedRegionError",
]


@dataclass(frozen=True)
class SignPattern:
    """Rays carrying nonnegative coefficients; the rest carry coefficients <= -1."""

    nonneg: tuple

    def __post_init__(self):
        object.__setattr__(self, "nonneg", tuple(sorted(set(int(i) for i in self.nonneg))))


class GroupedSystem:
    """Sign-pattern feasibility for variables ``A_g`` with ``sum_g A_g M[:, g] = c``.

    Variable ``g`` is either ``>= 0`` or ``<= -sizes[g]``. A group of ``k``
    rays sharing one class and one sign behaves like a single variable with
    threshold ``k``, which is how the closed-form Picard-3 tests stay small.

    Parameters
    ----------
    M : array_like
        ``rho x g`` integer matrix of class vectors.
    sizes : sequence of int
        Negative threshold per variable.
    basis : sequence of int, optional
        ``rho`` variables whose columns form a unimodular matrix. Found
        automatically when omitted.
    """

    def __init__(self, M, sizes, basis=None):
        M = [list(map(int, row)) for row in np.asarray(M, dtype=np.int64).tolist()]
        self.rho = len(M)
        self.g = len(M[0])
        self.sizes = tuple(int(s) for s in sizes)
        if basis is None:
            basis = self._find_basis(M)
        self.basis = tuple(basis)
        self.free = tuple(j for j in range(self.g) if j not in self.basis)
        MJ = [[M[i][j] for j in self.basis] for i in range(self.rho)]
        self.Minv = np.array(intlinalg.unimodular_inverse(MJ), dtype=np.int64)
        MF = np.array([[M[i][j] for j in self.free] for i in range(self.rho)], dtype=np.int64)
        self.Q = self.Minv @ MF.reshape(self.rho, len(self.free))
        self._cache = {}

    def _find_basis(self, M):
        import itertools
        for J in itertools.combinations(range(self.g), self.rho):
            if abs(intlinalg.det([[M[i][j] for j in J] for i in range(self.rho)])) == 1:
                return J
        raise ValueError("class vectors contain no unimodular basis")

    def pattern(self, positive):
        """``(OrthantSystem, A, h0)`` with ``h = A c + h0`` for positive variables ``positive``."""
        key = frozenset(positive)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        eps = np.array([1 if j in key else -1 for j in self.free], dtype=np.int64)
        delta = np.array([0 if j in key else -self.sizes[j] for j in self.free], dtype=np.int64)
        sig = np.array([1 if j in key else -1 for j in self.basis], dtype=np.int64)
        thr = np.array([0 if j in key else self.sizes[j] for j in self.basis], dtype=np.int64)
        W = sig[:, None] * self.Q * eps[None, :]
        A = sig[:, None] * self.Minv
        h0 = -sig * (self.Q @ delta) - thr
        out = (_orthant(W.tobytes(), W.shape), A, h0)
        self._cache[key] = out
        return out

    def exists_many(self, positive, C):
        system, A, h0 = self.pattern(positive)
        C = np.asarray(C, dtype=np.int64).reshape(-1, self.rho)
        return system.exists_many(C @ A.T + h0)

    def exists(self, positive, c):
        return bool(self.exists_many(positive, [c])[0])

    def count(self, positive, c):
        system, A, h0 = self.pattern(positive)
        return system.count(A @ np.asarray(c, dtype=np.int64) + h0)


@lru_cache(maxsize=4096)
def _orthant(raw, shape):
    return OrthantSystem(np.frombuffer(raw, dtype=np.int64).reshape(shape))


@lru_cache(maxsize=512)
def _fan_system(fan, basis_rays):
    pres = class_group(fan, basis_rays)
    return GroupedSystem(pres.projection, [1] * fan.n_rays, pres.basis_rays)


def _system(fan, basis_rays):
    return _fan_system(fan, None if basis_rays is None else tuple(basis_rays))


def fan_forbidden(fan: Fan, forbidden=None):
    """Forbidden sets: explicit list, brute force within the ray bound, else the pentagon closed form."""
    if forbidden is not None and not isinstance(forbidden, str):
        return [tuple(I) for I in forbidden]
    mode = forbidden or "auto"
    if mode == "closed" or (mode == "auto" and fan.n_rays > max_rays()):
        return forbidden_sets_picard3(primitive_collections(fan), fan.n_rays)
    if mode in ("auto", "brute", "reduce", "snf"):
        return forbidden_sets(fan, "snf" if mode == "snf" else "reduce")
    raise ValueError(f"unknown forbidden-set mode {mode!r}")


def h0(fan: Fan, cls, basis_rays=None) -> int:
    """Global sections: representatives with all coefficients nonnegative."""
    try:
        return _system(fan, basis_rays).count(range(fan.n_rays), cls)
    except UnboundedRegionError as exc:
        raise UnboundedRegionError("section polyhedron is unbounded; the fan is not complete") from exc


def representation_exists(fan: Fan, cls, pattern, basis_rays=None) -> bool:
    if isinstance(pattern, SignPattern):
        pattern = pattern.nonneg
    pattern = tuple(pattern)
    if len(set(pattern)) >= fan.n_rays:
        raise ValueError("sign pattern must be a proper subset of the rays")
    return _system(fan, basis_rays).exists(pattern, cls)


def acyclic_many(fan: Fan, classes, basis_rays=None, forbidden=None):
    """Boolean array over ``classes``: no representative in any forbidden pattern."""
    C = np.asarray(classes, dtype=np.int64).reshape(-1, fan.pic_rank)
    system = _system(fan, basis_rays)
    ok = np.ones(C.shape[0], dtype=bool)
    for I in fan_forbidden(fan, forbidden):
        idx = np.flatnonzero(ok)
        if not idx.size:
            break
        ok[idx] &= ~system.exists_many(I, C[idx])
    return ok


def is_acyclic(fan: Fan, cls, basis_rays=None, forbidden=None) -> bool:
    """True iff ``H^j = 0`` for every ``j >= 1``."""
    return bool(acyclic_many(fan, [cls], basis_rays, forbidden)[0])


def family_system(params: FamilyParams) -> GroupedSystem:
    """Grouped variables ``(V, y, z_1..z_r, t, u)`` in ``(t, y, v)`` coordinates."""
    return _family_system(params)


@lru_cache(maxsize=512)
def _family_system(params):
    r, b = params.r, params.b
    cs = (0,) + tuple(params.c)
    cols = [(0, 0, 1), (0, 1, 0)] + [(1, 1, b - ci) for ci in cs] + [(1, 0, 0), (0, -1, 1)]
    M = np.array(cols, dtype=np.int64).T
    sizes = [params.n - r] + [1] * (r + 3)
    t_var = r + 2
    return GroupedSystem(M, sizes, basis=(t_var, 1, 0))


def family_patterns(params: FamilyParams):
    """The eleven forbidden patterns as sets of nonnegative grouped variables.

    Groups are ``X0 = v``, ``X1 = y``, ``X2 = z``, ``X3 = t``, ``X4 = u``;
    a forbidden set is empty, two consecutive groups, or three consecutive.
    """
    r = params.r
    members = [[0], [1], list(range(2, r + 2)), [r + 2], [r + 3]]
    out = [()]
    for width in (2, 3):
        for i in range(5):
            out.append(tuple(sorted(v for g in range(i, i + width) for v in members[g % 5])))
    return out


def acyclic_family_many(params: FamilyParams, classes):
    C = np.asarray(classes, dtype=np.int64).reshape(-1, 3)
    system = family_system(params)
    ok = np.ones(C.shape[0], dtype=bool)
    for pat in family_patterns(params):
        idx = np.flatnonzero(ok)
        if not idx.size:
            break
        ok[idx] &= ~system.exists_many(pat, C[idx])
    return ok


def is_acyclic_family(params: FamilyParams, cls) -> bool:
    """Closed-form acyclicity on a family variety, class in ``(t, y, v)`` coordinates."""
    return bool(acyclic_family_many(params, [cls])[0])


@dataclass(frozen=True)
class CohomologyTable:
    dims: tuple

    def __getitem__(self, j):
        return self.dims[j]

    @property
    def acyclic(self):
        return not any(self.dims[1:])

    def to_json(self):
        return {f"h{j}": d for j, d in enumerate(self.dims)}


@lru_cache(maxsize=4096)
def _betti(fan, I):
    Iset = set(I)
    prims = tuple(p for p in primitive_collections(fan) if set(p) <= Iset)
    return snf_homology(PrimComplex(I, prims), max(len(I), 1))


def cohomology_dims(fan: Fan, cls, basis_rays=None, forbidden=None) -> CohomologyTable:
    """All ``h^j`` by counting representatives per forbidden pattern."""
    if fan.n_rays > max_rays() and forbidden is None:
        raise SizeBoundError(f"{fan.n_rays} rays exceeds the brute-force bound {max_rays()}")
    n = fan.dim
    dims = [0] * (n + 1)
    system = _system(fan, basis_rays)
    patterns = list(fan_forbidden(fan, forbidden)) + [tuple(range(fan.n_rays))]
    for I in patterns:
        if not system.exists(I, cls):
            continue
        betti = _betti(fan, tuple(I))
        degrees = [j for j in range(n + 1) if betti[n - j - 1]]
        if not degrees:
            continue
        try:
            count = system.count(I, cls)
        except UnboundedRegionError as exc:
            raise UnboundedRegionError(
                f"pattern {list(I)} has infinitely many representatives") from exc
        for j in degrees:
            dims[j] += count * betti[n - j - 1]
    return CohomologyTable(tuple(dims))


@dataclass(frozen=True)
class ExtReport:
    hom_forward: int
    higher_forward: bool
    hom_backward: int
    higher_backward: bool

    def to_json(self):
        return {"hom_forward": self.hom_forward, "higher_forward": self.higher_forward,
                "hom_backward": self.hom_backward, "higher_backward": self.higher_backward}


def ext_vanishing(fan: Fan, L1, L2, basis_rays=None, forbidden=None) -> ExtReport:
    """``Ext^i(L1, L2) = H^i(L2 - L1)`` and the reverse direction."""
    fwd = tuple(int(b) - int(a) for a, b in zip(L1, L2))
    bwd = tuple(-x for x in fwd)
    return ExtReport(
        h0(fan, fwd, basis_rays),
        is_acyclic(fan, fwd, basis_rays, forbidden),
        h0(fan, bwd, basis_rays),
        is_acyclic(fan, bwd, basis_rays, forbidden),
    )
