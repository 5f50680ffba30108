"""Simplicial fans: validation, primitive collections, maximal cones."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import intlinalg
from .kernels import count_hitting_sets

__all__ = [
    "Fan",
    "FanError",
    "DimensionMismatchError",
    "DuplicateRayError",
    "NonPrimitiveRayError",
    "ConeIndexError",
    "ValidationReport",
    "validate_fan",
    "primitive_collections",
    "maximal_cones_from_primitives",
    "count_maximal_cones",
    "face_masks",
    "canonical_sets",
    "projective_space",
    "p1_x_p1",
    "hirzebruch",
]


class FanError(ValueError):
    """Structural problem with fan input."""


class DimensionMismatchError(FanError):
    pass


class DuplicateRayError(FanError):
    pass


class NonPrimitiveRayError(FanError):
    pass


class ConeIndexError(FanError):
    pass


def canonical_sets(sets):
    """Sort index sets by size, then lexicographically; dedupe."""
    uniq = {tuple(sorted(s)) for s in sets}
    return sorted(uniq, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class Fan:
    """Rays plus maximal cones (as sorted ray-index tuples).

    ``names`` optionally labels the rays; it takes no part in equality.
    """

    dim: int
    rays: tuple
    max_cones: tuple
    names: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in self.max_cones))
        object.__setattr__(self, "max_cones", cones)
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def n_rays(self):
        return len(self.rays)

    @property
    def pic_rank(self):
        return self.n_rays - self.dim

    def ray_matrix(self):
        """``n_rays x dim`` int64 array of ray generators."""
        return np.array(self.rays, dtype=np.int64).reshape(self.n_rays, self.dim)

    def cone_matrix(self, cone):
        return [list(self.rays[i]) for i in cone]

    def to_json(self):
        out = {"dim": self.dim, "rays": [list(r) for r in self.rays],
               "max_cones": [list(c) for c in self.max_cones]}
        if self.names is not None:
            out["names"] = list(self.names)
        return out

    @classmethod
    def from_json(cls, data):
        return cls(int(data["dim"]), data["rays"], data["max_cones"], data.get("names"))


@dataclass
class ValidationReport:
    smooth: bool
    pseudo_manifold: bool
    diagnostics: list = field(default_factory=list)

    def to_json(self):
        return {"smooth": self.smooth, "pseudo_manifold": self.pseudo_manifold,
                "diagnostics": list(self.diagnostics)}


def _check_structure(fan):
    if fan.dim < 1:
        raise DimensionMismatchError("dimension must be positive")
    if not fan.rays:
        raise FanError("fan has no rays")
    if not fan.max_cones:
        raise FanError("fan has no maximal cones")
    for k, r in enumerate(fan.rays):
        if len(r) != fan.dim:
            raise DimensionMismatchError(
                f"ray {k} has {len(r)} coordinates, expected {fan.dim}")
    seen = {}
    for k, r in enumerate(fan.rays):
        if r in seen:
            raise DuplicateRayError(f"rays {seen[r]} and {k} coincide: {list(r)}")
        seen[r] = k
    for k, r in enumerate(fan.rays):
        if math.gcd(*r) != 1:
            raise NonPrimitiveRayError(f"ray {k} = {list(r)} is not primitive")
    for c in fan.max_cones:
        if any(i < 0 or i >= fan.n_rays for i in c):
            raise ConeIndexError(f"cone {list(c)} references a missing ray")
        if len(set(c)) != len(c):
            raise ConeIndexError(f"cone {list(c)} repeats a ray")


def validate_fan(fan: Fan) -> ValidationReport:
    """Check structure, smoothness and the pseudo-manifold proxy for completeness.

    Structural defects raise a :class:`FanError` subclass. Smoothness and the
    pseudo-manifold property are reported as flags with diagnostics.
    """
    _check_structure(fan)
    n = fan.dim
    diag = []
    smooth = True
    for c in fan.max_cones:
        if len(c) != n:
            smooth = False
            diag.append(f"cone {list(c)} has {len(c)} rays, expected {n}")
            continue
        d = intlinalg.det(fan.cone_matrix(c))
        if abs(d) != 1:
            smooth = False
            diag.append(f"cone {list(c)} has determinant {d}")

    pseudo = True
    facets = {}
    for k, c in enumerate(fan.max_cones):
        if len(c) != n:
            pseudo = False
            continue
        for f in itertools.combinations(c, n - 1):
            facets.setdefault(f, []).append(k)
    for f, owners in facets.items():
        if len(owners) != 2:
            pseudo = False
            diag.append(f"facet {list(f)} lies in {len(owners)} maximal cones")
    # facet adjacency must connect all maximal cones
    adj = {k: set() for k in range(len(fan.max_cones))}
    for owners in facets.values():
        for a, b in itertools.combinations(owners, 2):
            adj[a].add(b)
            adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    if len(seen) != len(fan.max_cones):
        pseudo = False
        diag.append("facet adjacency graph is disconnected")
    return ValidationReport(smooth, pseudo, diag)


@lru_cache(maxsize=256)
def face_masks(fan: Fan) -> frozenset:
    """All cones of the fan as bitmasks over ray indices (including the empty cone)."""
    faces = set()
    for c in fan.max_cones:
        bits = [1 << i for i in c]
        for r in range(len(bits) + 1):
            for sub in itertools.combinations(bits, r):
                faces.add(sum(sub))
    return frozenset(faces)


def _mask_to_tuple(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=256)
def _primitive_collections(fan):
    faces = face_masks(fan)
    found = set()
    for f in faces:
        for x in range(fan.n_rays):
            bit = 1 << x
            if f & bit:
                continue
            s = f | bit
            if s in faces or s in found:
                continue
            rest = s
            ok = True
            while rest:
                low = rest & -rest
                if (s ^ low) not in faces:
                    ok = False
                    break
                rest ^= low
            if ok:
                found.add(s)
    return tuple(canonical_sets(_mask_to_tuple(s) for s in found))


def primitive_collections(fan: Fan) -> list:
    """Minimal non-faces of the fan, sorted by size then lexicographically."""
    return [tuple(p) for p in _primitive_collections(fan)]


def maximal_cones_from_primitives(n: int, ray_count: int, prims) -> list:
    """All ``n``-subsets of ``range(ray_count)`` containing no primitive collection.

    When fewer rays are dropped than kept the complements are enumerated
    instead: a subset contains no primitive collection iff its complement
    meets every one of them.
    """
    prims = [frozenset(p) for p in prims]
    drop = ray_count - n
    out = []
    if drop < n:
        for removed in itertools.combinations(range(ray_count), drop):
            rs = set(removed)
            if all(p & rs for p in prims):
                out.append(tuple(i for i in range(ray_count) if i not in rs))
    else:
        masks = [sum(1 << i for i in p) for p in prims]
        for kept in itertools.combinations(range(ray_count), n):
            km = sum(1 << i for i in kept)
            if not any(km & pm == pm for pm in masks):
                out.append(kept)
    return canonical_sets(out)


def count_maximal_cones(n: int, ray_count: int, prims) -> int:
    """Same count as ``len(maximal_cones_from_primitives(...))`` without materialising cones."""
    member = np.zeros((len(prims), ray_count), dtype=bool)
    for q, p in enumerate(prims):
        member[q, list(p)] = True
    return count_hitting_sets(member, ray_count - n)


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, rays, cones)


def p1_x_p1() -> Fan:
    return hirzebruch(0)


def hirzebruch(a: int) -> Fan:
    """Hirzebruch surface with rays e1, -e1 + a e2, e2, -e2 (indices 0..3)."""
    rays = [(1, 0), (-1, a), (0, 1), (0, -1)]
    cones = [(0, 2), (0, 3), (1, 2), (1, 3)]
    return Fan(2, rays, cones)
