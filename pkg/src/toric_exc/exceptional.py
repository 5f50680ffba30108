"""The ordered collection ``Col`` on the family varieties and its checks.

Classes are written in ``(t, y, v)`` coordinates, i.e. as
``t [D_t] + y [D_y] + v [D_v]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .batyrev import FamilyParams, build_family
from .cohomology import acyclic_family_many, acyclic_many, family_system
from .fan import count_maximal_cones

__all__ = [
    "OrderedCollection",
    "DiffSet",
    "VerificationReport",
    "KoszulReport",
    "build_col",
    "build_diff",
    "pairwise_differences",
    "verify_strongly_exceptional",
    "family_verify",
    "col_rank_check",
    "koszul_offsets",
    "koszul_step",
    "koszul_generation_check",
]

COL2_MODES = ("eq6", "thm")


@dataclass(frozen=True)
class OrderedCollection:
    elements: tuple
    labels: tuple
    params: FamilyParams | None = None
    col2_mode: str = "eq6"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def swapped(self, i, j):
        el, lab = list(self.elements), list(self.labels)
        el[i], el[j] = el[j], el[i]
        lab[i], lab[j] = lab[j], lab[i]
        return OrderedCollection(tuple(el), tuple(lab), self.params, self.col2_mode)

    def without(self, i):
        keep = [k for k in range(len(self)) if k != i]
        return OrderedCollection(tuple(self.elements[k] for k in keep),
                                 tuple(self.labels[k] for k in keep), self.params, self.col2_mode)

    def to_json(self):
        return [{"class": list(c), "kind": lab[0], "s": lab[1], "q": lab[2]}
                for c, lab in zip(self.elements, self.labels)]


def _L(params, s, q):
    k = params.n - params.r
    return (-s, -s, q - params.b * s - k)


def _Lp(params, s, q):
    k = params.n - params.r
    return (-s, -(s - 1), q - params.b * s - k)


def build_col(params: FamilyParams, col2_mode: str = "eq6") -> OrderedCollection:
    """``Col_1 u Col_2`` ordered by decreasing ``s``, interleaving ``L`` and ``L'`` within each ``s``.

    ``col2_mode="eq6"`` takes ``L'_{s,q}`` for ``1 <= s <= r``;
    ``"thm"`` takes ``0 <= s <= r - 1``.
    """
    if col2_mode not in COL2_MODES:
        raise ValueError(f"col2_mode must be one of {COL2_MODES}")
    r, k = params.r, params.n - params.r
    s2 = range(1, r + 1) if col2_mode == "eq6" else range(0, r)
    elements, labels = [], []
    for s in range(r, -1, -1):
        for q in range(k + 1):
            elements.append(_L(params, s, q))
            labels.append(("L", s, q))
            if s in s2 and q < k:
                elements.append(_Lp(params, s, q))
                labels.append(("L'", s, q))
    if len(set(elements)) != len(elements):
        raise AssertionError("collection contains repeated classes")
    return OrderedCollection(tuple(elements), tuple(labels), params, col2_mode)


@dataclass(frozen=True)
class DiffSet:
    diff1: frozenset
    diff2: frozenset
    diff3: frozenset

    @property
    def all(self):
        return self.diff1 | self.diff2 | self.diff3

    def to_json(self):
        return {name: [list(c) for c in sorted(getattr(self, name))] for name in ("diff1", "diff2", "diff3")}


def build_diff(params: FamilyParams) -> DiffSet:
    r, k, b = params.r, params.n - params.r, params.b
    d1 = {(s, s, b * s + q) for s in range(-r, r + 1) for q in range(-k, k + 1)}
    d2 = {(s, s - 1, b * s + q) for s in range(-r + 1, r + 1) for q in range(-k + 1, k + 1)}
    d3 = {(s, s + 1, b * s + q) for s in range(-r, r) for q in range(-k, k)}
    return DiffSet(frozenset(d1), frozenset(d2), frozenset(d3))


def pairwise_differences(coll) -> set:
    els = [np.asarray(c) for c in coll]
    return {tuple(int(x) for x in a - b) for a in els for b in els}


@dataclass
class VerificationReport:
    passed: bool
    failures: list = field(default_factory=list)
    n_elements: int = 0
    n_differences: int = 0
    oracle: str = "generic"

    def to_json(self):
        return {"pass": self.passed, "oracle": self.oracle, "n_elements": self.n_elements,
                "n_differences": self.n_differences,
                "failures": [{"pair": list(p), "reason": why} for p, why in self.failures]}


def _verify(coll, acyclic_fn, has_sections_fn, oracle, max_failures):
    els = np.asarray(list(coll), dtype=np.int64).reshape(len(coll), -1)
    n = els.shape[0]
    diffs = (els[None, :, :] - els[:, None, :]).reshape(-1, els.shape[1])  # [j, k] -> F_k - F_j
    uniq, inverse = np.unique(diffs, axis=0, return_inverse=True)
    inverse = inverse.reshape(n, n)
    ac = acyclic_fn(uniq)
    back = np.triu(np.ones((n, n), dtype=bool), 1)  # j < k: sections of F_j - F_k
    need_h0 = np.unique(inverse.T[back])
    sections = np.zeros(uniq.shape[0], dtype=bool)
    sections[need_h0] = has_sections_fn(uniq[need_h0])
    failures = []
    zero = np.flatnonzero(np.all(uniq == 0, axis=1))
    if zero.size and not ac[zero[0]]:
        failures.append(((0, 0), "structure sheaf is not acyclic"))
    for j in range(n):
        for k in range(j, n):
            if len(failures) >= max_failures:
                break
            if not ac[inverse[j, k]]:
                failures.append(((j, k), "higher_forward: F_k - F_j not acyclic"))
            if j < k:
                if not ac[inverse[k, j]]:
                    failures.append(((j, k), "higher_backward: F_j - F_k not acyclic"))
                if sections[inverse[k, j]]:
                    failures.append(((j, k), "hom_backward: h0(F_j - F_k) != 0"))
    return VerificationReport(not failures, failures, n, int(uniq.shape[0]), oracle)


def verify_strongly_exceptional(fan, coll, basis_rays=None, forbidden=None, max_failures=50):
    """Check every ``Ext`` condition of a strongly exceptional collection of line bundles.

    Element ``F_j`` is exceptional, ``F_k - F_j`` is acyclic for ``j <= k``,
    and for ``j < k`` also ``F_j - F_k`` is acyclic without sections.
    """
    from .cohomology import _system
    system = _system(fan, basis_rays)
    full = tuple(range(fan.n_rays))

    def acyc(C):
        return acyclic_many(fan, C, basis_rays, forbidden)

    def sections(C):
        return system.exists_many(full, C)

    return _verify(coll, acyc, sections, "generic", max_failures)


def family_verify(params: FamilyParams, coll, max_failures=50):
    """Same checks through the grouped closed form for family varieties."""
    system = family_system(params)
    full = tuple(range(system.g))
    return _verify(coll, lambda C: acyclic_family_many(params, C),
                   lambda C: system.exists_many(full, C), "family", max_failures)


def col_rank_check(params: FamilyParams, coll=None):
    """``(|Col|, 2rn - 2r^2 + n + 1, number of maximal cones)``."""
    coll = coll if coll is not None else build_col(params)
    n, r = params.n, params.r
    var = build_family(params)
    cones = count_maximal_cones(n, var.fan.n_rays, var.prims)
    return len(coll), 2 * r * n - 2 * r * r + n + 1, cones


def _family_ray_classes(params):
    b = params.b
    cs = (0,) + tuple(params.c)
    return {"v": (0, 0, 1), "y": (0, 1, 0), "z": [(1, 1, b - ci) for ci in cs],
            "t": (1, 0, 0), "u": (0, -1, 1)}


def koszul_offsets(params: FamilyParams):
    """Per primitive collection, the distinct classes ``sum_{x in S} [D_x]`` over subsets ``S``.

    The Koszul complex of the collection, twisted by ``L``, is exact with
    terms ``L - offset``.
    """
    cl = _family_ray_classes(params)
    k = params.n - params.r
    groups = [[cl["v"]] * k, [cl["y"]], cl["z"], [cl["t"]], [cl["u"]]]
    out = []
    for i in range(5):
        rays = groups[i] + groups[(i + 1) % 5]
        sums = set()
        for mask in itertools.product((0, 1), repeat=len(rays)):
            sums.add(tuple(int(sum(m * r[a] for m, r in zip(mask, rays))) for a in range(3)))
        out.append(sorted(sums))
    return out


def koszul_step(params: FamilyParams, classes) -> set:
    """Classes generated in one application of any Koszul rule to ``classes``."""
    have = {tuple(c) for c in classes}
    new = set()
    for offsets in koszul_offsets(params):
        for c in have:
            for o in offsets:
                L = tuple(a + b for a, b in zip(c, o))
                terms = [tuple(a - b for a, b in zip(L, oo)) for oo in offsets]
                missing = [x for x in terms if x not in have]
                if len(missing) == 1:
                    new.add(missing[0])
    return new


@dataclass
class KoszulReport:
    covered: bool
    window: int
    box_lo: tuple
    box_hi: tuple
    window_size: int
    generated_in_window: int
    missing: list
    rules_fired: int
    rounds: int

    def to_json(self):
        return {"covered": self.covered, "window": self.window, "box": [list(self.box_lo), list(self.box_hi)],
                "window_size": self.window_size, "generated_in_window": self.generated_in_window,
                "missing": [list(m) for m in self.missing[:50]], "rules_fired": self.rules_fired,
                "rounds": self.rounds}


def koszul_generation_check(params: FamilyParams, coll=None, window: int = 4, margin: int | None = None):
    """Close ``coll`` under the Koszul rules inside a box and report coverage of the window.

    The working box is the bounding box of the window and the collection,
    padded by ``margin`` (by default twice the largest Koszul offset).
    """
    coll = coll if coll is not None else build_col(params)
    offsets = [np.asarray(o, dtype=np.int64) for o in koszul_offsets(params)]
    span = max(int(np.abs(o).max()) for o in offsets)
    margin = 2 * span + 2 if margin is None else margin
    els = np.asarray(list(coll), dtype=np.int64).reshape(-1, 3)
    lo = np.minimum(els.min(axis=0), -window) - margin
    hi = np.maximum(els.max(axis=0), window) + margin
    shape = tuple(int(x) for x in hi - lo + 1)
    grid = np.zeros(shape, dtype=bool)
    grid[tuple((els - lo).T)] = True
    fired = 0
    rounds = 0
    while True:
        rounds += 1
        before = int(grid.sum())
        for off in offsets:
            fired += _close_once(grid, off)
        if int(grid.sum()) == before:
            break
    wlo = -window - lo
    whi = window - lo + 1
    sub = grid[wlo[0]:whi[0], wlo[1]:whi[1], wlo[2]:whi[2]]
    miss = np.argwhere(~sub) + (-window)
    return KoszulReport(bool(sub.all()), window, tuple(int(x) for x in lo), tuple(int(x) for x in hi),
                        int(sub.size), int(sub.sum()), [tuple(int(x) for x in m) for m in miss],
                        fired, rounds)


def _close_once(grid, offs):
    # twist L ranges over points with every term L - o inside the grid
    shape = np.array(grid.shape)
    omax = offs.max(axis=0)
    omin = offs.min(axis=0)
    lo = omax  # L - o >= 0 for all o
    hi = shape - 1 + omin  # L - o <= shape - 1
    if np.any(hi < lo):
        return 0
    ext = tuple(int(x) for x in hi - lo + 1)

    def view(o):
        s = lo - o
        return grid[s[0]:s[0] + ext[0], s[1]:s[1] + ext[1], s[2]:s[2] + ext[2]]

    count = np.zeros(ext, dtype=np.int32)
    for o in offs:
        count += view(o)
    ready = count == len(offs) - 1
    if not ready.any():
        return 0
    fired = 0
    for o in offs:
        v = view(o)
        hit = ready & ~v
        k = int(hit.sum())
        if k:
            v |= hit
            fired += k
    return fired
