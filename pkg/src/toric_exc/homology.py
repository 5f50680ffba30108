"""Reduced homology of complexes presented by primitive collections.

A :class:`PrimComplex` on vertex set ``V`` has as faces the subsets of ``V``
containing no primitive collection. The empty set is always a face, so
reduced homology starts in degree -1.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache

from .fan import Fan, canonical_sets, primitive_collections
from .intlinalg import sparse_invariant_factors

__all__ = [
    "PrimComplex",
    "BettiVector",
    "SizeBoundError",
    "snf_homology",
    "reduce_delete",
    "reduce_glue",
    "is_acyclic_complex",
    "forbidden_sets",
    "forbidden_sets_picard3",
    "pentagon_order",
    "max_vertices",
    "max_rays",
]


class SizeBoundError(ValueError):
    """Brute-force computation refused because the input is too large."""


def max_vertices():
    return int(os.environ.get("TORIC_EXC_MAX_VERTICES", 20))


def max_rays():
    return int(os.environ.get("TORIC_EXC_MAX_RAYS", 16))


@dataclass(frozen=True)
class PrimComplex:
    vertices: tuple
    prims: tuple

    def __post_init__(self):
        verts = tuple(sorted(set(int(v) for v in self.vertices)))
        vs = set(verts)
        prims = [frozenset(int(x) for x in p) for p in self.prims]
        for p in prims:
            if not p:
                raise ValueError("the empty set cannot be a primitive collection")
            if not p <= vs:
                raise ValueError(f"primitive collection {sorted(p)} is not inside the vertex set")
        for a, b in itertools.combinations(prims, 2):
            if a <= b or b <= a:
                raise ValueError(f"primitive collections {sorted(a)} and {sorted(b)} are nested")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "prims", tuple(canonical_sets(prims)))

    @classmethod
    def from_sets(cls, vertices, sets):
        """Build from arbitrary sets, keeping only the inclusion-minimal ones."""
        sets = [frozenset(s) for s in sets]
        minimal = {s for s in sets if not any(o < s for o in sets)}
        return cls(tuple(vertices), tuple(minimal))

    @classmethod
    def from_json(cls, data):
        verts = data["vertices"]
        if isinstance(verts, int):
            verts = range(verts)
        return cls(tuple(verts), tuple(tuple(p) for p in data["prims"]))

    def to_json(self):
        return {"vertices": list(self.vertices), "prims": [list(p) for p in self.prims]}

    def prims_containing(self, x):
        return [p for p in self.prims if x in p]


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers and torsion coefficients, keyed by degree from -1."""

    betti: tuple
    torsion: tuple = field(default=())

    def __getitem__(self, degree):
        i = degree + 1
        if 0 <= i < len(self.betti):
            return self.betti[i]
        return 0

    def torsion_in(self, degree):
        i = degree + 1
        if 0 <= i < len(self.torsion):
            return self.torsion[i]
        return ()

    @property
    def acyclic(self):
        return not any(self.betti) and not any(self.torsion)

    def nonzero_degrees(self):
        return [i - 1 for i in range(len(self.betti)) if self.betti[i] or self.torsion[i]]

    def to_json(self):
        return {"betti": {str(i - 1): b for i, b in enumerate(self.betti) if b},
                "torsion": {str(i - 1): list(t) for i, t in enumerate(self.torsion) if t}}


def _faces_by_size(nv, prim_masks):
    with_v = [[p for p in prim_masks if p >> v & 1] for v in range(nv)]
    layers = [[0]]
    while layers[-1]:
        nxt = []
        for f in layers[-1]:
            top = f.bit_length()
            for v in range(top, nv):
                g = f | (1 << v)
                if all(g & p != p for p in with_v[v]):
                    nxt.append(g)
        layers.append(nxt)
    layers.pop()
    return layers


def _homology_from_layers(layers):
    # C_k has basis layers[k+1]; boundary d_k : C_k -> C_{k-1}
    index = [{f: i for i, f in enumerate(layer)} for layer in layers]
    factors = [[] for _ in layers]  # factors[s] for boundary out of layer s
    for s in range(1, len(layers)):
        rows = []
        below = index[s - 1]
        for f in layers[s]:
            col = {}
            sign = 1
            rest = f
            while rest:
                low = rest & -rest
                col[below[f ^ low]] = sign
                sign = -sign
                rest ^= low
            rows.append(col)
        # rows are the transposed boundary matrix; invariant factors agree
        factors[s] = sparse_invariant_factors(rows, len(layers[s - 1]))
    betti, torsion = [], []
    for s in range(len(layers)):
        rank_out = len(factors[s])
        nxt = factors[s + 1] if s + 1 < len(layers) else []
        betti.append(len(layers[s]) - rank_out - len(nxt))
        torsion.append(tuple(f for f in nxt if f > 1))
    return betti, torsion


def snf_homology(c: PrimComplex, bound: int | None = None) -> BettiVector:
    """Integral reduced homology from boundary matrices (Smith normal form)."""
    bound = max_vertices() if bound is None else bound
    nv = len(c.vertices)
    if nv > bound:
        raise SizeBoundError(f"{nv} vertices exceeds the bound {bound}")
    pos = {v: i for i, v in enumerate(c.vertices)}
    masks = [sum(1 << pos[x] for x in p) for p in c.prims]
    layers = _faces_by_size(nv, masks)
    betti, torsion = _homology_from_layers(layers)
    pad = nv + 1 - len(betti)
    return BettiVector(tuple(betti) + (0,) * pad, tuple(torsion) + ((),) * pad)


def reduce_delete(c: PrimComplex, P, x):
    """Delete the primitive collection ``P`` through a vertex ``x`` lying only in ``P``.

    Returns ``(c', m - 1)`` where ``m = |P|``; the reduced homology of ``c``
    in degree ``i`` equals that of ``c'`` in degree ``i - m + 1``.
    """
    P = frozenset(P)
    owners = c.prims_containing(x)
    if len(owners) != 1:
        raise ValueError(f"vertex {x} lies in {len(owners)} primitive collections, need exactly one")
    if frozenset(owners[0]) != P:
        raise ValueError(f"vertex {x} is not in the given primitive collection")
    rest = [v for v in c.vertices if v not in P]
    rs = set(rest)
    images = [frozenset(q) & rs for q in c.prims if frozenset(q) != P]
    return PrimComplex.from_sets(rest, images), len(P) - 1


def reduce_glue(c: PrimComplex):
    """Glue vertices lying in exactly the same primitive collections.

    Each class is collapsed onto its smallest vertex. Returns ``(c', shift)``
    with ``shift = |V| - |V/~|``.
    """
    sig = {}
    for v in c.vertices:
        key = tuple(i for i, p in enumerate(c.prims) if v in p)
        sig.setdefault(key, []).append(v)
    dropped = set()
    for members in sig.values():
        dropped.update(members[1:])
    if not dropped:
        return c, 0
    verts = [v for v in c.vertices if v not in dropped]
    prims = [tuple(x for x in p if x not in dropped) for p in c.prims]
    return PrimComplex(tuple(verts), tuple(prims)), len(dropped)


def _reducible_vertex(c):
    for x in c.vertices:
        owners = c.prims_containing(x)
        if len(owners) == 1:
            return owners[0], x
    return None


def is_acyclic_complex(c: PrimComplex, bound: int | None = None) -> bool:
    """Acyclicity by gluing and deleting; Smith normal form only when stuck."""
    while True:
        if not c.vertices:
            return False  # the complex {empty set}
        if not c.prims:
            return True  # full simplex
        used = set().union(*map(set, c.prims))
        if len(used) < len(c.vertices):
            return True  # a vertex in no primitive collection is a cone point
        c, _ = reduce_glue(c)
        step = _reducible_vertex(c)
        if step is None:
            return snf_homology(c, bound).acyclic
        c, _ = reduce_delete(c, *step)


@lru_cache(maxsize=128)
def _forbidden(max_cones, nrays, method, prims):
    out = []
    for size in range(nrays):
        for I in itertools.combinations(range(nrays), size):
            Iset = set(I)
            inside = [p for p in prims if set(p) <= Iset]
            c = PrimComplex(I, tuple(inside))
            if method == "snf":
                acyclic = snf_homology(c, nrays).acyclic
            else:
                acyclic = is_acyclic_complex(c, nrays)
            if not acyclic:
                out.append(I)
    return tuple(canonical_sets(out))


def forbidden_sets(fan: Fan, method: str = "reduce", bound: int | None = None) -> list:
    """Proper subsets ``I`` of the rays whose complex ``C_I`` has nonzero reduced homology.

    ``method`` is ``"reduce"`` (gluing and deletion, Smith normal form as
    fallback) or ``"snf"`` (Smith normal form on every subset). Results are
    cached on the fan's cone structure.
    """
    bound = max_rays() if bound is None else bound
    if fan.n_rays > bound:
        raise SizeBoundError(f"{fan.n_rays} rays exceeds the brute-force bound {bound}")
    if method not in ("reduce", "snf"):
        raise ValueError(f"unknown method {method!r}")
    prims = tuple(primitive_collections(fan))
    return [tuple(s) for s in _forbidden(fan.max_cones, fan.n_rays, method, prims)]


def pentagon_order(prims):
    """Cyclic order ``Y_0..Y_4`` of five primitive collections and the groups ``X_i``.

    Returns ``(ordered_prims, groups)`` with ``Y_i = X_i u X_{i+1}``. Raises
    ``ValueError`` if the collections are not in pentagon position.
    """
    prims = [frozenset(p) for p in prims]
    if len(prims) != 5:
        raise ValueError("need exactly five primitive collections")
    adj = {i: [j for j in range(5) if j != i and prims[i] & prims[j]] for i in range(5)}
    if any(len(a) != 2 for a in adj.values()):
        raise ValueError("primitive collections do not form a pentagon")
    order = [0, adj[0][0]]
    while len(order) < 5:
        nxt = [j for j in adj[order[-1]] if j != order[-2]]
        order.append(nxt[0])
    if order[0] not in adj[order[-1]] or len(set(order)) != 5:
        raise ValueError("primitive collections do not form a pentagon")
    Y = [prims[i] for i in order]
    X = [Y[(i - 1) % 5] & Y[i] for i in range(5)]
    # X_i = Y_{i-1} & Y_i ; Y_i must equal X_i | X_{i+1}
    if any(Y[i] != X[i] | X[(i + 1) % 5] for i in range(5)):
        raise ValueError("primitive collections do not form a pentagon")
    if any(X[i] & X[j] for i, j in itertools.combinations(range(5), 2)):
        raise ValueError("pentagon groups overlap")
    return [tuple(sorted(y)) for y in Y], [tuple(sorted(x)) for x in X]


def forbidden_sets_picard3(prims, ray_count: int) -> list:
    """Closed form: the empty set, the five collections and their complements."""
    Y, X = pentagon_order(prims)
    allv = set(range(ray_count))
    if set().union(*map(set, X)) != allv:
        raise ValueError("pentagon groups do not cover the rays")
    out = [()] + Y + [tuple(sorted(allv - set(y))) for y in Y]
    return canonical_sets(out)
