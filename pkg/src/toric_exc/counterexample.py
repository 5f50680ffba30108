"""Counting argument against full strongly exceptional collections inside the torus image.

The variety has groups ``|X0| = |X2| = 1`` and ``|X1| = |X3| = |X4| = k``
with all relation coefficients zero. Classes are written in the basis
``(D_z - D_y, D_y, D_u)``, where the ray classes are

* ``D_v = (0, 1, 1)``, ``D_y = (0, 1, 0)``, ``D_z = (1, 1, 0)``,
* ``D_t = (1, 0, 0)``, ``D_u = (0, 0, 1)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .batyrev import build_batyrev, k_family_params
from .cohomology import GroupedSystem
from .fan import count_maximal_cones
from .picard import class_group

__all__ = [
    "CounterexampleReport",
    "BoxReport",
    "RAY_CLASSES",
    "s_box",
    "r_box",
    "pair_set",
    "k_family_system",
    "k_family_patterns",
    "nonacyclic_many",
    "certificate",
    "naive_certificate",
    "check_certificate",
    "counterexample_report",
    "k_family_bondal_box",
    "family_s_condition",
]

RAY_CLASSES = {"v": (0, 1, 1), "y": (0, 1, 0), "z": (1, 1, 0), "t": (1, 0, 0), "u": (0, 0, 1)}
_ORDER = "vyztu"


def s_box(k):
    """``S = {(-a, -c, -b) : a, b, c in 0..k}`` as an array."""
    g = np.arange(-k, 1)
    return np.array(list(itertools.product(g, g, g)), dtype=np.int64)


def _r_ranges(k):
    a = range((k + 1) // 2, k + 1)  # ceil(k/2)..k
    b = range(-k, -((k + 1) // 2))  # -k..floor(-k/2 - 1)
    c = range(0, k + 1)
    return a, b, c


def r_box(k):
    """Integer points of ``[k/2, k] x [-k, -k/2 - 1] x [0, k]``."""
    a, b, c = _r_ranges(k)
    return np.array(list(itertools.product(a, b, c)), dtype=np.int64).reshape(-1, 3)


def pair_set(k):
    """``(triples, first, second)``: the pairs for ``a = b = c = k (mod 2)`` inside the R box."""
    R = r_box(k)
    keep = np.all((R - k) % 2 == 0, axis=1)
    T = R[keep]
    first = -(k + T) // 2
    second = -(k - T) // 2
    return T, first, second


@lru_cache(maxsize=64)
def k_family_system(k):
    M = np.array([RAY_CLASSES[g] for g in _ORDER], dtype=np.int64).T
    return GroupedSystem(M, (1, k, 1, k, k))


def k_family_patterns():
    """Nonnegative groups for the eleven forbidden sign patterns (indices into ``vyztu``)."""
    out = [()]
    for width in (2, 3):
        for i in range(5):
            out.append(tuple(sorted((i + j) % 5 for j in range(width))))
    return out


def nonacyclic_many(k, classes):
    """True where the class is the class of some divisor in a forbidden sign pattern."""
    C = np.asarray(classes, dtype=np.int64).reshape(-1, 3)
    sys_ = k_family_system(k)
    bad = np.zeros(C.shape[0], dtype=bool)
    for pat in k_family_patterns():
        idx = np.flatnonzero(~bad)
        if not idx.size:
            break
        bad[idx] |= sys_.exists_many(pat, C[idx])
    return bad


def _combine(alpha):
    out = np.zeros(3, dtype=np.int64)
    for g, a in zip(_ORDER, alpha):
        out += a * np.array(RAY_CLASSES[g])
    return tuple(int(x) for x in out)


def certificate(k, cls):
    """Grouped coefficients ``(a1..a5)`` with ``a1, a2`` negative and the rest nonnegative."""
    a, b, c = (int(x) for x in cls)
    a3 = b + 1 + k
    return (-1, -k, a3, a - a3, c + 1)


def naive_certificate(k, cls):
    """The coefficients obtained from ``a1 = -k``, ``a3 = k/2`` and solving for the rest."""
    a, b, c = (int(x) for x in cls)
    a3 = Fraction(k, 2)
    return (-k, b - (-k) - a3, a3, a - a3, c + k)


def check_certificate(k, cls, alpha):
    """Valid iff the combination equals ``cls`` and the signs form a forbidden pattern."""
    sizes = (1, k, 1, k, k)
    if any(Fraction(x).denominator != 1 for x in alpha):
        return False
    alpha = tuple(int(x) for x in alpha)
    if _combine(alpha) != tuple(int(x) for x in cls):
        return False
    neg = tuple(i for i, x in enumerate(alpha) if x < 0)
    if any(alpha[i] > -sizes[i] for i in neg):
        return False
    pos = tuple(i for i in range(5) if i not in neg)
    return pos in k_family_patterns()


@dataclass
class CounterexampleReport:
    k: int
    s_size: int
    pair_count: int
    estimated_lower_bound: Fraction
    max_cones: int
    max_cones_formula: int
    inequality_holds: bool
    exact_inequality_holds: bool
    lower_bound_valid: bool
    pairs_distinct: bool
    pairs_in_s: bool
    differences_in_r: bool
    r_size: int
    r_nonacyclic: bool
    certified: bool
    naive_certificate_valid: bool
    witness_pairs: list = field(default_factory=list)

    def to_json(self):
        out = dict(self.__dict__)
        out["estimated_lower_bound"] = str(self.estimated_lower_bound)
        out["witness_pairs"] = [[list(p), list(q)] for p, q in self.witness_pairs]
        return out


def counterexample_report(k: int, witnesses: int = 5, check_cones: bool = True) -> CounterexampleReport:
    """Exact counts for the pair argument at parameter ``k``.

    ``inequality_holds`` evaluates ``(k+1)^3 - k^3/32 < k^3 + 2k^2 + 2k``
    exactly; ``exact_inequality_holds`` uses the enumerated pair count in
    place of ``k^3/32``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    s_size = (k + 1) ** 3
    T, first, second = pair_set(k)
    npairs = int(T.shape[0])
    formula = k ** 3 + 2 * k ** 2 + 2 * k
    if check_cones:
        n = 3 * k - 1
        groups = [[0], list(range(1, k + 1)), [k + 1], list(range(k + 2, 2 * k + 2)),
                  list(range(2 * k + 2, 3 * k + 2))]
        prims = [groups[i] + groups[(i + 1) % 5] for i in range(5)]
        cones = count_maximal_cones(n, 3 * k + 2, prims)
    else:
        cones = formula
    bound = Fraction(k ** 3, 32)
    in_s = bool(np.all((first >= -k) & (first <= 0)) and np.all((second >= -k) & (second <= 0)))
    distinct = bool(np.all(np.any(first != second, axis=1)))
    fs = {tuple(x) for x in first.tolist()}
    ss = {tuple(x) for x in second.tolist()}
    distinct = distinct and len(fs) == npairs and len(ss) == npairs and not (fs & ss)
    diffs = second - first
    R = r_box(k)
    rset = {tuple(x) for x in R.tolist()}
    in_r = all(tuple(d) in rset for d in diffs.tolist())
    r_bad = nonacyclic_many(k, R) if R.size else np.zeros(0, dtype=bool)
    certified = all(check_certificate(k, c, certificate(k, c)) for c in R.tolist())
    naive_ok = all(check_certificate(k, c, naive_certificate(k, c)) for c in R.tolist())
    wit = [(tuple(int(x) for x in p), tuple(int(x) for x in q))
           for p, q in zip(first[:witnesses].tolist(), second[:witnesses].tolist())]
    return CounterexampleReport(
        k=k, s_size=s_size, pair_count=npairs, estimated_lower_bound=bound,
        max_cones=int(cones), max_cones_formula=formula,
        inequality_holds=bool(s_size - bound < formula),
        exact_inequality_holds=bool(s_size - npairs < formula),
        lower_bound_valid=bool(npairs >= bound),
        pairs_distinct=distinct, pairs_in_s=in_s, differences_in_r=in_r,
        r_size=int(R.shape[0]), r_nonacyclic=bool(np.all(r_bad)),
        certified=certified, naive_certificate_valid=naive_ok, witness_pairs=wit,
    )


@dataclass
class BoxReport:
    k: int
    computed: bool
    b_in_s: bool | None
    b_classes: list
    outside: list
    closed_form_ranges: dict

    def to_json(self):
        return {"k": self.k, "computed": self.computed, "b_in_s": self.b_in_s,
                "b_classes": [list(c) for c in self.b_classes],
                "outside": [list(c) for c in self.outside], "closed_form_ranges": self.closed_form_ranges}


def _closed_form_ranges(k):
    # floors of the displayed sums of k fractional parts
    return {"D_z1": [-k, 0], "D_u1": [-k, 0], "D_y1": [-k, k - 1]}


def k_family_bondal_box(k: int, full_limit: int = 2) -> BoxReport:
    """Torus image of the variety for small ``k`` and its position relative to S."""
    ranges = _closed_form_ranges(k)
    if k > full_limit:
        return BoxReport(k, False, None, [], [], ranges)
    from .frobenius import bondal_image
    var = build_batyrev(k_family_params(k))
    g = var.groups
    basis = (g[2][0], g[1][0], g[4][0])  # z, y_1, u_1
    class_group(var.fan, basis)
    image = bondal_image(var.fan, basis_rays=basis)
    classes = sorted((c[0], c[0] + c[1], c[2]) for c in image.classes)
    outside = [c for c in classes if not all(-k <= x <= 0 for x in c)]
    return BoxReport(k, True, not outside, classes, outside, ranges)


def family_s_condition(r: int, b: int, c: int) -> bool:
    """The inequality ``c r <= b`` governing the family variant."""
    return c * r <= b
