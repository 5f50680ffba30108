"""Picard-number-three varieties with five primitive collections.

Rays are ordered group by group: ``X0 = v``, ``X1 = y``, ``X2 = z``,
``X3 = t``, ``X4 = u``. The primitive collections are the unions of
cyclically consecutive groups.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .fan import Fan, maximal_cones_from_primitives, validate_fan

__all__ = [
    "BatyrevParams",
    "FamilyParams",
    "BatyrevVariety",
    "build_batyrev",
    "build_family",
    "family_as_batyrev",
    "k_family_params",
]


@dataclass(frozen=True)
class BatyrevParams:
    p: tuple
    c: tuple = ()
    b: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.p) != 5 or min(self.p) < 1:
            raise ValueError("need five group sizes p0..p4, each at least 1")
        if len(self.c) != self.p[2] - 1:
            raise ValueError(f"expected {self.p[2] - 1} coefficients c_2..c_p2, got {len(self.c)}")
        if len(self.b) != self.p[3]:
            raise ValueError(f"expected {self.p[3]} coefficients b_1..b_p3, got {len(self.b)}")
        if min(self.c + self.b, default=0) < 0:
            raise ValueError("coefficients b and c must be nonnegative")

    @property
    def dim(self):
        return sum(self.p) - 3

    def to_json(self):
        return {"p": list(self.p), "c": list(self.c), "b": list(self.b)}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["p"]), tuple(data.get("c", ())), tuple(data.get("b", ())))


@dataclass(frozen=True)
class FamilyParams:
    """The family with ``|X1| = |X3| = |X4| = 1`` and ``|X2| = r``."""

    n: int
    r: int
    b: int = 0
    c: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if not 1 <= self.r <= self.n - 1:
            raise ValueError(f"need 1 <= r <= n-1, got n={self.n}, r={self.r}")
        if not self.c and self.r > 1:
            object.__setattr__(self, "c", (0,) * (self.r - 1))
        if len(self.c) != self.r - 1:
            raise ValueError(f"expected {self.r - 1} coefficients c_2..c_r")
        if self.b < 0 or min(self.c, default=0) < 0:
            raise ValueError("coefficients b and c must be nonnegative")

    @property
    def is_fano(self):
        return self.n - self.r > sum(self.c) + self.b

    def to_json(self):
        return {"n": self.n, "r": self.r, "b": self.b, "c": list(self.c)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["n"]), int(data["r"]), int(data.get("b", 0)), tuple(data.get("c", ())))


@dataclass(frozen=True)
class BatyrevVariety:
    """A constructed fan together with its ray groups ``X0..X4``."""

    fan: Fan
    groups: tuple
    params: object

    @property
    def prims(self):
        """The five primitive collections ``Y_i = X_i u X_{i+1}`` as sorted tuples."""
        g = self.groups
        return [tuple(sorted(g[i] + g[(i + 1) % 5])) for i in range(5)]

    # named rays of the family (only meaningful for FamilyParams builds)
    @property
    def v(self):
        return self.groups[0]

    @property
    def y(self):
        return self.groups[1][0]

    @property
    def z(self):
        return self.groups[2]

    @property
    def t(self):
        return self.groups[3][0]

    @property
    def u(self):
        return self.groups[4][0]


def _groups(p):
    out = []
    start = 0
    for size in p:
        out.append(tuple(range(start, start + size)))
        start += size
    return tuple(out)


def _assemble(n, rays, groups, params, names):
    prims = [groups[i] + groups[(i + 1) % 5] for i in range(5)]
    cones = maximal_cones_from_primitives(n, len(rays), prims)
    fan = Fan(n, rays, cones, names)
    return BatyrevVariety(fan, groups, params)


def build_batyrev(params: BatyrevParams) -> BatyrevVariety:
    """Fan of the five-collection variety with the given relation data.

    The basis of ``N`` is ``v_1..v_p0, y_2..y_p1, z_2..z_p2, t_1..t_p3,
    u_2..u_p4``; ``z_1``, ``u_1`` and ``y_1`` are solved from the
    primitive relations.
    """
    p0, p1, p2, p3, p4 = params.p
    n = params.dim
    basis_names = ([f"v{i}" for i in range(1, p0 + 1)] + [f"y{i}" for i in range(2, p1 + 1)]
                   + [f"z{i}" for i in range(2, p2 + 1)] + [f"t{i}" for i in range(1, p3 + 1)]
                   + [f"u{i}" for i in range(2, p4 + 1)])
    assert len(basis_names) == n
    e = {name: [int(k == j) for j in range(n)] for k, name in enumerate(basis_names)}

    def comb(terms):
        out = [0] * n
        for coef, vec in terms:
            for j in range(n):
                out[j] += coef * vec[j]
        return out

    v = [e[f"v{i}"] for i in range(1, p0 + 1)]
    z_rest = [e[f"z{i}"] for i in range(2, p2 + 1)]
    t = [e[f"t{i}"] for i in range(1, p3 + 1)]
    u_rest = [e[f"u{i}"] for i in range(2, p4 + 1)]
    y_rest = [e[f"y{i}"] for i in range(2, p1 + 1)]

    z1 = comb([(-1, x) for x in z_rest + t])
    z = [z1] + z_rest
    u1 = comb([(-1, x) for x in u_rest + v]
              + [(ci, zi) for ci, zi in zip(params.c, z_rest)]
              + [(bi, ti) for bi, ti in zip(params.b, t)])
    u = [u1] + u_rest
    y1 = comb([(-1, x) for x in y_rest + z] + [(1, x) for x in u])
    y = [y1] + y_rest

    rays = v + y + z + t + u
    names = ([f"v{i}" for i in range(1, p0 + 1)] + [f"y{i}" for i in range(1, p1 + 1)]
             + [f"z{i}" for i in range(1, p2 + 1)] + [f"t{i}" for i in range(1, p3 + 1)]
             + [f"u{i}" for i in range(1, p4 + 1)])
    var = _assemble(n, rays, _groups(params.p), params, names)
    report = validate_fan(var.fan)
    if not report.smooth:
        raise ValueError("constructed fan is not smooth: " + "; ".join(report.diagnostics))
    return var


def build_family(params: FamilyParams) -> BatyrevVariety:
    """Rays ``v_1..v_{n-r} = e_1..e_{n-r}``, ``z_i = e_{n-r+i}``, ``y``, ``t``, ``u``."""
    n, r, b = params.n, params.r, params.b
    k = n - r

    def e(i):
        return [int(j == i) for j in range(n)]

    v = [e(i) for i in range(k)]
    z = [e(k + i) for i in range(r)]
    cz = [0] * n
    for i, ci in enumerate(params.c, start=1):
        cz[k + i] = ci
    y = [(-1 if j < k else 0) + cz[j] - (b + 1) * (j >= k) for j in range(n)]
    t = [-(j >= k) for j in range(n)]
    u = [(-1 if j < k else 0) + cz[j] - b * (j >= k) for j in range(n)]
    rays = v + [y] + z + [t, u]
    names = [f"v{i}" for i in range(1, k + 1)] + ["y"] + [f"z{i}" for i in range(1, r + 1)] + ["t", "u"]
    return _assemble(n, rays, _groups((k, 1, r, 1, 1)), params, names)


def family_as_batyrev(params: FamilyParams) -> BatyrevParams:
    return BatyrevParams((params.n - params.r, 1, params.r, 1, 1), params.c, (params.b,))


def k_family_params(k: int) -> BatyrevParams:
    """``|X0| = |X2| = 1``, ``|X1| = |X3| = |X4| = k``, all coefficients zero."""
    return BatyrevParams((1, k, 1, k, k), (), (0,) * k)
