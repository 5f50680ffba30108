"""Divisor classes: ``0 -> M -> Div_T -> Cl(X) -> 0`` via Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import intlinalg
from .fan import Fan

__all__ = [
    "TorsionError",
    "ClassGroupPresentation",
    "class_group",
    "classify",
    "family_presentation",
    "family_coords",
    "principal_divisor",
]


class TorsionError(ValueError):
    """The class group has torsion, so the fan is not smooth and complete."""


@dataclass(frozen=True)
class ClassGroupPresentation:
    """Class coordinates in the basis ``[D_j]`` for ``j`` in ``basis_rays``.

    ``projection`` is ``rank x n_rays``: it restricts to the identity on the
    basis columns and kills every principal divisor. ``frame`` is the maximal
    cone complementary to the basis rays.
    """

    rank: int
    projection: tuple
    section: tuple
    basis_rays: tuple
    frame: tuple
    snf_factors: tuple

    def projection_array(self):
        return np.array(self.projection, dtype=np.int64).reshape(self.rank, -1)

    def classify(self, coeffs):
        return tuple(int(x) for x in intlinalg.matvec(self.projection, list(coeffs)))

    def classify_many(self, coeffs):
        """Vectorised projection of an ``(k, n_rays)`` coefficient array."""
        return np.asarray(coeffs, dtype=np.int64) @ self.projection_array().T

    def representative(self, cls):
        """The section: coefficients ``cls`` on the basis rays, zero elsewhere."""
        return tuple(int(x) for x in intlinalg.matvec(self.section, list(cls)))


def principal_divisor(fan: Fan, m) -> tuple:
    return tuple(sum(mi * gi for mi, gi in zip(m, g)) for g in fan.rays)


@lru_cache(maxsize=512)
def _presentation(fan: Fan, basis_rays):
    G = [list(r) for r in fan.rays]
    N, n = fan.n_rays, fan.dim
    D, U, _ = intlinalg.smith_normal_form(G)
    diag = [D[i][i] for i in range(min(N, n))]
    if any(d == 0 for d in diag):
        raise TorsionError("rays do not span the lattice")
    if any(abs(d) != 1 for d in diag):
        raise TorsionError(f"class group has torsion, invariant factors {diag}")
    rank = N - n
    P = U[n:]
    if basis_rays is None:
        first = fan.max_cones[0]
        basis_rays = tuple(i for i in range(N) if i not in first)
    basis_rays = tuple(basis_rays)
    if len(basis_rays) != rank:
        raise ValueError(f"need {rank} basis rays, got {len(basis_rays)}")
    frame = tuple(i for i in range(N) if i not in basis_rays)
    if frame not in fan.max_cones:
        raise ValueError(f"basis rays {basis_rays} are not the complement of a maximal cone")
    T = [[P[i][j] for j in basis_rays] for i in range(rank)]
    Tinv = intlinalg.unimodular_inverse(T)
    proj = intlinalg.matmul(Tinv, P)
    section = [[0] * rank for _ in range(N)]
    for k, j in enumerate(basis_rays):
        section[j][k] = 1
    return ClassGroupPresentation(
        rank,
        tuple(tuple(row) for row in proj),
        tuple(tuple(row) for row in section),
        basis_rays,
        frame,
        tuple(diag),
    )


def class_group(fan: Fan, basis_rays=None) -> ClassGroupPresentation:
    """Class group of a smooth complete fan.

    By default the basis is the set of rays off the first maximal cone.
    Raises :class:`TorsionError` when the invariant factors of the ray
    matrix are not all one.
    """
    return _presentation(fan, None if basis_rays is None else tuple(basis_rays))


def classify(fan: Fan, div, basis_rays=None) -> tuple:
    return class_group(fan, basis_rays).classify(div)


def family_presentation(var) -> ClassGroupPresentation:
    """Class group of a family fan in the ``(D_t, D_y, D_v)`` basis."""
    return class_group(var.fan, (var.t, var.y, var.v[0]))


def family_coords(var, div) -> tuple:
    """``(s_t, s_y, s_v)`` with ``[div] = s_t [D_t] + s_y [D_y] + s_v [D_v]``."""
    return family_presentation(var).classify(div)
