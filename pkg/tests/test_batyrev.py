import itertools

import pytest

from toric_exc.batyrev import (BatyrevParams, FamilyParams, build_batyrev, build_family,
                               family_as_batyrev, k_family_params)
from toric_exc.fan import count_maximal_cones, primitive_collections, validate_fan


def relation_sum(fan, idx):
    return tuple(sum(fan.rays[i][j] for i in idx) for j in range(fan.dim))


@pytest.mark.parametrize("p", [(1, 1, 1, 1, 1), (2, 1, 1, 1, 1), (1, 2, 2, 1, 1), (1, 1, 3, 2, 1), (2, 2, 1, 1, 2)])
def test_batyrev_smooth_with_five_prims(p):
    params = BatyrevParams(p, (1,) * (p[2] - 1), (2,) * p[3])
    var = build_batyrev(params)
    assert validate_fan(var.fan).smooth and validate_fan(var.fan).pseudo_manifold
    assert sorted(primitive_collections(var.fan)) == sorted(var.prims)
    assert var.fan.n_rays == sum(p) and var.fan.dim == sum(p) - 3


def test_batyrev_primitive_relations():
    params = BatyrevParams((1, 1, 2, 2, 1), (3,), (1, 2))
    var = build_batyrev(params)
    f, g = var.fan, var.groups
    v, y, z, t, u = [list(x) for x in g]
    # z_1 + ... + z_p2 + t_1 + ... + t_p3 = 0
    assert relation_sum(f, z + t) == (0,) * f.dim
    # y + z - u = 0
    lhs = [a - b for a, b in zip(relation_sum(f, y + z), relation_sum(f, u))]
    assert lhs == [0] * f.dim
    # u + v = c_i z_i + b_i t_i
    rhs = [0] * f.dim
    for ci, zi in zip(params.c, z[1:]):
        rhs = [a + ci * b for a, b in zip(rhs, f.rays[zi])]
    for bi, ti in zip(params.b, t):
        rhs = [a + bi * b for a, b in zip(rhs, f.rays[ti])]
    assert list(relation_sum(f, u + v)) == rhs


@pytest.mark.parametrize("n,r", [(n, r) for n in range(2, 7) for r in range(1, n)])
def test_family_cone_count(n, r):
    var = build_family(FamilyParams(n, r, 1, (1,) * (r - 1)))
    assert validate_fan(var.fan).smooth
    assert len(var.fan.max_cones) == 2 * r * n - 2 * r * r + n + 1
    assert count_maximal_cones(n, n + 3, var.prims) == len(var.fan.max_cones)


def test_family_relations():
    p = FamilyParams(4, 2, 2, (1,))
    var = build_family(p)
    f = var.fan
    # t + u = y
    assert [a + b for a, b in zip(f.rays[var.t], f.rays[var.u])] == list(f.rays[var.y])
    # z_1 + ... + z_r + t = 0
    assert relation_sum(f, list(var.z) + [var.t]) == (0,) * 4
    # u + v_1 + ... + v_{n-r} = c_2 z_2 + ... + b t
    lhs = relation_sum(f, [var.u] + list(var.v))
    rhs = [1 * a + 2 * b for a, b in zip(f.rays[var.z[1]], f.rays[var.t])]
    assert list(lhs) == rhs


def test_family_matches_general_builder_combinatorics():
    p = FamilyParams(4, 2, 1, (2,))
    a = build_family(p)
    b = build_batyrev(family_as_batyrev(p))
    assert a.fan.max_cones == b.fan.max_cones


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_k_family_cone_count(k):
    params = k_family_params(k)
    groups = [[0], list(range(1, k + 1)), [k + 1], list(range(k + 2, 2 * k + 2)), list(range(2 * k + 2, 3 * k + 2))]
    prims = [groups[i] + groups[(i + 1) % 5] for i in range(5)]
    assert count_maximal_cones(params.dim, 3 * k + 2, prims) == k ** 3 + 2 * k ** 2 + 2 * k
    if k <= 2:
        assert len(build_batyrev(params).fan.max_cones) == k ** 3 + 2 * k ** 2 + 2 * k


def test_param_validation():
    with pytest.raises(ValueError):
        BatyrevParams((1, 1, 1, 1))
    with pytest.raises(ValueError):
        BatyrevParams((1, 1, 2, 1, 1), (), (0,))
    with pytest.raises(ValueError):
        FamilyParams(3, 3)
    with pytest.raises(ValueError):
        FamilyParams(3, 1, -1)


def test_fano_flag():
    assert FamilyParams(3, 1, 1).is_fano
    assert not FamilyParams(3, 1, 2).is_fano
