import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import sympy_reduced_homology
from toric_exc.batyrev import BatyrevParams, FamilyParams, build_batyrev, build_family
from toric_exc.fan import primitive_collections, projective_space
from toric_exc.homology import (BettiVector, PrimComplex, SizeBoundError, forbidden_sets,
                                forbidden_sets_picard3, is_acyclic_complex, pentagon_order,
                                reduce_delete, reduce_glue, snf_homology)


def shifted(b: BettiVector, shift, nv):
    return [b[i - shift] for i in range(-1, nv)]


def full(b: BettiVector, nv):
    return [b[i] for i in range(-1, nv)]


@st.composite
def complexes(draw, max_v=10):
    nv = draw(st.integers(1, max_v))
    sets = draw(st.lists(st.sets(st.integers(0, nv - 1), min_size=1, max_size=min(nv, 5)), max_size=6))
    return PrimComplex.from_sets(range(nv), sets)


def test_snf_examples():
    assert full(snf_homology(PrimComplex((0, 1, 2), ((0, 1, 2),))), 3) == [0, 0, 1, 0]
    assert snf_homology(PrimComplex((0, 1, 2), ())).acyclic
    b = snf_homology(PrimComplex((0, 1), ((0, 1),)))
    assert b[0] == 1 and b.nonzero_degrees() == [0]
    empty = snf_homology(PrimComplex((3,), ((3,),)))
    assert empty[-1] == 1
    assert snf_homology(PrimComplex((), ()))[-1] == 1


def test_snf_bound():
    with pytest.raises(SizeBoundError):
        snf_homology(PrimComplex(tuple(range(5)), ((0, 1),)), bound=4)


def test_complex_validation():
    with pytest.raises(ValueError):
        PrimComplex((0, 1), ((0, 1), (0,)))
    with pytest.raises(ValueError):
        PrimComplex((0, 1), ((0, 2),))
    c = PrimComplex.from_json({"vertices": 3, "prims": [[0, 1]]})
    assert PrimComplex.from_json(c.to_json()) == c


@settings(max_examples=80)
@given(complexes(max_v=8))
def test_snf_matches_sympy(c):
    betti, tors = sympy_reduced_homology(c.vertices, c.prims)
    b = snf_homology(c)
    assert [b[i] for i in range(-1, len(betti) - 1)] == betti
    assert [tuple(b.torsion_in(i)) for i in range(-1, len(betti) - 1)] == [tuple(t) for t in tors]


def test_delete_examples():
    c = PrimComplex((1, 2, 3), ((1, 2), (2, 3)))
    out, shift = reduce_delete(c, (1, 2), 1)
    assert out == PrimComplex((3,), ((3,),)) and shift == 1
    assert snf_homology(c)[0] == 1 and snf_homology(out)[-1] == 1
    with pytest.raises(ValueError):
        reduce_delete(c, (1, 2), 2)  # vertex in two collections
    with pytest.raises(ValueError):
        reduce_delete(PrimComplex((0, 1, 2), ((0, 1),)), (0, 1), 2)
    single = PrimComplex((0, 1, 2, 3), ((0, 1, 2, 3),))
    out, shift = reduce_delete(single, (0, 1, 2, 3), 0)
    assert out.vertices == () and shift == 3
    assert snf_homology(single)[2] == 1


def test_glue_examples():
    c = PrimComplex((1, 2, 3, 4), ((1, 2, 3, 4),))
    out, shift = reduce_glue(c)
    assert out == PrimComplex((1,), ((1,),)) and shift == 3
    assert snf_homology(c)[2] == 1 and snf_homology(out)[-1] == 1
    d = PrimComplex((0, 1, 2), ((0, 1), (1, 2)))
    assert reduce_glue(d) == (d, 0)


@settings(max_examples=200)
@given(complexes())
def test_shift_identities(c):
    nv = len(c.vertices)
    base = snf_homology(c)
    out, shift = reduce_glue(c)
    assert full(base, nv) == shifted(snf_homology(out), shift, nv)
    for x in c.vertices:
        owners = c.prims_containing(x)
        if len(owners) == 1:
            out, shift = reduce_delete(c, owners[0], x)
            assert full(base, nv) == shifted(snf_homology(out), shift, nv)


def _verdicts(c, seen):
    """Acyclicity verdicts over every legal reduction path."""
    key = c
    if key in seen:
        return seen[key]
    if not c.vertices:
        res = {False}
    elif not c.prims or len(set().union(*map(set, c.prims))) < len(c.vertices):
        res = {True}
    else:
        moves = []
        g, s = reduce_glue(c)
        if s:
            moves.append(g)
        for x in c.vertices:
            owners = c.prims_containing(x)
            if len(owners) == 1:
                moves.append(reduce_delete(c, owners[0], x)[0])
        if not moves:
            res = {snf_homology(c).acyclic}
        else:
            res = set()
            for m in moves:
                res |= _verdicts(m, seen)
    seen[key] = res
    return res


def test_confluence_up_to_eight_vertices():
    rng = random.Random(7)
    for _ in range(300):
        nv = rng.randint(1, 8)
        sets = [set(rng.sample(range(nv), rng.randint(1, min(nv, 4)))) for _ in range(rng.randint(0, 5))]
        c = PrimComplex.from_sets(range(nv), sets)
        assert _verdicts(c, {}) == {snf_homology(c).acyclic}
        assert is_acyclic_complex(c) == snf_homology(c).acyclic


def test_p2_forbidden_only_empty():
    assert forbidden_sets(projective_space(2)) == [()]
    assert forbidden_sets(projective_space(2), method="snf") == [()]


def test_forbidden_bound():
    var = build_family(FamilyParams(4, 2, 0, (0,)))
    with pytest.raises(SizeBoundError):
        forbidden_sets(var.fan, bound=5)


@pytest.mark.parametrize("params", [FamilyParams(2, 1, 0), FamilyParams(3, 2, 1, (2,)), FamilyParams(4, 1, 2)])
def test_family_closed_form(params):
    var = build_family(params)
    brute = forbidden_sets(var.fan)
    closed = forbidden_sets_picard3(var.prims, var.fan.n_rays)
    assert brute == closed
    if params == FamilyParams(2, 1, 0):
        assert len(closed) == 11


def test_consecutive_unions():
    var = build_batyrev(BatyrevParams((1, 2, 1, 2, 1), (), (1, 0)))
    Y, X = pentagon_order(var.prims)
    forb = set(forbidden_sets(var.fan))
    allv = set(range(var.fan.n_rays))
    for i in range(5):
        # two consecutive collections: complement of the opposite one
        two = set(Y[i]) | set(Y[(i + 1) % 5])
        assert tuple(sorted(allv - two)) == tuple(sorted(set(X[(i + 3) % 5]) | set(X[(i + 4) % 5])))
        assert tuple(sorted(two)) in forb
        three = two | set(Y[(i + 2) % 5])
        if three != allv:
            assert tuple(sorted(three)) not in forb
            inside = [p for p in primitive_collections(var.fan) if set(p) <= three]
            assert is_acyclic_complex(PrimComplex(tuple(sorted(three)), tuple(inside)))


def test_non_unions_never_forbidden():
    var = build_batyrev(BatyrevParams((1, 1, 2, 1, 2), (1,), (2,)))
    prims = [set(p) for p in var.prims]
    for I in forbidden_sets(var.fan):
        if I:
            assert set().union(*[p for p in prims if p <= set(I)]) == set(I)


def test_pentagon_rejects():
    with pytest.raises(ValueError):
        pentagon_order([(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        pentagon_order([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
