import pytest
from hypothesis import given, settings, strategies as st

import genpos_cases as cases
from injcap.errors import HypothesisError, InfeasibleError, InputError
from injcap.fields import ExtensionField, PrimeField
from injcap.genpos import (GridProblem, MultiPoly, RankProblem, RankTarget, combine_block_rank,
                           combine_sum_rank, find_nonvanishing_point, grid_points)
from injcap.linalg import Matrix
from injcap.oracle import evaluate_multipoly

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
F4 = ExtensionField(2, (1, 1, 1))
T = (0, 1)  # the generator t of F_4


def test_constant_polynomial():
    gp = GridProblem.canonical([F2], [1])
    assert find_nonvanishing_point(gp, [MultiPoly(0, (0,), {(0,): 1})]) == (0,)


def test_product_of_two_variables():
    gp = GridProblem.canonical([F3], [2, 2])
    f = MultiPoly(0, (1, 1), {(1, 1): 1})
    # brute force: only (1, 1) is nonvanishing among the four points
    hits = [pt for pt in grid_points(gp.labels) if evaluate_multipoly(F3, f.terms, gp.image(pt, 0))]
    assert hits == [(1, 1)]
    assert find_nonvanishing_point(gp, [f]) == (1, 1)


def test_two_fields_shared_labels():
    gp = GridProblem((F4, F3), (("a", "b", "c"),),
                     (({"a": (0, 0), "b": (1, 0), "c": T}, {"a": 0, "b": 1, "c": 2}),))
    f1 = MultiPoly(0, (1,), {(1,): 1})
    f2 = MultiPoly(1, (1,), {(1,): 1, (0,): -1})
    assert find_nonvanishing_point(gp, [f1, f2]) == ("c",)


def test_cardinality_precondition_reported():
    gp = GridProblem.canonical([F3], [1])
    with pytest.raises(HypothesisError):
        find_nonvanishing_point(gp, [MultiPoly(0, (1,), {(1,): 1})])


def test_embeddings_must_be_injective():
    with pytest.raises(InputError):
        GridProblem((F2,), (("a", "b", "c"),), (({"a": 0, "b": 1, "c": 0},),))


def test_multipoly_rejects_monomials_outside_bounds():
    with pytest.raises(InputError):
        MultiPoly(0, (1,), {(2,): 1})


# -- block rank ------------------------------------------------------------------------

def test_block_scalar_identity():
    rp = RankProblem((RankTarget(2, Matrix.zeros(F3, 2, 2), (Matrix.identity(F3, 2),)),))
    gp = GridProblem((F3,), ((1, 2),), (({1: 1, 2: 2},),))
    # two labels do not exceed min(r, n) = 2, so the guaranteed search refuses
    with pytest.raises(HypothesisError):
        combine_block_rank(rp, gp)
    cert = combine_block_rank(rp, gp, require_bound=False)
    assert cert.point == (1,) and cert.ranks == (2,)


def test_block_waived_bound_can_fail():
    rp = RankProblem((RankTarget(1, Matrix.identity(F2, 1), (Matrix.identity(F2, 1),)),))
    gp = GridProblem((F2,), ((1,),), (({1: 1},),))
    with pytest.raises(InfeasibleError):
        combine_block_rank(rp, gp, require_bound=False)


def test_block_identity_plus_scalar():
    rp = RankProblem((RankTarget(2, Matrix.identity(F3, 2), (Matrix.identity(F3, 2),)),))
    gp = GridProblem.canonical([F3], [3])
    # det(I + cI) = (1 + c)^2 vanishes only at c = 2
    good = [c for c in range(3) if (1 + c) % 3]
    assert good == [0, 1]
    assert combine_block_rank(rp, gp).point == (0,)


def test_block_two_fields_over_f2_cannot_embed_three_labels():
    # three labels need three distinct images in F_2, which do not exist
    with pytest.raises(InputError):
        GridProblem((F2, F5), (("alpha", "beta", "gamma"),),
                    (({"alpha": 0, "beta": 1, "gamma": 1}, {"alpha": 0, "beta": 1, "gamma": 2}),))


def test_block_two_fields_f4_variant():
    rp = RankProblem((RankTarget(1, Matrix.zeros(F4, 1, 1), (Matrix.identity(F4, 1),)),
                      RankTarget(1, Matrix.from_values(F5, [[4]]), (Matrix.identity(F5, 1),))))
    gp = GridProblem((F4, F5), (("alpha", "beta", "gamma"),),
                     (({"alpha": (0, 0), "beta": (1, 0), "gamma": T}, {"alpha": 0, "beta": 1, "gamma": 2}),))
    cert = combine_block_rank(rp, gp)
    # alpha is 0 in F_4; beta gives 4 + 1 = 0 in F_5; gamma works in both
    assert cert.point == ("gamma",) and cert.ranks == (1, 1)


def test_block_rank_deficient_blocks_rejected():
    rp = RankProblem((RankTarget(2, Matrix.zeros(F3, 2, 2), (Matrix.zeros(F3, 2, 2),)),))
    with pytest.raises(HypothesisError):
        combine_block_rank(rp, GridProblem.canonical([F3], [3]))


def test_transposed_orientation():
    blocks = (Matrix.from_values(F3, [[1, 0]]), Matrix.from_values(F3, [[0, 1]]))
    rp = RankProblem((RankTarget(2, Matrix.zeros(F3, 2, 2), blocks),), "block", "transposed")
    cert = combine_block_rank(rp, GridProblem.canonical([F3], [3, 3]))
    assert cert.point == (1, 1) and cert.ranks == (2,)


# -- sum rank ---------------------------------------------------------------------------

def test_sum_single_block():
    rp = RankProblem((RankTarget(2, Matrix.zeros(F5, 2, 2), (Matrix.identity(F5, 2),)),), "sum")
    cert = combine_sum_rank(rp, GridProblem.canonical([F5], [3]))
    assert cert.point == (1,)


def test_sum_two_coordinates():
    rp = RankProblem((RankTarget(1, Matrix.zeros(F5, 1, 1),
                                 (Matrix.from_values(F5, [[1]]), Matrix.from_values(F5, [[4]]))),), "sum")
    gp = GridProblem.canonical([F5], [3, 3])
    good = [pt for pt in grid_points(gp.labels) if (pt[0] + 4 * pt[1]) % 5]
    assert (1, 0) in good
    assert combine_sum_rank(rp, gp).point == (1, 0)


def test_sum_two_fields_distinct_ranks():
    tg1 = RankTarget(2, Matrix.zeros(F5, 2, 2), (Matrix.identity(F5, 2), Matrix.zeros(F5, 2, 2)))
    tg2 = RankTarget(1, Matrix.from_values(F3, [[1, 1]]),
                     (Matrix.zeros(F3, 1, 2), Matrix.from_values(F3, [[2, 2]])))
    rp = RankProblem((tg1, tg2), "sum")
    gp = GridProblem((F5, F3), ((0, 1, 2), (0, 1, 2)),
                     tuple(({0: 0, 1: 1, 2: 2}, {0: 0, 1: 1, 2: 2}) for _ in range(2)))
    with pytest.raises(HypothesisError):
        # 1 + r_1 + r_2 = 4 labels are needed
        combine_sum_rank(rp, gp)
    tg1 = RankTarget(1, tg1.base, tg1.blocks)
    rp = RankProblem((tg1, tg2), "sum")
    cert = combine_sum_rank(rp, gp)
    assert cases.recheck_rank(rp, gp, cert.point)
    assert cert.ranks[0] >= 1 and cert.ranks[1] >= 1


def test_sum_needs_one_full_rank_block():
    rp = RankProblem((RankTarget(1, Matrix.zeros(F3, 1, 1), (Matrix.zeros(F3, 1, 1),)),), "sum")
    with pytest.raises(HypothesisError):
        combine_sum_rank(rp, GridProblem.canonical([F3], [2]))


def test_zero_target_trivially_met():
    rp = RankProblem((RankTarget(0, Matrix.zeros(F2, 1, 1), (Matrix.zeros(F2, 1, 1),)),))
    assert combine_block_rank(rp, GridProblem.canonical([F2], [1])).point == (0,)


# -- random instances (the acceptance suite runs 10^4 of each) ------------------------------

@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_nonvanishing_points_are_sound(seed):
    gp, polys = cases.nonvanishing_instance(seed)
    pt = find_nonvanishing_point(gp, polys)
    assert pt == find_nonvanishing_point(gp, polys)
    for f in polys:
        k = gp.fields[f.field_index]
        assert not k.is_zero(evaluate_multipoly(k, f.terms, gp.image(pt, f.field_index)))
    # first hit in sweep order
    for earlier in grid_points(gp.labels):
        if earlier == pt:
            break
        assert any(gp.fields[f.field_index].is_zero(
            evaluate_multipoly(gp.fields[f.field_index], f.terms, gp.image(earlier, f.field_index))) for f in polys)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_block_rank_sound(seed):
    rp, gp = cases.block_instance(seed)
    assert cases.recheck_rank(rp, gp, combine_block_rank(rp, gp).point)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_sum_rank_sound(seed):
    rp, gp = cases.sum_instance(seed)
    assert cases.recheck_rank(rp, gp, combine_sum_rank(rp, gp).point)
