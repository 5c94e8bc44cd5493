import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import A1, HEIS, ONE, SPECIAL_KINDS, ZERO, random_special, random_valid_datum
from liebiext.extension import BiExtendingDatum, InvalidDatum, check_bi_extending, unified_biproduct
from liebiext.liecore import LieBialgebra, check_lie_bialgebra
from liebiext.special import (
    BicrossedSumDatum,
    CrossedBiDatum,
    DoubleCrossSumDatum,
    bicrossed_sum,
    check_bicrossed,
    check_crossed,
    check_double_cross,
    crossed_biproduct,
    double_cross_sum,
    is_ideal,
    is_sub_bialgebra,
)

CHECK = {"crossed": check_crossed, "bicrossed": check_bicrossed, "doublecross": check_double_cross}
BUILD = {"crossed": crossed_biproduct, "bicrossed": bicrossed_sum, "doublecross": double_cross_sum}
W = LieBialgebra.from_constants("w", {}, {})
ROTATION = [[[ZERO, -ONE, ZERO], [ONE, ZERO, ZERO], [ZERO] * 3]]


def test_rotation_is_crossed_and_bicrossed():
    for cls, check, build in ((CrossedBiDatum, check_crossed, crossed_biproduct),
                              (BicrossedSumDatum, check_bicrossed, bicrossed_sum),
                              (DoubleCrossSumDatum, check_double_cross, double_cross_sum)):
        d = cls.from_arrays(HEIS, W, ract=ROTATION)
        assert check(d).ok
        E = build(d)
        assert E.same_constants(unified_biproduct(d.to_bidatum()))
        assert is_ideal(E, [0, 1, 2])


def test_nonzero_fixed_component_rejected():
    lact = [[[ONE], [ZERO], [ZERO]]]
    d = BiExtendingDatum.from_arrays(HEIS, ["w"], lact=lact)
    with pytest.raises(ValueError):
        CrossedBiDatum.from_bidatum(d)
    with pytest.raises(ValueError):
        BicrossedSumDatum.from_bidatum(d)
    DE = [[[ONE], [ZERO], [ZERO]]]
    with pytest.raises(ValueError):
        DoubleCrossSumDatum.from_bidatum(BiExtendingDatum.from_arrays(HEIS, ["w"], DeltaE=DE))


def test_invalid_complement_bialgebra_reported():
    bad_V = LieBialgebra.from_constants("xyh", {(0, 1): {2: 1}}, {2: {(0, 1): 1, (1, 0): -1}})
    d = DoubleCrossSumDatum.from_arrays(A1, bad_V)
    rep = check_double_cross(d)
    assert "V cocycle" in rep.labels()
    with pytest.raises(InvalidDatum):
        double_cross_sum(d)


def test_ideal_and_sub_bialgebra_examples():
    assert is_ideal(HEIS, [2])
    assert not is_ideal(HEIS, [0])
    assert is_sub_bialgebra(HEIS, [2])
    assert not is_sub_bialgebra(HEIS, [0, 1])


@pytest.mark.parametrize("kind", SPECIAL_KINDS)
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32))
def test_specialization_soundness(kind, seed):
    d = random_special(random.Random(seed), kind)
    general = d.to_bidatum()
    assert CHECK[kind](d).ok == check_bi_extending(general).ok
    E = BUILD[kind](d, check=False)
    assert E.same_constants(unified_biproduct(general, check=False))
    if CHECK[kind](d).ok:
        assert check_lie_bialgebra(E).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_crossed_product_has_base_as_ideal(seed):
    d = random_special(random.Random(seed), "crossed")
    E = crossed_biproduct(d, check=False)
    assert is_ideal(E, range(d.base.dim))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_double_cross_sum_splits_into_sub_bialgebras(seed):
    d = random_special(random.Random(seed), "doublecross")
    if not check_double_cross(d).ok:
        return
    E = double_cross_sum(d)
    n = d.base.dim
    assert is_sub_bialgebra(E, range(n))
    assert is_sub_bialgebra(E, range(n, E.dim))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_round_trip_through_general_datum(seed):
    rng = random.Random(seed)
    d = random_valid_datum(rng)
    for cls in (CrossedBiDatum, BicrossedSumDatum, DoubleCrossSumDatum):
        try:
            s = cls.from_bidatum(d)
        except ValueError:
            continue
        assert s.to_bidatum() == d
