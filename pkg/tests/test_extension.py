import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import A1, BASES, HEIS, N2, SPLIT_SOURCES, VALUES, ZERO, mutate, random_datum, random_invertible, \
    random_valid_datum
from liebiext.exactnum import ONE
from liebiext.extension import (
    BiExtendingDatum,
    InvalidDatum,
    NotASubBialgebra,
    PQPair,
    SingularQ,
    check_alg_extending,
    check_bi_extending,
    check_coalg_extending,
    compose_pq,
    extract_datum,
    hom_from_pq,
    transform_datum,
    unified_biproduct,
    unified_coproduct,
    unified_product,
)
from liebiext.liecore import (
    LieBialgebra,
    SpaceMismatch,
    check_lie_algebra,
    check_lie_bialgebra,
    check_lie_coalgebra,
    direct_sum,
)

seeds = st.integers(min_value=0, max_value=2**32)


def random_pq(rng: random.Random, d: BiExtendingDatum) -> PQPair:
    n, m = d.base.dim, d.V.dim
    p = [[rng.choice(VALUES + [ZERO, ZERO]) for _ in range(n)] for _ in range(m)]
    return PQPair.from_images(d.base.space, d.V, p, random_invertible(rng, m))


# -- examples ------------------------------------------------------------------


def test_zero_datum_gives_direct_sum():
    d = BiExtendingDatum.zero(HEIS, ["v"])
    assert check_bi_extending(d).ok
    E = unified_biproduct(d)
    V = LieBialgebra.from_constants("v", {}, {})
    assert E.same_constants(direct_sum(HEIS, V))


def test_rotation_datum():
    # [x, v] = y and [y, v] = -x through the right action
    r = [[[ZERO] * 3 for _ in range(3)]]
    r[0][0][1] = -ONE
    r[0][1][0] = ONE
    d = BiExtendingDatum.from_arrays(HEIS, ["v"], ract=r)
    assert check_bi_extending(d).ok
    E = unified_biproduct(d)
    assert E.c[0][3][1] == ONE and E.c[1][3][0] == -ONE


def test_invalid_datum_names_condition():
    lact = [[[ONE], [ZERO], [ZERO]]]
    d = BiExtendingDatum.from_arrays(HEIS, ["v"], lact=lact)
    rep = check_bi_extending(d)
    assert not rep.ok
    assert all(v.label.startswith(("LE", "CLE", "BE")) for v in rep.violations)
    with pytest.raises(InvalidDatum):
        unified_biproduct(d)


def test_condition_selection():
    lact = [[[ONE], [ZERO], [ZERO]]]
    d = BiExtendingDatum.from_arrays(HEIS, ["v"], lact=lact)
    full = check_bi_extending(d)
    for label in full.labels():
        assert check_bi_extending(d, [label]).labels() == [label]
    # labels of the other half select nothing
    assert check_alg_extending(d.alg, ["BE2"]).ok
    with pytest.raises(ValueError):
        check_alg_extending(d.alg, ["LE9"])


def test_wrong_shape_rejected():
    with pytest.raises(SpaceMismatch):
        BiExtendingDatum.from_arrays(HEIS, ["v"], lact=[[[ONE], [ZERO]]])


def test_extract_heisenberg_rotation():
    E = unified_biproduct(BiExtendingDatum.from_arrays(
        HEIS, ["v"], ract=[[[ZERO, -ONE, ZERO], [ONE, ZERO, ZERO], [ZERO] * 3]]))
    d = extract_datum(E, [0, 1, 2])
    assert d.base.same_constants(HEIS)
    assert d.arrays().ract[0][0][1] == -ONE


def test_extract_rejects_non_sub_bialgebra():
    with pytest.raises(NotASubBialgebra):
        extract_datum(HEIS, [0, 1])          # [x, y] = h leaves the span
    with pytest.raises(NotASubBialgebra):
        extract_datum(HEIS, [0, 2])          # delta(x) = y^h leaves the span
    with pytest.raises(ValueError):
        extract_datum(HEIS, [0, 1, 2])
    with pytest.raises(ValueError):
        extract_datum(HEIS, [0, 0])


def test_zero_q_is_not_an_isomorphism():
    d = BiExtendingDatum.zero(HEIS, ["v"])
    pq = PQPair.from_images(HEIS.space, d.V, [[ZERO] * 3], [[ZERO]])
    rep = hom_from_pq(d, d, pq)
    assert rep.is_homomorphism
    assert not rep.is_isomorphism
    with pytest.raises(SingularQ):
        transform_datum(d, pq)


def test_hom_rejects_invalid_datum():
    bad = BiExtendingDatum.from_arrays(HEIS, ["v"], lact=[[[ONE], [ZERO], [ZERO]]])
    good = BiExtendingDatum.zero(HEIS, ["v"])
    with pytest.raises(InvalidDatum):
        hom_from_pq(bad, good, PQPair.identity(HEIS.space, good.V))


def test_identity_transform():
    rng = random.Random(3)
    for _ in range(20):
        d = random_valid_datum(rng)
        assert transform_datum(d, PQPair.identity(d.base.space, d.V)) == d


# -- the datum conditions against the direct axioms -----------------------------


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_conditions_match_direct_axioms(seed):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        d = random_datum(rng)
    else:
        d = random_valid_datum(rng)
        if rng.random() < 0.5:
            d = mutate(rng, d)
    assert check_alg_extending(d.alg).ok == check_lie_algebra(unified_product(d.alg, check=False)).ok
    assert check_coalg_extending(d.coalg).ok == check_lie_coalgebra(unified_coproduct(d.coalg, check=False)).ok
    assert check_bi_extending(d).ok == check_lie_bialgebra(unified_biproduct(d, check=False)).ok


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_valid_generator_produces_valid_data(seed):
    d = random_valid_datum(random.Random(seed))
    assert check_bi_extending(d).ok


# -- extraction -------------------------------------------------------------------


@pytest.mark.parametrize("E,sub", SPLIT_SOURCES, ids=lambda v: getattr(v, "name", str(v)))
def test_extract_round_trip(E, sub):
    d = extract_datum(E, sub)
    assert check_bi_extending(d).ok
    rest = [i for i in range(E.dim) if i not in sub]
    assert unified_biproduct(d).same_constants(E.permuted(sub + rest))


# -- equivalence action -----------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_transform_gives_isomorphism(seed):
    rng = random.Random(seed)
    d = random_valid_datum(rng)
    pq = random_pq(rng, d)
    d2 = transform_datum(d, pq)
    assert check_bi_extending(d2).ok
    rep = hom_from_pq(d, d2, pq)
    assert rep.agree
    assert rep.is_homomorphism and rep.is_isomorphism


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_transform_is_functorial(seed):
    rng = random.Random(seed)
    d = random_valid_datum(rng)
    pq1, pq2 = random_pq(rng, d), random_pq(rng, d)
    step = transform_datum(transform_datum(d, pq1), pq2)
    assert step == transform_datum(d, compose_pq(pq1, pq2))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_hom_verdicts_agree_on_random_pairs(seed):
    # an arbitrary (p, q) between two valid data is usually not a morphism;
    # the condition check and the direct check must still agree
    rng = random.Random(seed)
    d = random_valid_datum(rng)
    d2 = transform_datum(d, random_pq(rng, d)) if rng.random() < 0.5 else d
    rep = hom_from_pq(d, d2, random_pq(rng, d))
    assert rep.agree


def test_pq_space_mismatch():
    d = BiExtendingDatum.zero(HEIS, ["v"])
    other = BiExtendingDatum.zero(N2, ["v"])
    with pytest.raises(SpaceMismatch):
        transform_datum(d, PQPair.identity(other.base.space, other.V))
    with pytest.raises(SpaceMismatch):
        hom_from_pq(d, BiExtendingDatum.zero(HEIS, ["w"]), PQPair.identity(HEIS.space, d.V))


def test_bases_are_valid():
    for b in BASES + [A1]:
        assert check_lie_bialgebra(b).ok, b.name
