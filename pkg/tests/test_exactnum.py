from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import random_system, verify_by_substitution
from liebiext.exactnum import (
    I,
    ONE,
    ZERO,
    DimensionMismatch,
    DivisionByZero,
    Matrix,
    Scalar,
    SingularMatrix,
    echelon_basis,
    format_scalar,
    inverse,
    nullspace,
    parse_scalar,
    reduce_vector,
    rref,
    scalar_arith,
    solve_affine,
)

BOUND = 10**6
rationals = st.fractions(min_value=-BOUND, max_value=BOUND, max_denominator=BOUND)
scalars = st.builds(Scalar, rationals, rationals)
nonzero = scalars.filter(bool)


def S(text):
    return parse_scalar(text)


# -- arithmetic examples ----------------------------------------------------


def test_conjugate_product():
    assert scalar_arith(S("1/2+i"), S("1/2-i"), "mul") == S("5/4")


def test_i_squared():
    assert scalar_arith(S("2i"), S("2i"), "mul") == S("-4")


def test_self_division():
    assert scalar_arith(S("1/3"), S("1/3"), "div") == ONE


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        scalar_arith(ONE, ZERO, "div")
    with pytest.raises(DivisionByZero):
        ZERO.inverse()


def test_floats_rejected():
    with pytest.raises(TypeError):
        Scalar(0.5)


# -- field axioms -----------------------------------------------------------


@given(scalars, scalars, scalars)
def test_associativity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@given(scalars, scalars)
def test_commutativity(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(scalars, scalars, scalars)
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(scalars)
def test_additive_inverse(a):
    assert a + (-a) == ZERO
    assert a - a == ZERO


@given(nonzero)
def test_multiplicative_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE


@given(scalars)
def test_canonical_form_unique(a):
    re, im = a.re, a.im
    assert Scalar(re, im).key() == a.key()
    # scaling numerator and denominator does not change the representation
    assert Scalar(Fraction(re.numerator * 7, re.denominator * 7), im).key() == a.key()
    assert a.key()[2] > 0


@given(scalars)
def test_text_round_trip(a):
    text = format_scalar(a)
    assert parse_scalar(text) == a
    assert format_scalar(parse_scalar(text)) == text


@given(scalars, scalars)
def test_matches_fraction_arithmetic(a, b):
    prod = a * b
    assert prod.re == a.re * b.re - a.im * b.im
    assert prod.im == a.re * b.im + a.im * b.re


# -- text form --------------------------------------------------------------


@pytest.mark.parametrize("text,canonical", [
    ("-4", "-4"),
    ("2/4", "1/2"),
    ("0+2*i", "0+2*i"),
    ("2i", "0+2*i"),
    ("-i", "0-1*i"),
    ("1/3-2/5*i", "1/3-2/5*i"),
    ("3+0*i", "3"),
    ("−4", "-4"),
])
def test_parse_and_print(text, canonical):
    assert format_scalar(parse_scalar(text)) == canonical


@pytest.mark.parametrize("text", ["", "1/0", "x", "1.5", "1//2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


# -- linear algebra ---------------------------------------------------------


def test_solve_identity():
    sol = solve_affine(Matrix.from_rows([[1, 0], [0, 1]]), [S("3"), S("2i")])
    assert sol.particular == (S("3"), S("2i"))
    assert sol.basis == ()


def test_solve_underdetermined():
    sol = solve_affine(Matrix.from_rows([[1, 1]]), [ZERO])
    assert sol.particular == (ZERO, ZERO)
    assert sol.basis == ((ONE, -ONE),)


def test_solve_inconsistent():
    sol = solve_affine(Matrix.from_rows([[1], [1]]), [ZERO, ONE])
    assert not sol.consistent
    assert sol.dim is None


def test_solve_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_affine(Matrix.from_rows([[1, 0]]), [ONE, ONE])


def test_nullspace_zero_matrix():
    assert nullspace(Matrix.zeros(2, 3)).dim == 3


def test_nullspace_identity():
    assert nullspace(Matrix.identity(3)).basis == ()


def test_nullspace_complex_row():
    (v,) = nullspace(Matrix.from_rows([[1, I]])).basis
    assert Matrix.from_rows([[1, I]]).apply(list(v)) == [ZERO]
    # proportional to (-i, 1)
    assert v[0] * ONE == -I * v[1]


def test_nullspace_with_no_rows():
    assert nullspace(Matrix.from_rows([], 4)).dim == 4


def test_rref_leftmost_pivot():
    rows, piv = rref([[0, 2, 4], [1, 1, 1]], 3)
    assert piv == [0, 1]
    assert rows == [[ONE, ZERO, -ONE], [ZERO, ONE, S("2")]]


def test_inverse():
    A = Matrix.from_rows([[1, I], [0, 2]])
    assert A @ inverse(A) == Matrix.identity(2)
    with pytest.raises(SingularMatrix):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_reduce_vector_clears_pivots():
    basis, piv = echelon_basis([[1, 1, 0], [0, 1, 1]], 3)
    r = reduce_vector([S("2"), S("3"), S("5")], basis, piv)
    assert all(not r[p] for p in piv)


def test_contains_and_point():
    sol = solve_affine(Matrix.from_rows([[1, 1, 0]]), [ONE])
    p = sol.point([S("2"), S("-1")])
    assert sol.contains(p)
    assert not sol.contains([ZERO, ZERO, ZERO])


def test_random_systems_verify_by_substitution():
    rng = random.Random(20240)
    for _ in range(200):
        A, b = random_system(rng)
        assert verify_by_substitution(A, b, solve_affine(A, b))
        assert verify_by_substitution(A, [ZERO] * A.nrows, nullspace(A))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_solution_space_is_canonical(seed):
    # permuting the equations must not change the representation
    rng = random.Random(seed)
    A, b = random_system(rng, 6)
    rows = list(zip(A.rows(), b))
    rng.shuffle(rows)
    B = Matrix.from_rows([r for r, _ in rows], A.ncols)
    assert solve_affine(A, b) == solve_affine(B, [x for _, x in rows])
