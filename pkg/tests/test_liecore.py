import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import A1, HEIS, SL2, VALUES
from liebiext import _tensor as T
from liebiext.exactnum import ONE, ZERO, Scalar
from liebiext.liecore import (
    BasisSpace,
    BilinearMap,
    LieAlgebra,
    LieBialgebra,
    LieCoalgebra,
    SpaceMismatch,
    Tensor2,
    Tensor3,
    Vector,
    adjoint_act_tensor,
    check_lie_algebra,
    check_lie_bialgebra,
    check_lie_coalgebra,
    cobracket_map,
    direct_sum,
    is_wedge,
    twist,
    twist12,
    wedge,
)
from liebiext.serialize import bialgebra_from_dict, corpus_names, detect_kind, load_corpus

G = HEIS.space


def vec(**coeffs) -> Vector:
    return Vector(G, [Scalar(coeffs.get(name, 0)) for name in G.names])


def pure(u: str, v: str) -> Tensor2:
    return Tensor2.pure(Vector.basis(G, u), Vector.basis(G, v))


# -- brute-force oracles over dictionaries --------------------------------------


def br(c, u: dict, v: dict) -> dict:
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, x in enumerate(c[i][j]):
                if x:
                    out[k] = out.get(k, ZERO) + a * b * x
    return {k: x for k, x in out.items() if x}


def oracle_jacobi_ok(c, n) -> bool:
    for a in range(n):
        for b in range(n):
            for e in range(n):
                A, B, E = {a: ONE}, {b: ONE}, {e: ONE}
                lhs = br(c, A, br(c, B, E))
                rhs = br(c, br(c, A, B), E)
                for k, x in br(c, B, br(c, A, E)).items():
                    rhs[k] = rhs.get(k, ZERO) + x
                if {k: x for k, x in lhs.items() if x} != {k: x for k, x in rhs.items() if x}:
                    return False
    return True


def oracle_cocycle_residual(c, d, n):
    """a.delta(b) - b.delta(a) - delta([a,b]) for every pair, as dicts on (j, k)."""
    out = {}
    for a in range(n):
        for b in range(n):
            r = {}

            def add(key, x):
                r[key] = r.get(key, ZERO) + x

            for (s, t, sign) in ((a, b, 1), (b, a, -1)):
                for j in range(n):
                    for k in range(n):
                        x = d[t][j][k]
                        if not x:
                            continue
                        for m, y in enumerate(c[s][j]):
                            if y:
                                add((m, k), sign * x * y)
                        for m, y in enumerate(c[s][k]):
                            if y:
                                add((j, m), sign * x * y)
            for m, y in enumerate(c[a][b]):
                if y:
                    for j in range(n):
                        for k in range(n):
                            if d[m][j][k]:
                                add((j, k), -y * d[m][j][k])
            out[(a, b)] = {key: x for key, x in r.items() if x}
    return out


# -- twists and wedges ---------------------------------------------------------


def test_twist_examples():
    assert twist(pure("x", "y")) == pure("y", "x")
    assert twist(pure("x", "x")) == pure("x", "x")


def test_twist12_example():
    x, y, h = (Vector.basis(G, s).coeffs for s in "xyh")
    t = Tensor3((G, G, G), T.outer3(x, T.outer(y, h)))
    expect = Tensor3((G, G, G), T.outer3(y, T.outer(x, h)))
    assert twist12(t) == expect


@settings(max_examples=50)
@given(st.lists(st.sampled_from(VALUES + [ZERO]), min_size=27, max_size=27))
def test_twists_are_involutions(entries):
    t3 = Tensor3((G, G, G), [[entries[9 * i + 3 * j:9 * i + 3 * j + 3] for j in range(3)] for i in range(3)])
    assert twist12(twist12(t3)) == t3
    t2 = Tensor2(G, G, [entries[3 * i:3 * i + 3] for i in range(3)])
    assert twist(twist(t2)) == t2


def test_is_wedge_examples():
    assert is_wedge(pure("x", "y") - pure("y", "x"))
    assert not is_wedge(pure("x", "x"))
    assert is_wedge(Tensor2.zero(G, G))
    assert wedge(G, "x", "y") == pure("x", "y") - pure("y", "x")


# -- adjoint action --------------------------------------------------------------


def test_adjoint_action_heisenberg():
    got = adjoint_act_tensor(HEIS.algebra, vec(x=1), wedge(G, "x", "y"))
    assert got == pure("x", "h") - pure("h", "x")


def test_adjoint_action_trivial_cases():
    zero = Tensor2.zero(G, G)
    assert adjoint_act_tensor(HEIS.algebra, vec(x=1, y=2), zero) == zero
    ab = LieAlgebra.abelian(G)
    assert adjoint_act_tensor(ab, vec(x=1, h=1), pure("x", "y")) == zero


@settings(max_examples=40)
@given(st.lists(st.sampled_from(VALUES + [ZERO]), min_size=26, max_size=26))
def test_adjoint_action_bilinear(entries):
    a1 = Vector(G, entries[0:3])
    a2 = Vector(G, entries[3:6])
    t1 = Tensor2(G, G, [entries[6 + 3 * i:9 + 3 * i] for i in range(3)])
    t2 = Tensor2(G, G, [entries[15 + 3 * i:18 + 3 * i] for i in range(2)] + [[entries[24], entries[25], ZERO]])
    lam = entries[0] or ONE
    g = SL2.algebra
    G2 = SL2.space
    a1, a2 = Vector(G2, a1.coeffs), Vector(G2, a2.coeffs)
    t1, t2 = Tensor2(G2, G2, t1.coeffs), Tensor2(G2, G2, t2.coeffs)
    s = Vector(G2, [u + lam * v for u, v in zip(a1.coeffs, a2.coeffs)])
    assert adjoint_act_tensor(g, s, t1) == adjoint_act_tensor(g, a1, t1) + adjoint_act_tensor(g, a2, t1).scaled(lam)
    assert adjoint_act_tensor(g, a1, t1 + t2.scaled(lam)) == (
        adjoint_act_tensor(g, a1, t1) + adjoint_act_tensor(g, a1, t2).scaled(lam))


def test_adjoint_action_space_mismatch():
    with pytest.raises(SpaceMismatch):
        adjoint_act_tensor(SL2.algebra, vec(x=1), pure("x", "y"))


# -- checkers --------------------------------------------------------------------


def dense(names, entries: dict) -> LieAlgebra:
    """A bracket table taken literally, without antisymmetrization."""
    space = BasisSpace(tuple(names))
    n = space.dim
    c = T.zeros3(n, n, n)
    for (i, j, k), v in entries.items():
        c[i][j][k] = Scalar(v)
    return LieAlgebra(space, BilinearMap(space, space, space, c))


def test_check_lie_algebra_examples():
    assert check_lie_algebra(HEIS.algebra).ok
    assert check_lie_algebra(LieAlgebra.abelian(BasisSpace(("p", "q", "r")))).ok
    bad = dense("xyh", {(0, 1, 2): 1, (1, 0, 2): 1})
    rep = check_lie_algebra(bad)
    assert "antisymmetry" in rep.labels()
    assert rep.by_label("antisymmetry")[0].where == ("x", "y")


def test_alternating_violation_reported():
    rep = check_lie_algebra(dense("ab", {(0, 0, 1): 1}))
    assert rep.by_label("alternating")[0].where == ("a", "a")


def test_check_lie_coalgebra_examples():
    assert check_lie_coalgebra(HEIS.coalgebra).ok
    assert check_lie_coalgebra(LieCoalgebra.trivial(G)).ok
    d = T.zeros3(3, 3, 3)
    d[0][0][0] = ONE
    rep = check_lie_coalgebra(LieCoalgebra(G, cobracket_map(G, d)))
    assert "co-antisymmetry" in rep.labels()


def test_check_lie_bialgebra_examples():
    assert check_lie_bialgebra(HEIS).ok
    assert check_lie_bialgebra(SL2).ok
    bad = LieBialgebra.from_constants("xyh", {(0, 1): {2: 1}}, {2: {(0, 1): 1, (1, 0): -1}})
    rep = check_lie_bialgebra(bad)
    assert ("x", "y") in [v.where for v in rep.by_label("cocycle")]
    assert rep.labels() == ["cocycle"]


def test_report_format():
    bad = LieBialgebra.from_constants("xyh", {(0, 1): {2: 1}}, {2: {(0, 1): 1, (1, 0): -1}})
    text = check_lie_bialgebra(bad).format()
    assert text.startswith("cocycle @ (x,y): residual")
    assert check_lie_bialgebra(HEIS).format() == "valid"


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=2**32))
def test_lie_algebra_checker_matches_brute_force(n, seed):
    rng = random.Random(seed)
    consts = {}
    for i in range(n):
        for j in range(i + 1, n):
            consts[(i, j)] = {k: rng.choice(VALUES) for k in range(n) if rng.random() < 0.4}
    alg = LieAlgebra.from_constants([f"e{i}" for i in range(n)], consts)
    assert check_lie_algebra(alg).ok == oracle_jacobi_ok(alg.bracket.coeffs, n)


def test_direct_sum_is_bialgebra():
    E = direct_sum(HEIS, A1)
    assert check_lie_bialgebra(E).ok
    assert E.dim == 4


def test_permuted_relabels():
    P = HEIS.permuted([2, 0, 1])
    assert P.space.names == ("h", "x", "y")
    assert check_lie_bialgebra(P).ok
    assert P.permuted([1, 2, 0]).same_constants(HEIS)


def test_dimension_limit():
    with pytest.raises(ValueError):
        BasisSpace(tuple(f"e{i}" for i in range(11)))


def test_corpus_bialgebras_satisfy_cocycle_exactly():
    for name in corpus_names():
        obj = load_corpus(name)
        if detect_kind(obj) != "bialgebra":
            continue
        E = bialgebra_from_dict(obj)
        residuals = oracle_cocycle_residual(E.c, E.d, E.dim)
        assert all(not r for r in residuals.values()), name
        assert check_lie_bialgebra(E).ok, name


def test_cocycle_oracle_agrees_with_checker():
    rng = random.Random(7)
    for _ in range(60):
        d = T.zeros3(3, 3, 3)
        for i in range(3):
            for j in range(3):
                for k in range(j + 1, 3):
                    if rng.random() < 0.3:
                        v = rng.choice(VALUES)
                        d[i][j][k], d[i][k][j] = v, -v
        E = LieBialgebra.from_tables(G, HEIS.c, d)
        oracle_ok = all(not r for r in oracle_cocycle_residual(E.c, E.d, 3).values())
        assert ("cocycle" not in check_lie_bialgebra(E).labels()) == oracle_ok
