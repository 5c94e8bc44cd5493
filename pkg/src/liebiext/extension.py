"""Extending data of a Lie bialgebra ``g`` by a complement ``V`` and the
unified product, co-product and bi-product they define on ``E = g + V``.

Array conventions (all 0-based, ``n = dim g``, ``m = dim V``):

* ``lact[x][a]``  : ``x <| e_a`` in V         (shape m, n, m)
* ``ract[x][a]``  : ``x |> e_a`` in g         (shape m, n, n)
* ``f[x][y]``     : ``f(x, y)`` in g          (shape m, m, n)
* ``vbracket[x][y]``: ``{x, y}`` in V         (shape m, m, m)
* ``DeltaE[x]``   : ``Delta_E(x)`` in g (x) V (shape m, n, m)
* ``DeltaV[x]``   : ``Delta_V(x)`` in g (x) g (shape m, n, n)
* ``deltaV[x]``   : ``delta_V(x)`` in V (x) V (shape m, m, m)

On ``E`` the basis of ``g`` comes first, then the basis of ``V``.  The bracket
and cobracket of ``E`` are

    [a + x, b + y] = [a, b] + x|>b - y|>a + f(x, y) + x<|b - y<|a + {x, y}
    delta_E(a + x) = delta(a) + Delta_E(x) - tau Delta_E(x) + Delta_V(x) + delta_V(x)

The compatibility conditions are labelled LE1..LE7 (algebra), CLE1..CLE5
(coalgebra) and BE2..BE7 (mixed).  Every checker accepts ``conditions=`` to
restrict evaluation to a subset of labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from . import _tensor as T
from .exactnum import ONE, ZERO, Matrix, SingularMatrix, inverse
from .liecore import (
    BasisSpace,
    BilinearMap,
    LieAlgebra,
    LieBialgebra,
    LieCoalgebra,
    LinearMap,
    SpaceMismatch,
    TensorMap,
    VerdictReport,
    _Collector,
    cobracket_map,
)

__all__ = [
    "ALG_LABELS",
    "BI_LABELS",
    "COALG_LABELS",
    "AlgExtendingDatum",
    "BiExtendingDatum",
    "CoalgExtendingDatum",
    "DatumArrays",
    "HomReport",
    "InvalidDatum",
    "NotASubBialgebra",
    "PQPair",
    "SingularQ",
    "check_alg_extending",
    "check_bi_extending",
    "check_coalg_extending",
    "compose_pq",
    "extract_datum",
    "hom_from_pq",
    "transform_datum",
    "unified_biproduct",
    "unified_coproduct",
    "unified_product",
]

ALG_LABELS = ("LE1", "LE2", "LE3", "LE4", "LE5", "LE6", "LE7")
COALG_LABELS = ("CLE1", "CLE2", "CLE3", "CLE4", "CLE5")
MIXED_LABELS = ("BE2", "BE3", "BE4", "BE5", "BE6", "BE7")
BI_LABELS = ALG_LABELS + COALG_LABELS + MIXED_LABELS


class InvalidDatum(ValueError):
    def __init__(self, report: VerdictReport, what: str = "datum"):
        self.report = report
        self.what = what
        first = report.violations[0].describe() if report.violations else ""
        super().__init__(f"invalid {what}: {len(report)} violation(s); first: {first}")


class NotASubBialgebra(ValueError):
    pass


class SingularQ(ValueError):
    pass


# -- datum types ------------------------------------------------------------


@dataclass(frozen=True)
class AlgExtendingDatum:
    g: LieAlgebra
    V: BasisSpace
    lact: BilinearMap
    ract: BilinearMap
    f: BilinearMap
    vbracket: BilinearMap

    def __post_init__(self):
        g, V = self.g.space, self.V
        shapes = {
            "lact": (self.lact, (V, g, V)),
            "ract": (self.ract, (V, g, g)),
            "f": (self.f, (V, V, g)),
            "vbracket": (self.vbracket, (V, V, V)),
        }
        for name, (m, want) in shapes.items():
            if (m.left, m.right, m.target) != want:
                raise SpaceMismatch(f"{name} has the wrong domain or target")

    @classmethod
    def zero(cls, g: LieAlgebra, V: BasisSpace) -> AlgExtendingDatum:
        G = g.space
        return cls(g, V, BilinearMap.zero(V, G, V), BilinearMap.zero(V, G, G),
                   BilinearMap.zero(V, V, G), BilinearMap.zero(V, V, V))


@dataclass(frozen=True)
class CoalgExtendingDatum:
    g: LieCoalgebra
    V: BasisSpace
    DeltaE: TensorMap
    DeltaV: TensorMap
    deltaV: TensorMap

    def __post_init__(self):
        g, V = self.g.space, self.V
        shapes = {
            "DeltaE": (self.DeltaE, (V, g, V)),
            "DeltaV": (self.DeltaV, (V, g, g)),
            "deltaV": (self.deltaV, (V, V, V)),
        }
        for name, (m, want) in shapes.items():
            if (m.source, m.left, m.right) != want:
                raise SpaceMismatch(f"{name} has the wrong domain or target")

    @classmethod
    def zero(cls, g: LieCoalgebra, V: BasisSpace) -> CoalgExtendingDatum:
        G = g.space
        return cls(g, V, TensorMap.zero(V, G, V), TensorMap.zero(V, G, G), TensorMap.zero(V, V, V))


class DatumArrays(NamedTuple):
    lact: tuple
    ract: tuple
    f: tuple
    vbracket: tuple
    DeltaE: tuple
    DeltaV: tuple
    deltaV: tuple


@dataclass(frozen=True)
class BiExtendingDatum:
    base: LieBialgebra
    alg: AlgExtendingDatum
    coalg: CoalgExtendingDatum

    def __post_init__(self):
        if self.alg.g != self.base.algebra or self.coalg.g != self.base.coalgebra:
            raise SpaceMismatch("both halves must reference the base bialgebra")
        if self.alg.V != self.coalg.V:
            raise SpaceMismatch("both halves must share the complement V")

    @classmethod
    def from_arrays(cls, base: LieBialgebra, V: BasisSpace | Sequence[str], lact=None, ract=None,
                    f=None, vbracket=None, DeltaE=None, DeltaV=None, deltaV=None) -> BiExtendingDatum:
        """Build from dense arrays; omitted components are zero."""
        if not isinstance(V, BasisSpace):
            V = BasisSpace(tuple(V))
        G = base.space
        n, m = G.dim, V.dim

        def arr(a, shape):
            return T.zeros3(*shape) if a is None else a

        alg = AlgExtendingDatum(
            base.algebra, V,
            BilinearMap(V, G, V, arr(lact, (m, n, m))),
            BilinearMap(V, G, G, arr(ract, (m, n, n))),
            BilinearMap(V, V, G, arr(f, (m, m, n))),
            BilinearMap(V, V, V, arr(vbracket, (m, m, m))),
        )
        coalg = CoalgExtendingDatum(
            base.coalgebra, V,
            TensorMap(V, G, V, arr(DeltaE, (m, n, m))),
            TensorMap(V, G, G, arr(DeltaV, (m, n, n))),
            TensorMap(V, V, V, arr(deltaV, (m, m, m))),
        )
        return cls(base, alg, coalg)

    @classmethod
    def zero(cls, base: LieBialgebra, V: BasisSpace | Sequence[str]) -> BiExtendingDatum:
        return cls.from_arrays(base, V)

    @property
    def V(self) -> BasisSpace:
        return self.alg.V

    def arrays(self) -> DatumArrays:
        a, c = self.alg, self.coalg
        return DatumArrays(a.lact.coeffs, a.ract.coeffs, a.f.coeffs, a.vbracket.coeffs,
                           c.DeltaE.coeffs, c.DeltaV.coeffs, c.deltaV.coeffs)

    def replace(self, **arrays) -> BiExtendingDatum:
        current = self.arrays()._asdict()
        unknown = set(arrays) - set(current)
        if unknown:
            raise TypeError(f"unknown datum components: {sorted(unknown)}")
        current.update(arrays)
        return BiExtendingDatum.from_arrays(self.base, self.V, **current)


@dataclass(frozen=True)
class PQPair:
    """``p: V -> g`` and ``q: V -> V`` defining ``phi(a + x) = a + p(x) + q(x)``."""

    p: LinearMap
    q: LinearMap

    def __post_init__(self):
        if self.p.source != self.q.source or self.q.target != self.q.source:
            raise SpaceMismatch("p must map V -> g and q must map V -> V")

    @classmethod
    def from_images(cls, g: BasisSpace, V: BasisSpace, p_images, q_images) -> PQPair:
        """``p_images[x]`` and ``q_images[x]`` are the coordinate images of basis ``x``."""
        p = Matrix.from_rows([list(r) for r in zip(*p_images)], V.dim) if V.dim else Matrix.zeros(g.dim, 0)
        q = Matrix.from_rows([list(r) for r in zip(*q_images)], V.dim)
        return cls(LinearMap(V, g, p), LinearMap(V, V, q))

    @classmethod
    def identity(cls, g: BasisSpace, V: BasisSpace) -> PQPair:
        return cls(LinearMap(V, g, Matrix.zeros(g.dim, V.dim)), LinearMap(V, V, Matrix.identity(V.dim)))


def compose_pq(first: PQPair, second: PQPair) -> PQPair:
    """The pair of ``phi_second . phi_first``: ``p = p1 + p2 q1``, ``q = q2 q1``."""
    p1, q1 = first.p.matrix, first.q.matrix
    p2, q2 = second.p.matrix, second.q.matrix
    p21 = p2 @ q1
    p = Matrix(p1.nrows, p1.ncols, tuple(a + b for a, b in zip(p1.entries, p21.entries)))
    return PQPair(LinearMap(first.p.source, first.p.target, p),
                  LinearMap(first.q.source, first.q.target, q2 @ q1))


# -- small helpers ----------------------------------------------------------


def _lc(arr, v):
    """``sum_i v[i] * arr[i]`` for a stack of equally shaped tensors."""
    out = None
    for i, c in enumerate(v):
        if c:
            out = T.scale(c, arr[i]) if out is None else T.add(out, arr[i], c)
    return out if out is not None else T.scale(ZERO, arr[0])


def _sub(a, b):
    return T.add(a, b, -1)


def _selection(conditions: Iterable[str] | None, allowed: Sequence[str]) -> set[str]:
    if conditions is None:
        return set(allowed)
    sel = set(conditions)
    unknown = sel - set(BI_LABELS)
    if unknown:
        raise ValueError(f"unknown condition labels: {sorted(unknown)}")
    return sel & set(allowed)


def _tau_minus(t):
    """``(I (x) I - tau) t`` for a square rank-2 tensor."""
    return _sub(t, T.tau(t))


# -- condition systems ------------------------------------------------------


def _alg_conditions(col, sel, c, L, R, F, W, gnames, vnames):
    n, m = len(gnames), len(vnames)

    if "LE1" in sel:
        # f and {,} alternating: check diagonal and polarized pairs, as E-vectors
        for x in range(m):
            for y in range(x, m):
                if x == y:
                    res = list(F[x][x]) + list(W[x][x])
                else:
                    res = T.add(list(F[x][y]) + list(W[x][y]), list(F[y][x]) + list(W[y][x]))
                col.add("LE1", (x, y), res, (vnames[x], vnames[y]))

    pairs_g = list(combinations(range(n), 2))
    if "LE2" in sel:
        for x in range(m):
            for a, b in pairs_g:
                r = T.bil_left(L, x, c[a][b], m)
                r = _sub(r, T.bil_right(L, L[x][a], b, m))
                r = T.add(r, T.bil_right(L, L[x][b], a, m))
                col.add("LE2", (x, a, b), r, (vnames[x], gnames[a], gnames[b]))
    if "LE3" in sel:
        for x in range(m):
            for a, b in pairs_g:
                r = T.bil_left(R, x, c[a][b], n)
                r = _sub(r, T.bil_right(c, R[x][a], b, n))
                r = _sub(r, T.bil_left(c, a, R[x][b], n))
                r = _sub(r, T.bil_right(R, L[x][a], b, n))
                r = T.add(r, T.bil_right(R, L[x][b], a, n))
                col.add("LE3", (x, a, b), r, (vnames[x], gnames[a], gnames[b]))

    pairs_v = list(combinations(range(m), 2))
    if "LE4" in sel:
        for x, y in pairs_v:
            for a in range(n):
                r = T.bil_right(L, W[x][y], a, m)
                r = _sub(r, T.bil_left(W, x, L[y][a], m))
                r = _sub(r, T.bil_right(W, L[x][a], y, m))
                r = _sub(r, T.bil_left(L, x, R[y][a], m))
                r = T.add(r, T.bil_left(L, y, R[x][a], m))
                col.add("LE4", (x, y, a), r, (vnames[x], vnames[y], gnames[a]))
    if "LE5" in sel:
        for x, y in pairs_v:
            for a in range(n):
                r = T.bil_right(R, W[x][y], a, n)
                r = _sub(r, T.bil_left(R, x, R[y][a], n))
                r = T.add(r, T.bil_left(R, y, R[x][a], n))
                r = _sub(r, T.bil_left(c, a, F[x][y], n))
                r = _sub(r, T.bil_left(F, x, L[y][a], n))
                r = _sub(r, T.bil_right(F, L[x][a], y, n))
                col.add("LE5", (x, y, a), r, (vnames[x], vnames[y], gnames[a]))

    triples_v = list(combinations(range(m), 3))
    # LE6: cyclic sum of f(x,{y,z}) + x|>f(y,z); LE7: of {x,{y,z}} + x<|f(y,z)
    for label, first, act, nout in (("LE6", F, R, n), ("LE7", W, L, m)):
        if label not in sel:
            continue
        for x, y, z in triples_v:
            r = T.zeros1(nout)
            for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
                r = T.add(r, T.bil_left(first, u, W[v][w], nout))
                r = T.add(r, T.bil_left(act, u, F[v][w], nout))
            col.add(label, (x, y, z), r, (vnames[x], vnames[y], vnames[z]))


def _coalg_conditions(col, sel, dg, DE, DV, dV, gnames, vnames):
    n, m = len(gnames), len(vnames)
    for x in range(m):
        w = (vnames[x],)
        if "CLE1" in sel:
            col.add("CLE1", (x, 0), T.add(DV[x], T.tau(DV[x])), w + ("Delta_V",))
            col.add("CLE1", (x, 1), T.add(dV[x], T.tau(dV[x])), w + ("delta_V",))
        if "CLE2" in sel:
            s = T.add(T.comap_right(DV, DE[x], n, n), T.comap_right(dg, DV[x], n, n))
            r = _sub(s, T.tau12(s))
            r = T.add(r, T.comap_left(DV, T.tau(DE[x]), n, n))
            r = _sub(r, T.comap_left(dg, DV[x], n, n))
            col.add("CLE2", (x,), r, w)
        if "CLE3" in sel:
            s = T.comap_right(DE, DE[x], n, m)
            r = _sub(s, T.tau12(s))
            r = _sub(r, T.comap_left(dg, DE[x], n, n))
            r = _sub(r, T.comap_left(DV, dV[x], n, n))
            col.add("CLE3", (x,), r, w)
        if "CLE4" in sel:
            r = T.comap_right(dV, DE[x], m, m)
            r = _sub(r, T.tau12(T.comap_right(DE, dV[x], n, m)))
            r = _sub(r, T.comap_left(DE, dV[x], n, m))
            col.add("CLE4", (x,), r, w)
        if "CLE5" in sel:
            s = T.comap_right(dV, dV[x], m, m)
            r = _sub(s, T.tau12(s))
            r = _sub(r, T.comap_left(dV, dV[x], m, m))
            col.add("CLE5", (x,), r, w)


def _mixed_conditions(col, sel, c, dg, L, R, F, W, DE, DV, dV, gnames, vnames):
    n, m = len(gnames), len(vnames)
    for x in range(m):
        for a in range(n):
            w = (vnames[x], gnames[a])
            ract_a = [R[y][a] for y in range(m)]   # R_|>(a): V -> g
            lact_a = [L[y][a] for y in range(m)]   # R_<|(a): V -> V
            if "BE2" in sel:
                lhs = T.scale(-1, T.add(_lc(DV, L[x][a]), _lc(dg, R[x][a])))
                P = T.map_right(ract_a, DE[x], n)
                rhs = _sub(T.tau(P), P)
                rhs = T.add(rhs, T.map_both(c[a], DV[x], n))
                rhs = _sub(rhs, T.map_both(R[x], dg[a], n))
                col.add("BE2", (x, a), _sub(lhs, rhs), w)
            if "BE3" in sel:
                rhs = T.scale(-1, T.map_left(c[a], DE[x], n))
                rhs = T.add(rhs, T.map_right(lact_a, DE[x], m))
                rhs = T.add(rhs, T.map_left(ract_a, dV[x], n))
                rhs = T.add(rhs, T.map_right(L[x], dg[a], m))
                col.add("BE3", (x, a), _sub(_lc(DE, L[x][a]), rhs), w)
            if "BE4" in sel:
                rhs = T.map_both(lact_a, dV[x], m)
                col.add("BE4", (x, a), _sub(_lc(dV, L[x][a]), rhs), w)

    for x, y in combinations(range(m), 2):
        w = (vnames[x], vnames[y])
        if "BE5" in sel:
            lhs = T.add(_lc(dg, F[x][y]), _lc(DV, W[x][y]))
            rhs = T.add(_tau_minus(T.map_right(F[x], DE[y], n)), T.map_both(R[x], DV[y], n))
            rhs = _sub(rhs, _tau_minus(T.map_right(F[y], DE[x], n)))
            rhs = _sub(rhs, T.map_both(R[y], DV[x], n))
            col.add("BE5", (x, y), _sub(lhs, rhs), w)
        if "BE6" in sel:
            def half(u, v):
                h = T.map_left(R[u], DE[v], n)
                h = T.add(h, T.map_right(W[u], DE[v], m))
                h = T.add(h, T.map_right(L[u], DV[v], m))
                return T.add(h, T.map_left(F[u], dV[v], n))
            rhs = _sub(half(x, y), half(y, x))
            col.add("BE6", (x, y), _sub(_lc(DE, W[x][y]), rhs), w)
        if "BE7" in sel:
            def half7(u, v):
                h = _tau_minus(T.map_left(L[u], DE[v], m))
                return T.add(h, T.map_both(W[u], dV[v], m))
            rhs = _sub(half7(x, y), half7(y, x))
            col.add("BE7", (x, y), _sub(_lc(dV, W[x][y]), rhs), w)


def check_alg_extending(d: AlgExtendingDatum, conditions: Iterable[str] | None = None) -> VerdictReport:
    sel = _selection(conditions, ALG_LABELS)
    col = _Collector()
    _alg_conditions(col, sel, d.g.bracket.coeffs, d.lact.coeffs, d.ract.coeffs, d.f.coeffs,
                    d.vbracket.coeffs, d.g.space.names, d.V.names)
    return col.report()


def check_coalg_extending(d: CoalgExtendingDatum, conditions: Iterable[str] | None = None) -> VerdictReport:
    sel = _selection(conditions, COALG_LABELS)
    col = _Collector()
    _coalg_conditions(col, sel, d.g.cobracket.coeffs, d.DeltaE.coeffs, d.DeltaV.coeffs,
                      d.deltaV.coeffs, d.g.space.names, d.V.names)
    return col.report()


def check_bi_extending(d: BiExtendingDatum, conditions: Iterable[str] | None = None) -> VerdictReport:
    """All of LE1..LE7, CLE1..CLE5 and BE2..BE7, in that order."""
    sel = _selection(conditions, BI_LABELS)
    b = d.base
    a = d.arrays()
    gn, vn = b.space.names, d.V.names
    col = _Collector()
    _alg_conditions(col, sel, b.c, a.lact, a.ract, a.f, a.vbracket, gn, vn)
    _coalg_conditions(col, sel, b.d, a.DeltaE, a.DeltaV, a.deltaV, gn, vn)
    _mixed_conditions(col, sel, b.c, b.d, a.lact, a.ract, a.f, a.vbracket,
                      a.DeltaE, a.DeltaV, a.deltaV, gn, vn)
    return col.report()


# -- constructors -----------------------------------------------------------


def _e_space(g: BasisSpace, V: BasisSpace) -> BasisSpace:
    return BasisSpace(g.names + V.names)


def _product_table(c, L, R, F, W, n, m):
    N = n + m
    out = T.zeros3(N, N, N)
    for a in range(n):
        for b in range(n):
            out[a][b] = list(c[a][b]) + [ZERO] * m
    for x in range(m):
        for b in range(n):
            val = list(R[x][b]) + list(L[x][b])
            out[n + x][b] = val
            out[b][n + x] = [-v for v in val]
        for y in range(m):
            out[n + x][n + y] = list(F[x][y]) + list(W[x][y])
    return out


def _coproduct_table(dg, DE, DV, dV, n, m):
    N = n + m
    out = T.zeros3(N, N, N)
    for a in range(n):
        for i in range(n):
            for j in range(n):
                out[a][i][j] = dg[a][i][j]
    for x in range(m):
        t = out[n + x]
        for i in range(n):
            for y in range(m):
                v = DE[x][i][y]
                if v:
                    t[i][n + y] = t[i][n + y] + v
                    t[n + y][i] = t[n + y][i] - v
            for j in range(n):
                t[i][j] = t[i][j] + DV[x][i][j]
        for y in range(m):
            for z in range(m):
                t[n + y][n + z] = t[n + y][n + z] + dV[x][y][z]
    return out


def unified_product(d: AlgExtendingDatum, check: bool = True) -> LieAlgebra:
    """The bracket on ``g + V``.  With ``check=False`` the table is built even
    when the datum fails its conditions (used to test the condition system)."""
    if check:
        rep = check_alg_extending(d)
        if not rep.ok:
            raise InvalidDatum(rep, "algebra extending datum")
    n, m = d.g.dim, d.V.dim
    E = _e_space(d.g.space, d.V)
    table = _product_table(d.g.bracket.coeffs, d.lact.coeffs, d.ract.coeffs, d.f.coeffs,
                           d.vbracket.coeffs, n, m)
    return LieAlgebra(E, BilinearMap(E, E, E, table))


def unified_coproduct(d: CoalgExtendingDatum, check: bool = True) -> LieCoalgebra:
    if check:
        rep = check_coalg_extending(d)
        if not rep.ok:
            raise InvalidDatum(rep, "coalgebra extending datum")
    n, m = d.g.space.dim, d.V.dim
    E = _e_space(d.g.space, d.V)
    table = _coproduct_table(d.g.cobracket.coeffs, d.DeltaE.coeffs, d.DeltaV.coeffs,
                             d.deltaV.coeffs, n, m)
    return LieCoalgebra(E, cobracket_map(E, table))


def unified_biproduct(d: BiExtendingDatum, check: bool = True, name: str = "") -> LieBialgebra:
    if check:
        rep = check_bi_extending(d)
        if not rep.ok:
            raise InvalidDatum(rep, "bialgebra extending datum")
    alg = unified_product(d.alg, check=False)
    coalg = unified_coproduct(d.coalg, check=False)
    return LieBialgebra(alg, coalg, name)


# -- extraction -------------------------------------------------------------


def extract_datum(E: LieBialgebra, g_indices: Sequence[int]) -> BiExtendingDatum:
    """Split ``E`` along the coordinate sub-bialgebra spanned by ``g_indices``.

    The complement ``V`` is spanned by the remaining basis vectors in increasing
    order.  The base keeps the order given in ``g_indices``.
    """
    N = E.dim
    S = list(g_indices)
    if len(set(S)) != len(S) or any(not 0 <= i < N for i in S):
        raise ValueError(f"index set {S} is not a set of basis indices of a {N}-dim algebra")
    if not S or len(S) == N:
        raise ValueError("the sub-bialgebra must be a nonempty proper subset of the basis")
    inside = set(S)
    rest = [i for i in range(N) if i not in inside]
    names = E.space.names
    for a, b in combinations(S, 2):
        bad = [names[k] for k in rest if E.c[a][b][k]]
        if bad:
            raise NotASubBialgebra(f"[{names[a]}, {names[b]}] has components along {', '.join(bad)}")
    for a in S:
        bad = [f"{names[j]}⊗{names[k]}" for j in range(N) for k in range(N)
               if E.d[a][j][k] and not (j in inside and k in inside)]
        if bad:
            raise NotASubBialgebra(f"delta({names[a]}) has components along {', '.join(bad)}")

    P = E.permuted(S + rest)
    n, m = len(S), len(rest)
    c, d = P.c, P.d
    g_space = BasisSpace(P.space.names[:n])
    V = BasisSpace(P.space.names[n:])
    base = LieBialgebra.from_tables(
        g_space,
        [[c[a][b][:n] for b in range(n)] for a in range(n)],
        [[d[a][i][:n] for i in range(n)] for a in range(n)],
        E.name,
    )
    lact = [[c[n + x][a][n:] for a in range(n)] for x in range(m)]
    ract = [[c[n + x][a][:n] for a in range(n)] for x in range(m)]
    f = [[c[n + x][n + y][:n] for y in range(m)] for x in range(m)]
    vbr = [[c[n + x][n + y][n:] for y in range(m)] for x in range(m)]
    DE = [[d[n + x][i][n:] for i in range(n)] for x in range(m)]
    DV = [[d[n + x][i][:n] for i in range(n)] for x in range(m)]
    dV = [[d[n + x][n + y][n:] for y in range(m)] for x in range(m)]
    return BiExtendingDatum.from_arrays(base, V, lact, ract, f, vbr, DE, DV, dV)


# -- homomorphisms and the equivalence action -------------------------------


@dataclass(frozen=True)
class HomReport:
    """``phi(a + x) = a + p(x) + q(x)`` with two independent verdicts."""

    phi: LinearMap
    conditions: VerdictReport
    direct: VerdictReport
    is_isomorphism: bool

    @property
    def is_homomorphism(self) -> bool:
        return self.conditions.ok and self.direct.ok

    @property
    def agree(self) -> bool:
        return self.conditions.ok == self.direct.ok


def _pq_images(pq: PQPair):
    return pq.p.images(), pq.q.images()


def _phi_images(n: int, m: int, p_img, q_img):
    N = n + m
    imgs = []
    for a in range(n):
        v = [ZERO] * N
        v[a] = ONE
        imgs.append(v)
    for x in range(m):
        imgs.append(list(p_img[x]) + list(q_img[x]))
    return imgs


def _check_pq_shapes(d: BiExtendingDatum, pq: PQPair):
    if pq.p.source != d.V or pq.p.target != d.base.space:
        raise SpaceMismatch("p must map the datum's V into its base")


def hom_from_pq(src: BiExtendingDatum, dst: BiExtendingDatum, pq: PQPair) -> HomReport:
    if src.base != dst.base or src.V != dst.V:
        raise SpaceMismatch("source and target datums must share base and V")
    _check_pq_shapes(src, pq)
    for which, d in (("source", src), ("target", dst)):
        rep = check_bi_extending(d)
        if not rep.ok:
            raise InvalidDatum(rep, f"{which} datum")
    b = src.base
    n, m = b.dim, src.V.dim
    c, dg = b.c, b.d
    s, t = src.arrays(), dst.arrays()
    p_img, q_img = _pq_images(pq)
    gn, vn = b.space.names, src.V.names
    col = _Collector()

    for x in range(m):
        px, qx = p_img[x], q_img[x]
        w = (vn[x],)
        lhs = T.add(_lc(dg, px), _lc(t.DeltaV, qx))
        rhs = T.map_right(p_img, s.DeltaE[x], n)
        rhs = _sub(rhs, T.map_left(p_img, T.tau(s.DeltaE[x]), n))
        rhs = T.add(rhs, T.map_right(p_img, T.map_left(p_img, s.deltaV[x], n), n))
        rhs = T.add(rhs, s.DeltaV[x])
        col.add("coalgebra g⊗g", (x,), _sub(lhs, rhs), w)
        rhs = T.add(T.map_right(q_img, s.DeltaE[x], m),
                    T.map_right(q_img, T.map_left(p_img, s.deltaV[x], n), m))
        col.add("coalgebra g⊗V", (x,), _sub(_lc(t.DeltaE, qx), rhs), w)
        rhs = T.map_right(q_img, T.map_left(q_img, s.deltaV[x], m), m)
        col.add("coalgebra V⊗V", (x,), _sub(_lc(t.deltaV, qx), rhs), w)

    for x in range(m):
        px, qx = p_img[x], q_img[x]
        for a in range(n):
            w = (vn[x], gn[a])
            r = _sub(T.bil_right(t.lact, qx, a, m), T.lin(q_img, s.lact[x][a], m))
            col.add("left action", (x, a), r, w)
            r = T.lin(p_img, s.lact[x][a], n)
            r = _sub(r, T.bil_right(c, px, a, n))
            r = T.add(r, s.ract[x][a])
            r = _sub(r, T.bil_right(t.ract, qx, a, n))
            col.add("right action", (x, a), r, w)

    for x in range(m):
        for y in range(m):
            px, qx, py, qy = p_img[x], q_img[x], p_img[y], q_img[y]
            w = (vn[x], vn[y])
            r = T.lin(q_img, s.vbracket[x][y], m)
            r = _sub(r, T.bil(t.vbracket, qx, qy, m))
            r = _sub(r, T.bil(t.lact, qx, py, m))
            r = T.add(r, T.bil(t.lact, qy, px, m))
            col.add("V bracket", (x, y), r, w)
            r = T.lin(p_img, s.vbracket[x][y], n)
            r = _sub(r, T.bil(c, px, py, n))
            r = _sub(r, T.bil(t.ract, qx, py, n))
            r = T.add(r, T.bil(t.ract, qy, px, n))
            r = _sub(r, T.bil(t.f, qx, qy, n))
            r = T.add(r, s.f[x][y])
            col.add("cocycle f", (x, y), r, w)

    E1 = unified_biproduct(src, check=False)
    E2 = unified_biproduct(dst, check=False)
    imgs = _phi_images(n, m, p_img, q_img)
    direct = _direct_hom_check(E1, E2, imgs)
    space = E1.space
    phi = LinearMap(space, space, Matrix.from_rows([list(r) for r in zip(*imgs)], n + m))
    q_invertible = True
    try:
        inverse(pq.q.matrix)
    except SingularMatrix:
        q_invertible = False
    return HomReport(phi, col.report(), direct, q_invertible)


def _direct_hom_check(E1: LieBialgebra, E2: LieBialgebra, imgs) -> VerdictReport:
    """``phi[u, v] = [phi u, phi v]`` and ``delta' phi = (phi (x) phi) delta`` on a basis."""
    N = E1.dim
    names = E1.space.names
    col = _Collector()
    for u in range(N):
        for v in range(N):
            r = _sub(T.lin(imgs, E1.c[u][v], N), T.bil(E2.c, imgs[u], imgs[v], N))
            col.add("bracket", (u, v), r, (names[u], names[v]))
    for u in range(N):
        lhs = _lc(E2.d, imgs[u])
        rhs = T.map_right(imgs, T.map_left(imgs, E1.d[u], N), N)
        col.add("cobracket", (u,), _sub(lhs, rhs), (names[u],))
    return col.report()


def transform_datum(d: BiExtendingDatum, pq: PQPair) -> BiExtendingDatum:
    """The datum ``d'`` for which ``phi_{p,q}`` is an isomorphism from the
    bi-product of ``d`` onto the bi-product of ``d'``."""
    _check_pq_shapes(d, pq)
    try:
        qinv = inverse(pq.q.matrix)
    except SingularMatrix:
        raise SingularQ("q is not invertible") from None
    b = d.base
    n, m = b.dim, d.V.dim
    c, dg = b.c, b.d
    s = d.arrays()
    p_img, q_img = _pq_images(pq)
    qi = [qinv.column(x) for x in range(m)]          # q^{-1}(x) for basis x
    pt = [T.lin(p_img, qi[x], n) for x in range(m)]  # p(q^{-1}(x))

    lact, ract = [], []
    for x in range(m):
        lrow, rrow = [], []
        for a in range(n):
            xl = T.bil_right(s.lact, qi[x], a, m)
            lrow.append(T.lin(q_img, xl, m))
            r = T.lin(p_img, xl, n)
            r = T.add(r, T.bil_right(s.ract, qi[x], a, n))
            r = _sub(r, T.bil_right(c, pt[x], a, n))
            rrow.append(r)
        lact.append(lrow)
        ract.append(rrow)

    f, vbr = [], []
    for x in range(m):
        frow, wrow = [], []
        for y in range(m):
            xt, yt, px, py = qi[x], qi[y], pt[x], pt[y]
            br = T.bil(s.vbracket, xt, yt, m)
            x_py = T.bil(s.lact, xt, py, m)
            y_px = T.bil(s.lact, yt, px, m)
            r = T.bil(s.f, xt, yt, n)
            r = T.add(r, T.lin(p_img, br, n))
            r = T.add(r, T.bil(c, px, py, n))
            r = _sub(r, T.lin(p_img, x_py, n))
            r = _sub(r, T.bil(s.ract, xt, py, n))
            r = T.add(r, T.lin(p_img, y_px, n))
            r = T.add(r, T.bil(s.ract, yt, px, n))
            frow.append(r)
            w = _sub(br, x_py)
            w = T.add(w, y_px)
            wrow.append(T.lin(q_img, w, m))
        f.append(frow)
        vbr.append(wrow)

    DE, DV, dV = [], [], []
    for x in range(m):
        de = _lc(s.DeltaE, qi[x])
        dv = _lc(s.DeltaV, qi[x])
        ddv = _lc(s.deltaV, qi[x])
        dV.append(T.map_right(q_img, T.map_left(q_img, ddv, m), m))
        DE.append(T.add(T.map_right(q_img, de, m), T.map_right(q_img, T.map_left(p_img, ddv, n), m)))
        r = T.map_right(p_img, de, n)
        r = _sub(r, T.map_left(p_img, T.tau(de), n))
        r = T.add(r, T.map_right(p_img, T.map_left(p_img, ddv, n), n))
        r = T.add(r, dv)
        r = _sub(r, _lc(dg, pt[x]))
        DV.append(r)

    return BiExtendingDatum.from_arrays(b, d.V, lact, ract, f, vbr, DE, DV, dV)
