"""Lie algebras, Lie coalgebras and Lie bialgebras given by structure constants.

Bracket tables are dense rank-3 arrays ``c[i][j][k]`` with
``[e_i, e_j] = sum_k c[i][j][k] e_k``; cobrackets are rank-3 arrays
``d[i][j][k]`` with ``delta(e_i) = sum_{j,k} d[i][j][k] e_j (x) e_k``.
All indices are 0-based.

The checkers never raise on a bad table: they return a :class:`VerdictReport`
listing every violated identity with the exact residual tensor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from . import _tensor as T
from .exactnum import ONE, ZERO, Matrix, Scalar, format_scalar

__all__ = [
    "BasisSpace",
    "BilinearMap",
    "LieAlgebra",
    "LieBialgebra",
    "LieCoalgebra",
    "LinearMap",
    "SpaceMismatch",
    "Tensor2",
    "Tensor3",
    "TensorMap",
    "Vector",
    "VerdictReport",
    "Violation",
    "adjoint_act_tensor",
    "check_lie_algebra",
    "check_lie_bialgebra",
    "check_lie_coalgebra",
    "cobracket_map",
    "direct_sum",
    "is_wedge",
    "twist",
    "twist12",
    "wedge",
]

MAX_DIM = 10


class SpaceMismatch(ValueError):
    pass


def _scal(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


def _array(data, shape) -> tuple:
    """Freeze nested data into a tuple array of Scalars, checking its shape."""
    if not shape:
        return _scal(data)
    if len(data) != shape[0]:
        raise SpaceMismatch(f"expected length {shape[0]}, got {len(data)}")
    return tuple(_array(x, shape[1:]) for x in data)


@dataclass(frozen=True)
class BasisSpace:
    names: tuple

    def __post_init__(self):
        names = tuple(str(n) for n in self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a basis needs at least one element")
        if len(set(names)) != len(names):
            raise ValueError(f"basis labels must be distinct: {names}")
        if len(names) > MAX_DIM:
            raise ValueError(f"dimension {len(names)} exceeds the supported maximum {MAX_DIM}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class Vector:
    space: BasisSpace
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _array(self.coeffs, (self.space.dim,)))

    @classmethod
    def basis(cls, space: BasisSpace, i: int | str) -> Vector:
        if isinstance(i, str):
            i = space.index(i)
        return cls(space, tuple(ONE if k == i else ZERO for k in range(space.dim)))

    def __str__(self) -> str:
        return _lincomb(((c, n) for c, n in zip(self.coeffs, self.space.names)))


@dataclass(frozen=True)
class Tensor2:
    left: BasisSpace
    right: BasisSpace
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _array(self.coeffs, (self.left.dim, self.right.dim)))

    @classmethod
    def zero(cls, left: BasisSpace, right: BasisSpace) -> Tensor2:
        return cls(left, right, T.zeros2(left.dim, right.dim))

    @classmethod
    def pure(cls, u: Vector, v: Vector) -> Tensor2:
        return cls(u.space, v.space, T.outer(u.coeffs, v.coeffs))

    def __add__(self, other: Tensor2) -> Tensor2:
        _same(self.left, other.left)
        _same(self.right, other.right)
        return Tensor2(self.left, self.right, T.add(self.coeffs, other.coeffs))

    def __sub__(self, other: Tensor2) -> Tensor2:
        return self + other.scaled(-1)

    def scaled(self, c) -> Tensor2:
        return Tensor2(self.left, self.right, T.scale(_scal(c), self.coeffs))

    def __str__(self) -> str:
        terms = []
        for (p, q), c in T.nonzero_entries(self.coeffs):
            terms.append((c, f"{self.left.names[p]}⊗{self.right.names[q]}"))
        return _lincomb(terms)


@dataclass(frozen=True)
class Tensor3:
    spaces: tuple
    coeffs: tuple

    def __post_init__(self):
        spaces = tuple(self.spaces)
        if len(spaces) != 3:
            raise SpaceMismatch("a rank-3 tensor needs three spaces")
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "coeffs", _array(self.coeffs, tuple(s.dim for s in spaces)))


@dataclass(frozen=True)
class LinearMap:
    """A linear map; ``matrix[r, c]`` is the coefficient of target basis r in the image of source basis c."""

    source: BasisSpace
    target: BasisSpace
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if not isinstance(m, Matrix):
            m = Matrix.from_rows(m, self.source.dim)
            object.__setattr__(self, "matrix", m)
        if (m.nrows, m.ncols) != (self.target.dim, self.source.dim):
            raise SpaceMismatch("matrix shape must be target.dim x source.dim")

    def images(self) -> list[list[Scalar]]:
        return [self.matrix.column(j) for j in range(self.source.dim)]

    def __call__(self, v: Vector) -> Vector:
        _same(v.space, self.source)
        return Vector(self.target, self.matrix.apply(v.coeffs))


@dataclass(frozen=True)
class BilinearMap:
    """``m(e_i, f_j) = sum_k coeffs[i][j][k] g_k``."""

    left: BasisSpace
    right: BasisSpace
    target: BasisSpace
    coeffs: tuple

    def __post_init__(self):
        shape = (self.left.dim, self.right.dim, self.target.dim)
        object.__setattr__(self, "coeffs", _array(self.coeffs, shape))

    @classmethod
    def zero(cls, left, right, target) -> BilinearMap:
        return cls(left, right, target, T.zeros3(left.dim, right.dim, target.dim))

    def __call__(self, u: Vector, v: Vector) -> Vector:
        _same(u.space, self.left)
        _same(v.space, self.right)
        return Vector(self.target, T.bil(self.coeffs, u.coeffs, v.coeffs, self.target.dim))

    def is_zero(self) -> bool:
        return T.is_zero(self.coeffs)


@dataclass(frozen=True)
class TensorMap:
    """A linear map into a tensor square: ``e_i -> sum coeffs[i][j][k] l_j (x) r_k``."""

    source: BasisSpace
    left: BasisSpace
    right: BasisSpace
    coeffs: tuple

    def __post_init__(self):
        shape = (self.source.dim, self.left.dim, self.right.dim)
        object.__setattr__(self, "coeffs", _array(self.coeffs, shape))

    @classmethod
    def zero(cls, source, left, right) -> TensorMap:
        return cls(source, left, right, T.zeros3(source.dim, left.dim, right.dim))

    def __call__(self, v: Vector) -> Tensor2:
        _same(v.space, self.source)
        out = T.zeros2(self.left.dim, self.right.dim)
        for i, c in enumerate(v.coeffs):
            if c:
                out = T.add(out, self.coeffs[i], c)
        return Tensor2(self.left, self.right, out)

    def is_zero(self) -> bool:
        return T.is_zero(self.coeffs)


def cobracket_map(space: BasisSpace, coeffs) -> TensorMap:
    return TensorMap(space, space, space, coeffs)


def _same(a: BasisSpace, b: BasisSpace) -> None:
    if a != b:
        raise SpaceMismatch(f"space mismatch: {a.names} vs {b.names}")


def _lincomb(terms: Iterable[tuple[Scalar, str]]) -> str:
    parts = []
    for c, name in terms:
        if not c:
            continue
        if c == ONE:
            parts.append(name)
        elif c == -ONE:
            parts.append(f"-{name}")
        elif c.is_real():
            parts.append(f"{format_scalar(c)}*{name}")
        else:
            parts.append(f"({format_scalar(c)})*{name}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


# -- algebras ---------------------------------------------------------------


def _constants_to_bracket(n: int, bracket: Mapping) -> list:
    c = T.zeros3(n, n, n)
    for (i, j), img in bracket.items():
        if not i < j:
            raise ValueError(f"bracket entries must have i < j, got ({i}, {j})")
        items = img.items() if isinstance(img, Mapping) else enumerate(img)
        for k, v in items:
            v = _scal(v)
            c[i][j][k] = c[i][j][k] + v
            c[j][i][k] = c[j][i][k] - v
    return c


def _constants_to_cobracket(n: int, cobracket: Mapping) -> list:
    d = T.zeros3(n, n, n)
    for i, img in cobracket.items():
        for (j, k), v in img.items():
            d[i][j][k] = d[i][j][k] + _scal(v)
    return d


@dataclass(frozen=True)
class LieAlgebra:
    """A candidate Lie algebra.  The raw constructor takes the full dense table;
    :meth:`from_constants` takes ``i < j`` entries only and antisymmetrizes."""

    space: BasisSpace
    bracket: BilinearMap

    def __post_init__(self):
        b = self.bracket
        if not (b.left == b.right == b.target == self.space):
            raise SpaceMismatch("bracket must be a map g x g -> g")

    @classmethod
    def from_constants(cls, names: Sequence[str], bracket: Mapping) -> LieAlgebra:
        space = BasisSpace(tuple(names))
        c = _constants_to_bracket(space.dim, bracket)
        return cls(space, BilinearMap(space, space, space, c))

    @classmethod
    def abelian(cls, space: BasisSpace) -> LieAlgebra:
        return cls(space, BilinearMap.zero(space, space, space))

    @property
    def dim(self) -> int:
        return self.space.dim

    def br(self, u: Vector, v: Vector) -> Vector:
        return self.bracket(u, v)


@dataclass(frozen=True)
class LieCoalgebra:
    space: BasisSpace
    cobracket: TensorMap

    def __post_init__(self):
        d = self.cobracket
        if not (d.source == d.left == d.right == self.space):
            raise SpaceMismatch("cobracket must be a map g -> g (x) g")

    @classmethod
    def from_constants(cls, names: Sequence[str], cobracket: Mapping) -> LieCoalgebra:
        space = BasisSpace(tuple(names))
        return cls(space, cobracket_map(space, _constants_to_cobracket(space.dim, cobracket)))

    @classmethod
    def trivial(cls, space: BasisSpace) -> LieCoalgebra:
        return cls(space, TensorMap.zero(space, space, space))


@dataclass(frozen=True)
class LieBialgebra:
    algebra: LieAlgebra
    coalgebra: LieCoalgebra
    name: str = field(default="", compare=False)

    def __post_init__(self):
        _same(self.algebra.space, self.coalgebra.space)

    @classmethod
    def from_constants(cls, names, bracket: Mapping, cobracket: Mapping, name: str = "") -> LieBialgebra:
        alg = LieAlgebra.from_constants(names, bracket)
        coalg = LieCoalgebra(alg.space, cobracket_map(alg.space, _constants_to_cobracket(alg.dim, cobracket)))
        return cls(alg, coalg, name)

    @classmethod
    def from_tables(cls, space: BasisSpace, bracket, cobracket, name: str = "") -> LieBialgebra:
        return cls(LieAlgebra(space, BilinearMap(space, space, space, bracket)),
                   LieCoalgebra(space, cobracket_map(space, cobracket)), name)

    @property
    def space(self) -> BasisSpace:
        return self.algebra.space

    @property
    def dim(self) -> int:
        return self.algebra.space.dim

    @property
    def c(self) -> tuple:
        return self.algebra.bracket.coeffs

    @property
    def d(self) -> tuple:
        return self.coalgebra.cobracket.coeffs

    def same_constants(self, other: LieBialgebra) -> bool:
        return self.space == other.space and self.c == other.c and self.d == other.d

    def permuted(self, order: Sequence[int]) -> LieBialgebra:
        """Relabel so that new basis element ``k`` is old basis element ``order[k]``."""
        order = list(order)
        if sorted(order) != list(range(self.dim)):
            raise ValueError("order must be a permutation of the basis indices")
        space = BasisSpace(tuple(self.space.names[o] for o in order))
        c = [[[self.c[order[i]][order[j]][order[k]] for k in range(self.dim)]
              for j in range(self.dim)] for i in range(self.dim)]
        d = [[[self.d[order[i]][order[j]][order[k]] for k in range(self.dim)]
              for j in range(self.dim)] for i in range(self.dim)]
        return LieBialgebra.from_tables(space, c, d, self.name)


def direct_sum(a: LieBialgebra, b: LieBialgebra, name: str = "") -> LieBialgebra:
    """Direct sum with the basis of ``a`` first; labels must be disjoint."""
    n, m = a.dim, b.dim
    space = BasisSpace(a.space.names + b.space.names)
    N = n + m
    c = T.zeros3(N, N, N)
    d = T.zeros3(N, N, N)
    for off, x in ((0, a), (n, b)):
        k = x.dim
        for i, j, l in product(range(k), repeat=3):
            c[off + i][off + j][off + l] = x.c[i][j][l]
            d[off + i][off + j][off + l] = x.d[i][j][l]
    return LieBialgebra.from_tables(space, c, d, name)


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    label: str
    index: tuple
    where: tuple
    residual: object

    def entries(self) -> list:
        return T.nonzero_entries(self.residual)

    def describe(self) -> str:
        loc = ",".join(self.where)
        res = "; ".join(f"{list(ix)}={format_scalar(v)}" if ix else format_scalar(v)
                        for ix, v in self.entries())
        return f"{self.label} @ ({loc}): residual {res}"


@dataclass(frozen=True)
class VerdictReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def labels(self) -> list[str]:
        seen: list[str] = []
        for v in self.violations:
            if v.label not in seen:
                seen.append(v.label)
        return seen

    def by_label(self, label: str) -> list[Violation]:
        return [v for v in self.violations if v.label == label]

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __add__(self, other: VerdictReport) -> VerdictReport:
        return VerdictReport(self.violations + other.violations)

    def format(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(v.describe() for v in self.violations)


class _Collector:
    """Accumulates residuals; zero residuals are dropped."""

    def __init__(self, names_for_slots: Sequence[Sequence[str]] | None = None):
        self.items: list[Violation] = []
        self.names = names_for_slots

    def add(self, label: str, index: tuple, residual, where: tuple | None = None):
        if T.is_zero(residual):
            return
        if where is None:
            where = tuple(self.names[s][i] for s, i in enumerate(index)) if self.names else tuple(map(str, index))
        self.items.append(Violation(label, tuple(index), tuple(where), T.freeze(residual)))

    def report(self) -> VerdictReport:
        return VerdictReport(tuple(self.items))


# -- tensor operations ------------------------------------------------------


def twist(t: Tensor2) -> Tensor2:
    return Tensor2(t.right, t.left, T.tau(t.coeffs))


def twist12(t: Tensor3) -> Tensor3:
    a, b, c = t.spaces
    return Tensor3((b, a, c), T.tau12(t.coeffs))


def is_wedge(t: Tensor2) -> bool:
    if t.left != t.right:
        raise SpaceMismatch("wedge test needs a square tensor")
    return T.is_zero(T.add(t.coeffs, T.tau(t.coeffs)))


def wedge(space: BasisSpace, i: int | str, j: int | str) -> Tensor2:
    u, v = Vector.basis(space, i), Vector.basis(space, j)
    return Tensor2.pure(u, v) - Tensor2.pure(v, u)


def ad_images(c, a_coeffs, n: int) -> list:
    """Basis images of ``ad(a) = [a, .]``."""
    return [T.bil_right(c, a_coeffs, j, n) for j in range(n)]


def adjoint_act_tensor(g: LieAlgebra, a: Vector, t: Tensor2) -> Tensor2:
    """``a . t = sum [a, t1] (x) t2 + t1 (x) [a, t2]``."""
    _same(a.space, g.space)
    _same(t.left, g.space)
    _same(t.right, g.space)
    n = g.dim
    img = ad_images(g.bracket.coeffs, a.coeffs, n)
    return Tensor2(g.space, g.space, T.map_both(img, t.coeffs, n))


# -- checkers ---------------------------------------------------------------


def _bracket_checks(col: _Collector, c, n: int) -> bool:
    antisym = True
    for i in range(n):
        if not T.is_zero(c[i][i]):
            antisym = False
            col.add("alternating", (i, i), c[i][i])
        for j in range(i + 1, n):
            r = T.add(c[i][j], c[j][i])
            if not T.is_zero(r):
                antisym = False
                col.add("antisymmetry", (i, j), r)
    # with antisymmetry the Jacobiator is alternating, so sorted triples suffice
    triples = combinations(range(n), 3) if antisym else product(range(n), repeat=3)
    for i, j, k in triples:
        r = T.bil_left(c, i, c[j][k], n)
        r = T.add(r, T.bil_right(c, c[i][j], k, n), -1)
        r = T.add(r, T.bil_left(c, j, c[i][k], n), -1)
        col.add("Jacobi", (i, j, k), r)
    return antisym


def _cobracket_checks(col: _Collector, d, n: int) -> None:
    for i in range(n):
        col.add("co-antisymmetry", (i,), T.add(d[i], T.tau(d[i])))
    for i in range(n):
        first = T.comap_right(d, d[i], n, n)
        r = T.add(first, T.tau12(first), -1)
        r = T.add(r, T.comap_left(d, d[i], n, n), -1)
        col.add("co-Jacobi", (i,), r)


def _cocycle_checks(col: _Collector, c, d, n: int, antisym: bool) -> None:
    pairs = combinations(range(n), 2) if antisym else product(range(n), repeat=2)
    for i, j in pairs:
        r = T.map_both(c[i], d[j], n)
        r = T.add(r, T.map_both(c[j], d[i], n), -1)
        for k, ck in enumerate(c[i][j]):
            if ck:
                r = T.add(r, d[k], -ck)
        col.add("cocycle", (i, j), r)


def check_lie_algebra(cand: LieAlgebra) -> VerdictReport:
    n = cand.dim
    col = _Collector([cand.space.names] * 3)
    _bracket_checks(col, cand.bracket.coeffs, n)
    return col.report()


def check_lie_coalgebra(cand: LieCoalgebra) -> VerdictReport:
    n = cand.space.dim
    col = _Collector([cand.space.names])
    _cobracket_checks(col, cand.cobracket.coeffs, n)
    return col.report()


def check_lie_bialgebra(cand: LieBialgebra) -> VerdictReport:
    n = cand.dim
    col = _Collector([cand.space.names] * 3)
    antisym = _bracket_checks(col, cand.c, n)
    _cobracket_checks(col, cand.d, n)
    _cocycle_checks(col, cand.c, cand.d, n, antisym)
    return col.report()
