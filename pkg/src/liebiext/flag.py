"""Codimension-one extensions: flag datums ``(alpha, D, A, B)``.

A flag datum of a Lie bialgebra ``g`` is a linear form ``alpha``, a linear map
``D: g -> g``, an element ``A`` and a wedge ``B`` subject to

* ``alpha([a, b]) = 0``, ``delta(A) = 0`` and ``[a, A] = sum alpha(a_2) a_1``;
* ``D([a, b]) = [D a, b] + [a, D b] + alpha(a) D b - alpha(b) D a``;
* ``A(x)B - tau12(A(x)B) + B(x)A + (I(x)delta - tau12(I(x)delta) - delta(x)I) B = 0``;
* ``D a (x) A - A (x) D a + alpha(a) B + a.B + delta(D a) - sum D a_1 (x) a_2 - sum a_1 (x) D a_2 = 0``.

It corresponds to the extending datum ``x <| a = alpha(a) x``, ``x |> a = D a``,
``Delta_E(x) = A (x) x``, ``Delta_V(x) = B`` on a one-dimensional ``V``.

``D`` is stored as a matrix ``M`` with ``D(e_j) = sum_i M[i][j] e_i``.  The
coordinate vector of the pair ``(D, B)`` lists ``M`` row-major, then the wedge
coordinates ``B[i][j]`` for ``i < j`` in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import _tensor as T
from .exactnum import (
    ONE,
    ZERO,
    DimensionMismatch,
    Matrix,
    Scalar,
    SolutionSpace,
    echelon_basis,
    format_scalar,
    nullspace,
    rank,
    reduce_vector,
    solve_affine,
)
from .extension import BiExtendingDatum, PQPair
from .liecore import (
    BasisSpace,
    LieBialgebra,
    LinearMap,
    Tensor2,
    Vector,
    VerdictReport,
    _Collector,
    is_wedge,
)

__all__ = [
    "FLAG_LABELS",
    "FLAG_MEANINGS",
    "StructureFacts",
    "EquivWitness",
    "FlagDatum",
    "FlagFamily",
    "FlagSolutionReport",
    "SampleNotInASpace",
    "SampleResult",
    "A_space",
    "alpha_given_A",
    "alpha_space",
    "bidatum_to_flag",
    "check_flag_datum",
    "classify_codim1",
    "structure_facts",
    "coupling_check",
    "db_system",
    "flag_coords",
    "flag_equivalent",
    "flag_from_coords",
    "flag_to_bidatum",
    "solve_DB",
    "u_action_image",
    "wedge_pairs",
]

FLAG_LABELS = ("alpha_bracket", "delta_A", "coupling", "derivation", "B_coJacobi", "DB_compat")
DB_LABELS = ("derivation", "B_coJacobi", "DB_compat")
FLAG_MEANINGS = {
    "alpha_bracket": "alpha([a,b]) != 0",
    "delta_A": "delta(A) != 0",
    "coupling": "[a,A] != (I(x)alpha)delta(a)",
    "derivation": "D is not an alpha-twisted derivation",
    "B_coJacobi": "co-Jacobi compatibility of B fails",
    "DB_compat": "compatibility of D with delta and B fails",
}


class SampleNotInASpace(ValueError):
    pass


def _s(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


def wedge_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _wedge_from_coords(n: int, w: Sequence[Scalar]) -> list:
    B = T.zeros2(n, n)
    for (i, j), v in zip(wedge_pairs(n), w):
        B[i][j] = v
        B[j][i] = -v
    return B


@dataclass(frozen=True)
class FlagDatum:
    base: LieBialgebra
    alpha: tuple
    D: LinearMap
    A: Vector
    B: Tensor2

    def __post_init__(self):
        g = self.base.space
        alpha = tuple(_s(a) for a in self.alpha)
        if len(alpha) != g.dim:
            raise DimensionMismatch("alpha needs one value per basis element")
        object.__setattr__(self, "alpha", alpha)
        if self.D.source != g or self.D.target != g:
            raise DimensionMismatch("D must be an endomorphism of the base")
        if self.A.space != g or self.B.left != g or self.B.right != g:
            raise DimensionMismatch("A and B must live over the base")
        if not is_wedge(self.B):
            raise ValueError("B must be a wedge: B = -tau(B)")

    @classmethod
    def build(cls, base: LieBialgebra, alpha=None, D=None, A=None, B=None) -> FlagDatum:
        """Plain-data constructor.

        ``D`` is a list of matrix rows (``D(e_j)`` is column ``j``); ``B`` is
        either a full square array or a mapping ``{(i, j): c}`` meaning
        ``c * (e_i (x) e_j - e_j (x) e_i)``.
        """
        g = base.space
        n = g.dim
        alpha = [ZERO] * n if alpha is None else [_s(a) for a in alpha]
        M = Matrix.zeros(n, n) if D is None else Matrix.from_rows(D, n)
        A = [ZERO] * n if A is None else [_s(a) for a in A]
        if B is None:
            Bt = T.zeros2(n, n)
        elif isinstance(B, Mapping):
            Bt = T.zeros2(n, n)
            for (i, j), v in B.items():
                v = _s(v)
                Bt[i][j] = Bt[i][j] + v
                Bt[j][i] = Bt[j][i] - v
        else:
            Bt = B
        return cls(base, tuple(alpha), LinearMap(g, g, M), Vector(g, A), Tensor2(g, g, Bt))

    @property
    def M(self) -> list[list[Scalar]]:
        return self.D.matrix.rows()

    def same_data(self, other: FlagDatum) -> bool:
        return (self.base == other.base and self.alpha == other.alpha and self.D == other.D
                and self.A == other.A and self.B == other.B)


@dataclass(frozen=True)
class EquivWitness:
    U: Vector
    beta: Scalar

    def __post_init__(self):
        if not self.beta:
            raise ValueError("beta must be nonzero")

    def inverse(self) -> EquivWitness:
        """Witness of the reverse relation."""
        b = self.beta.inverse()
        return EquivWitness(Vector(self.U.space, [-u * b for u in self.U.coeffs]), b)

    def pq(self, V: BasisSpace) -> PQPair:
        """The pair ``p(x) = U``, ``q = beta`` on a one-dimensional ``V``.

        For a witness of ``fd1 ~ fd2`` it transforms ``flag_to_bidatum(fd1)``
        into ``flag_to_bidatum(fd2)``.
        """
        return PQPair.from_images(self.U.space, V, [list(self.U.coeffs)], [[self.beta]])


def flag_coords(fd: FlagDatum) -> tuple:
    n = fd.base.dim
    M = fd.D.matrix
    return tuple(M.entries) + tuple(fd.B.coeffs[i][j] for i, j in wedge_pairs(n))


def flag_from_coords(base: LieBialgebra, alpha, A, z: Sequence) -> FlagDatum:
    n = base.dim
    z = [_s(v) for v in z]
    if len(z) != n * n + len(wedge_pairs(n)):
        raise DimensionMismatch("coordinate vector has the wrong length")
    rows = [z[i * n:(i + 1) * n] for i in range(n)]
    return FlagDatum.build(base, alpha, rows, A, _wedge_from_coords(n, z[n * n:]))


# -- residuals --------------------------------------------------------------


def _residuals(base: LieBialgebra, alpha, M, A, B, labels):
    """Yield ``(label, index, where, residual)`` in a fixed order, zeros included."""
    n = base.dim
    c, d = base.c, base.d
    names = base.space.names
    Dimg = None if M is None else [[M[i][j] for i in range(n)] for j in range(n)]
    pairs = wedge_pairs(n)
    if "alpha_bracket" in labels:
        for a, b in pairs:
            r = ZERO
            for k in range(n):
                if c[a][b][k] and alpha[k]:
                    r = r + c[a][b][k] * alpha[k]
            yield "alpha_bracket", (a, b), (names[a], names[b]), r
    if "delta_A" in labels:
        yield "delta_A", (), (), _lc2(d, A, n)
    if "coupling" in labels:
        for a in range(n):
            r = T.bil_left(c, a, A, n)
            r = T.add(r, [_dot(d[a][i], alpha) for i in range(n)], -1)
            yield "coupling", (a,), (names[a],), r
    if "derivation" in labels:
        for a, b in pairs:
            r = T.lin(Dimg, c[a][b], n)
            r = T.add(r, T.bil_right(c, Dimg[a], b, n), -1)
            r = T.add(r, T.bil_left(c, a, Dimg[b], n), -1)
            if alpha[a]:
                r = T.add(r, Dimg[b], -alpha[a])
            if alpha[b]:
                r = T.add(r, Dimg[a], alpha[b])
            yield "derivation", (a, b), (names[a], names[b]), r
    if "B_coJacobi" in labels:
        AB = T.outer3(A, B)
        r = T.add(AB, T.tau12(AB), -1)
        r = T.add(r, T.outer3r(B, A))
        s = T.comap_right(d, B, n, n)
        r = T.add(r, s)
        r = T.add(r, T.tau12(s), -1)
        r = T.add(r, T.comap_left(d, B, n, n), -1)
        yield "B_coJacobi", (), (), r
    if "DB_compat" in labels:
        for a in range(n):
            Da = Dimg[a]
            r = T.add(T.outer(Da, A), T.outer(A, Da), -1)
            if alpha[a]:
                r = T.add(r, B, alpha[a])
            r = T.add(r, T.map_both(c[a], B, n))
            r = T.add(r, _lc2(d, Da, n))
            r = T.add(r, T.map_left(Dimg, d[a], n), -1)
            r = T.add(r, T.map_right(Dimg, d[a], n), -1)
            yield "DB_compat", (a,), (names[a],), r


def _dot(u, v) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def _lc2(d, v, n):
    """``sum_k v[k] d[k]`` as an n x n array."""
    out = T.zeros2(n, n)
    for k, vk in enumerate(v):
        if vk:
            out = T.add(out, d[k], vk)
    return out


def _flatten(t) -> list:
    if isinstance(t, (list, tuple)):
        out = []
        for x in t:
            out.extend(_flatten(x))
        return out
    return [t]


def _plain(fd: FlagDatum):
    return list(fd.alpha), fd.M, list(fd.A.coeffs), fd.B.coeffs


def check_flag_datum(fd: FlagDatum, conditions: Iterable[str] | None = None) -> VerdictReport:
    labels = FLAG_LABELS if conditions is None else tuple(conditions)
    unknown = set(labels) - set(FLAG_LABELS)
    if unknown:
        raise ValueError(f"unknown condition labels: {sorted(unknown)}")
    col = _Collector()
    alpha, M, A, B = _plain(fd)
    for label, idx, where, r in _residuals(fd.base, alpha, M, A, B, labels):
        col.add(label, idx, r, where)
    return col.report()


# -- bijection with one-dimensional extending data ---------------------------


def flag_to_bidatum(fd: FlagDatum, v_name: str | None = None) -> BiExtendingDatum:
    g = fd.base.space
    n = g.dim
    if v_name is None:
        v_name = "x_V"
        while v_name in g.names:
            v_name += "'"
    alpha, M, A, B = _plain(fd)
    lact = [[[alpha[a]] for a in range(n)]]
    ract = [[[M[i][a] for i in range(n)] for a in range(n)]]
    DE = [[[A[i]] for i in range(n)]]
    return BiExtendingDatum.from_arrays(fd.base, [v_name], lact=lact, ract=ract, DeltaE=DE, DeltaV=[B])


def bidatum_to_flag(d: BiExtendingDatum) -> FlagDatum:
    if d.V.dim != 1:
        raise DimensionMismatch(f"flag datums need a one-dimensional complement, got {d.V.dim}")
    a = d.arrays()
    for name in ("f", "vbracket", "deltaV"):
        if not T.is_zero(getattr(a, name)):
            raise ValueError(f"{name} is nonzero, so the datum has no flag form")
    n = d.base.dim
    alpha = [a.lact[0][k][0] for k in range(n)]
    M = [[a.ract[0][j][i] for j in range(n)] for i in range(n)]
    A = [a.DeltaE[0][i][0] for i in range(n)]
    return FlagDatum.build(d.base, alpha, M, A, [list(r) for r in a.DeltaV[0]])


# -- linear pieces ----------------------------------------------------------


def alpha_space(base: LieBialgebra) -> SolutionSpace:
    """Linear forms vanishing on ``[g, g]``."""
    n = base.dim
    rows = [list(base.c[a][b]) for a, b in wedge_pairs(n)]
    return nullspace(Matrix.from_rows(rows, n))


def A_space(base: LieBialgebra) -> SolutionSpace:
    """Kernel of the cobracket."""
    n = base.dim
    rows = [[base.d[k][i][j] for k in range(n)] for i in range(n) for j in range(n)]
    return nullspace(Matrix.from_rows(rows, n))


def coupling_check(base: LieBialgebra, alpha, A) -> VerdictReport:
    alpha = [_s(x) for x in alpha]
    A = [_s(x) for x in (A.coeffs if isinstance(A, Vector) else A)]
    col = _Collector()
    for label, idx, where, r in _residuals(base, alpha, None, A, None, ("coupling",)):
        col.add(label, idx, r, where)
    return col.report()


def alpha_given_A(base: LieBialgebra, A) -> SolutionSpace:
    """All ``alpha`` with ``alpha([g, g]) = 0`` and ``(I (x) alpha) delta(a) = [a, A]``."""
    n = base.dim
    A = [_s(x) for x in A]
    rows = [list(base.c[a][b]) for a, b in wedge_pairs(n)]
    rhs = [ZERO] * len(rows)
    for a in range(n):
        ad = T.bil_left(base.c, a, A, n)
        for i in range(n):
            rows.append(list(base.d[a][i]))
            rhs.append(ad[i])
    return solve_affine(Matrix.from_rows(rows, n), rhs)


def db_system(base: LieBialgebra, alpha, A, labels: Sequence[str] = DB_LABELS) -> list[list[Scalar]]:
    """Rows of the homogeneous linear system in the (D, B) coordinates."""
    n = base.dim
    alpha = [_s(x) for x in alpha]
    A = [_s(x) for x in A]
    nd = n * n
    nz = nd + len(wedge_pairs(n))
    columns = []
    for k in range(nz):
        z = [ZERO] * nz
        z[k] = ONE
        M = [z[i * n:(i + 1) * n] for i in range(n)]
        B = _wedge_from_coords(n, z[nd:])
        col = []
        for _, _, _, r in _residuals(base, alpha, M, A, B, labels):
            col.extend(_flatten(r))
        columns.append(col)
    nrows = len(columns[0])
    rows = [[columns[k][r] for k in range(nz)] for r in range(nrows)]
    return [r for r in rows if any(r)]


def solve_DB(base: LieBialgebra, alpha, A) -> SolutionSpace:
    n = base.dim
    nz = n * n + len(wedge_pairs(n))
    return nullspace(Matrix.from_rows(db_system(base, alpha, A), nz))


def u_action_image(base: LieBialgebra, alpha, A) -> list[list[Scalar]]:
    """Coordinates of ``(ad U - alpha U, delta U + U (x) A - A (x) U)`` for ``U = e_k``."""
    n = base.dim
    alpha = [_s(x) for x in alpha]
    A = [_s(x) for x in A]
    out = []
    for k in range(n):
        e = [ONE if i == k else ZERO for i in range(n)]
        Dimg = [T.add(list(base.c[k][j]), e, -alpha[j]) if alpha[j] else list(base.c[k][j]) for j in range(n)]
        M = [[Dimg[j][i] for j in range(n)] for i in range(n)]
        B = T.add(T.add(T.thaw(base.d[k]), T.outer(e, A)), T.outer(A, e), -1)
        out.append([x for r in M for x in r] + [B[i][j] for i, j in wedge_pairs(n)])
    return out


# -- equivalence ------------------------------------------------------------


def flag_equivalent(fd1: FlagDatum, fd2: FlagDatum) -> EquivWitness | None:
    """A witness ``(U, beta)`` with ``D1 = ad U + beta D2 - alpha U`` and
    ``B1 = delta U + beta B2 + U (x) A - A (x) U``, or ``None``."""
    if fd1.base != fd2.base:
        raise ValueError("flag datums over different bases are never compared")
    if fd1.alpha != fd2.alpha or fd1.A != fd2.A:
        return None
    base = fd1.base
    n = base.dim
    cols = u_action_image(base, fd1.alpha, list(fd1.A.coeffs))
    cols.append(list(flag_coords(fd2)))
    rhs = list(flag_coords(fd1))
    rows = [[col[r] for col in cols] for r in range(len(rhs))]
    sol = solve_affine(Matrix.from_rows(rows, n + 1), rhs)
    if not sol.consistent:
        return None
    if any(b[n] for b in sol.basis):
        sol = solve_affine(Matrix.from_rows(rows + [[ZERO] * n + [ONE]], n + 1), rhs + [ONE])
    point = sol.particular
    if not point[n]:
        return None
    return EquivWitness(Vector(base.space, point[:n]), point[n])


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class StructureFacts:
    dim: int
    bracket_rank: int
    center_dim: int
    der_dim: int
    inn_dim: int
    invariant_wedge_dim: int

    @property
    def perfect(self) -> bool:
        return self.bracket_rank == self.dim

    @property
    def centerless(self) -> bool:
        return self.center_dim == 0

    @property
    def der_equals_inn(self) -> bool:
        return self.der_dim == self.inn_dim

    @property
    def forces_alpha_A_zero(self) -> bool:
        return self.perfect and self.centerless

    @property
    def only_trivial_class(self) -> bool:
        return self.forces_alpha_A_zero and self.der_equals_inn and self.invariant_wedge_dim == 0


def structure_facts(base: LieBialgebra) -> StructureFacts:
    n = base.dim
    c = base.c
    bracket_rank = rank([list(c[a][b]) for a, b in wedge_pairs(n)], n)
    center_rows = [[c[a][b][k] for a in range(n)] for b in range(n) for k in range(n)]
    center = nullspace(Matrix.from_rows(center_rows, n))
    der_rows = [r[:n * n] for r in db_system(base, [ZERO] * n, [ZERO] * n, ("derivation",))]
    der = nullspace(Matrix.from_rows(der_rows, n * n))
    inn_vectors = [[c[k][j][i] for i in range(n) for j in range(n)] for k in range(n)]
    inn_dim = rank(inn_vectors, n * n)
    pairs = wedge_pairs(n)
    columns = []
    for k in range(len(pairs)):
        w = [ZERO] * len(pairs)
        w[k] = ONE
        B = _wedge_from_coords(n, w)
        col = []
        for a in range(n):
            col.extend(_flatten(T.map_both(c[a], B, n)))
        columns.append(col)
    if pairs:
        # a.B = 0 for every basis element a, in the wedge coordinates
        wedge_rows = [[columns[k][r] for k in range(len(pairs))] for r in range(len(columns[0]))]
        inv_dim = nullspace(Matrix.from_rows(wedge_rows, len(pairs))).dim
    else:
        inv_dim = 0
    return StructureFacts(n, bracket_rank, center.dim, der.dim, inn_dim, inv_dim)


@dataclass(frozen=True)
class FlagFamily:
    """A set of canonical representatives.

    ``kind == "D-led"``: the coordinate ``lead`` (inside the D block) is 1, the
    earlier generators vanish and every point of ``base_point + span(free)``
    is a distinct class.  ``kind == "B-only"``: ``D = 0`` and ``B`` ranges over
    ``span(free)``; two points are equivalent exactly when they are proportional.
    """

    kind: str
    lead: int | None
    base_point: tuple
    free: tuple

    @property
    def dim(self) -> int:
        return len(self.free)


@dataclass(frozen=True)
class SampleResult:
    A: tuple
    alpha: tuple | None
    alpha_solutions: SolutionSpace
    alpha_sampled: bool
    coupling: VerdictReport | None
    DB_space: SolutionSpace | None
    inner_image: tuple
    canonical_basis: tuple
    canonical_pivots: tuple
    families: tuple

    @property
    def admissible(self) -> bool:
        return self.alpha is not None

    @property
    def canonical_dim(self) -> int | None:
        return len(self.canonical_basis) if self.admissible else None

    @property
    def single_class(self) -> bool:
        return self.admissible and not self.canonical_basis

    def canonical_form(self, z: Sequence[Scalar]) -> tuple:
        """Representative of the U-orbit of ``z`` inside the canonical slice."""
        piv = [next(i for i, x in enumerate(b) if x) for b in self.inner_image]
        return reduce_vector([_s(v) for v in z], self.inner_image, piv)


@dataclass(frozen=True)
class FlagSolutionReport:
    base: LieBialgebra
    alpha_space: SolutionSpace
    A_space: SolutionSpace
    facts: StructureFacts
    samples: tuple
    generic_dim: int | None
    jump_samples: tuple
    notes: tuple

    def sample(self, A) -> SampleResult:
        A = tuple(_s(x) for x in A)
        for s in self.samples:
            if s.A == A:
                return s
        raise KeyError(A)


def _families(base: LieBialgebra, basis, pivots) -> tuple:
    n = base.dim
    nd = n * n
    nz = nd + len(wedge_pairs(n))
    fams = []
    for i, p in enumerate(pivots):
        if p < nd:
            fams.append(FlagFamily("D-led", p, tuple(basis[i]), tuple(tuple(b) for b in basis[i + 1:])))
    b_only = [tuple(b) for b, p in zip(basis, pivots) if p >= nd]
    fams.append(FlagFamily("B-only", None, tuple([ZERO] * nz), tuple(b_only)))
    return tuple(fams)


def _sample_result(base: LieBialgebra, A, alpha_samples) -> list[SampleResult]:
    sols = alpha_given_A(base, A)
    if not sols.consistent:
        return [SampleResult(tuple(A), None, sols, False, None, None, (), (), (), ())]
    if sols.dim == 0:
        alphas, sampled = [sols.particular], False
    else:
        alphas = [sols.particular] + [tuple(_s(x) for x in a) for a in alpha_samples
                                      if sols.contains([_s(x) for x in a])]
        alphas = list(dict.fromkeys(alphas))
        sampled = True
    out = []
    for alpha in alphas:
        coupling = coupling_check(base, alpha, A)
        S = solve_DB(base, alpha, A)
        nz = S.ambient_dim
        im, im_piv = echelon_basis(u_action_image(base, alpha, A), nz)
        reduced = [reduce_vector(b, im, im_piv) for b in S.basis]
        can, can_piv = echelon_basis(reduced, nz)
        out.append(SampleResult(tuple(A), tuple(alpha), sols, sampled, coupling, S, im,
                                can, tuple(can_piv), _families(base, can, can_piv)))
    return out


def classify_codim1(base: LieBialgebra, A_samples: Iterable = (), alpha_samples: Iterable = ()) -> FlagSolutionReport:
    n = base.dim
    aspace = alpha_space(base)
    Aspace = A_space(base)
    facts = structure_facts(base)
    notes = []
    samples = [tuple([ZERO] * n)]
    for A in A_samples:
        A = tuple(_s(x) for x in (A.coeffs if isinstance(A, Vector) else A))
        if len(A) != n:
            raise DimensionMismatch("A sample has the wrong length")
        if not Aspace.contains(A):
            raise SampleNotInASpace(f"sample {[format_scalar(x) for x in A]} is not in the kernel of the cobracket")
        samples.append(A)
    samples = list(dict.fromkeys(samples))
    if facts.forces_alpha_A_zero:
        notes.append("[g,g] = g and Z(g) = 0: alpha = 0 and A = 0 are forced")
        if facts.only_trivial_class:
            notes.append("additionally Der = Inn and (wedge^2 g)^g = 0: only the trivial class exists")
    results: list[SampleResult] = []
    alpha_samples = list(alpha_samples)
    for A in samples:
        results.extend(_sample_result(base, A, alpha_samples))
    if any(r.alpha_sampled for r in results):
        notes.append("alpha is not determined by A; classes are listed at the sampled alpha values only")
    dims = [r.canonical_dim for r in results if r.admissible]
    generic = min(dims) if dims else None
    jumps = tuple(r.A for r in results if r.admissible and r.canonical_dim != generic)
    if jumps:
        notes.append("canonical dimension jumps at some samples (observed at samples only; "
                     "unsampled values are expected to match the lowest observed dimension)")
    return FlagSolutionReport(base, aspace, Aspace, facts, tuple(results), generic, jumps, tuple(notes))
