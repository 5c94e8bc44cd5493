"""Exact arithmetic over the Gaussian rationals Q(i) and dense exact linear algebra.

A :class:`Scalar` is stored as ``(a + b*i) / d`` with integers ``a, b, d``,
``d > 0`` and ``gcd(a, b, d) == 1``.  That triple is unique per value, so
equality and hashing are plain tuple comparisons.  The real and imaginary
parts are exposed as :class:`fractions.Fraction` values.

Elimination is deterministic: leftmost pivot column, topmost candidate row.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "DimensionMismatch",
    "DivisionByZero",
    "I",
    "Matrix",
    "ONE",
    "Scalar",
    "SingularMatrix",
    "SolutionSpace",
    "ZERO",
    "echelon_basis",
    "format_scalar",
    "inverse",
    "nullspace",
    "parse_scalar",
    "rank",
    "reduce_vector",
    "rref",
    "scalar_arith",
    "solve_affine",
]


class DivisionByZero(ZeroDivisionError):
    pass


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def _canon(a: int, b: int, d: int) -> Scalar:
    if d < 0:
        a, b, d = -a, -b, -d
    if d != 1:
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
    s = object.__new__(Scalar)
    s._a = a
    s._b = b
    s._d = d
    return s


class Scalar:
    """An exact element of Q(i)."""

    __slots__ = ("_a", "_b", "_d")

    def __new__(cls, re=0, im=0):
        if isinstance(re, str):
            if im != 0:
                raise TypeError("imaginary part not allowed with a text value")
            return parse_scalar(re)
        if isinstance(re, Scalar) and im == 0:
            return re
        r = _as_scalar(re)
        if im == 0:
            return r
        return r + _as_scalar(im) * I

    # -- views ---------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def key(self) -> tuple[int, int, int]:
        return (self._a, self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> Scalar:
        return _canon(self._a, -self._b, self._d)

    def inverse(self) -> Scalar:
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return _canon(a * d, -b * d, n)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        d1, d2 = self._d, other._d
        if d1 == d2 == 1:
            return _canon(self._a + other._a, self._b + other._b, 1)
        return _canon(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return _canon(-self._a, -self._b, self._d)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        d1, d2 = self._d, other._d
        if d1 == d2 == 1:
            return _canon(self._a - other._a, self._b - other._b, 1)
        return _canon(self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if b1 == 0 and b2 == 0:
            return _canon(a1 * a2, 0, self._d * other._d)
        return _canon(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if not other:
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ------------------------------------------
    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._a == other._a and self._b == other._b and self._d == other._d
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self == other

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a) if self._d == 1 else hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __reduce__(self):
        return (_canon, (self._a, self._b, self._d))

    def __repr__(self) -> str:
        return f"Scalar('{format_scalar(self)}')"

    def __str__(self) -> str:
        return format_scalar(self)


def _as_scalar(x) -> Scalar:
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return s


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return _canon(x, 0, 1)
    if isinstance(x, Fraction):
        return _canon(x.numerator, 0, x.denominator)
    if isinstance(x, complex):
        # only exact for integral parts; floats are never accepted silently
        if x.real.is_integer() and x.imag.is_integer():
            return _canon(int(x.real), int(x.imag), 1)
        raise TypeError("non-integral complex literals are not exact")
    return NotImplemented


ZERO = _canon(0, 0, 1)
ONE = _canon(1, 0, 1)
I = _canon(0, 1, 1)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# -- text form ---------------------------------------------------------

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def _parse_rational(text: str) -> Fraction:
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> Scalar:
    """Parse ``p``, ``p/q`` or ``re+im*i``; zero parts and ``*`` may be omitted."""
    s = text.strip().replace("−", "-").replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return _as_scalar(_parse_rational(s))
    body = s[:-1]
    if body.endswith("*"):
        body = body[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_text, im_text = body[:cut], body[cut:]
    else:
        re_text, im_text = "", body
    if im_text in ("", "+"):
        im = Fraction(1)
    elif im_text == "-":
        im = Fraction(-1)
    else:
        im = _parse_rational(im_text)
    re_part = _parse_rational(re_text) if re_text else Fraction(0)
    return _as_scalar(re_part) + _as_scalar(im) * I


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    if x._b == 0:
        return _fmt_rational(x.re)
    im = x.im
    sign = "+" if im > 0 else "-"
    return f"{_fmt_rational(x.re)}{sign}{_fmt_rational(abs(im))}*i"


# -- matrices ------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise DimensionMismatch("entries length must equal nrows * ncols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
        rows = [[_as_scalar(c) for c in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(c for r in rows for c in r))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls(nrows, ncols, (ZERO,) * (nrows * ncols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.ncols + j]

    def rows(self) -> list[list[Scalar]]:
        n = self.ncols
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(self.nrows)]

    def column(self, j: int) -> list[Scalar]:
        return [self.entries[i * self.ncols + j] for i in range(self.nrows)]

    def apply(self, v: Sequence[Scalar]) -> list[Scalar]:
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length does not match column count")
        out = []
        n = self.ncols
        for i in range(self.nrows):
            acc = ZERO
            for j in range(n):
                c = self.entries[i * n + j]
                if c and v[j]:
                    acc = acc + c * v[j]
            out.append(acc)
        return out

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch("inner dimensions differ")
        cols = [other.column(j) for j in range(other.ncols)]
        rows = [[_dot(r, c) for c in cols] for r in self.rows()]
        return Matrix(self.nrows, other.ncols, tuple(x for r in rows for x in r))

    def transpose(self) -> Matrix:
        return Matrix(self.ncols, self.nrows,
                      tuple(self[i, j] for j in range(self.ncols) for i in range(self.nrows)))


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    m = [[_as_scalar(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        row = m[r]
        inv = row[c].inverse()
        if inv != ONE:
            row = [x * inv if x else x for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    m[i] = [a - f * b if b else a for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


@dataclass(frozen=True)
class SolutionSpace:
    """An affine subspace ``particular + span(basis)``, or an inconsistent system.

    ``basis`` is in reduced echelon form (leading entry 1, zero in every other
    basis vector's leading column), and ``particular`` is reduced against it,
    so two equal affine spaces always have identical representations.
    """

    ambient_dim: int
    particular: tuple | None
    basis: tuple

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dim(self) -> int | None:
        return len(self.basis) if self.consistent else None

    def point(self, coeffs: Sequence) -> tuple:
        if not self.consistent:
            raise ValueError("inconsistent system has no points")
        if len(coeffs) != len(self.basis):
            raise DimensionMismatch("one coefficient per basis vector expected")
        v = list(self.particular)
        for c, b in zip(coeffs, self.basis):
            c = _as_scalar(c)
            if c:
                v = [x + c * y if y else x for x, y in zip(v, b)]
        return tuple(v)

    def contains(self, v: Sequence[Scalar]) -> bool:
        if not self.consistent:
            return False
        diff = [_as_scalar(a) - b for a, b in zip(v, self.particular)]
        rows = [list(b) for b in self.basis]
        return rank(rows + [diff], self.ambient_dim) == len(rows)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(b) if x) for b in self.basis]


def echelon_basis(vectors: Iterable[Sequence[Scalar]], ncols: int) -> tuple[tuple, list[int]]:
    """Reduced echelon basis of the span of ``vectors`` and its pivot columns."""
    rows, piv = rref([list(v) for v in vectors], ncols)
    return tuple(tuple(r) for r in rows), piv


def reduce_vector(v: Sequence[Scalar], basis: Sequence[Sequence[Scalar]], pivots: Sequence[int]) -> tuple:
    """Normal form of ``v`` modulo an echelon basis: zero in every pivot column."""
    out = list(v)
    for b, p in zip(basis, pivots):
        f = out[p]
        if f:
            out = [x - f * y if y else x for x, y in zip(out, b)]
    return tuple(out)


def _check_matrix(A) -> Matrix:
    if isinstance(A, Matrix):
        return A
    return Matrix.from_rows(A)


def solve_affine(A, b: Sequence) -> SolutionSpace:
    """Full affine solution set of ``A x = b`` over Q(i)."""
    A = _check_matrix(A)
    if A.nrows != len(b):
        raise DimensionMismatch(f"matrix has {A.nrows} rows but right-hand side has {len(b)} entries")
    n = A.ncols
    aug = [row + [_as_scalar(x)] for row, x in zip(A.rows(), b)]
    rows, piv = rref(aug, n + 1)
    if piv and piv[-1] == n:
        return SolutionSpace(n, None, ())
    particular = [ZERO] * n
    for row, p in zip(rows, piv):
        particular[p] = row[n]
    pivset = set(piv)
    kernel = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(rows, piv):
            if row[f]:
                v[p] = -row[f]
        kernel.append(v)
    basis, bpiv = echelon_basis(kernel, n)
    return SolutionSpace(n, reduce_vector(particular, basis, bpiv), basis)


def nullspace(A) -> SolutionSpace:
    A = _check_matrix(A)
    return solve_affine(A, [ZERO] * A.nrows)


def inverse(A) -> Matrix:
    A = _check_matrix(A)
    if A.nrows != A.ncols:
        raise DimensionMismatch("only square matrices are invertible")
    n = A.nrows
    aug = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A.rows())]
    rows, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix("matrix is singular")
    return Matrix(n, n, tuple(x for r in rows for x in r[n:]))
