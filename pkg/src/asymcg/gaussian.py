"""Exact arithmetic in Q(i) and small dense linear algebra over it."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floats are not exact; pass GaussianRational or rationals")
        return cls(x, 0)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        out, base = GaussianRational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re_num": self.re.numerator, "re_den": self.re.denominator,
                "im_num": self.im.numerator, "im_den": self.im.denominator}

    @classmethod
    def from_json(cls, d: dict) -> "GaussianRational":
        return cls(Fraction(d["re_num"], d["re_den"]), Fraction(d["im_num"], d["im_den"]))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

Matrix = list  # list of rows of GaussianRational


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[ZERO] * m for _ in range(n)]


def eye(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    if any(len(r) != inner for r in a):
        raise ValueError("shape mismatch in matmul")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out_row = []
        for j in range(cols):
            re = Fraction(0)
            im = Fraction(0)
            for k, x in nz:
                y = b[k][j]
                if y:
                    re += x.re * y.re - x.im * y.im
                    im += x.re * y.im + x.im * y.re
            out_row.append(GaussianRational(re, im))
        out.append(out_row)
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a: Matrix, cols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def conj(a: Matrix) -> Matrix:
    return [[x.conj() for x in row] for row in a]


def adjoint(a: Matrix, cols: int | None = None) -> Matrix:
    return conj(transpose(a, cols))


def is_identity(a: Matrix) -> bool:
    return all(x == (ONE if i == j else ZERO) for i, row in enumerate(a) for j, x in enumerate(row))


def _eliminate(a: Matrix, extra: Matrix | None = None):
    """Row-reduce a copy of ``a`` (and ``extra`` alongside).

    Returns (rows, pivots, extra_rows, sign) where sign tracks row swaps.
    """
    rows = [list(r) for r in a]
    ext = [list(r) for r in extra] if extra is not None else None
    n = len(rows)
    m = len(rows[0]) if rows else 0
    pivots = []
    sign = 1
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            if ext is not None:
                ext[r], ext[p] = ext[p], ext[r]
            sign = -sign
        inv = ONE / rows[r][c]
        for i in range(r + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
                if ext is not None:
                    ext[i] = [x - f * y if y else x for x, y in zip(ext[i], ext[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots, ext, sign


def det(a: Matrix) -> GaussianRational:
    n = len(a)
    if n == 0:
        return ONE
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    rows, pivots, _, sign = _eliminate(a)
    if len(pivots) < n:
        return ZERO
    out = GaussianRational(sign)
    for i in range(n):
        out = out * rows[i][i]
    return out


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(_eliminate(a)[1])


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows, pivots, ext, _ = _eliminate(a, eye(n))
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    # back substitution on the upper triangular system
    for i in reversed(range(n)):
        inv = ONE / rows[i][i]
        ext[i] = [x * inv for x in ext[i]]
        rows[i] = [x * inv for x in rows[i]]
        for k in range(i):
            f = rows[k][i]
            if f:
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
                ext[k] = [x - f * y for x, y in zip(ext[k], ext[i])]
    return ext


def to_complex(a: Matrix):
    import numpy as np

    return np.array([[complex(x) for x in row] for row in a], dtype=complex).reshape(
        len(a), len(a[0]) if a else 0)


def from_rows(rows: Sequence[Sequence]) -> Matrix:
    return [[GaussianRational.coerce(x) for x in row] for row in rows]
