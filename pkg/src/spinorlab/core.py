"""Exact scalars in Q(i) and dense exact linear algebra.

Every other module builds on :class:`GaussianRational` and the row-reduction
helpers defined here.  Nothing in the package ever rounds.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "GaussianRational",
    "gq",
    "ZERO",
    "ONE",
    "I",
    "ExactMatrix",
    "Subspace",
    "rref",
    "kernel_basis",
    "solve",
    "rank",
    "certified_rank",
    "parse_scalar",
    "format_scalar",
    "zeros",
    "unit_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "lin_comb",
    "is_zero_vector",
    "left_inverse",
    "gaussian_int_arrays",
    "sparse_kernel",
]


class GaussianRational:
    """Element (a + b*i) / d of Q(i), kept with gcd(a, b, d) = 1 and d > 0."""

    __slots__ = ("_a", "_b", "_d")

    def __new__(cls, re=0, im=0):
        if isinstance(re, GaussianRational) and im == 0:
            return re
        if isinstance(re, str):
            value = parse_scalar(re)
            if im == 0:
                return value
            return value + GaussianRational(0, im)
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        return _make(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def conjugate(self) -> "GaussianRational":
        return _raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a1, b1, d1 = self._a, self._b, self._d
        a2, b2, d2 = other._a, other._b, other._d
        if d1 == d2:
            return _make(a1 + a2, b1 + b2, d1)
        return _make(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a1, b1, d1 = self._a, self._b, self._d
        a2, b2, d2 = other._a, other._b, other._d
        if d1 == d2:
            return _make(a1 - a2, b1 - b2, d1)
        return _make(a1 * d2 - a2 * d1, b1 * d2 - b2 * d1, d1 * d2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return _raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a1, b1 = self._a, self._b
        a2, b2 = other._a, other._b
        if b1 == 0 and b2 == 0:
            return _make(a1 * a2, 0, self._d * other._d)
        return _make(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        if n < 0:
            raise AssertionError("norm must be positive")
        return _make(d * a, -d * b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
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

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))


def _raw(a: int, b: int, d: int) -> GaussianRational:
    obj = object.__new__(GaussianRational)
    obj._a = a
    obj._b = b
    obj._d = d
    return obj


def _make(a: int, b: int, d: int) -> GaussianRational:
    if a == 0 and b == 0:
        return ZERO
    if d != 1:
        g = math.gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
    return _raw(a, b, d)


def _coerce(value) -> Optional[GaussianRational]:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, int):
        return _raw(value, 0, 1) if value else ZERO
    if isinstance(value, Fraction):
        return _make(value.numerator, 0, value.denominator)
    if isinstance(value, complex):
        # only exact small integers are accepted from Python complex literals
        if value.real.is_integer() and value.imag.is_integer():
            return _make(int(value.real), int(value.imag), 1)
    return None


ZERO = _raw(0, 0, 1)
ONE = _raw(1, 0, 1)
I = _raw(0, 1, 1)


def gq(value=0, im=0) -> GaussianRational:
    """Shorthand constructor: ``gq(1, 2)`` is 1 + 2i, ``gq("1/2-3*i")`` parses."""
    if isinstance(value, GaussianRational) and im == 0:
        return value
    if isinstance(value, int) and im == 0:
        return _raw(value, 0, 1) if value else ZERO
    return GaussianRational(value, im)


def _format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: GaussianRational) -> str:
    """Text form ``a/b+c/d*i``; the imaginary part is dropped when zero."""
    x = gq(x)
    re_part, im_part = x.re, x.im
    if im_part == 0:
        return _format_fraction(re_part)
    im_text = _format_fraction(abs(im_part)) + "*i"
    if re_part == 0:
        return ("-" if im_part < 0 else "") + im_text
    return _format_fraction(re_part) + ("-" if im_part < 0 else "+") + im_text


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)({_RAT})?(\*?i)?")


def parse_scalar(text: str) -> GaussianRational:
    """Inverse of :func:`format_scalar`; also accepts ``i``, ``-i``, ``2i``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    total = ZERO
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"malformed scalar {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        mag = Fraction(m.group(2)) if m.group(2) is not None else Fraction(1)
        if m.group(3) is not None:
            if m.group(3) == "*i" and m.group(2) is None:
                raise ValueError(f"malformed scalar {text!r}")
            total = total + GaussianRational(0, sign * mag)
        else:
            total = total + GaussianRational(sign * mag)
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"malformed scalar {text!r}")
    return total


# ---------------------------------------------------------------------------
# row reduction on plain lists (internal workhorses)
# ---------------------------------------------------------------------------


def _rref_rows(rows: list[list[GaussianRational]], ncols: int) -> tuple[list[list[GaussianRational]], list[int]]:
    """Gauss-Jordan in place semantics on copies; returns (nonzero rows, pivots).

    Pivoting is deterministic: leftmost nonzero column, topmost nonzero row.
    """
    m = [list(r) for r in rows]
    pivots: list[int] = []
    prow = 0
    nrows = len(m)
    for c in range(ncols):
        if prow == nrows:
            break
        sel = -1
        for r in range(prow, nrows):
            if m[r][c]:
                sel = r
                break
        if sel < 0:
            continue
        if sel != prow:
            m[prow], m[sel] = m[sel], m[prow]
        pivot_row = m[prow]
        inv = pivot_row[c].inverse()
        if inv != ONE:
            pivot_row = [x * inv if x else ZERO for x in pivot_row]
            m[prow] = pivot_row
        support = [j for j in range(c, ncols) if pivot_row[j]]
        for r in range(nrows):
            if r == prow:
                continue
            row = m[r]
            f = row[c]
            if f:
                for j in support:
                    row[j] = row[j] - f * pivot_row[j]
        pivots.append(c)
        prow += 1
    return m[:prow], pivots


def _sparse_echelon(vectors: Iterable[Sequence[GaussianRational]], ncols: int):
    """Reduced basis of a span from many sparse vectors (dict rows).

    Returns dense rref rows and pivots; much faster than the dense routine
    when there are many mostly-zero spanning vectors.
    """
    basis: dict[int, dict[int, GaussianRational]] = {}
    for v in vectors:
        row = {j: x for j, x in enumerate(v) if x} if not isinstance(v, dict) else dict(v)
        # basis rows are fully reduced, so one sweep clears every pivot
        while row:
            hits = [p for p in row if p in basis]
            if not hits:
                break
            for p in hits:
                f = row.get(p)
                if not f:
                    continue
                for j, x in basis[p].items():
                    y = row.get(j, ZERO) - f * x
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = row[p].inverse()
        row = {j: x * inv for j, x in row.items()}
        # eliminate new pivot from older rows to keep them reduced
        for q, other in basis.items():
            f = other.get(p)
            if f:
                for j, x in row.items():
                    y = other.get(j, ZERO) - f * x
                    if y:
                        other[j] = y
                    else:
                        other.pop(j, None)
        basis[p] = row
    pivots = sorted(basis)
    dense = []
    for p in pivots:
        r = [ZERO] * ncols
        for j, x in basis[p].items():
            r[j] = x
        dense.append(r)
    return dense, pivots


class Subspace:
    """Subspace of k^n stored by its reduced row-echelon basis."""

    __slots__ = ("n", "rows", "pivots", "_pivot_set")

    def __init__(self, n: int, rows: list[list[GaussianRational]], pivots: list[int]):
        self.n = n
        self.rows = rows
        self.pivots = pivots
        self._pivot_set = set(pivots)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[GaussianRational]], n: int) -> "Subspace":
        rows, pivots = _sparse_echelon(vectors, n)
        return cls(n, rows, pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[GaussianRational]) -> list[GaussianRational]:
        """Remainder of v after subtracting its projection along pivot coordinates."""
        out = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = out[p]
            if f:
                for j in range(p, self.n):
                    x = row[j]
                    if x:
                        out[j] = out[j] - f * x
        return out

    def contains(self, v: Sequence[GaussianRational]) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: Sequence[GaussianRational], check: bool = True) -> list[GaussianRational]:
        if check and not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def vector(self, coords: Sequence[GaussianRational]) -> list[GaussianRational]:
        out = [ZERO] * self.n
        for c, row in zip(coords, self.rows):
            if c:
                for j in range(self.n):
                    x = row[j]
                    if x:
                        out[j] = out[j] + c * x
        return out

    def complement_indices(self) -> list[int]:
        return [j for j in range(self.n) if j not in self._pivot_set]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.rows) + list(other.rows), self.n)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.pivots == other.pivots and self.rows == other.rows

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)


# ---------------------------------------------------------------------------
# ExactMatrix
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Immutable dense matrix over Q(i)."""

    __slots__ = ("nrows", "ncols", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        rr = tuple(tuple(gq(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rr[0]) if rr else 0
        for r in rr:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.nrows = len(rr)
        self.ncols = ncols
        self.rows = rr
        self._hash = None

    @classmethod
    def _trusted(cls, rows, ncols: int) -> "ExactMatrix":
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        obj.nrows = len(obj.rows)
        obj.ncols = ncols
        obj._hash = None
        return obj

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls._trusted([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._trusted([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[GaussianRational]], nrows: int) -> "ExactMatrix":
        return cls._trusted([[col[i] for col in columns] for i in range(nrows)], len(columns))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "ExactMatrix":
        n = len(entries)
        return cls._trusted([[gq(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> list[GaussianRational]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[GaussianRational]]:
        return [list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._trusted(self.columns(), self.nrows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            brows = [[(j, x) for j, x in enumerate(r) if x] for r in other.rows]
            out = []
            for r in self.rows:
                acc = [ZERO] * other.ncols
                for k, a in enumerate(r):
                    if a:
                        for j, b in brows[k]:
                            acc[j] = acc[j] + a * b
                out.append(acc)
            return ExactMatrix._trusted(out, other.ncols)
        return self.apply(other)

    def apply(self, v: Sequence[GaussianRational]) -> list[GaussianRational]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        nz = [(k, x) for k, x in enumerate(v) if x]
        out = []
        for r in self.rows:
            acc = ZERO
            for k, x in nz:
                a = r[k]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix._trusted([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix._trusted([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return ExactMatrix._trusted([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "ExactMatrix":
        c = gq(c)
        return ExactMatrix._trusted([[c * a if a else ZERO for a in r] for r in self.rows], self.ncols)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix._trusted([list(r) + list(s) for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return ExactMatrix._trusted(list(self.rows) + list(other.rows), self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._trusted([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = _rref_rows(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return ExactMatrix._trusted([r[n:] for r in red[:n]], n)

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(", ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"ExactMatrix[{self.nrows}x{self.ncols}]({body})"


def _as_rows(A) -> tuple[list[list[GaussianRational]], int]:
    if isinstance(A, ExactMatrix):
        return [list(r) for r in A.rows], A.ncols
    rows = [[gq(x) for x in r] for r in A]
    return rows, (len(rows[0]) if rows else 0)


def rref(A) -> tuple[ExactMatrix, list[int]]:
    """Unique reduced row-echelon form (same shape as A) and pivot columns."""
    rows, ncols = _as_rows(A)
    red, piv = _rref_rows(rows, ncols)
    red = red + [[ZERO] * ncols for _ in range(len(rows) - len(red))]
    return ExactMatrix._trusted(red, ncols), piv


def rank(A) -> int:
    rows, ncols = _as_rows(A)
    return len(_sparse_echelon(rows, ncols)[1])


def kernel_basis(A) -> list[list[GaussianRational]]:
    """Basis of {x : A x = 0}, one vector per free column (free entry = 1)."""
    rows, ncols = _as_rows(A)
    red, piv = _sparse_echelon(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in zip(red, piv):
            x = r[f]
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def solve(A, b: Sequence) -> Optional[list[GaussianRational]]:
    """A particular solution of A x = b, or None when b is outside the column space."""
    rows, ncols = _as_rows(A)
    b = [gq(x) for x in b]
    if len(b) != len(rows):
        raise ValueError(f"dimension mismatch: matrix has {len(rows)} rows, rhs has {len(b)} entries")
    aug = [r + [bi] for r, bi in zip(rows, b)]
    red, piv = _sparse_echelon(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for r, p in zip(red, piv):
        x[p] = r[ncols]
    return x


# ---------------------------------------------------------------------------
# rank certificates modulo a prime
# ---------------------------------------------------------------------------

# p = 1 (mod 4) so that i has a square root; the modular rank is a lower bound
# for the rank over Q(i) whenever all denominators are units mod p.
_P = 1_000_000_009
_SQRT_M1 = next(
    r for r in (pow(g, (_P - 1) // 4, _P) for g in range(2, 100)) if (r * r) % _P == _P - 1
)


def _mod_p(x: GaussianRational) -> Optional[int]:
    if x._d % _P == 0:
        return None
    return ((x._a + x._b * _SQRT_M1) * pow(x._d, -1, _P)) % _P


def _modular_rank(rows: list[list[GaussianRational]], ncols: int) -> Optional[int]:
    if not rows or ncols == 0:
        return 0
    arr = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x:
                v = _mod_p(x)
                if v is None:
                    return None
                arr[i, j] = v
    m = arr
    rk = 0
    nrows = m.shape[0]
    for c in range(ncols):
        if rk == nrows:
            break
        nz = np.nonzero(m[rk:, c])[0]
        if nz.size == 0:
            continue
        sel = rk + int(nz[0])
        if sel != rk:
            m[[rk, sel]] = m[[sel, rk]]
        inv = pow(int(m[rk, c]), -1, _P)
        m[rk] = (m[rk] * inv) % _P
        below = m[rk + 1:, c].copy()
        idx = np.nonzero(below)[0]
        if idx.size:
            sub = m[rk + 1 + idx]
            sub = (sub - (below[idx, None] * m[rk][None, :]) % _P) % _P
            m[rk + 1 + idx] = sub
        rk += 1
    return rk


def certified_rank(A) -> int:
    """Exact rank; uses a modular computation as a certificate when it is maximal.

    rank mod p <= rank over Q(i) <= min(rows, cols), so a maximal modular rank
    settles the question; otherwise falls back to exact elimination.
    """
    rows, ncols = _as_rows(A)
    bound = min(len(rows), ncols)
    if bound == 0:
        return 0
    mr = _modular_rank(rows, ncols)
    if mr == bound:
        return bound
    return len(_sparse_echelon(rows, ncols)[1])


# ---------------------------------------------------------------------------
# plain coordinate-vector helpers
# ---------------------------------------------------------------------------


def zeros(n: int) -> list[GaussianRational]:
    return [ZERO] * n


def unit_vector(n: int, i: int) -> list[GaussianRational]:
    v = [ZERO] * n
    v[i] = ONE
    return v


def vec_add(x: Sequence[GaussianRational], y: Sequence[GaussianRational]) -> list[GaussianRational]:
    return [a + b if b else a for a, b in zip(x, y)]


def vec_sub(x: Sequence[GaussianRational], y: Sequence[GaussianRational]) -> list[GaussianRational]:
    return [a - b if b else a for a, b in zip(x, y)]


def vec_scale(c, x: Sequence[GaussianRational]) -> list[GaussianRational]:
    c = gq(c)
    if not c:
        return [ZERO] * len(x)
    return [c * a if a else ZERO for a in x]


def lin_comb(coeffs: Sequence, vectors: Sequence[Sequence[GaussianRational]], n: int) -> list[GaussianRational]:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for j, a in enumerate(v):
                if a:
                    out[j] = out[j] + c * a
    return out


def is_zero_vector(x: Sequence[GaussianRational]) -> bool:
    return not any(x)


def left_inverse(columns: Sequence[Sequence[GaussianRational]], n: int) -> ExactMatrix:
    """L with L @ M = identity, where M has the given linearly independent columns.

    Solving M y = b is then y = L b (valid when b lies in the column space).
    """
    m = len(columns)
    M = ExactMatrix.from_columns(columns, n)
    _, piv = rref(M.transpose())
    if len(piv) != m:
        raise ValueError("columns are linearly dependent")
    sq = M.submatrix(piv, list(range(m))).inverse()
    rows = [[ZERO] * n for _ in range(m)]
    for a in range(m):
        for b, r in enumerate(piv):
            rows[a][r] = sq[a, b]
    return ExactMatrix._trusted(rows, n)


def gaussian_int_arrays(entries: Sequence[Sequence[GaussianRational]]):
    """(re, im, d) int64 arrays with entries = (re + i*im) / d exactly.

    Returns None if the scaled integers do not fit comfortably in int64.
    """
    d = 1
    for row in entries:
        for x in row:
            if x:
                d = d * x._d // math.gcd(d, x._d)
    shape = (len(entries), len(entries[0]) if entries else 0)
    re_ = np.zeros(shape, dtype=np.int64)
    im_ = np.zeros(shape, dtype=np.int64)
    limit = 1 << 40
    for i, row in enumerate(entries):
        for j, x in enumerate(row):
            if x:
                f = d // x._d
                a, b = x._a * f, x._b * f
                if abs(a) > limit or abs(b) > limit:
                    return None
                re_[i, j] = a
                im_[i, j] = b
    return re_, im_, d


def sparse_kernel(rows: Iterable[dict], ncols: int) -> list[list[GaussianRational]]:
    """Kernel basis of a matrix given as sparse rows {column: value}."""
    red, piv = _sparse_echelon(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in zip(red, piv):
            x = r[f]
            if x:
                v[p] = -x
        basis.append(v)
    return basis
