"""Clifford algebras of diagonal forms and generic finite-dimensional algebras.

Clifford monomials are bitmasks: bit ``i`` set means the generator ``e_i``
occurs, and ``e_S`` is the product of its generators in increasing order.
"""

from __future__ import annotations

from functools import lru_cache

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .core import (
    ONE,
    ZERO,
    I,
    ExactMatrix,
    GaussianRational,
    Subspace,
    gaussian_int_arrays,
    gq,
    left_inverse,
    lin_comb,
    rank,
    solve,
    unit_vector,
    vec_add,
    vec_sub,
)
from .qspace import IsotropicSubspace, QuadraticSpace, is_isotropic, orthogonal_sum, hyperbolic_plane

__all__ = [
    "clifford_sign",
    "monomial_product",
    "CliffordElement",
    "FinDimAlgebra",
    "CliffordAlgebra",
    "clifford",
    "even_part",
    "GradedIdeal",
    "left_ideal",
    "graded_tensor",
    "tensor_product",
    "matrix_algebra",
    "AlgebraMorphism",
    "clifford_tensor_isomorphism",
    "morita_isomorphism",
    "odd_factor_embedding",
]


# ---------------------------------------------------------------------------
# monomial arithmetic
# ---------------------------------------------------------------------------


def clifford_sign(S: int, T: int) -> int:
    """Sign from sorting e_S e_T: each j in T passes the elements of S above j."""
    swaps = 0
    t = T
    while t:
        low = t & -t
        j = low.bit_length() - 1
        swaps += bin(S >> (j + 1)).count("1")
        t ^= low
    return -1 if swaps & 1 else 1


def monomial_product(S: int, T: int, diagonal: Sequence[int]) -> tuple[int, int]:
    """e_S e_T = c e_{S xor T}; returns (c, S xor T) with c an integer."""
    c = clifford_sign(S, T)
    common = S & T
    while common:
        low = common & -common
        qi = diagonal[low.bit_length() - 1]
        if qi == 0:
            return 0, S ^ T
        c *= qi
        common ^= low
    return c, S ^ T


def _mask_str(S: int) -> str:
    if S == 0:
        return "1"
    return "e" + "".join(str(j + 1) for j in range(S.bit_length()) if S >> j & 1)


class CliffordElement:
    """Multivector: map from monomial bitmask to coefficient."""

    __slots__ = ("q", "terms")

    def __init__(self, q: QuadraticSpace, terms: Optional[dict] = None):
        self.q = q
        self.terms = {S: gq(c) for S, c in (terms or {}).items() if c}

    @classmethod
    def scalar(cls, q: QuadraticSpace, c=1) -> "CliffordElement":
        return cls(q, {0: c})

    @classmethod
    def monomial(cls, q: QuadraticSpace, S: int, c=1) -> "CliffordElement":
        return cls(q, {S: c})

    @classmethod
    def generator(cls, q: QuadraticSpace, i: int) -> "CliffordElement":
        return cls(q, {1 << i: ONE})

    @classmethod
    def from_vector(cls, q: QuadraticSpace, v: Sequence) -> "CliffordElement":
        return cls(q, {1 << i: c for i, c in enumerate(v) if c})

    @classmethod
    def product_of(cls, q: QuadraticSpace, factors: Sequence["CliffordElement"]) -> "CliffordElement":
        out = cls.scalar(q)
        for f in factors:
            out = out * f
        return out

    def _check(self, other: "CliffordElement"):
        if not isinstance(other, CliffordElement) or other.q.diagonal != self.q.diagonal:
            raise ValueError("Clifford elements over different quadratic forms")

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            c = gq(other)
            return CliffordElement(self.q, {S: a * c for S, a in self.terms.items()})
        self._check(other)
        diag = self.q.diagonal
        acc: dict[int, GaussianRational] = {}
        for S, a in self.terms.items():
            for T, b in other.terms.items():
                c, U = monomial_product(S, T, diag)
                if c:
                    val = a * b if c == 1 else -(a * b)
                    prev = acc.get(U)
                    acc[U] = val if prev is None else prev + val
        return CliffordElement(self.q, acc)

    def __rmul__(self, other):
        return self * other

    def __add__(self, other: "CliffordElement"):
        self._check(other)
        acc = dict(self.terms)
        for S, b in other.terms.items():
            acc[S] = acc[S] + b if S in acc else b
        return CliffordElement(self.q, acc)

    def __neg__(self):
        return CliffordElement(self.q, {S: -a for S, a in self.terms.items()})

    def __sub__(self, other: "CliffordElement"):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> Optional[int]:
        """0 or 1 for homogeneous nonzero elements, None otherwise (0 for zero)."""
        ps = {bin(S).count("1") & 1 for S in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def graded_part(self, parity: int) -> "CliffordElement":
        return CliffordElement(self.q, {S: a for S, a in self.terms.items() if bin(S).count("1") & 1 == parity})

    def __eq__(self, other):
        return isinstance(other, CliffordElement) and self.q.diagonal == other.q.diagonal and self.terms == other.terms

    def __hash__(self):
        return hash((self.q.diagonal, frozenset(self.terms.items())))

    def __repr__(self):
        from .core import format_scalar

        if not self.terms:
            return "0"
        return " + ".join(f"({format_scalar(a)}){_mask_str(S)}" for S, a in sorted(self.terms.items()))


# ---------------------------------------------------------------------------
# generic algebras given by structure constants
# ---------------------------------------------------------------------------


class FinDimAlgebra:
    """Associative unital algebra over Q(i) with basis e_0..e_{dim-1}.

    ``table[a][b]`` is a tuple of (index, coefficient) pairs giving e_a e_b.
    """

    def __init__(
        self,
        dim: int,
        table: Sequence[Sequence[Sequence[tuple[int, GaussianRational]]]],
        unit: Sequence[GaussianRational],
        parity: Optional[Sequence[int]] = None,
        generators: Optional[Sequence[Sequence[GaussianRational]]] = None,
        names: Optional[Sequence[str]] = None,
        label: str = "",
    ):
        self.dim = dim
        self.table = [[tuple((s, gq(c)) for s, c in entry if c) for entry in row] for row in table]
        self.unit = [gq(x) for x in unit]
        self.parity = list(parity) if parity is not None else None
        self._generators = [list(g) for g in generators] if generators is not None else None
        self.names = list(names) if names is not None else [f"b{a}" for a in range(dim)]
        self.label = label
        self._left_cache: dict[int, ExactMatrix] = {}
        self._int_tensor = None

    # --- elements -----------------------------------------------------------

    def zero(self) -> list[GaussianRational]:
        return [ZERO] * self.dim

    def one(self) -> list[GaussianRational]:
        return list(self.unit)

    def basis_element(self, a: int) -> list[GaussianRational]:
        return unit_vector(self.dim, a)

    @property
    def generators(self) -> list[list[GaussianRational]]:
        """Elements generating the algebra (all basis elements if none given)."""
        if self._generators is None:
            return [self.basis_element(a) for a in range(self.dim)]
        return [list(g) for g in self._generators]

    def multiply(self, x: Sequence[GaussianRational], y: Sequence[GaussianRational]) -> list[GaussianRational]:
        out = [ZERO] * self.dim
        ynz = [(b, yb) for b, yb in enumerate(y) if yb]
        if not ynz:
            return out
        table = self.table
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = table[a]
            for b, yb in ynz:
                entry = row[b]
                if entry:
                    f = xa * yb
                    for s, c in entry:
                        out[s] = out[s] + f * c
        return out

    def mul_basis(self, a: int, b: int) -> list[GaussianRational]:
        out = [ZERO] * self.dim
        for s, c in self.table[a][b]:
            out[s] = out[s] + c
        return out

    def product(self, *xs) -> list[GaussianRational]:
        out = self.one()
        for x in xs:
            out = self.multiply(out, x)
        return out

    def power(self, x, n: int) -> list[GaussianRational]:
        out = self.one()
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    def add(self, x, y):
        return vec_add(x, y)

    def sub(self, x, y):
        return vec_sub(x, y)

    def scale(self, c, x):
        c = gq(c)
        return [c * a if a else ZERO for a in x]

    def combination(self, coeffs, elements):
        return lin_comb(coeffs, elements, self.dim)

    def is_zero(self, x) -> bool:
        return not any(x)

    def commutes(self, x, y) -> bool:
        return self.multiply(x, y) == self.multiply(y, x)

    # --- operators ------------------------------------------------------------

    def left_matrix_basis(self, a: int) -> ExactMatrix:
        m = self._left_cache.get(a)
        if m is None:
            rows = [[ZERO] * self.dim for _ in range(self.dim)]
            for b in range(self.dim):
                for s, c in self.table[a][b]:
                    rows[s][b] = rows[s][b] + c
            m = ExactMatrix._trusted(rows, self.dim)
            self._left_cache[a] = m
        return m

    def left_matrix(self, x) -> ExactMatrix:
        """Matrix of y -> x y; column b is x e_b."""
        cols = [self.multiply(x, self.basis_element(b)) for b in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim)

    def right_matrix(self, x) -> ExactMatrix:
        """Matrix of y -> y x; column b is e_b x."""
        cols = [self.multiply(self.basis_element(b), x) for b in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim)

    def left_traces(self) -> list[GaussianRational]:
        """tr(L_{e_s}) for every basis element."""
        out = []
        for s in range(self.dim):
            acc = ZERO
            for b in range(self.dim):
                for t, c in self.table[s][b]:
                    if t == b:
                        acc = acc + c
            out.append(acc)
        return out

    # --- structural checks ------------------------------------------------------

    def check_unit(self) -> bool:
        u = self.unit
        for a in range(self.dim):
            e = self.basis_element(a)
            if self.multiply(u, e) != e or self.multiply(e, u) != e:
                return False
        return True

    def check_associativity(self, triples=None) -> bool:
        """Exhaustive unless an explicit iterable of (a, b, c) triples is given."""
        if triples is None:
            return self._associative_exhaustive()
        for a, b, c in triples:
            ab = self.mul_basis(a, b)
            left = self.multiply(ab, self.basis_element(c))
            bc = self.mul_basis(b, c)
            right = self.multiply(self.basis_element(a), bc)
            if left != right:
                return False
        return True

    def _associative_exhaustive(self) -> bool:
        fast = self._associative_monomial()
        if fast is not None:
            return fast
        rng = range(self.dim)
        return self.check_associativity((a, b, c) for a in rng for b in rng for c in rng)

    def _associative_monomial(self) -> Optional[bool]:
        """Vectorised exact check when every basis product is a multiple of a basis element."""
        n = self.dim
        idx = np.zeros((n, n), dtype=np.int64)
        coef = [[ZERO] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                entry = self.table[a][b]
                if len(entry) > 1:
                    return None
                if entry:
                    idx[a, b], coef[a][b] = entry[0]
        arr = gaussian_int_arrays(coef)
        if arr is None:
            return None
        cr, ci, _ = arr
        A = np.arange(n)[:, None, None]
        B = np.arange(n)[None, :, None]
        C = np.arange(n)[None, None, :]
        ab = idx[A, B]
        bc = idx[B, C]
        # (e_a e_b) e_c
        l_idx = idx[ab, C]
        l_r = cr[A, B] * cr[ab, C] - ci[A, B] * ci[ab, C]
        l_i = cr[A, B] * ci[ab, C] + ci[A, B] * cr[ab, C]
        # e_a (e_b e_c)
        r_idx = idx[A, bc]
        r_r = cr[B, C] * cr[A, bc] - ci[B, C] * ci[A, bc]
        r_i = cr[B, C] * ci[A, bc] + ci[B, C] * cr[A, bc]
        lz = (l_r == 0) & (l_i == 0)
        rz = (r_r == 0) & (r_i == 0)
        same = (lz & rz) | ((l_idx == r_idx) & (l_r == r_r) & (l_i == r_i))
        return bool(same.all())

    def check_grading(self) -> bool:
        if self.parity is None:
            raise ValueError("algebra has no parity labels")
        for a in range(self.dim):
            for b in range(self.dim):
                p = (self.parity[a] + self.parity[b]) & 1
                for s, _ in self.table[a][b]:
                    if self.parity[s] != p:
                        return False
        return True

    def int_tensor(self):
        """Structure constants as scaled Gaussian-integer arrays C[a, b, s]."""
        if self._int_tensor is None:
            n = self.dim
            flat = [[ZERO] * n for _ in range(n * n)]
            for a in range(n):
                for b in range(n):
                    for s, c in self.table[a][b]:
                        flat[a * n + b][s] = c
            res = gaussian_int_arrays(flat)
            if res is None:
                self._int_tensor = False
            else:
                re_, im_, d = res
                self._int_tensor = (re_.reshape(n, n, n), im_.reshape(n, n, n), d)
        return self._int_tensor or None

    def __repr__(self):
        return f"FinDimAlgebra(dim={self.dim}{', ' + self.label if self.label else ''})"


def _ctensordot(ar, ai, br, bi, axes):
    """Complex tensordot on (real, imaginary) integer pairs."""
    rr = np.tensordot(ar, br, axes) - np.tensordot(ai, bi, axes)
    ri = np.tensordot(ar, bi, axes) + np.tensordot(ai, br, axes)
    return rr, ri


# ---------------------------------------------------------------------------
# Clifford algebras
# ---------------------------------------------------------------------------


class CliffordAlgebra(FinDimAlgebra):
    """Cl(q) or Cl_0(q) with monomial basis in increasing bitmask order."""

    def __init__(self, q: QuadraticSpace, even: bool = False):
        if q.dim == 0:
            raise ValueError("Clifford algebra of the zero space is not supported")
        self.q = q
        self.even = even
        masks = [S for S in range(1 << q.dim) if not even or bin(S).count("1") % 2 == 0]
        self.masks = masks
        self.mask_index = {S: k for k, S in enumerate(masks)}
        diag = q.diagonal
        table = []
        for S in masks:
            row = []
            for T in masks:
                c, U = monomial_product(S, T, diag)
                row.append(((self.mask_index[U], gq(c)),) if c else ())
            table.append(row)
        parity = [bin(S).count("1") & 1 for S in masks]
        if even:
            gens = self._even_generators()
        else:
            gens = [self.mask_index[1 << i] for i in range(q.dim)]
        super().__init__(
            len(masks),
            table,
            unit_vector(len(masks), 0),
            parity=parity,
            generators=[unit_vector(len(masks), g) for g in gens],
            names=[_mask_str(S) for S in masks],
            label=("Cl0" if even else "Cl") + str(q),
        )

    def _even_generators(self) -> list[int]:
        q = self.q
        nd = q.nondegenerate_indices
        if nd:
            a = nd[0]
            pairs = [(min(a, j), max(a, j)) for j in range(q.dim) if j != a]
        else:
            pairs = [(i, j) for i in range(q.dim) for j in range(i + 1, q.dim)]
        gens = [self.mask_index[(1 << i) | (1 << j)] for i, j in pairs]
        return gens or [0]

    def element(self, x: CliffordElement) -> list[GaussianRational]:
        """Coordinates of a Clifford element (must lie in this algebra)."""
        out = [ZERO] * self.dim
        for S, c in x.terms.items():
            k = self.mask_index.get(S)
            if k is None:
                raise ValueError("element has odd components; not in the even part")
            out[k] = c
        return out

    def to_clifford(self, coords: Sequence[GaussianRational]) -> CliffordElement:
        return CliffordElement(self.q, {self.masks[k]: c for k, c in enumerate(coords) if c})


@lru_cache(maxsize=64)
def clifford(q: QuadraticSpace) -> CliffordAlgebra:
    """Cl(q); cached, so derived data (structure, registries) is shared."""
    return CliffordAlgebra(q, even=False)


@lru_cache(maxsize=64)
def even_part(q: QuadraticSpace) -> CliffordAlgebra:
    """Cl_0(q); cached like ``clifford``."""
    return CliffordAlgebra(q, even=True)


# ---------------------------------------------------------------------------
# graded left ideals I^W
# ---------------------------------------------------------------------------


@dataclass
class GradedIdeal:
    """I^W = Cl(q) w_1...w_m with its even and odd parts as subspaces of Cl(q).

    Coordinates are indexed by monomial bitmask.  ``halves[0]`` is the even
    part I_0 = I^W ∩ Cl_0(q) and ``halves[1]`` the odd part I_1.
    """

    q: QuadraticSpace
    W: IsotropicSubspace
    word: CliffordElement
    halves: tuple[Subspace, Subspace]

    @property
    def I0(self) -> Subspace:
        return self.halves[0]

    @property
    def I1(self) -> Subspace:
        return self.halves[1]

    @property
    def rank(self) -> int:
        """M = dim I_0 = dim I_1."""
        return self.halves[0].dim

    def element(self, parity: int, k: int) -> CliffordElement:
        row = self.halves[parity].rows[k]
        return CliffordElement(self.q, {S: c for S, c in enumerate(row) if c})

    def coords(self, parity: int, x: CliffordElement) -> list[GaussianRational]:
        n = 1 << self.q.dim
        v = [ZERO] * n
        for S, c in x.terms.items():
            v[S] = c
        return self.halves[parity].coords(v)

    def left_action(self, x: CliffordElement, src: int) -> ExactMatrix:
        """Matrix of left multiplication by a homogeneous x from I_src to I_{src+|x|}."""
        p = x.parity()
        if p is None:
            raise ValueError("left multiplication by an inhomogeneous element")
        dst = (src + p) & 1
        cols = []
        for k in range(self.halves[src].dim):
            cols.append(self.coords(dst, x * self.element(src, k)))
        return ExactMatrix.from_columns(cols, self.halves[dst].dim)

    def contains(self, x: CliffordElement) -> bool:
        n = 1 << self.q.dim
        for p in (0, 1):
            part = x.graded_part(p)
            v = [ZERO] * n
            for S, c in part.terms.items():
                v[S] = c
            if not self.halves[p].contains(v):
                return False
        return True


def left_ideal(q: QuadraticSpace, W) -> GradedIdeal:
    """Graded left ideal generated by the product of a basis of W.

    Cl(q) w is spanned by c_T w where c_T runs over monomials in standard basis
    vectors complementary to W: the w_i anticommute and square to zero, so any
    W-factor kills w.  The spanning set is row-reduced per parity.
    """
    if not isinstance(W, IsotropicSubspace):
        W = IsotropicSubspace(q, tuple(tuple(gq(x) for x in v) for v in W))
    if not is_isotropic(q, W):
        raise ValueError("subspace is not isotropic")
    word = CliffordElement.product_of(q, [CliffordElement.from_vector(q, w) for w in W.basis])
    span = W.span()
    comp = span.complement_indices()
    n = 1 << q.dim
    parts: tuple[list, list] = ([], [])
    for sub in range(1 << len(comp)):
        T = 0
        for k, j in enumerate(comp):
            if sub >> k & 1:
                T |= 1 << j
        x = CliffordElement.monomial(q, T) * word
        p = x.parity()
        v = [ZERO] * n
        for S, c in x.terms.items():
            v[S] = c
        parts[p].append(v)
    halves = (Subspace.span(parts[0], n), Subspace.span(parts[1], n))
    expected = 1 << (W.codim - 1) if W.codim > 0 else None
    if expected is not None and not (halves[0].dim == halves[1].dim == expected):
        raise AssertionError(f"ideal halves have dimensions {halves[0].dim}, {halves[1].dim}; expected {expected}")
    return GradedIdeal(q, W, word, halves)


# ---------------------------------------------------------------------------
# tensor products and matrix algebras
# ---------------------------------------------------------------------------


def _tensor_table(A: FinDimAlgebra, B: FinDimAlgebra, graded: bool):
    nb = B.dim
    table = []
    for a in range(A.dim):
        for b in range(nb):
            row = []
            for a2 in range(A.dim):
                ea = A.table[a][a2]
                for b2 in range(nb):
                    eb = B.table[b][b2]
                    if not ea or not eb:
                        row.append(())
                        continue
                    sign = -1 if graded and (B.parity[b] & A.parity[a2]) else 1
                    entry = []
                    for s, c in ea:
                        for t, d in eb:
                            v = c * d
                            entry.append((s * nb + t, v if sign == 1 else -v))
                    row.append(tuple(entry))
            table.append(row)
    return table


def _tensor_vector(x, y):
    return [a * b if a and b else ZERO for a in x for b in y]


def tensor_product(A: FinDimAlgebra, B: FinDimAlgebra) -> FinDimAlgebra:
    """Ungraded tensor product; basis index a * dim(B) + b."""
    gens = [_tensor_vector(g, B.one()) for g in A.generators] + [_tensor_vector(A.one(), h) for h in B.generators]
    return FinDimAlgebra(
        A.dim * B.dim,
        _tensor_table(A, B, graded=False),
        _tensor_vector(A.unit, B.unit),
        generators=gens,
        names=[f"{x}⊗{y}" for x in A.names for y in B.names],
        label=f"{A.label}⊗{B.label}",
    )


def graded_tensor(A: FinDimAlgebra, B: FinDimAlgebra) -> FinDimAlgebra:
    """(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'; basis index a * dim(B) + b."""
    if A.parity is None or B.parity is None:
        raise ValueError("graded tensor product needs parity labels on both factors")
    parity = [(pa + pb) & 1 for pa in A.parity for pb in B.parity]
    gens = [_tensor_vector(g, B.one()) for g in A.generators] + [_tensor_vector(A.one(), h) for h in B.generators]
    return FinDimAlgebra(
        A.dim * B.dim,
        _tensor_table(A, B, graded=True),
        _tensor_vector(A.unit, B.unit),
        parity=parity,
        generators=gens,
        names=[f"{x}⊗{y}" for x in A.names for y in B.names],
        label=f"{A.label}⊗̂{B.label}",
    )


def matrix_algebra(A: FinDimAlgebra, m: int) -> FinDimAlgebra:
    """M_m(A); basis E_ij ⊗ a_k has index (i*m + j)*dim(A) + k."""
    if m < 1:
        raise ValueError("matrix size must be at least 1")
    n = A.dim
    dim = m * m * n
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(m):
        for j in range(m):
            for k in range(n):
                x = (i * m + j) * n + k
                for l in range(m):
                    for k2 in range(n):
                        y = (j * m + l) * n + k2
                        entry = A.table[k][k2]
                        if entry:
                            base = (i * m + l) * n
                            table[x][y] = tuple((base + s, c) for s, c in entry)
    unit = [ZERO] * dim
    for i in range(m):
        for k, c in enumerate(A.unit):
            unit[(i * m + i) * n + k] = c
    gens = []
    for i in range(m):
        for j in range(m):
            v = [ZERO] * dim
            for k, c in enumerate(A.unit):
                v[(i * m + j) * n + k] = c
            gens.append(v)
    for g in A.generators:
        v = [ZERO] * dim
        for k, c in enumerate(g):
            v[k] = c
        gens.append(v)
    return FinDimAlgebra(
        dim,
        table,
        unit,
        generators=gens,
        names=[f"E{i + 1}{j + 1}⊗{A.names[k]}" for i in range(m) for j in range(m) for k in range(n)],
        label=f"M{m}({A.label})",
    )


# ---------------------------------------------------------------------------
# algebra morphisms
# ---------------------------------------------------------------------------


@dataclass
class AlgebraMorphism:
    """Linear map source -> target; column a is the image of source basis element a."""

    source: FinDimAlgebra
    target: FinDimAlgebra
    matrix: ExactMatrix
    is_isomorphism: bool = False
    checks: dict = field(default_factory=dict)

    def apply(self, x: Sequence[GaussianRational]) -> list[GaussianRational]:
        return self.matrix.apply(x)

    def is_unital(self) -> bool:
        return self.apply(self.source.unit) == self.target.unit

    def is_multiplicative(self) -> bool:
        """phi(e_a e_b) = phi(e_a) phi(e_b) for every pair of basis elements."""
        fast = _multiplicative_fast(self)
        if fast is not None:
            return fast
        S, T = self.source, self.target
        images = [self.matrix.column(a) for a in range(S.dim)]
        for a in range(S.dim):
            for b in range(S.dim):
                lhs = self.apply(S.mul_basis(a, b))
                if lhs != T.multiply(images[a], images[b]):
                    return False
        return True

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim

    def verify(self, require_iso: bool = True) -> "AlgebraMorphism":
        self.checks = {
            "unital": self.is_unital(),
            "multiplicative": self.is_multiplicative(),
            "bijective": self.is_bijective(),
        }
        ok = self.checks["unital"] and self.checks["multiplicative"]
        self.is_isomorphism = ok and self.checks["bijective"]
        if require_iso and not self.is_isomorphism:
            raise AssertionError(f"map is not an algebra isomorphism: {self.checks}")
        return self

    def inverse(self) -> "AlgebraMorphism":
        inv = AlgebraMorphism(self.target, self.source, self.matrix.inverse())
        inv.is_isomorphism = self.is_isomorphism
        inv.checks = dict(self.checks)
        return inv


def _multiplicative_fast(phi: AlgebraMorphism) -> Optional[bool]:
    S, T = phi.source, phi.target
    cs, ct = S.int_tensor(), T.int_tensor()
    pm = gaussian_int_arrays([list(r) for r in phi.matrix.rows])
    if cs is None or ct is None or pm is None:
        return None
    sr, si, ds = cs
    tr_, ti, dt = ct
    pr, pi, dp = pm  # shape (T.dim, S.dim)
    bound = max(1, int(np.abs(pr).max(initial=0)), int(np.abs(pi).max(initial=0)))
    cbound = max(1, int(np.abs(tr_).max(initial=0)), int(np.abs(ti).max(initial=0)),
                 int(np.abs(sr).max(initial=0)), int(np.abs(si).max(initial=0)))
    est = 4 * bound * bound * cbound * T.dim * T.dim * max(ds, dt, dp) ** 2
    if est.bit_length() > 60:
        return None
    # lhs[a,b,s] = sum_t Csrc[a,b,t] P[s,t]
    lr, li = _ctensordot(sr, si, pr, pi, ([2], [1]))
    # x[a,d,s] = sum_c P[c,a] Ctgt[c,d,s]
    xr, xi = _ctensordot(pr, pi, tr_, ti, ([0], [0]))
    # rhs[a,s,b] = sum_d x[a,d,s] P[d,b]
    rr, ri = _ctensordot(xr, xi, pr, pi, ([1], [0]))
    rr = np.transpose(rr, (0, 2, 1))
    ri = np.transpose(ri, (0, 2, 1))
    # lhs carries 1/(ds*dp), rhs carries 1/(dp*dp*dt)
    return bool(np.array_equal(lr * (dp * dt), rr * ds) and np.array_equal(li * (dp * dt), ri * ds))


def clifford_tensor_isomorphism(q: QuadraticSpace, q2: QuadraticSpace) -> AlgebraMorphism:
    """Cl(q ⊥ q') -> Cl(q) ⊗̂ Cl(q'), e_S -> e_{S1} ⊗ e_{S2}; verified."""
    big = clifford(orthogonal_sum(q, q2))
    A, B = clifford(q), clifford(q2)
    target = graded_tensor(A, B)
    n = q.dim
    cols = []
    for S in big.masks:
        s1, s2 = S & ((1 << n) - 1), S >> n
        cols.append(unit_vector(target.dim, s1 * B.dim + s2))
    return AlgebraMorphism(big, target, ExactMatrix.from_columns(cols, target.dim)).verify()


# ---------------------------------------------------------------------------
# Morita reduction Cl_0(q ⊥ U) ≅ M_2(Cl_0(q))
# ---------------------------------------------------------------------------


def morita_isomorphism(q: QuadraticSpace) -> AlgebraMorphism:
    """Explicit verified isomorphism Cl_0(q ⊥ U) -> M_2(Cl_0(q)), U = <1,1>.

    p = (1 + i u1 u2)/2 is an idempotent; x -> x p identifies Cl_0(q) with pAp.
    Off-diagonal matrix units u in (1-p)Ap, v in pA(1-p) with uv = 1-p,
    vu = p are found by solving linear systems; a maps to the matrix with
    entries [f_1i a f_j1] pulled back along x -> x p.
    """
    if q.is_zero():
        raise ValueError("the Morita reduction needs q != 0")
    n = q.dim
    big_q = orthogonal_sum(q, hyperbolic_plane())
    A = even_part(big_q)
    small = even_part(q)
    target = matrix_algebra(small, 2)
    u1u2 = (1 << n) | (1 << (n + 1))
    half = gq(1, 0) / 2
    p = A.zero()
    p[0] = half
    p[A.mask_index[u1u2]] = I * half
    one = A.one()
    pc = vec_sub(one, p)
    if A.multiply(p, p) != p:
        raise AssertionError("p is not idempotent")

    def embed(k: int) -> list[GaussianRational]:
        # small basis element (mask inside the first n bits) as an element of A
        return A.basis_element(A.mask_index[small.masks[k]])

    iota_cols = [A.multiply(embed(k), p) for k in range(small.dim)]
    iota_inv = left_inverse(iota_cols, A.dim)
    pap_span = Subspace.span(iota_cols, A.dim)

    def pull(x):
        if not pap_span.contains(x):
            raise AssertionError("element is not in the corner pAp")
        return iota_inv.apply(x)

    # matrix units
    u = v = None
    for b in range(A.dim):
        cand = A.multiply(A.multiply(pc, A.basis_element(b)), p)
        if not any(cand):
            continue
        # v = p y (1-p) with y unknown: equations cand * v = 1 - p and v * cand = p
        basis_v = []
        for c in range(A.dim):
            y = A.multiply(A.multiply(p, A.basis_element(c)), pc)
            basis_v.append(y)
        cols = []
        for y in basis_v:
            cols.append(A.multiply(cand, y) + A.multiply(y, cand))
        mat = ExactMatrix.from_columns(cols, 2 * A.dim)
        sol = solve(mat, pc + p)
        if sol is None:
            continue
        u = cand
        v = lin_comb(sol, basis_v, A.dim)
        break
    if u is None:
        raise AssertionError("no matrix units found for the Morita reduction")
    if A.multiply(u, v) != pc or A.multiply(v, u) != p:
        raise AssertionError("matrix units do not satisfy uv = 1-p, vu = p")
    f = {(1, 1): p, (1, 2): v, (2, 1): u, (2, 2): pc}
    cols = []
    for a in range(A.dim):
        ea = A.basis_element(a)
        img = [ZERO] * target.dim
        for i in (1, 2):
            for j in (1, 2):
                entry = A.multiply(A.multiply(f[(1, i)], ea), f[(j, 1)])
                coords = pull(entry)
                base = ((i - 1) * 2 + (j - 1)) * small.dim
                for k, c in enumerate(coords):
                    img[base + k] = c
        cols.append(img)
    phi = AlgebraMorphism(A, target, ExactMatrix.from_columns(cols, target.dim))
    phi.idempotent = A.to_clifford(p)
    return phi.verify()


# ---------------------------------------------------------------------------
# odd nondegenerate factor: Cl_0(q ⊥ q') ≅ Cl_0(q) ⊗ Cl(-q')
# ---------------------------------------------------------------------------


def odd_factor_embedding(q: QuadraticSpace, q2: QuadraticSpace) -> AlgebraMorphism:
    """Verified isomorphism Cl_0(q ⊥ q') -> Cl_0(q) ⊗ Cl(-q') for odd nondegenerate q.

    The inverse map sends x ⊗ 1 to x and 1 ⊗ w to λ z w, where z = v_1...v_N
    is central in Cl(q) and λ in {1, i} makes (λ z w)^2 = -q'(w).
    """
    if q.dim % 2 == 0 or q.corank:
        raise ValueError("the first factor must be odd dimensional and nondegenerate")
    n = q.dim
    big = even_part(orthogonal_sum(q, q2))
    small = even_part(q)
    neg = clifford(q2.negated())
    target = tensor_product(small, neg)
    bq = big.q
    z = CliffordElement.monomial(bq, (1 << n) - 1)
    z2 = (z * z).terms.get(0, ZERO)
    lam = None
    for cand in (ONE, I):
        if cand * cand * z2 == ONE:
            lam = cand
            break
    if lam is None:
        raise AssertionError("no normalisation λ in {1, i} works")
    images_w = [z * CliffordElement.generator(bq, n + t) * lam for t in range(q2.dim)]
    for t, img in enumerate(images_w):
        sq = img * img
        if sq != CliffordElement.scalar(bq, -q2.diagonal[t]) and not (sq.is_zero() and q2.diagonal[t] == 0):
            raise AssertionError("λ z w does not square to -q'(w)")
    # map target basis (x_k ⊗ e_T) -> big
    cols = []
    for k in range(small.dim):
        x = CliffordElement.monomial(bq, small.masks[k])
        for T in neg.masks:
            y = x
            for t in range(q2.dim):
                if T >> t & 1:
                    y = y * images_w[t]
            cols.append(big.element(y))
    inv = AlgebraMorphism(target, big, ExactMatrix.from_columns(cols, big.dim)).verify()
    return inv.inverse()
