"""Structure theory of finite-dimensional algebras over Q(i).

Radical by the trace-form criterion, the semisimple quotient, its Wedderburn
blocks (verified by explicit matrix units), and primitive idempotents lifted
back through the radical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .clifford import FinDimAlgebra
from .core import (
    ONE,
    ZERO,
    ExactMatrix,
    GaussianRational,
    Subspace,
    gq,
    kernel_basis,
    lin_comb,
    solve,
    vec_add,
    vec_sub,
)

__all__ = [
    "RadicalIdeal",
    "QuotientAlgebra",
    "AlgebraStructure",
    "AlgebraFingerprint",
    "radical",
    "semisimple_quotient",
    "center",
    "semisimple_blocks",
    "primitive_idempotents",
    "structure",
    "projectives_and_simples",
    "fingerprint",
    "minimal_polynomial",
    "gaussian_roots",
]


class StructureError(RuntimeError):
    """A postcondition of the structure computation failed."""


# ---------------------------------------------------------------------------
# polynomials over Q(i); coefficient lists, lowest degree first
# ---------------------------------------------------------------------------


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_eval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(p, r):
    if not p or not r:
        return []
    out = [ZERO] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                if b:
                    out[i + j] = out[i + j] + a * b
    return _trim(out)


def poly_sub(p, r):
    n = max(len(p), len(r))
    p = list(p) + [ZERO] * (n - len(p))
    r = list(r) + [ZERO] * (n - len(r))
    return _trim([a - b for a, b in zip(p, r)])


def poly_divmod(p, d):
    p = _trim(p)
    d = _trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(0, len(p) - len(d) + 1)
    r = list(p)
    lead = d[-1]
    while len(r) >= len(d) and r:
        k = len(r) - len(d)
        c = r[-1] / lead
        q[k] = c
        for i, b in enumerate(d):
            r[i + k] = r[i + k] - c * b
        r = _trim(r)
    return _trim(q), r


def poly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        qq, rr = poly_divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, poly_sub(s0, poly_mul(qq, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(qq, t1))
    lead = r0[-1]
    inv = ONE / lead
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


def _guess_gaussian(z: complex, max_den: int = 256) -> GaussianRational:
    return gq(Fraction(z.real).limit_denominator(max_den), Fraction(z.imag).limit_denominator(max_den))


def _poly_derivative(p):
    return [c * gq(k) for k, c in enumerate(p)][1:]


def _round_gaussian(z: GaussianRational, bits: int) -> GaussianRational:
    scale = 1 << bits
    return gq(Fraction(round(z.re * scale), scale), Fraction(round(z.im * scale), scale))


def _exact_root_near(p, dp, z: complex) -> Optional[GaussianRational]:
    """Polish a floating root by Newton steps, then look for a nearby exact root."""
    for den in (1, 2, 4, 8, 16, 64, 256, 4096):
        cand = _guess_gaussian(z, den)
        if not poly_eval(p, cand):
            return cand
    x = _round_gaussian(gq(Fraction(z.real), Fraction(z.imag)), 40)
    for bits in (80, 160, 320, 640):
        d = poly_eval(dp, x)
        if not d:
            return None
        x = _round_gaussian(x - poly_eval(p, x) / d, bits)
        bound = 1 << (bits // 2 - 8)
        cand = gq(x.re.limit_denominator(bound), x.im.limit_denominator(bound))
        if not poly_eval(p, cand):
            return cand
    return None


def gaussian_roots(p) -> list[tuple[GaussianRational, int]]:
    """Roots of p lying in Q(i), with multiplicities.

    Candidates come from floating-point root finding refined by exact Newton
    steps; each one is confirmed by exact evaluation and divided out, so every
    reported root is exact.
    """
    p = _trim(p)
    out = []
    while len(p) > 1:
        coeffs = [complex(float(c.re), float(c.im)) for c in reversed(p)]
        dp = _poly_derivative(p)
        found = None
        for z in np.roots(coeffs):
            found = _exact_root_near(p, dp, complex(z))
            if found is not None:
                break
        if found is None:
            break
        mult = 0
        while len(p) > 1 and not poly_eval(p, found):
            p, _ = poly_divmod(p, [-found, ONE])
            mult += 1
        out.append((found, mult))
    return out


# ---------------------------------------------------------------------------
# radical
# ---------------------------------------------------------------------------


@dataclass
class RadicalIdeal:
    ambient: FinDimAlgebra
    basis: Subspace
    series: tuple[int, ...]  # dim r, dim r^2, ..., ending with 0

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def nilpotency_index(self) -> int:
        """Least k with r^k = 0."""
        return len(self.series) if self.series[-1] == 0 else -1

    def contains(self, x) -> bool:
        return self.basis.contains(x)


def _trace_form(A: FinDimAlgebra) -> list[list[GaussianRational]]:
    tr = A.left_traces()
    T = [[ZERO] * A.dim for _ in range(A.dim)]
    for a in range(A.dim):
        for b in range(A.dim):
            acc = ZERO
            for s, c in A.table[a][b]:
                if tr[s]:
                    acc = acc + c * tr[s]
            T[a][b] = acc
    return T


def _product_span(A: FinDimAlgebra, left: Subspace, right: Subspace) -> Subspace:
    vecs = [A.multiply(x, y) for x in left.rows for y in right.rows]
    return Subspace.span(vecs, A.dim)


def radical(A: FinDimAlgebra) -> RadicalIdeal:
    """{x : tr(L_{xy}) = 0 for all y}; nilpotency and semisimplicity are checked."""
    basis = Subspace.span(kernel_basis(_trace_form(A)), A.dim)
    for g in A.generators:
        for r in basis.rows:
            if not basis.contains(A.multiply(g, r)) or not basis.contains(A.multiply(r, g)):
                raise StructureError("trace radical is not a two-sided ideal")
    series = []
    power = basis
    for _ in range(A.dim + 1):
        series.append(power.dim)
        if power.dim == 0:
            break
        nxt = _product_span(A, basis, power)
        if nxt.dim >= power.dim:
            raise StructureError("radical is not nilpotent")
        power = nxt
    rad = RadicalIdeal(A, basis, tuple(series))
    Q = _quotient_from(A, basis)
    if Q.algebra.dim and kernel_basis(_trace_form(Q.algebra)):
        raise StructureError("quotient by the radical is not semisimple")
    return rad


# ---------------------------------------------------------------------------
# quotient A / r
# ---------------------------------------------------------------------------


@dataclass
class QuotientAlgebra:
    parent: FinDimAlgebra
    ideal: Subspace
    algebra: FinDimAlgebra
    indices: list[int]  # parent basis indices whose images form the quotient basis

    def project(self, x) -> list[GaussianRational]:
        red = self.ideal.reduce(x)
        return [red[j] for j in self.indices]

    def lift(self, y) -> list[GaussianRational]:
        out = [ZERO] * self.parent.dim
        for j, c in zip(self.indices, y):
            out[j] = c
        return out


def _quotient_from(A: FinDimAlgebra, ideal: Subspace) -> QuotientAlgebra:
    comp = ideal.complement_indices()
    pos = {j: k for k, j in enumerate(comp)}
    table = []
    for a in comp:
        row = []
        for b in comp:
            red = ideal.reduce(A.mul_basis(a, b))
            row.append(tuple((pos[j], red[j]) for j in comp if red[j]))
        table.append(row)
    red_unit = ideal.reduce(A.unit)
    unit = [red_unit[j] for j in comp]
    gens = []
    for g in A.generators:
        red = ideal.reduce(g)
        gens.append([red[j] for j in comp])
    quot = FinDimAlgebra(
        len(comp), table, unit, generators=gens, names=[A.names[j] for j in comp], label=f"{A.label}/rad"
    )
    return QuotientAlgebra(A, ideal, quot, comp)


def semisimple_quotient(A: FinDimAlgebra) -> QuotientAlgebra:
    return _quotient_from(A, radical(A).basis)


# ---------------------------------------------------------------------------
# center, minimal polynomials, idempotents in semisimple algebras
# ---------------------------------------------------------------------------


def center(A: FinDimAlgebra) -> list[list[GaussianRational]]:
    gens = A.generators
    cols = []
    for a in range(A.dim):
        e = A.basis_element(a)
        col = []
        for g in gens:
            col.extend(vec_sub(A.multiply(e, g), A.multiply(g, e)))
        cols.append(col)
    M = ExactMatrix.from_columns(cols, len(gens) * A.dim)
    return kernel_basis(M)


def minimal_polynomial(A: FinDimAlgebra, y, unit=None) -> list[GaussianRational]:
    """Monic minimal polynomial of y in the unital algebra (or corner with unit ``unit``)."""
    unit = A.one() if unit is None else unit
    powers = [list(unit)]
    while True:
        nxt = A.multiply(powers[-1], y)
        M = ExactMatrix.from_columns(powers, A.dim)
        sol = solve(M, nxt)
        if sol is not None:
            return [-c for c in sol] + [ONE]
        powers.append(nxt)
        if len(powers) > A.dim + 1:
            raise StructureError("minimal polynomial degree exceeds the dimension")


def _poly_at(A: FinDimAlgebra, p, y, unit):
    acc = [ZERO] * A.dim
    for c in reversed(p):
        acc = vec_add(A.multiply(acc, y), [c * u for u in unit])
    return acc


def _eigen_idempotents(A: FinDimAlgebra, y, unit) -> Optional[list[list[GaussianRational]]]:
    """Split ``unit`` along a Q(i)-root of the minimal polynomial of y, if possible.

    Returns [e, unit - e] for the generalized eigenspace idempotent e of one
    root, or None when the minimal polynomial has a single root or none in Q(i).
    """
    mp = minimal_polynomial(A, y, unit)
    roots = gaussian_roots(mp)
    if not roots:
        return None
    lam, mult = roots[0]
    power = [ONE]
    for _ in range(mult):
        power = poly_mul(power, [-lam, ONE])
    rest, rem = poly_divmod(mp, power)
    if rem:
        raise StructureError("root multiplicity bookkeeping failed")
    if len(rest) <= 1:
        return None
    g, s, t = poly_xgcd(power, rest)
    if len(g) != 1:
        raise StructureError("factors of the minimal polynomial are not coprime")
    # t*rest = 1 on the lam-generalized eigenspace and 0 on the others
    e = _poly_at(A, poly_mul(t, rest), y, unit)
    e = A.multiply(A.multiply(unit, e), unit)
    return [e, vec_sub(unit, e)]


def _is_idempotent(A, e) -> bool:
    return A.multiply(e, e) == list(e)


def _corner_dim(A: FinDimAlgebra, e) -> int:
    vecs = [A.multiply(A.multiply(e, A.basis_element(b)), e) for b in range(A.dim)]
    return Subspace.span(vecs, A.dim).dim


def _candidates(A: FinDimAlgebra, e):
    n = A.dim
    basis = [A.basis_element(b) for b in range(n)]
    for b in range(n):
        yield A.multiply(A.multiply(e, basis[b]), e)
    for b in range(n):
        for c in range(b + 1, n):
            yield A.multiply(A.multiply(e, vec_add(basis[b], basis[c])), e)


def _split_to_primitive(A: FinDimAlgebra, e, target_dim: int = 1) -> list[list[GaussianRational]]:
    """Orthogonal idempotents summing to e whose corners have dimension ``target_dim``."""
    stack = [list(e)]
    out = []
    while stack:
        f = stack.pop()
        if _corner_dim(A, f) <= target_dim:
            out.append(f)
            continue
        split = None
        for y in _candidates(A, f):
            if not any(y):
                continue
            split = _eigen_idempotents(A, y, f)
            if split is not None:
                break
        if split is None:
            raise StructureError("could not split an idempotent over Q(i)")
        stack.extend(reversed(split))
    return out


@dataclass
class Block:
    central: list[GaussianRational]
    size: int
    idempotents: list[list[GaussianRational]]
    matrix_units: dict = field(default_factory=dict)


def _central_idempotents(A: FinDimAlgebra) -> list[list[GaussianRational]]:
    Z = center(A)
    idems = [A.one()]
    for z in Z:
        nxt = []
        for f in idems:
            parts = [f]
            while True:
                progress = False
                new_parts = []
                for g in parts:
                    sp = _eigen_idempotents(A, A.multiply(g, z), g)
                    if sp is None:
                        new_parts.append(g)
                    else:
                        new_parts.extend(sp)
                        progress = True
                parts = new_parts
                if not progress:
                    break
            nxt.extend(parts)
        idems = nxt
    for f in idems:
        if not _is_idempotent(A, f):
            raise StructureError("central idempotent is not idempotent")
        for z in Z:
            if Subspace.span([A.multiply(f, z), f], A.dim).dim != 1:
                raise StructureError("center does not split over Q(i)")
    return idems


def _matrix_units(A: FinDimAlgebra, idems: list) -> dict:
    """E_ij with E_ij E_kl = δ_jk E_il, E_ii = e_i; raises if they cannot be built."""
    m = len(idems)
    E = {(i, i): idems[i] for i in range(m)}
    for j in range(1, m):
        fwd = None
        for b in range(A.dim):
            x = A.multiply(A.multiply(idems[0], A.basis_element(b)), idems[j])
            if any(x):
                fwd = x
                break
        if fwd is None:
            raise StructureError("block idempotents are not linked")
        # back in e_j A e_0 with fwd*back = e_0
        basis_back = [A.multiply(A.multiply(idems[j], A.basis_element(b)), idems[0]) for b in range(A.dim)]
        cols = [A.multiply(fwd, y) for y in basis_back]
        sol = solve(ExactMatrix.from_columns(cols, A.dim), idems[0])
        if sol is None:
            raise StructureError("no inverse matrix unit")
        back = lin_comb(sol, basis_back, A.dim)
        E[(0, j)] = fwd
        E[(j, 0)] = back
    for i in range(m):
        for j in range(m):
            if (i, j) not in E:
                E[(i, j)] = A.multiply(E[(i, 0)], E[(0, j)])
    for (i, j), x in E.items():
        for (k, l), y in E.items():
            expect = E[(i, l)] if j == k else [ZERO] * A.dim
            if A.multiply(x, y) != expect:
                raise StructureError("matrix units fail the multiplication rule")
    return E


def semisimple_blocks(A: FinDimAlgebra) -> list[int]:
    """Matrix sizes of the Wedderburn blocks of A / rad(A), sorted."""
    return sorted(b.size for b in structure(A).blocks)


# ---------------------------------------------------------------------------
# full structure record
# ---------------------------------------------------------------------------


@dataclass
class AlgebraStructure:
    algebra: FinDimAlgebra
    radical: RadicalIdeal
    quotient: QuotientAlgebra
    blocks: list[Block]
    idempotents: list[list[GaussianRational]]  # in A, primitive, orthogonal, sum 1
    block_of: list[int]

    @property
    def representatives(self) -> list[list[GaussianRational]]:
        """One primitive idempotent per block (the first in each)."""
        out = []
        for b in range(len(self.blocks)):
            out.append(self.idempotents[self.block_of.index(b)])
        return out

    @property
    def block_sizes(self) -> list[int]:
        return [b.size for b in self.blocks]


def _lift_idempotents(A: FinDimAlgebra, Q: QuotientAlgebra, bars: list) -> list:
    lifted = []
    f = A.one()
    for k, ebar in enumerate(bars):
        if k == len(bars) - 1:
            x = f
        else:
            x = A.multiply(A.multiply(f, Q.lift(ebar)), f)
            for _ in range(A.dim + 1):
                x2 = A.multiply(x, x)
                if x2 == x:
                    break
                x3 = A.multiply(x2, x)
                x = vec_sub([c * 3 for c in x2], [c * 2 for c in x3])
            else:
                raise StructureError("idempotent lifting did not stabilise")
        if Q.project(x) != list(ebar):
            raise StructureError("lifted idempotent does not reduce to its image")
        lifted.append(x)
        f = vec_sub(f, x)
    return lifted


def structure(A: FinDimAlgebra) -> AlgebraStructure:
    cached = getattr(A, "_structure", None)
    if cached is not None:
        return cached
    rad = radical(A)
    Q = _quotient_from(A, rad.basis)
    B = Q.algebra
    blocks = []
    bars = []
    block_of = []
    if B.dim:
        for f in _central_idempotents(B):
            size2 = _corner_dim(B, f)
            size = math.isqrt(size2)
            if size * size != size2:
                raise StructureError("block dimension is not a square")
            prims = _split_to_primitive(B, f)
            if len(prims) != size:
                raise StructureError("block does not split into the expected number of idempotents")
            units = _matrix_units(B, prims)
            blocks.append(Block(f, size, prims, units))
            for e in prims:
                bars.append(e)
                block_of.append(len(blocks) - 1)
    idems = _lift_idempotents(A, Q, bars) if bars else []
    st = AlgebraStructure(A, rad, Q, blocks, idems, block_of)
    _check_idempotents(A, idems)
    A._structure = st
    return st


def _check_idempotents(A: FinDimAlgebra, idems: list):
    total = [ZERO] * A.dim
    for i, e in enumerate(idems):
        if not _is_idempotent(A, e):
            raise StructureError("lifted element is not idempotent")
        for j, f in enumerate(idems):
            if i != j and any(A.multiply(e, f)):
                raise StructureError("idempotents are not orthogonal")
        total = vec_add(total, e)
    if total != A.unit:
        raise StructureError("idempotents do not sum to 1")


def primitive_idempotents(A: FinDimAlgebra) -> list[list[GaussianRational]]:
    return structure(A).idempotents


def projectives_and_simples(A: FinDimAlgebra):
    """[(P_b, S_b)] for every block b: P_b = A e_b and S_b = P_b / rad P_b."""
    from .modext import registry

    reg = registry(A)
    return [(reg.projectives[b], reg.simples[b]) for b in range(len(reg.simples))]


# ---------------------------------------------------------------------------
# fingerprint
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraFingerprint:
    dim: int
    radical_series: tuple[int, ...]
    blocks: tuple[int, ...]
    cartan: tuple[tuple[int, ...], ...]

    def canonical(self) -> tuple:
        """Invariant under reordering the blocks."""
        order = sorted(range(len(self.blocks)), key=lambda i: (self.blocks[i], self.cartan[i]))
        cart = tuple(tuple(self.cartan[i][j] for j in order) for i in order)
        return (self.dim, self.radical_series, tuple(sorted(self.blocks)), cart)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "radical_series": list(self.radical_series),
            "blocks": list(self.blocks),
            "cartan": [list(r) for r in self.cartan],
        }


def fingerprint(A: FinDimAlgebra) -> AlgebraFingerprint:
    st = structure(A)
    reps = st.representatives
    cartan = []
    for ei in reps:
        row = []
        for ej in reps:
            vecs = [A.multiply(A.multiply(ei, A.basis_element(b)), ej) for b in range(A.dim)]
            row.append(Subspace.span(vecs, A.dim).dim)
        cartan.append(tuple(row))
    return AlgebraFingerprint(A.dim, st.radical.series, tuple(st.block_sizes), tuple(cartan))
