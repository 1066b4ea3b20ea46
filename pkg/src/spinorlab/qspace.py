"""Diagonal quadratic spaces and their isotropic subspaces."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence, Union

from .core import ONE, ZERO, I, GaussianRational, Subspace, gq, parse_scalar, rank

__all__ = [
    "QuadraticSpace",
    "IsotropicSubspace",
    "diagonal_form",
    "orthogonal_sum",
    "hyperbolic_plane",
    "max_isotropic_dim",
    "standard_isotropic",
    "standard_family",
    "random_invertible",
    "is_isotropic",
    "random_isotropic",
    "random_isometry",
    "parse_form",
    "parse_isotropic",
]


@dataclass(frozen=True)
class QuadraticSpace:
    diagonal: tuple[int, ...]

    def __post_init__(self):
        bad = [x for x in self.diagonal if x not in (1, 0, -1)]
        if bad:
            raise ValueError(f"diagonal entries must lie in {{1, 0, -1}}, got {bad[0]!r}")

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)

    @property
    def corank(self) -> int:
        return self.dim - self.rank

    @property
    def kernel_indices(self) -> list[int]:
        return [i for i, x in enumerate(self.diagonal) if x == 0]

    @property
    def nondegenerate_indices(self) -> list[int]:
        return [i for i, x in enumerate(self.diagonal) if x != 0]

    def kernel_basis(self) -> list[list[GaussianRational]]:
        return [_unit(self.dim, i) for i in self.kernel_indices]

    def is_zero(self) -> bool:
        return self.rank == 0

    def normalized(self) -> "QuadraticSpace":
        """Rescale v -> i*v on -1 entries; over Q(i) the result is isometric."""
        return QuadraticSpace(tuple(abs(x) for x in self.diagonal))

    def negated(self) -> "QuadraticSpace":
        return QuadraticSpace(tuple(-x for x in self.diagonal))

    def polar(self, x: Sequence[GaussianRational], y: Sequence[GaussianRational]) -> GaussianRational:
        """Symmetric bilinear form with B(v, v) = q(v)."""
        acc = ZERO
        for qi, a, b in zip(self.diagonal, x, y):
            if qi and a and b:
                acc = acc + (a * b if qi == 1 else -(a * b))
        return acc

    def value(self, x: Sequence[GaussianRational]) -> GaussianRational:
        return self.polar(x, x)

    def __str__(self):
        return "<" + ",".join(str(x) for x in self.diagonal) + ">"


def _unit(n: int, i: int) -> list[GaussianRational]:
    v = [ZERO] * n
    v[i] = ONE
    return v


def diagonal_form(entries: Sequence[int]) -> QuadraticSpace:
    entries = tuple(int(x) if not isinstance(x, int) else x for x in entries)
    if not entries:
        raise ValueError("a quadratic space must be nontrivial (V != 0)")
    return QuadraticSpace(entries)


def orthogonal_sum(q: QuadraticSpace, q2: QuadraticSpace) -> QuadraticSpace:
    return QuadraticSpace(q.diagonal + q2.diagonal)


def hyperbolic_plane() -> QuadraticSpace:
    # <1,-1> and <1,1> are isometric over Q(i); the latter keeps diagonals in {1,0}
    return QuadraticSpace((1, 1))


def max_isotropic_dim(q: QuadraticSpace) -> int:
    return (q.dim + q.corank) // 2


@dataclass(frozen=True)
class IsotropicSubspace:
    ambient: QuadraticSpace
    basis: tuple[tuple[GaussianRational, ...], ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient.dim:
                raise ValueError("basis vector has wrong length")
        if self.basis and rank([list(v) for v in self.basis]) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")
        if not is_isotropic(self.ambient, self.basis):
            raise ValueError("subspace is not isotropic")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient.dim - self.dim

    def span(self) -> Subspace:
        return Subspace.span([list(v) for v in self.basis], self.ambient.dim)

    def kernel_intersection_dim(self) -> int:
        """dim(W ∩ K); K is spanned by standard vectors, so this is linear algebra."""
        q = self.ambient
        if not self.basis:
            return 0
        # dim(W ∩ K) = dim W - rank of W projected onto the nondegenerate coordinates
        nd = q.nondegenerate_indices
        proj = [[v[i] for i in nd] for v in self.basis]
        r = rank(proj) if nd else 0
        return self.dim - r

    def contains_kernel(self) -> bool:
        return self.kernel_intersection_dim() == self.ambient.corank

    def change_basis(self, matrix: Sequence[Sequence[GaussianRational]]) -> "IsotropicSubspace":
        """New basis w'_a = sum_b matrix[a][b] w_b (matrix must be invertible)."""
        n = self.ambient.dim
        new = []
        for row in matrix:
            v = [ZERO] * n
            for c, w in zip(row, self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, w)]
            new.append(tuple(v))
        return IsotropicSubspace(self.ambient, tuple(new))

    def __str__(self):
        from .core import format_scalar

        vecs = ";".join(",".join(format_scalar(x) for x in v) for v in self.basis)
        return f"span{{{vecs}}}" if vecs else "{0}"


def is_isotropic(q: QuadraticSpace, W) -> bool:
    basis = W.basis if isinstance(W, IsotropicSubspace) else W
    basis = [list(v) for v in basis]
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            if q.polar(basis[a], basis[b]):
                return False
    return True


def _hyperbolic_vectors(q: QuadraticSpace) -> list[tuple[GaussianRational, ...]]:
    """v_a + lambda v_b for consecutive nondegenerate pairs (a, b)."""
    nd = q.nondegenerate_indices
    out = []
    for k in range(0, len(nd) - 1, 2):
        a, b = nd[k], nd[k + 1]
        v = [ZERO] * q.dim
        v[a] = ONE
        # q_a + lambda^2 q_b = 0
        v[b] = I if q.diagonal[a] == q.diagonal[b] else ONE
        out.append(tuple(v))
    return out


IsoSpec = Union[str, dict, Sequence[Sequence]]


def standard_isotropic(q: QuadraticSpace, spec: IsoSpec = "max") -> IsotropicSubspace:
    """Standard isotropic subspaces: hyperbolic pairs first, then kernel vectors.

    spec is ``"max"``, ``"zero"``, ``{"dim": d, "kernel": bool}`` or an explicit
    list of vectors.
    """
    hyp = _hyperbolic_vectors(q)
    ker = [tuple(v) for v in q.kernel_basis()]
    if isinstance(spec, str):
        if spec == "max":
            return IsotropicSubspace(q, tuple(hyp + ker))
        if spec == "zero":
            return IsotropicSubspace(q, ())
        raise ValueError(f"unknown isotropic spec {spec!r}")
    if isinstance(spec, dict):
        d = int(spec["dim"])
        with_kernel = bool(spec.get("kernel", False))
        if d < 0 or d > max_isotropic_dim(q):
            raise ValueError(f"requested dimension {d} exceeds the maximal isotropic dimension {max_isotropic_dim(q)}")
        nker = min(d, len(ker)) if with_kernel else 0
        nhyp = d - nker
        if nhyp > len(hyp):
            raise ValueError(f"dimension {d} needs {nhyp} hyperbolic vectors, only {len(hyp)} available")
        return IsotropicSubspace(q, tuple(hyp[:nhyp] + ker[:nker]))
    vecs = tuple(tuple(gq(x) for x in v) for v in spec)
    return IsotropicSubspace(q, vecs)


def standard_family(q: QuadraticSpace) -> list[tuple[str, IsotropicSubspace]]:
    """Every standard isotropic subspace of q, labelled by its spec string."""
    out = []
    seen = set()
    for d in range(max_isotropic_dim(q) + 1):
        for kernel in (False, True):
            try:
                W = standard_isotropic(q, {"dim": d, "kernel": kernel})
            except ValueError:
                continue
            if W.basis in seen:
                continue
            seen.add(W.basis)
            out.append((f"dim={d},kernel={'yes' if kernel else 'no'}", W))
    return out


# ---------------------------------------------------------------------------
# random isometries (deterministic given an RNG)
# ---------------------------------------------------------------------------


def _small_scalar(rng: random.Random, lo: int = -2, hi: int = 2) -> GaussianRational:
    return gq(rng.randint(lo, hi), rng.randint(lo, hi))


def random_isometry(q: QuadraticSpace, rng: random.Random, steps: int = 3):
    """Random isometry of (V, q) as a function on coordinate vectors.

    Composes reflections in anisotropic vectors and shears x -> x + B(x, u) k
    with k in the kernel, which preserve q since B(k, -) = 0.
    """
    n = q.dim
    ops = []
    nd = q.nondegenerate_indices
    ker = q.kernel_indices
    for _ in range(steps):
        if nd:
            for _attempt in range(20):
                u = [ZERO] * n
                for i in nd:
                    u[i] = _small_scalar(rng)
                qu = q.value(u)
                if qu:
                    ops.append(("reflect", u, qu))
                    break
        if nd and ker:
            u = [ZERO] * n
            for i in nd:
                u[i] = _small_scalar(rng)
            k = [ZERO] * n
            for i in ker:
                k[i] = _small_scalar(rng)
            ops.append(("shear", u, k))

    def apply(x):
        x = list(x)
        for kind, u, extra in ops:
            if kind == "reflect":
                c = (q.polar(x, u) * 2) / extra
                x = [a - c * b for a, b in zip(x, u)]
            else:
                c = q.polar(x, u)
                x = [a + c * b for a, b in zip(x, extra)]
        return x

    return apply


def random_isotropic(q: QuadraticSpace, rng: random.Random, dim: int = None, kernel_dim: int = None) -> IsotropicSubspace:
    """Random isotropic subspace: a standard one moved by a random isometry,
    then re-based by a random invertible matrix."""
    dmax = max_isotropic_dim(q)
    nhyp_max = q.rank // 2
    if dim is None:
        dim = rng.randint(0, dmax)
    if kernel_dim is None:
        lo = max(0, dim - nhyp_max)
        hi = min(dim, q.corank)
        kernel_dim = rng.randint(lo, hi)
    hyp = _hyperbolic_vectors(q)[: dim - kernel_dim]
    ker = [tuple(v) for v in q.kernel_basis()][:kernel_dim]
    base = hyp + ker
    g = random_isometry(q, rng)
    moved = [tuple(g(v)) for v in base]
    W = IsotropicSubspace(q, tuple(moved))
    if W.dim:
        W = W.change_basis(random_invertible(W.dim, rng))
    return W


def random_invertible(n: int, rng: random.Random) -> list[list[GaussianRational]]:
    while True:
        m = [[_small_scalar(rng) for _ in range(n)] for _ in range(n)]
        if rank(m) == n:
            return m


# ---------------------------------------------------------------------------
# text syntax shared with the CLI
# ---------------------------------------------------------------------------


def parse_form(text: str) -> QuadraticSpace:
    tokens = [t.strip() for t in text.split(",")]
    entries = []
    for t in tokens:
        try:
            v = int(t)
        except ValueError:
            raise ValueError(f"malformed form entry {t!r}") from None
        if v not in (1, 0, -1):
            raise ValueError(f"form entry {t!r} is not in {{1, 0, -1}}")
        entries.append(v)
    return diagonal_form(entries)


def parse_isotropic(q: QuadraticSpace, text: str) -> IsotropicSubspace:
    """``max``, ``zero``, ``dim=2,kernel=yes`` or ``vecs=1,i,0;0,0,1``."""
    text = text.strip()
    if text in ("max", "zero"):
        return standard_isotropic(q, text)
    if text.startswith("vecs="):
        vecs = []
        for chunk in text[5:].split(";"):
            try:
                vec = [parse_scalar(t) for t in chunk.split(",")]
            except ValueError as exc:
                raise ValueError(f"malformed isotropic vector {chunk!r}") from exc
            if len(vec) != q.dim:
                raise ValueError(f"isotropic vector {chunk!r} has length {len(vec)}, expected {q.dim}")
            vecs.append(vec)
        return standard_isotropic(q, vecs)
    fields = {}
    for part in text.split(","):
        if "=" not in part:
            raise ValueError(f"malformed isotropic spec token {part!r}")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    if "dim" not in fields or set(fields) - {"dim", "kernel"}:
        raise ValueError(f"malformed isotropic spec {text!r}")
    try:
        d = int(fields["dim"])
    except ValueError:
        raise ValueError(f"malformed isotropic spec token {fields['dim']!r}") from None
    kernel = fields.get("kernel", "no")
    if kernel not in ("yes", "no"):
        raise ValueError(f"malformed isotropic spec token {kernel!r}")
    return standard_isotropic(q, {"dim": d, "kernel": kernel == "yes"})
