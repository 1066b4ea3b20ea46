"""Named verification suites and the report format shared by the CLI and the tests."""

from __future__ import annotations

import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Optional, Sequence

from . import __version__
from .clifford import clifford_tensor_isomorphism, even_part, left_ideal, morita_isomorphism, odd_factor_embedding
from .findim import fingerprint, structure
from .modext import (
    clifford_labels,
    clifford_simples,
    ext_algebra_profile,
    ext_dims,
    hom_space,
    ideal_half_module,
    is_isomorphic,
    periodic_model_check,
    projective_resolution,
    registry,
)
from .qspace import (
    IsotropicSubspace,
    QuadraticSpace,
    diagonal_form,
    random_isotropic,
    standard_family,
    standard_isotropic,
)
from .spinor import (
    classify,
    cohomology_table,
    extension_split,
    fiber_rank,
    matrix_factorization,
    quadric_points,
    regular_graded_module,
    sheafify,
    twisted_ses_check,
)

SCHEMA = 1
SUITES = ("ext", "morita", "simples", "mf", "classify", "cohomology", "all")


@dataclass
class CheckResult:
    name: str
    inputs: dict
    expected: Any
    computed: Any
    passed: bool
    millis: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
            "millis": self.millis,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        return cls(d["name"], d["inputs"], d["expected"], d["computed"], d["pass"], d["millis"])


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda c: c.name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.sorted_checks()],
            "pass": self.passed,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        rep = cls(d["suite"], [CheckResult.from_dict(c) for c in d["checks"]], d["version"])
        if rep.passed != d["pass"]:
            raise ValueError("overall pass flag disagrees with the checks")
        return rep

    def render(self) -> str:
        lines = []
        for c in self.sorted_checks():
            status = "PASS" if c.passed else "FAIL"
            line = f"{status}  {c.name}"
            if not c.passed:
                line += f"  (expected {c.expected!r}, computed {c.computed!r})"
            lines.append(line)
        total = len(self.checks)
        good = sum(c.passed for c in self.checks)
        lines.append(f"{self.suite}: {good}/{total} checks passed")
        return "\n".join(lines)


@dataclass
class SuiteParams:
    forms: Optional[list[QuadraticSpace]] = None  # None means the suite's default forms
    max_degree: int = 8
    max_dim: int = 7
    twists: tuple[int, int] = (-4, 4)
    seed: int = 0
    timings: bool = False
    progress: bool = False


class _Collector:
    def __init__(self, suite: str, params: SuiteParams):
        self.report = VerificationReport(suite)
        self.params = params

    def check(self, name: str, inputs: dict, expected, compute: Callable[[], Any], compare=None):
        start = time.perf_counter()
        computed = compute()
        ok = compare(expected, computed) if compare else expected == computed
        millis = round((time.perf_counter() - start) * 1000) if self.params.timings else None
        self.report.checks.append(CheckResult(name, {k: str(v) for k, v in inputs.items()}, expected, computed,
                                              bool(ok), millis))
        if self.params.progress:
            print(f"[{'PASS' if ok else 'FAIL'}] {name}", file=sys.stderr, flush=True)
        return computed


def _name(q: QuadraticSpace) -> str:
    return str(q)


def _ones(r: int, c: int) -> QuadraticSpace:
    return diagonal_form([1] * r + [0] * c)


# ---------------------------------------------------------------------------
# ext
# ---------------------------------------------------------------------------

EXT_FORMS_ODD = [(2, 1), (4, 1), (6, 1)]
EXT_FORMS_EVEN = [(1, 1), (3, 1), (5, 1)]


def _ext_form(col: _Collector, q: QuadraticSpace):
    n = col.params.max_degree
    tag = f"ext/{_name(q)}"
    inputs = {"form": q, "max_degree": n}
    if q.corank >= 2 or q.rank == 0:
        raise ValueError(f"the ext suite needs a nonzero form of corank at most one, got {q}")
    simples = clifford_simples(q, col.params.seed)
    if q.corank == 0:
        for a, Sa in simples.items():
            for b, Sb in simples.items():
                col.check(f"{tag}/dims Ext({a},{b})", inputs, [int(a == b)] + [0] * n,
                          lambda Sa=Sa, Sb=Sb: ext_dims(Sa, Sb, n).dims)
        return
    if "S" in simples:
        S = simples["S"]
        col.check(f"{tag}/dims Ext(S,S)", inputs, [1] * (n + 1), lambda: ext_dims(S, S, n).dims)
        prof = ext_algebra_profile(S, n)
        col.check(f"{tag}/powers of the degree-one generator nonzero", inputs, [True] * n,
                  lambda: prof["checks"].get("powers of theta' nonzero", {}).get("computed"))
        col.check(f"{tag}/resolution of S is 1-periodic", inputs, 1,
                  lambda: (projective_resolution(S, n).periodicity or (None, None))[1])
    else:
        S1, S2 = simples["S1"], simples["S2"]
        even = [1 - k % 2 for k in range(n + 1)]
        odd = [k % 2 for k in range(n + 1)]
        for a, b, exp in (("S1", "S1", even), ("S2", "S2", even), ("S1", "S2", odd), ("S2", "S1", odd)):
            col.check(f"{tag}/dims Ext({a},{b})", inputs, exp,
                      lambda a=a, b=b: ext_dims(simples[a], simples[b], n).dims)
        prof = ext_algebra_profile(S1, n, S2)
        col.check(f"{tag}/powers of the degree-two generator nonzero", inputs, [True] * (n // 2),
                  lambda: prof["checks"].get("powers of theta nonzero", {}).get("computed"))
        col.check(f"{tag}/degree-two generator times degree-one class nonzero", inputs, True,
                  lambda: prof["checks"].get("theta*kappa nonzero", {}).get("computed"))
        for lab in ("S1", "S2"):
            col.check(f"{tag}/resolution of {lab} is 2-periodic", inputs, 2,
                      lambda lab=lab: (projective_resolution(simples[lab], n).periodicity or (None, None))[1])
    for a, Sa in simples.items():
        for b, Sb in simples.items():
            col.check(f"{tag}/Ext^0({a},{b}) = Hom", inputs, True,
                      lambda Sa=Sa, Sb=Sb: ext_dims(Sa, Sb, 0).dims[0] == len(hom_space(Sa, Sb)))
    model = periodic_model_check(q, min(n, 4), col.params.seed)
    col.check(f"{tag}/resolutions match right multiplication by {model['t']}", inputs,
              {k: True for k in model["checks"]}, lambda: model["checks"])


def suite_ext(col: _Collector):
    forms = col.params.forms or [_ones(r, c) for r, c in EXT_FORMS_ODD + EXT_FORMS_EVEN if r + c <= col.params.max_dim]
    for q in forms:
        _ext_form(col, q)


# ---------------------------------------------------------------------------
# morita
# ---------------------------------------------------------------------------

MORITA_FORMS = [(1, 1), (2, 1), (3, 1), (4, 1)]


def suite_morita(col: _Collector):
    forms = col.params.forms or [_ones(r, c) for r, c in MORITA_FORMS if r + c + 2 <= col.params.max_dim + 2]
    for q in forms:
        inputs = {"form": q}
        col.check(f"morita/{_name(q)}/Cl0(q+U) = M2(Cl0(q))", inputs,
                  {"bijective": True, "multiplicative": True, "unital": True},
                  lambda q=q: dict(sorted(morita_isomorphism(q).checks.items())))
    if col.params.forms is None:
        for q2 in (_ones(1, 1), _ones(2, 1), _ones(3, 0)):
            q1 = _ones(1, 0)
            inputs = {"odd factor": q1, "other factor": q2}
            col.check(f"morita/odd factor {_name(q1)} + {_name(q2)}", inputs,
                      {"bijective": True, "multiplicative": True, "unital": True},
                      lambda q1=q1, q2=q2: dict(sorted(odd_factor_embedding(q1, q2).checks.items())))
        for q1, q2 in ((_ones(2, 0), _ones(1, 1)), (_ones(1, 0), _ones(1, 1))):
            inputs = {"first": q1, "second": q2}
            col.check(f"morita/graded tensor {_name(q1)} + {_name(q2)}", inputs,
                      {"bijective": True, "multiplicative": True, "unital": True},
                      lambda q1=q1, q2=q2: dict(sorted(clifford_tensor_isomorphism(q1, q2).checks.items())))


# ---------------------------------------------------------------------------
# simples
# ---------------------------------------------------------------------------


def _blocks_expected(N: int) -> list[int]:
    if N % 2 == 0:
        return [2 ** ((N - 2) // 2)] * 2
    return [2 ** ((N - 1) // 2)]


def suite_simples(col: _Collector):
    max_dim = col.params.max_dim
    seed = col.params.seed
    if col.params.forms is None:
        for N in range(2, max_dim + 1):
            q = _ones(N, 0)
            inputs = {"form": q}
            A = even_part(q)
            col.check(f"simples/{_name(q)}/block sizes", inputs, _blocks_expected(N),
                      lambda A=A: sorted(structure(A).block_sizes))
            col.check(f"simples/{_name(q)}/simple dimensions", inputs, _blocks_expected(N),
                      lambda A=A: sorted(S.dim for S in registry(A).simples))
        forms = [_ones(N - c, c) for N in range(1, max_dim + 1) for c in (0, 1) if N - c >= 1]
    else:
        forms = col.params.forms
    for q in forms:
        if q.corank > 1 or q.rank == 0:
            raise ValueError(f"the simples suite needs a nonzero form of corank at most one, got {q}")
        inputs = {"form": q}
        cl0 = even_part(q)
        reg = registry(cl0)
        ideal = left_ideal(q, standard_isotropic(q, "max"))
        i0 = ideal_half_module(ideal, 0, cl0)
        i1 = ideal_half_module(ideal, 1, cl0)

        def matches(i0=i0, i1=i1, reg=reg):
            found = sorted({reg.simple_index(i0, seed), reg.simple_index(i1, seed)} - {None})
            return found == list(range(reg.nblocks)) and None not in (reg.simple_index(i0, seed),
                                                                      reg.simple_index(i1, seed))

        col.check(f"simples/{_name(q)}/simples are the ideal halves of W_max", inputs, True, matches)
        odd = (q.rank % 2) == 1
        col.check(f"simples/{_name(q)}/I0 = I1 iff dim V/K odd", inputs, odd,
                  lambda i0=i0, i1=i1: is_isomorphic(i0, i1, seed))
        col.check(f"simples/{_name(q)}/radical nilpotent, quotient semisimple", inputs, True,
                  lambda cl0=cl0: structure(cl0).radical.series[-1] == 0)


# ---------------------------------------------------------------------------
# mf
# ---------------------------------------------------------------------------


def _same_pair(a, b) -> bool:
    return a.phi == b.phi and a.psi == b.psi


def suite_mf(col: _Collector):
    seed = col.params.seed
    if col.params.forms is None:
        forms = [_ones(N - c, c) for N in range(1, col.params.max_dim + 1) for c in range(N + 1)]
    else:
        forms = col.params.forms
    for q in forms:
        rng = random.Random(seed)
        family = [(lab, W) for lab, W in standard_family(q)]
        randoms = [random_isotropic(q, rng) for _ in range(20)]

        def all_standard(family=family, q=q):
            return [lab for lab, W in family if not matrix_factorization(q, W).is_valid()]

        def all_random(randoms=randoms, q=q):
            return sum(not matrix_factorization(q, W).is_valid() for W in randoms)

        inputs = {"form": q, "seed": seed}
        col.check(f"mf/{_name(q)}/factorization on standard subspaces", inputs, [], all_standard)
        col.check(f"mf/{_name(q)}/factorization on 20 random subspaces", inputs, 0, all_random)
        if q.dim <= 5:
            col.check(f"mf/{_name(q)}/regular module gives the W=0 factorization", inputs, True,
                      lambda q=q: _same_pair(sheafify(regular_graded_module(q)), matrix_factorization(q, "zero")))
    # fiber ranks on the nodal quadric of dimension five
    q = _ones(4, 1)
    node = [0, 0, 0, 0, 1]
    for lab, W in standard_family(q):
        mf = matrix_factorization(q, W)
        if W.codim <= 1:
            continue
        inputs = {"form": q, "isotropic": lab}
        generic = 2 ** (W.codim - 2)
        pts = quadric_points(q, 20, seed)
        col.check(f"mf/{_name(q)}/{lab}/fiber rank on 20 smooth points", inputs, [generic] * 20,
                  lambda mf=mf, pts=pts: [fiber_rank(mf, p) for p in pts])
        node_expected = 2 * generic if W.contains_kernel() else generic
        col.check(f"mf/{_name(q)}/{lab}/fiber rank at the node", inputs, node_expected,
                  lambda mf=mf: fiber_rank(mf, node))


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

# summands of S^W and T^W on the nodal quadric of dimension five
NODAL_TABLE = {
    "dim=3,kernel=yes": ({"S1": 1}, {"S2": 1}, 1),
    "dim=2,kernel=yes": ({"S1": 1, "S2": 1}, {"S1": 1, "S2": 1}, 2),
    "dim=2,kernel=no": ({"G1": 1}, {"G2": 1}, 2),
    "dim=1,kernel=yes": ({"S1": 2, "S2": 2}, {"S1": 2, "S2": 2}, 4),
    "dim=1,kernel=no": ({"G1": 1, "G2": 1}, {"G1": 1, "G2": 1}, 4),
    "dim=0,kernel=no": ({"G1": 2, "G2": 2}, {"G1": 2, "G2": 2}, 8),
}


def _split_pairs(count: int, seed: int, max_dim: int = 6):
    """Deterministic (q, W, W') with W' of codimension one in W."""
    from .core import gq

    forms = [_ones(N - c, c) for N in range(2, max_dim + 1) for c in (0, 1) if N - c >= 2]
    rng = random.Random(seed)
    pairs = []
    k = 0
    while len(pairs) < count:
        q = forms[k % len(forms)]
        k += 1
        W = random_isotropic(q, rng)
        if W.dim == 0:
            continue
        for _ in range(20):
            coeffs = [[gq(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(W.dim)] for _ in range(W.dim - 1)]
            vecs = tuple(tuple(sum((c * x for c, x in zip(row, col)), gq(0)) for col in zip(*W.basis))
                         for row in coeffs)
            try:
                Wp = IsotropicSubspace(q, vecs)
            except ValueError:
                continue
            break
        else:
            continue
        pairs.append((q, W, Wp))
    return pairs


def suite_classify(col: _Collector):
    seed = col.params.seed
    q = _ones(4, 1)
    for lab, W in standard_family(q):
        if lab not in NODAL_TABLE:
            continue
        sheaf, twin, generic = NODAL_TABLE[lab]
        inputs = {"form": q, "isotropic": lab}
        res = classify(q, W, seed)
        col.check(f"classify/{_name(q)}/{lab}/summands", inputs,
                  {"S^W": sheaf, "T^W": twin}, lambda res=res: {"S^W": res.sheaf, "T^W": res.twin})
        mf = matrix_factorization(q, W)
        pt = quadric_points(q, 1, seed)[0]
        col.check(f"classify/{_name(q)}/{lab}/generic rank", inputs, generic, lambda mf=mf, pt=pt: fiber_rank(mf, pt))
        node = 2 * generic if W.contains_kernel() else generic
        col.check(f"classify/{_name(q)}/{lab}/node rank", inputs, node,
                  lambda mf=mf: fiber_rank(mf, [0, 0, 0, 0, 1]))
    # the answer does not depend on the chosen basis of W
    rng = random.Random(seed)
    for lab, W in standard_family(q):
        from .qspace import random_invertible

        if W.dim == 0:
            continue
        W2 = W.change_basis(random_invertible(W.dim, rng))
        col.check(f"classify/{_name(q)}/{lab}/basis independence", {"form": q, "isotropic": lab}, True,
                  lambda W=W, W2=W2: classify(q, W, seed).to_dict() == classify(q, W2, seed).to_dict())
    for k, (q2, W, Wp) in enumerate(_split_pairs(30, seed)):
        rep = extension_split(q2, W, Wp, seed)
        inputs = {"form": q2, "dim W": W.dim, "dim W cap K": W.kernel_intersection_dim(),
                  "dim W' cap K": Wp.kernel_intersection_dim(), "seed": seed}
        col.check(f"classify/extension split pair {k:02d}", inputs,
                  {"cross_check": True, "split": W.kernel_intersection_dim() == Wp.kernel_intersection_dim()},
                  lambda rep=rep: {"cross_check": rep.cross_check, "split": rep.split})


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


def suite_cohomology(col: _Collector):
    lo, hi = col.params.twists
    twists = list(range(lo, hi + 1))
    if col.params.forms is None:
        forms = [_ones(N - c, c) for N in (4, 5, 6) if N <= col.params.max_dim for c in (0, 1)]
    else:
        forms = col.params.forms
    for q in forms:
        for lab, W in standard_family(q):
            if W.codim == 0:
                continue
            inputs = {"form": q, "isotropic": lab, "twists": f"{lo}:{hi}"}
            table = cohomology_table(q, W, twists)
            tag = f"cohomology/{_name(q)}/{lab}"
            col.check(f"{tag}/intermediate cohomology vanishes", inputs, True, table.intermediate_vanishing)
            if 0 in twists:
                col.check(f"{tag}/untwisted cohomology vanishes", inputs, [0] * (table.top_degree + 1),
                          lambda table=table: table.column(0))
            col.check(f"{tag}/Euler characteristic at every twist", inputs, [True] * len(twists),
                      lambda table=table: table.euler_ok)
            if 1 in twists:
                M = matrix_factorization(q, W).size
                col.check(f"{tag}/H^0 of the first twist", inputs, M, lambda table=table: table.column(1)[0])
    if col.params.forms is None:
        for q, D in ((_ones(2, 1), 6), (_ones(4, 1), 5)):
            inputs = {"form": q, "isotropic": "max", "degree_bound": D}
            col.check(f"cohomology/{_name(q)}/twisted sequences exact up to degree {D}", inputs, True,
                      lambda q=q, D=D: twisted_ses_check(q, "max", D)["pass"])


SUITE_FUNCTIONS = {
    "ext": suite_ext,
    "morita": suite_morita,
    "simples": suite_simples,
    "mf": suite_mf,
    "classify": suite_classify,
    "cohomology": suite_cohomology,
}


def run_suite(name: str, params: Optional[SuiteParams] = None) -> VerificationReport:
    params = params or SuiteParams()
    if name not in SUITES:
        raise KeyError(name)
    col = _Collector(name, params)
    names = list(SUITE_FUNCTIONS) if name == "all" else [name]
    for n in names:
        SUITE_FUNCTIONS[n](col)
    return col.report
