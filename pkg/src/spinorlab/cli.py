"""Command-line front end: ``spinorlab <command> [options]``.

Exit status is 0 when every check passes, 1 on a failed check or internal
error, and 2 on a usage error.  Data goes to standard output (or ``--out``),
diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from typing import Optional, Sequence

from . import __version__
from .clifford import clifford, even_part
from .findim import fingerprint, structure
from .qspace import QuadraticSpace, parse_form, parse_isotropic
from .suites import SCHEMA, SUITES, SuiteParams, run_suite


class UsageError(Exception):
    pass


def _form(text: str) -> QuadraticSpace:
    try:
        return parse_form(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _twists(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"twist range {text!r} must look like a:b")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        bad = next(p for p in parts if not p.lstrip("-").isdigit())
        raise argparse.ArgumentTypeError(f"malformed twist bound {bad!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty twist range {text!r}")
    return lo, hi


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinorlab", description="Clifford algebras of degenerate quadrics, "
                                     "their module theory and spinor sheaves, in exact arithmetic.")
    parser.add_argument("--version", action="version", version=f"spinorlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, form_required=True):
        p.add_argument("--form", type=_form, required=form_required, help="diagonal entries, e.g. 1,1,0")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", help="write JSON to this file")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("algebra", help="dimension and parity split of Cl(q) or Cl_0(q)")
    common(p)
    p.add_argument("--even", action="store_true", help="describe the even part")

    p = sub.add_parser("fingerprint", help="isomorphism-invariant fingerprint")
    common(p)
    p.add_argument("--even", action="store_true")

    p = sub.add_parser("ext", help="dimensions of Ext between simple Cl_0(q)-modules")
    common(p)
    p.add_argument("--from", dest="source", required=True, help="module label (S1, S2, S, G1, G2, G)")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--max-degree", type=_nonneg, default=8)

    p = sub.add_parser("resolve", help="minimal projective resolution of a module")
    common(p)
    p.add_argument("--module", required=True)
    p.add_argument("--length", type=_nonneg, default=6)

    p = sub.add_parser("mf", help="matrix factorization (phi, psi) of the quadric")
    common(p)
    p.add_argument("--isotropic", default="max")

    p = sub.add_parser("classify", help="indecomposable summands of the spinor sheaves")
    common(p)
    p.add_argument("--isotropic", default="max")

    p = sub.add_parser("cohomology", help="cohomology table of twists of S^W")
    common(p)
    p.add_argument("--isotropic", default="max")
    p.add_argument("--twists", type=_twists, default=(-4, 4))

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    common(p, form_required=False)
    p.add_argument("--max-degree", type=_nonneg, default=8)
    p.add_argument("--max-dim", type=_nonneg, default=7)
    p.add_argument("--twists", type=_twists, default=(-4, 4))
    p.add_argument("--timings", action="store_true", help="record wall-clock millis per check")
    p.add_argument("--progress", action="store_true", help="report each check on standard error")
    return parser


# ---------------------------------------------------------------------------
# commands; each returns (passed, json payload, text)
# ---------------------------------------------------------------------------


def _isotropic(args):
    try:
        return parse_isotropic(args.form, args.isotropic)
    except ValueError as exc:
        raise UsageError(f"--isotropic {args.isotropic!r}: {exc}") from None


def cmd_algebra(args):
    q = args.form
    A = even_part(q) if args.even else clifford(q)
    result = {"form": str(q), "even": args.even, "dim": A.dim}
    if not args.even:
        even = sum(1 for p in A.parity if p == 0)
        result["parity"] = {"even": even, "odd": A.dim - even}
    assoc = A.check_associativity()
    unit = A.check_unit()
    result["associative"] = assoc
    result["unital"] = unit
    lines = [f"{'Cl_0' if args.even else 'Cl'}{q}: dimension {A.dim}"]
    if not args.even:
        lines.append(f"parity split: {result['parity']['even']} even + {result['parity']['odd']} odd")
    if args.even:
        st = structure(A)
        blocks = sorted(st.block_sizes)
        result["radical_dim"] = st.radical.dim
        result["radical_series"] = list(st.radical.series)
        result["blocks"] = blocks
        quotient = " x ".join(f"M_{n}(k)" for n in blocks) or "0"
        lines.append(f"radical: dimension {st.radical.dim}, series {list(st.radical.series)}")
        lines.append(f"semisimple quotient: {quotient}")
    lines.append(f"associative: {assoc}, unital: {unit}")
    return assoc and unit, result, "\n".join(lines)


def cmd_fingerprint(args):
    q = args.form
    A = even_part(q) if args.even else clifford(q)
    fp = fingerprint(A)
    result = {"form": str(q), "even": args.even, **fp.to_dict()}
    return True, result, json.dumps(result, sort_keys=True)


def _module_labels(q: QuadraticSpace, seed: int):
    from .modext import clifford_labels

    if q.rank == 0:
        raise UsageError(f"--form: module labels need a nonzero form, got {q}")
    return clifford_labels(q, seed)


def _label(labels, token: str, flag: str):
    if token not in labels:
        raise UsageError(f"{flag}: unknown module {token!r}; available: {', '.join(labels)}")
    return labels[token]


def cmd_ext(args):
    from .modext import ext_dims

    labels = _module_labels(args.form, args.seed)
    M = _label(labels, args.source, "--from")
    N = _label(labels, args.target, "--to")
    dims = ext_dims(M, N, args.max_degree).dims
    result = {"form": str(args.form), "from": args.source, "to": args.target, "max_degree": args.max_degree,
              "dims": dims}
    text = "\n".join(f"Ext^{n}({args.source},{args.target}) = {d}" for n, d in enumerate(dims))
    return True, result, text


def cmd_resolve(args):
    from .modext import projective_resolution, registry

    labels = _module_labels(args.form, args.seed)
    M = _label(labels, args.module, "--module")
    res = projective_resolution(M, args.length)
    reg = registry(M.algebra)
    simple_names = {}
    for name, S in labels.items():
        if S.dim and name.startswith("S"):
            b = reg.simple_index(S, args.seed)
            if b is not None:
                simple_names[b] = name
    terms = []
    for F in res.terms:
        counts = F.multiset()
        terms.append({f"P({simple_names.get(b, b + 1)})": m for b, m in sorted(counts.items())})
    exact = res.check_exact()
    minimal = res.is_minimal()
    result = {
        "form": str(args.form),
        "module": args.module,
        "length": res.length,
        "terms": terms,
        "finite": res.complete,
        "periodicity": None if res.periodicity is None else {"offset": res.periodicity[0],
                                                                "period": res.periodicity[1]},
        "exact": exact,
        "minimal": minimal,
    }
    lines = []
    for k, t in enumerate(terms):
        lines.append(f"P^{k} = " + " + ".join(f"{name}^{m}" if m > 1 else name for name, m in t.items()))
    if res.periodicity:
        lines.append(f"periodic from degree {res.periodicity[0]} with period {res.periodicity[1]}")
    elif res.complete:
        lines.append("finite resolution")
    lines.append(f"exact: {exact}, minimal: {minimal}")
    return exact and minimal, result, "\n".join(lines)


def cmd_mf(args):
    from .spinor import matrix_factorization

    W = _isotropic(args)
    mf = matrix_factorization(args.form, W)
    checks = mf.check()
    result = {"form": str(args.form), "isotropic": args.isotropic, "dim_W": W.dim, "size": mf.size,
              "phi": mf.phi.entry_strings(), "psi": mf.psi.entry_strings(), "checks": checks}
    lines = [f"size {mf.size}", "phi ="]
    lines += ["  [" + ", ".join(r) + "]" for r in result["phi"]]
    lines.append("psi =")
    lines += ["  [" + ", ".join(r) + "]" for r in result["psi"]]
    lines += [f"{k}: {v}" for k, v in checks.items()]
    return all(checks.values()), result, "\n".join(lines)


def cmd_classify(args):
    from .spinor import UnsupportedClassification, classify

    W = _isotropic(args)
    try:
        res = classify(args.form, W, args.seed)
    except UnsupportedClassification as exc:
        raise UsageError(f"--form: {exc}") from None
    result = {"form": str(args.form), "isotropic": args.isotropic, "dim_W": W.dim, **res.to_dict()}
    return True, result, str(res)


def cmd_cohomology(args):
    from .spinor import cohomology_table

    W = _isotropic(args)
    if args.form.dim < 3:
        raise UsageError(f"--form: cohomology tables need at least three variables, got {args.form}")
    lo, hi = args.twists
    table = cohomology_table(args.form, W, range(lo, hi + 1))
    ok = table.intermediate_vanishing() and all(table.euler_ok)
    result = {"isotropic": args.isotropic, **table.to_dict(), "intermediate_vanishing": table.intermediate_vanishing()}
    return ok, result, table.render()


COMMANDS = {
    "algebra": cmd_algebra,
    "fingerprint": cmd_fingerprint,
    "ext": cmd_ext,
    "resolve": cmd_resolve,
    "mf": cmd_mf,
    "classify": cmd_classify,
    "cohomology": cmd_cohomology,
}


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(args, json_text: str, plain_text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json_text)
    if args.json:
        sys.stdout.write(json_text)
    else:
        sys.stdout.write(plain_text.rstrip("\n") + "\n")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let ``--twists -4:4`` through: argparse would read -4:4 as an option."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--twists" and i + 1 < len(argv):
            out.append(f"--twists={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            params = SuiteParams(forms=[args.form] if args.form else None, max_degree=args.max_degree,
                                 max_dim=args.max_dim, twists=args.twists, seed=args.seed,
                                 timings=args.timings, progress=args.progress)
            try:
                report = run_suite(args.suite, params)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            _emit(args, report.to_json(), report.render())
            return 0 if report.passed else 1
        ok, result, text = COMMANDS[args.command](args)
        payload = {"schema": SCHEMA, "command": args.command, "result": result, "pass": ok, "version": __version__}
        _emit(args, _dump(payload), text)
        return 0 if ok else 1
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spinorlab: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure: report and exit 1
        print(f"spinorlab: internal error: {exc}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
