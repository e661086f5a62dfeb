"""
Command line front end.

Exit codes: 0 success, 1 parse/usage error, 2 property violation,
3 degenerate pencil, 4 unsupported input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bialg, classify
from .algebra import Algebra, check_associativity, find_unity, registry
from .documents import (
    dumps_report,
    encode,
    parse_algebra,
    parse_matrix,
    parse_rational,
    parse_rational_list,
    serialize_algebra,
)
from .errors import (
    AlgebraError,
    BadShift,
    DegeneratePencil,
    DimensionMismatch,
    NoUnity,
    NotAssociative,
    NotIndexOne,
    ParseError,
    SingularPairing,
    UnknownName,
    Unsupported,
    WrongDimension,
)
from .exact import factor_form, numeric_roots, render_factored
from .jordan import block_charpoly_check, decompose, verify_vn
from .pencil import INF, as_functional, charpoly, lie_index_trials, nil, q_form, sample_generic, stabilizer

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VIOLATION = 2
EXIT_DEGENERATE = 3
EXIT_UNSUPPORTED = 4

_EXIT_FOR = (
    (ParseError, EXIT_PARSE),
    (DimensionMismatch, EXIT_PARSE),
    (BadShift, EXIT_PARSE),
    (UnknownName, EXIT_PARSE),
    (NotAssociative, EXIT_VIOLATION),
    (SingularPairing, EXIT_VIOLATION),
    (DegeneratePencil, EXIT_DEGENERATE),
    (Unsupported, EXIT_UNSUPPORTED),
    (NotIndexOne, EXIT_UNSUPPORTED),
    (NoUnity, EXIT_UNSUPPORTED),
    (WrongDimension, EXIT_UNSUPPORTED),
)


def exit_code_for(err: Exception) -> int:
    for cls, code in _EXIT_FOR:
        if isinstance(err, cls):
            return code
    return EXIT_VIOLATION


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1 so that 2 stays reserved for violations."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _load_algebra(path: str) -> Algebra:
    try:
        return parse_algebra(_read(path))
    except ParseError as e:
        raise ParseError(f"{path}: {e.message}", line=e.line, field=e.field) from None


def _functional(a: Algebra, args) -> tuple[tuple, dict]:
    if args.functional is not None:
        f = as_functional(a, parse_rational_list(args.functional))
        return f, {"source": "given"}
    f, cert = sample_generic(a, args.seed)
    return f, {
        "source": "sampled",
        "seed": args.seed,
        "attempts": cert.attempts,
        "dims": cert.dims,
        "observed_minima": cert.observed_minima,
        "all_minimal": cert.all_minimal,
    }


def _mu(args):
    return None if args.mu is None else parse_rational(args.mu, "mu")


# ---------------------------------------------------------------- text rendering


def render_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(doc))
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v) and len(str(v)) < 100


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


# ---------------------------------------------------------------- commands


def cmd_check(args) -> tuple[int, dict]:
    results = []
    code = EXIT_OK
    for path in args.paths:
        try:
            a = _load_algebra(path)
        except ParseError as e:
            results.append({"path": path, "error": "ParseError", "message": str(e)})
            code = max(code, EXIT_PARSE)
            continue
        bad = check_associativity(a)
        if a.unity is not None:
            unity = a.basis_names[a.unity]
        else:
            u = find_unity(a)
            unity = None if u is None else a.format_element(u)
        entry = {"path": path, "dim": a.dim, "associative": bad is None, "unity": unity}
        if bad is not None:
            entry["violation"] = {"triple": list(bad.label()), "difference": a.format_element(bad.difference)}
            code = max(code, EXIT_VIOLATION)
        results.append(entry)
    return code, {"command": "check", "results": results}


def _space(a: Algebra, s) -> dict:
    return {"dim": s.dim, "basis": [a.format_element(v) for v in s.basis]}


def cmd_analyze(args) -> tuple[int, dict]:
    a = _load_algebra(args.path)
    f, origin = _functional(a, args)
    chi = charpoly(a, f)
    if chi.is_zero():
        raise DegeneratePencil(
            "χ(λ,μ) vanishes identically at this functional; try another --functional or --seed "
            "(if every choice fails the algebra's characteristic form is zero)"
        )
    ff = factor_form(chi)
    mu = _mu(args)
    dec = decompose(a, f, mu)
    blocks = []
    for b in dec.blocks:
        entry = {"alpha": str(b.alpha), "dim": b.dim, "chain_dims": list(b.chain_dims)}
        if b.alpha.is_orbit:
            entry["degree"] = b.degree
            entry["approx_roots_display_only"] = [f"{z.real:.6g}{z.imag:+.6g}i" for z in numeric_roots(b.alpha.value)]
        blocks.append(entry)
    report = verify_vn(a, f, mu)
    bc = block_charpoly_check(a, f, mu)
    qf = q_form(a, f)
    trials = lie_index_trials(a, args.seed)
    doc = {
        "command": "analyze",
        "functional": list(f),
        "functional_origin": origin,
        "chi": {
            "coefficients_lambda_ascending": list(chi.coeffs),
            "factored": render_factored(ff),
        },
        "stabilizers": {
            "0": _space(a, stabilizer(a, f, 0)),
            "1": _space(a, stabilizer(a, f, 1)),
            "∞": _space(a, stabilizer(a, f, INF)),
        },
        "nil": _space(a, nil(a, f)),
        "q_form": {"gram": qf.gram, "nondegenerate": qf.nondegenerate,
                   "multiplicity_of_lambda_plus_mu": qf.lambda_mu_multiplicity},
        "lie_index": min(t.kernel_dim for t in trials),
        "lie_index_trials": [t.kernel_dim for t in trials],
        "decomposition": {"mu": dec.mu, "blocks": blocks},
        "vn_checks": {c.name: c.passed for c in report.checks},
        "vn_notes": list(report.notes),
        "block_charpoly": {"passed": bc.passed, "pairings_invertible": bc.pairings},
    }
    ok = report.passed and bc.passed
    return (EXIT_OK if ok else EXIT_VIOLATION), doc


def cmd_canon(args) -> tuple[int, dict]:
    a = _load_algebra(args.path)
    c = classify.canon(a, args.seed)
    return EXIT_OK, {
        "command": "canon",
        "label": c.label,
        "transform": c.transform,
        "functional_used": None if c.functional_used is None else list(c.functional_used),
        "params": c.params,
    }


def _identity_doc(rep: bialg.IdentityReport) -> dict:
    out = {}
    for r in rep.results:
        entry = {"passed": r.passed}
        if not r.passed:
            entry.update({"witness": list(r.witness), "lhs": r.lhs, "rhs": r.rhs})
            if r.note:
                entry["note"] = r.note
        out[r.name] = entry
    return out


def cmd_split(args) -> tuple[int, dict]:
    a = _load_algebra(args.path)
    f = None if args.functional is None else as_functional(a, parse_rational_list(args.functional))
    s = bialg.split(a, f, args.seed)
    rep = bialg.check_identities(s)
    doc = {
        "command": "split",
        "functional": list(s.functional),
        "h": s.h,
        "basis": {"1": s.basis.row(0),
                  **{nm: s.basis.row(1 + i) for i, nm in enumerate(s.x_names)},
                  **{nm: s.basis.row(1 + s.h + i) for i, nm in enumerate(s.y_names)}},
        "h_table": s.h_table,
        "hprime_table": s.hprime_table,
        "pairing": s.pairing,
        "a_scalar": s.a_scalar,
        "b_tensor": s.b_tensor,
        "c_tensor": s.c_tensor,
        "identities": _identity_doc(rep),
    }
    return (EXIT_OK if rep.passed else EXIT_VIOLATION), doc


def _failure_lines(rep: bialg.IdentityReport) -> list[str]:
    lines = []
    for r in rep.results:
        if not r.passed:
            lhs, rhs = encode(r.lhs), encode(r.rhs)
            lines.append(f"{r.name} violated at ({', '.join(r.witness)}): lhs {lhs}, rhs {rhs}")
    return lines


def cmd_build(args) -> tuple[int, str]:
    h = _load_algebra(args.h_path)
    hp = _load_algebra(args.hprime_path)
    pairing = parse_matrix(_read(args.pairing_path))
    try:
        a = bialg.build_index1(h, hp, pairing)
    except NotAssociative as e:
        rep = bialg.check_identities(bialg.from_dual_pair(h, hp, pairing))
        detail = _failure_lines(rep) or [str(e)]
        raise NotAssociative("\n".join(detail), failing=e.failing) from None
    return EXIT_OK, serialize_algebra(a)


def cmd_registry(args) -> tuple[int, str]:
    return EXIT_OK, serialize_algebra(registry(args.name))


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pencilalg", description="Exact analysis of small associative algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized choice (default 0)")
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--out", help="also write the machine-readable report to this file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="associativity and unity")
    c.add_argument("paths", nargs="+")
    c.set_defaults(run=cmd_check)

    an = sub.add_parser("analyze", parents=[common], help="pencil, spectrum and structural checks")
    an.add_argument("path")
    an.add_argument("--functional", help="comma-separated rationals, one per basis element")
    an.add_argument("--mu", help="rational shift for the pencil operator")
    an.set_defaults(run=cmd_analyze)

    cn = sub.add_parser("canon", parents=[common], help="canonical form in dimension 2 or 3")
    cn.add_argument("path")
    cn.set_defaults(run=cmd_canon)

    sp = sub.add_parser("split", parents=[common], help="dual-pair data of a unital index-1 algebra")
    sp.add_argument("path")
    sp.add_argument("--functional")
    sp.set_defaults(run=cmd_split)

    b = sub.add_parser("build", parents=[common], help="assemble an algebra from a dual pair")
    b.add_argument("h_path")
    b.add_argument("hprime_path")
    b.add_argument("pairing_path")
    b.set_defaults(run=cmd_build)

    r = sub.add_parser("registry", parents=[common], help="print a named example algebra")
    r.add_argument("name")
    r.set_defaults(run=cmd_registry)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, result = args.run(args)
    except AlgebraError as e:
        code = exit_code_for(e)
        err = {"command": args.command, "error": type(e).__name__, "message": str(e)}
        if args.json:
            sys.stdout.write(dumps_report(err))
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        if args.out:
            Path(args.out).write_text(dumps_report(err), encoding="utf-8")
        return code

    if isinstance(result, str):  # algebra documents are already machine-readable
        sys.stdout.write(result)
        machine = result
    else:
        machine = dumps_report(result)
        sys.stdout.write(machine if args.json else render_text(encode(result)) + "\n")
    if args.out:
        Path(args.out).write_text(machine, encoding="utf-8")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
