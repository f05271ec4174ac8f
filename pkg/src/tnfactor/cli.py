"""``tnfactor`` command line: generate matrices, emit and verify factorization
certificates, and run positivity checks.  Every command writes one JSON
document to stdout (or ``--out``).

Exit status: 0 success, 1 domain/validation error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .factorizations import (
    FactorizationCertificate,
    NevilleBreakdown,
    bidiagonal_decomposition_S,
    hadamard_power_decomposition,
    lu_certificate,
    min_matrix_lu,
    neville_elimination_generic,
    vandermonde_bidiagonal,
    verify_certificate,
)
from .generators import (
    GridParams,
    MeanKind,
    MeanSpec,
    Ordering,
    gen_cauchy,
    gen_mean,
    gen_min_matrix,
    gen_S,
    gen_S_hadamard_int,
    gen_S_hadamard_real,
    gen_vandermonde,
)
from .matrix import Matrix
from .positivity import DEFAULT_TOL, check_tn, check_tp, rank_of_hadamard_power, scan_hadamard_threshold
from .scalars import parse_exact

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2

# numbered aliases for --method, accepted by ``factor --theorem``
THEOREM_METHODS = {"2.1": "lu", "2.2": "bidiagonal", "2.4": "hadamard", "3.2": "min-lu"}
METHODS = ("lu", "bidiagonal", "hadamard", "vandermonde", "min-lu", "neville")


class UsageError(Exception):
    pass


def parse_grid(text: str | None, name: str) -> tuple[Fraction, ...]:
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return tuple(parse_exact(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from exc


def parse_exponent(text: str):
    """Integers and p/q stay exact; anything with a decimal point is a float."""
    try:
        if any(ch in text for ch in ".eE") or text.lower() in {"inf", "-inf"}:
            return float(text)
        return parse_exact(text)
    except ValueError as exc:
        raise UsageError(f"bad exponent {text!r}") from exc


def _grid(args) -> GridParams:
    x = parse_grid(args.x, "x")
    y = x if args.y is None else parse_grid(args.y, "y")
    return GridParams(x, y, Ordering(args.ordering))


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _mean_spec(args) -> MeanSpec:
    kind = MeanKind(args.mean)
    if kind is MeanKind.HEINZ_RECIPROCAL:
        if args.nu is None:
            raise UsageError("--nu is required for the Heinz mean")
        return MeanSpec(kind, nu=parse_exact(args.nu))
    if kind is MeanKind.BINOMIAL:
        if args.alpha is None:
            raise UsageError("--alpha is required for the binomial mean")
        a = args.alpha.strip().lower()
        alpha = math.inf if a in ("inf", "+inf") else -math.inf if a == "-inf" else parse_exact(args.alpha)
        return MeanSpec(kind, alpha=alpha)
    return MeanSpec(kind)


def cmd_gen(args) -> tuple[dict, int]:
    family = args.family
    if family == "S":
        m = gen_S(_grid(args))
    elif family == "S-pow":
        if args.m is not None:
            m = gen_S_hadamard_int(_grid(args), int(args.m))
        elif args.r is not None:
            r = parse_exponent(args.r)
            m = gen_S_hadamard_real(_grid(args), float(r)) if isinstance(r, float) else gen_S_hadamard_int(_grid(args), int(r))
        else:
            raise UsageError("S-pow needs --m or --r")
    elif family == "cauchy":
        lam = parse_grid(args.x, "x")
        m = gen_cauchy(lam, None if args.y is None else parse_grid(args.y, "y"))
    elif family == "mean":
        r = parse_exponent(args.r) if args.r is not None else Fraction(1)
        m = gen_mean(_mean_spec(args), parse_grid(args.x, "x"), r)
    elif family == "vandermonde":
        m = gen_vandermonde(parse_grid(args.x, "x"))
    elif family == "min":
        m = gen_min_matrix(parse_grid(args.x, "x"))
    else:
        raise UsageError(f"unknown family {family!r}")
    return m.to_dict(), EXIT_OK


def cmd_factor(args) -> tuple[dict, int]:
    method = args.method
    if args.theorem is not None:
        method = THEOREM_METHODS[args.theorem]
    if method is None:
        raise UsageError("choose --method or --theorem")
    if method == "bidiagonal":
        cert = bidiagonal_decomposition_S(_grid(args))
    elif method == "lu":
        cert = lu_certificate(_grid(args))
    elif method == "hadamard":
        if args.m is None:
            raise UsageError("--m is required for the Hadamard power factorization")
        cert = hadamard_power_decomposition(_grid(args), int(args.m))
    elif method == "vandermonde":
        cert = vandermonde_bidiagonal(parse_grid(args.x, "x"))
    elif method == "min-lu":
        cert = min_matrix_lu(parse_grid(args.x, "x"))
    elif method == "neville":
        if args.matrix is None:
            raise UsageError("--matrix is required for Neville elimination")
        try:
            cert = neville_elimination_generic(Matrix.from_dict(_read_json(args.matrix)))
        except NevilleBreakdown as exc:
            return {"status": "breakdown", "row": exc.row, "col": exc.col, "message": str(exc)}, EXIT_ERROR
    else:
        raise UsageError(f"unknown method {method!r}")
    return cert.to_dict(), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    cert = FactorizationCertificate.from_dict(_read_json(args.certificate))
    target = Matrix.from_dict(_read_json(args.target)) if args.target else cert.target_matrix()
    report = verify_certificate(cert, target)
    return report.to_dict(), EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_check(args) -> tuple[dict, int]:
    a = Matrix.from_dict(_read_json(args.matrix))
    fn = check_tp if args.prop == "tp" else check_tn
    mode = args.mode or ("exact" if a.kind == "exact" else "float")
    verdict = fn(a, args.k, mode, args.tol, max_order=args.max_order)
    return verdict.to_dict(), EXIT_OK


def cmd_scan(args) -> tuple[dict, int]:
    if args.family != "S":
        raise UsageError("only --family S is supported by scan")
    try:
        rs = [float(v) for v in args.r_list.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --r-list: {exc}") from exc
    report = scan_hadamard_threshold(_grid(args), rs, args.k, args.tol)
    return report.to_dict(), EXIT_OK


def cmd_rank(args) -> tuple[dict, int]:
    p = _grid(args)
    rank = rank_of_hadamard_power(p, args.m)
    return {"grid": p.to_dict(), "m": args.m, "rank": rank, "expected": args.m + 1}, EXIT_OK


def cmd_selftest(args) -> tuple[dict, int]:
    from .selftest import run_selftest

    report = run_selftest(seed=args.seed, grids=args.grids)
    return report, EXIT_OK if report["passed"] else EXIT_MISMATCH


def _add_grid_args(p, y=True):
    p.add_argument("--x", help="comma-separated rationals, e.g. 1,3/2,4")
    if y:
        p.add_argument("--y", help="comma-separated rationals (defaults to --x)")
    p.add_argument("--ordering", default=Ordering.STRICT_POSITIVE.value, choices=[o.value for o in Ordering])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    parser = argparse.ArgumentParser(prog="tnfactor", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="construct a structured matrix")
    g.add_argument("--family", required=True, choices=["S", "S-pow", "cauchy", "mean", "vandermonde", "min"])
    _add_grid_args(g)
    g.add_argument("--m", type=int)
    g.add_argument("--r")
    g.add_argument("--mean", default=MeanKind.HARMONIC.value, choices=[k.value for k in MeanKind])
    g.add_argument("--nu")
    g.add_argument("--alpha")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("factor", parents=[common], help="emit a factorization certificate")
    f.add_argument("--method", choices=METHODS)
    f.add_argument("--theorem", choices=sorted(THEOREM_METHODS))
    _add_grid_args(f)
    f.add_argument("--m", type=int)
    f.add_argument("--matrix", help="Matrix JSON file for --method neville ('-' for stdin)")
    f.set_defaults(func=cmd_factor)

    v = sub.add_parser("verify", parents=[common], help="verify a certificate against a target")
    v.add_argument("--certificate", required=True)
    v.add_argument("--target", help="Matrix JSON; defaults to the certificate's own target description")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", parents=[common], help="TP_k / TN_k by minor enumeration")
    c.add_argument("--prop", required=True, choices=["tp", "tn"])
    c.add_argument("-k", type=int)
    c.add_argument("--mode", choices=["exact", "float"])
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--max-order", type=int, help="raise the default 10x10 enumeration cap")
    c.add_argument("--matrix", required=True, help="Matrix JSON file ('-' for stdin)")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("scan", parents=[common], help="float TP/TN of S^{∘r} over exponents")
    s.add_argument("--family", default="S")
    _add_grid_args(s)
    s.add_argument("--r-list", required=True)
    s.add_argument("-k", type=int)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(func=cmd_scan)

    r = sub.add_parser("rank", parents=[common], help="exact rank of S^{∘m}")
    _add_grid_args(r)
    r.add_argument("--m", type=int, required=True)
    r.set_defaults(func=cmd_rank)

    t = sub.add_parser("selftest", parents=[common], help="run the invariant suite on seeded grids")
    t.add_argument("--seed", type=int, default=20240101)
    t.add_argument("--grids", type=int, default=25)
    t.set_defaults(func=cmd_selftest)
    return parser


def _emit(doc: dict, out: str | None):
    text = json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, status = args.func(args)
    except (UsageError, ValueError, TypeError, ZeroDivisionError, ArithmeticError, OSError, KeyError) as exc:
        _emit({"status": "error", "message": str(exc)}, None)
        return EXIT_ERROR
    _emit(doc, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
