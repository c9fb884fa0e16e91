"""Command-line front end.

Exit codes: 0 success, 1 parse/validation error, 2 source form not
variational, 3 not supported (non-polynomial homotopy input, not affine),
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Sequence

from .errors import (
    InvariantViolation,
    NotSupportedError,
    NotVariationalError,
    ParseError,
)
from .lagrangian import (
    SourceForm,
    check_homogeneous,
    euler_lagrange,
    helmholtz_coefficients,
    helmholtz_sonin,
    hilbert_form,
    homogenize,
)
from .operators import variational_delta
from .parsing import parse_components, parse_expression, parse_form
from .recovery import recover_first_order, recover_lagrangian

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_VARIATIONAL = 2
EXIT_NOT_SUPPORTED = 3
EXIT_INTERNAL = 4

MODES = ("el", "hilbert", "delta", "helmholtz", "recover", "recover-first-order",
         "homogenize", "check-homogeneous")
LAGRANGIAN_MODES = {"el", "hilbert", "homogenize", "check-homogeneous"}
FORM_MODES = {"helmholtz", "recover", "recover-first-order"}


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="varbicomplex",
        description="Euler-Lagrange and Hilbert forms, Helmholtz-Sonin test and Lagrangian recovery.",
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--dim", type=int, required=True, help="number of base coordinates q1..qN")
    payload = parser.add_mutually_exclusive_group(required=True)
    payload.add_argument("--lagrangian", help="scalar expression, e.g. \"q1'^2/2\"")
    payload.add_argument("--form", help="components \"e1; e2\" or a form such as \"-q1''*dq1\"")
    parser.add_argument("--order", type=int, help="order k for check-homogeneous")
    parser.add_argument("--json", action="store_true", help="emit a JSON document")
    parser.add_argument("--quiet", action="store_true", help="suppress the result on stdout")
    return parser


def _source_form(text: str, dim: int) -> SourceForm:
    if ";" in text:
        comps = parse_components(text, dim)
    else:
        form = parse_form(text, dim)
        if form.degree == 0:
            comps = [form.scalar()]
        else:
            try:
                return SourceForm.from_form(form, dim)
            except ValueError as exc:
                raise _InputError(str(exc)) from None
    if len(comps) != dim:
        raise _InputError(f"expected {dim} components, got {len(comps)}")
    return SourceForm(dim, tuple(comps))


def _helmholtz_entries(eps: SourceForm) -> list[tuple[str, str]]:
    if eps.order() <= 2:
        coeffs = helmholtz_coefficients(eps)
        return [(f"{name}[{i},{j}]", str(e)) for name, i, j, e in coeffs.nonzero()]
    return [("helmholtz_sonin", str(helmholtz_sonin(eps)))]


def _compute(args) -> tuple[list[tuple[str, str]], dict]:
    dim = args.dim
    mode = args.mode
    extra: dict = {}
    if mode in LAGRANGIAN_MODES and args.lagrangian is None:
        raise _InputError(f"mode {mode} needs --lagrangian")
    if mode in FORM_MODES and args.form is None:
        raise _InputError(f"mode {mode} needs --form")
    if mode == "check-homogeneous" and args.order is None:
        raise _InputError("check-homogeneous needs --order")
    if args.order is not None and mode != "check-homogeneous":
        raise _InputError("--order is only used by check-homogeneous")

    if mode == "el":
        eps = euler_lagrange(parse_expression(args.lagrangian, dim), dim)
        return [(f"epsilon_{i}", str(eps[i])) for i in range(1, dim + 1)], extra
    if mode == "hilbert":
        return [("theta", str(hilbert_form(parse_expression(args.lagrangian, dim))))], extra
    if mode == "delta":
        if args.lagrangian is not None:
            x = parse_expression(args.lagrangian, dim)
        else:
            x = parse_form(args.form, dim)
            if x.degree == 0:
                x = x.scalar()
        return [("delta", str(variational_delta(x)))], extra
    if mode == "helmholtz":
        eps = _source_form(args.form, dim)
        hs = helmholtz_sonin(eps)
        rows = [("helmholtz_sonin", str(hs)), ("variational", "true" if hs.is_zero() else "false")]
        if hs:
            rows += _helmholtz_entries(eps)
        return rows, extra
    if mode in ("recover", "recover-first-order"):
        eps = _source_form(args.form, dim)
        report = recover_lagrangian(eps) if mode == "recover" else recover_first_order(eps)
        if not report.verification:
            raise InvariantViolation("recovered Lagrangian failed verification")
        extra["verified"] = True
        return [
            ("lagrangian", str(report.lagrangian)),
            ("kappa", str(report.kappa)),
            ("order", str(report.order_of_lagrangian)),
        ], extra
    if mode == "homogenize":
        L = parse_expression(args.lagrangian, dim)
        try:
            return [("lagrangian", str(homogenize(L, dim)))], extra
        except ValueError as exc:
            raise _InputError(str(exc)) from None
    if mode == "check-homogeneous":
        L = parse_expression(args.lagrangian, dim)
        try:
            report = check_homogeneous(L, args.order)
        except ValueError as exc:
            raise _InputError(str(exc)) from None
        rows = [("homogeneous", "true" if report.homogeneous else "false")]
        rows += [(f"residual_{p}", str(r)) for p, r in sorted(report.residuals.items())]
        return rows, extra
    raise _InputError(f"unknown mode {mode}")  # pragma: no cover


def _emit(args, rows, extra, out, error: str | None = None):
    if args.quiet:
        return
    if args.json:
        doc = {"mode": args.mode, "dim": args.dim}
        if error:
            doc["error"] = error
        doc["result"] = [{"key": k, "expr": v} for k, v in rows]
        doc.update(extra)
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    if error:
        out.write(f"error: {error}\n")
    for k, v in rows:
        out.write(f"{k} = {v}\n")
    for k, v in extra.items():
        out.write(f"{k} = {json.dumps(v)}\n")


def _glue_payloads(argv: Sequence[str]) -> list[str]:
    # payloads such as "-q1''*dq1" would otherwise be read as options
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in ("--lagrangian", "--form") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_payloads(sys.argv[1:] if argv is None else list(argv))
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.dim < 1:
        err.write("error: --dim must be >= 1\n")
        return EXIT_INPUT
    try:
        rows, extra = _compute(args)
    except (ParseError, _InputError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except NotVariationalError as exc:
        eps = _source_form(args.form, args.dim)
        rows = [("helmholtz_sonin", str(exc.helmholtz_form))] + _helmholtz_entries(eps)
        _emit(args, rows, {}, out, error="not variational")
        err.write("error: source form is not variational (non-zero Helmholtz-Sonin form)\n")
        return EXIT_NOT_VARIATIONAL
    except NotSupportedError as exc:
        err.write(f"error: not supported: {exc}\n")
        return EXIT_NOT_SUPPORTED
    except InvariantViolation as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    _emit(args, rows, extra, out)
    return EXIT_OK


def main() -> None:  # pragma: no cover
    sys.exit(run())
