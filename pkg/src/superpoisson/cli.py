"""Command-line driver.

Exit codes: 0 all checks pass, 1 a check failed, 2 schema or parse error,
3 the inputs violate the degree constraints of the requested bracket.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .algebra import Signature
from .algebroid import PoissonAlgebroid, algebroid_bracket, induced_bracket
from .document import Document, DocumentError, read
from .expr import ParseError, form, to_text
from .gerstenhaber import gerst_bracket
from .poisson import bracket as poisson_bracket
from .report import Report, Timer
from .theorems import full_check, verify_theorems

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DEGREE = 0, 1, 2, 3


def _emit(report: Report, args, out) -> int:
    if args.format == "structured":
        doc = {"schema_version": 1, "command": args.command, "samples": args.samples, "report": report.to_dict()}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(report.text() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_check(args, doc: Document, out) -> int:
    report = Report("")
    with Timer(report):
        result = full_check(doc.structure, args.seed, args.samples, args.max_degree)
    result.wall_time = report.wall_time
    return _emit(result, args, out)


def _cmd_verify(args, doc: Document, out) -> int:
    report = Report("")
    with Timer(report):
        result = verify_theorems(doc.structure, args.seed, args.samples, args.max_degree)
    result.wall_time = report.wall_time
    return _emit(result, args, out)


def _cmd_bracket(args, doc: Document, out, err) -> int:
    sig = doc.sig
    a, b = form(args.a, sig), form(args.b, sig)
    S = doc.structure
    if args.kind == "poisson":
        if a.form_degree() > 0 or b.form_degree() > 0:
            err.write("error: the Poisson bracket takes elements of A (form degree 0)\n")
            return EXIT_DEGREE
        if doc.kind == "poisson":
            value = poisson_bracket(S, a, b)
        else:
            value = induced_bracket(S, a.to_element(), b.to_element())
    elif args.kind == "algebroid":
        if (a and a.form_degree() != 1) or (b and b.form_degree() != 1):
            err.write("error: the algebroid bracket takes 1-forms\n")
            return EXIT_DEGREE
        value = algebroid_bracket(PoissonAlgebroid(S) if doc.kind == "poisson" else S, a, b)
    else:
        value = gerst_bracket(S, a, b)
    out.write(to_text(value) + "\n")
    return EXIT_OK


def _cmd_eval(args, out) -> int:
    sig = Signature(args.m, args.n, args.de_rham)
    out.write(to_text(form(args.expr, sig)) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superpoisson", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("document", help="structure document (path, or - for stdin)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=64)
        sp.add_argument("--max-degree", type=int, default=3, dest="max_degree")
        sp.add_argument("--format", choices=("text", "structured"), default="text")

    common(sub.add_parser("check", help="run every applicable axiom check"))
    common(sub.add_parser("verify-theorems", help="check each theorem statement on the structure"))
    br = sub.add_parser("bracket", help="evaluate a bracket")
    common(br)
    br.add_argument("--kind", choices=("poisson", "algebroid", "gerstenhaber"), default="poisson")
    br.add_argument("a")
    br.add_argument("b")
    ev = sub.add_parser("eval", help="normalize an expression")
    ev.add_argument("expr")
    ev.add_argument("-m", type=int, default=0, help="number of even generators")
    ev.add_argument("-n", type=int, default=0, help="number of odd generators")
    ev.add_argument("--de-rham", action="store_true", dest="de_rham")
    return p


def main(argv: Optional[List[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return _cmd_eval(args, out)
        if args.command in ("check", "verify-theorems") and args.max_degree < 2:
            err.write("error: --max-degree must be at least 2\n")
            return EXIT_INPUT
        doc = read(args.document, stdin)
        if args.command == "check":
            return _cmd_check(args, doc, out)
        if args.command == "verify-theorems":
            return _cmd_verify(args, doc, out)
        return _cmd_bracket(args, doc, out, err)
    except (DocumentError, ParseError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        # e.g. a signature mismatch or an impossible de Rham request
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
