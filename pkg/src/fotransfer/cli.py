"""Command-line front end: ``fotransfer VERB [flags]``.

Exit status 0 on success, 1 on a domain error (parse, signature, budget,
correctness, missing file), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import codings, fv, suites
from .errors import LogicError, ParseError
from .evaluate import Evaluator
from .formula import Signature, free_vars, infer_signature
from .prenex import classify
from .schemes import (
    complexity_report, correctness_report, decode, identity_scheme,
    parse_scheme, reduction_F, symbolic_scheme, tilde_translate,
)
from .structures import dump_structure, parse_structures
from .syntax import parse, render

VERBS = ("parse", "classify", "translate", "eval", "encode-graph", "decode",
         "vn-fragment", "fv-decompose", "fv-verify", "check")


class DomainError(LogicError):
    pass


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror}") from None


def _located(path, fn, text):
    try:
        return fn(text)
    except ParseError as exc:
        raise DomainError(f"{path}: {exc}") from None


def _formula_text(args) -> str:
    if args.formula_file:
        return _read(args.formula_file).strip()
    if args.formula is None:
        raise UsageError("a formula is required (--formula or --formula-file)")
    if os.path.isfile(args.formula):
        return _read(args.formula).strip()
    return args.formula


def _formula(args, sig: Signature | None = None):
    if sig is None and args.sig:
        sig = Signature.from_spec(args.sig)
    return parse(_formula_text(args), sig)


def _params(text: str | None) -> dict[str, int]:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not value.strip().isdigit():
            raise DomainError(f"bad parameter binding {item!r}; expected name=element")
        out[name.strip()] = int(value)
    return out


BUILTIN_SCHEMES = {
    "fpo": lambda: codings.fpo_scheme(),
    "fpo-complete": lambda: codings.fpo_scheme(complete=True),
    "vn": codings.vn_scheme,
    "palette1": lambda: codings.palette_scheme(1),
    "palette2": lambda: codings.palette_scheme(2),
    "quotient": codings.quotient_scheme,
}


def _scheme(name: str | None, source_hint=None):
    if not name:
        raise UsageError("a scheme is required (--scheme)")
    if name in BUILTIN_SCHEMES:
        return BUILTIN_SCHEMES[name]()
    if name.startswith("identity") or name.startswith("symbolic"):
        if source_hint is None:
            raise DomainError(f"scheme {name} needs a formula to infer its signature")
        sig = infer_signature(source_hint, equality=False)
        if name == "identity":
            return identity_scheme(sig)
        if name == "symbolic":
            return symbolic_scheme(sig, k=1, params=("p",))
        rest = name[len("symbolic"):]
        if rest.isdigit():
            return symbolic_scheme(sig, k=int(rest), params=("p",), opaque=False)
    if os.path.isfile(name):
        return _located(name, parse_scheme, _read(name))
    raise DomainError(f"unknown scheme {name!r}: not a built-in name or a file")


def _structures(args):
    if not args.structure:
        raise UsageError("a structure file is required (--structure)")
    found = _located(args.structure, parse_structures, _read(args.structure))
    if not found:
        raise DomainError(f"{args.structure}: no structure found")
    return found


def _emit(rows, mode, out):
    """rows: (name, expected, got, passed)."""
    if mode == "tsv":
        for name, expected, got, passed in rows:
            out.write(f"{name}\t{expected}\t{got}\t{'pass' if passed else 'fail'}\n")
    else:
        width = max((len(r[0]) for r in rows), default=0)
        for name, expected, got, passed in rows:
            mark = "PASS" if passed else "FAIL"
            line = f"{mark}  {name:<{width}}  got {got}"
            if not passed:
                line += f" (expected {expected})"
            out.write(line + "\n")


# --- verbs -------------------------------------------------------------------------

def cmd_parse(args, out):
    out.write(render(_formula(args)) + "\n")


def cmd_classify(args, out):
    out.write(f"{classify(_formula(args))}\n")


def cmd_translate(args, out):
    phi = _formula(args)
    s = _scheme(args.scheme, phi)
    result = reduction_F(s, phi) if args.with_F else tilde_translate(s, phi)
    if args.report == "tsv":
        rep = complexity_report(s, phi)
        rows = [("input_class", str(rep.input_class), str(rep.input_class), True),
                ("output_class", str(rep.bound), str(rep.output_class), rep.within_bound)]
        out.write(render(result) + "\n")
        _emit(rows, "tsv", out)
        return
    out.write(render(result) + "\n")
    out.write(f"class: {classify(result)}\n")
    if args.with_F:
        rep = complexity_report(s, phi)
        out.write(f"input class: {rep.input_class}; predicted bound: {rep.bound}; "
                  f"within bound: {rep.within_bound}\n")
        if rep.note:
            out.write(f"note: {rep.note}\n")


def cmd_eval(args, out):
    structures = _structures(args)
    asg = _params(args.params)
    for A in structures:
        f = parse(_formula_text(args), A.sig)
        missing = sorted(free_vars(f) - set(asg))
        if missing:
            raise DomainError(f"free variables {missing} need values (--params)")
        value = Evaluator(A)(f, {v: asg[v] for v in free_vars(f)})
        out.write(f"{A.name}\t{'true' if value else 'false'}\n")


def cmd_encode_graph(args, out):
    if not args.graph:
        raise UsageError("a graph file is required (--graph)")
    G = _located(args.graph, lambda t: codings.parse_graph(t, directed=args.directed),
                 _read(args.graph))
    P = codings.encode_graph_as_poset(G)
    out.write(dump_structure(P.structure))


def cmd_decode(args, out):
    A = _structures(args)[0]
    s = _scheme(args.scheme)
    pv = _params(args.params)
    rep = correctness_report(s, A, pv)
    if not rep.ok(args.strict):
        raise DomainError(f"correctness fails for parameters {pv}: alpha={rep.alpha}, "
                          f"domain size {len(rep.domain)}, overlaps {len(rep.overlaps)}, "
                          f"gaps {len(rep.gaps)}")
    out.write(dump_structure(decode(s, A, pv, strict=args.strict)))


def cmd_vn_fragment(args, out):
    if args.n is None:
        raise UsageError("--n is required")
    out.write(dump_structure(codings.vn_fragment(args.n).structure))


def cmd_fv_decompose(args, out):
    if args.k is None:
        raise UsageError("--k is required")
    dec = fv.fv_decompose(_formula(args), args.k)
    out.write(f"# {dec.r} clauses over {dec.k + 1} components\n")
    out.write(dec.render() + "\n")


def cmd_fv_verify(args, out):
    if args.k is None:
        raise UsageError("--k is required")
    phi = _formula(args)
    dec = fv.fv_decompose(phi, args.k)
    rows = []
    for A in _structures(args):
        res = fv.fv_check(phi, args.k, A, dec)
        rows.append((A.name, "true", "true" if res.ok else "false", res.ok))
    _emit(rows, args.report, out)
    return 0 if all(r[3] for r in rows) else 1


def cmd_check(args, out):
    try:
        checks = suites.run_suite(args.suite, quick=args.quick)
    except KeyError:
        raise DomainError(f"unknown suite {args.suite!r}; choose from "
                          f"{', '.join(['all', *suites.SUITES])}") from None
    _emit([(c.name, c.expected, c.got, c.passed) for c in checks], args.report, out)
    return 0 if all(c.passed for c in checks) else 1


COMMANDS = {
    "parse": cmd_parse, "classify": cmd_classify, "translate": cmd_translate,
    "eval": cmd_eval, "encode-graph": cmd_encode_graph, "decode": cmd_decode,
    "vn-fragment": cmd_vn_fragment, "fv-decompose": cmd_fv_decompose,
    "fv-verify": cmd_fv_verify, "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fotransfer",
                                description="First-order coding schemes and translations.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--formula", help="formula text, or a path to a file holding one")
    p.add_argument("--formula-file")
    p.add_argument("--sig", help="signature for parsing, e.g. 'E/2,P/1,='")
    p.add_argument("--scheme", help="built-in scheme name or scheme file")
    p.add_argument("--structure", help="structure file")
    p.add_argument("--graph", help="graph file")
    p.add_argument("--directed", action="store_true", help="read the graph as directed (experimental)")
    p.add_argument("--params", help="bindings such as a=3,b=7")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--with-F", dest="with_F", action="store_true")
    p.add_argument("--strict", action="store_true",
                   help="require full complementarity when decoding a Sigma_k-scheme")
    p.add_argument("--suite", default="all")
    p.add_argument("--quick", action="store_true", help="smaller corpora for the invariant suites")
    p.add_argument("--report", choices=("human", "tsv"), default="human")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        status = COMMANDS[args.verb](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"fotransfer: error: {exc}\n")
        return 2
    except LogicError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
