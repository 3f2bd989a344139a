"""Concrete ASCII syntax: a recursive-descent parser and the canonical printer.

Grammar::

    formula := quant | impl
    quant   := ("forall" | "exists") VAR "." formula
    impl    := disj [ "->" impl ]
    disj    := conj { "|" conj }
    conj    := neg  { "&" neg }
    neg     := "!" neg | atom | "(" formula ")"
    atom    := RELNAME "(" VAR {"," VAR} ")" | VAR "=" VAR | "true" | "false"

``&`` and ``|`` associate to the left, ``->`` to the right.  The printer
parenthesizes every binary connective, so ``parse(render(f)) == f``.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .formula import (
    BOTTOM, TOP, And, Atom, Bottom, Equal, Exists, Forall, Formula, Implies,
    Not, Or, Signature, Top, check_signature, relations_used,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<punct>[()!&|.,=])|(?P<ident>[A-Za-z][A-Za-z0-9_]*))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        out.append((m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("<end>", n))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            shown = "end of input" if tok == "<end>" else repr(tok)
            raise ParseError(f"expected {expected!r}, found {shown}", self.text, pos)
        self.i += 1
        return tok

    def var(self):
        tok, pos = self.toks[self.i]
        if not re.fullmatch(r"[a-z][A-Za-z0-9_]*", tok) or tok in (
                "forall", "exists", "true", "false"):
            raise ParseError(f"expected a variable, found {tok!r}", self.text, pos)
        self.i += 1
        return tok

    def formula(self):
        tok = self.peek()
        if tok in ("forall", "exists"):
            self.take()
            v = self.var()
            self.take(".")
            body = self.formula()
            return (Forall if tok == "forall" else Exists)(v, body)
        return self.impl()

    def impl(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.impl())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.neg()
        while self.peek() == "&":
            self.take()
            left = And(left, self.neg())
        return left

    def neg(self):
        tok, pos = self.toks[self.i]
        if tok == "!":
            self.take()
            return Not(self.neg())
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok == "true":
            self.take()
            return TOP
        if tok == "false":
            self.take()
            return BOTTOM
        if tok in ("forall", "exists"):
            raise ParseError("quantifier must be parenthesized here", self.text, pos)
        if re.fullmatch(r"[A-Z][A-Za-z0-9_]*", tok):
            self.take()
            self.take("(")
            args = [self.var()]
            while self.peek() == ",":
                self.take()
                args.append(self.var())
            self.take(")")
            return Atom(tok, tuple(args))
        if re.fullmatch(r"[a-z][A-Za-z0-9_]*", tok):
            left = self.var()
            self.take("=")
            return Equal(left, self.var())
        shown = "end of input" if tok == "<end>" else repr(tok)
        raise ParseError(f"unexpected {shown}", self.text, pos)


def parse(text: str, sig: Signature | None = None) -> Formula:
    """Parse ``text``; with ``sig`` also check relation names, arities and
    the equality flag.  Without ``sig`` only arity consistency is checked."""
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "<end>":
        raise ParseError(f"unexpected {p.peek()!r} after formula", text, p.pos())
    if sig is None:
        relations_used(f)
    else:
        check_signature(f, sig)
    return f


def render(f: Formula) -> str:
    if isinstance(f, Atom):
        return f"{f.rel}({','.join(f.args)})"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        if isinstance(f.body, Equal):
            return f"!({render(f.body)})"
        return "!" + _operand(f.body)
    if isinstance(f, And):
        return f"({_operand(f.left)} & {_operand(f.right)})"
    if isinstance(f, Or):
        return f"({_operand(f.left)} | {_operand(f.right)})"
    if isinstance(f, Implies):
        return f"({_operand(f.left)} -> {_operand(f.right)})"
    if isinstance(f, Exists):
        return f"exists {f.var}. {render(f.body)}"
    if isinstance(f, Forall):
        return f"forall {f.var}. {render(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _operand(f):
    if isinstance(f, (Exists, Forall)):
        return f"({render(f)})"
    return render(f)
