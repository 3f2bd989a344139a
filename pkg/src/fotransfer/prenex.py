"""Prenex normal form and Sigma_k / Pi_k classification.

Quantifiers are pulled out of the formula tree while the boolean skeleton
of the matrix is kept as it is (so a quantifier-free formula is returned
unchanged).  When two operands of a connective both carry quantifier
prefixes, their prefixes are interleaved so that the merged prefix has as
few alternation blocks as possible; quantifiers of the same kind are pulled
from the left operand first.  Each subformula keeps its best existential-led
and its best universal-led prefix, so an enclosing quantifier can always
absorb a block when that is possible.

Classification is minimal with respect to the produced prenex form, not the
semantic minimum over all equivalent formulas.  Sigma_k is taken to contain
Pi_{k-1} (an empty leading block is allowed); a formula whose prefix is
empty has class ``Both 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    BINARY, QUANTIFIERS, And, Atom, Bottom, Equal, Exists, Forall, Formula,
    Implies, Not, Or, Top, distinct_binders,
)

SIGMA, PI, BOTH = "Sigma", "Pi", "Both"
_E, _A = "E", "A"


@dataclass(frozen=True, order=False)
class PrenexClass:
    kind: str
    k: int

    def __post_init__(self):
        if self.kind not in (SIGMA, PI, BOTH):
            raise ValueError(f"bad class kind {self.kind!r}")
        if (self.k == 0) != (self.kind == BOTH):
            raise ValueError("k = 0 exactly for kind Both")

    @classmethod
    def sigma(cls, k: int) -> "PrenexClass":
        return cls(SIGMA, k) if k > 0 else cls(BOTH, 0)

    @classmethod
    def pi(cls, k: int) -> "PrenexClass":
        return cls(PI, k) if k > 0 else cls(BOTH, 0)

    @classmethod
    def parse(cls, text: str) -> "PrenexClass":
        kind, k = text.split()
        return cls(kind, int(k))

    def dual(self) -> "PrenexClass":
        if self.kind == BOTH:
            return self
        return PrenexClass(PI if self.kind == SIGMA else SIGMA, self.k)

    def within(self, bound: "PrenexClass") -> bool:
        """Syntactic inclusion, with Pi_{k-1} and Sigma_{k-1} inside Sigma_k."""
        if self.kind == BOTH:
            return True
        if bound.kind == BOTH:
            return False
        if self.kind == bound.kind:
            return self.k <= bound.k
        return self.k <= bound.k - 1

    def __str__(self):
        return f"{self.kind} {self.k}"


def _blocks(prefix) -> int:
    n = 0
    last = None
    for kind, _ in prefix:
        if kind != last:
            n += 1
            last = kind
    return n


def _cost(prefix, lead) -> int:
    """Block count of ``prefix`` read as a class with leading kind ``lead``."""
    if not prefix:
        return 0
    return _blocks(prefix) + (prefix[0][0] != lead)


def _merge(p, q, lead):
    p, q = list(p), list(q)
    out = []
    cur = lead
    while p or q:
        while p and p[0][0] == cur:
            out.append(p.pop(0))
        while q and q[0][0] == cur:
            out.append(q.pop(0))
        cur = _A if cur == _E else _E
    return out


def _forms(f, pos):
    """(best E-led prefix, best A-led prefix) of ``f`` under polarity ``pos``."""
    if isinstance(f, (Atom, Equal, Top, Bottom)):
        return [], []
    if isinstance(f, Not):
        return _forms(f.body, not pos)
    if isinstance(f, (And, Or)):
        le, la = _forms(f.left, pos)
        re_, ra = _forms(f.right, pos)
        return _merge(le, re_, _E), _merge(la, ra, _A)
    if isinstance(f, Implies):
        le, la = _forms(f.left, not pos)
        re_, ra = _forms(f.right, pos)
        return _merge(le, re_, _E), _merge(la, ra, _A)
    if isinstance(f, QUANTIFIERS):
        kind = _E if isinstance(f, Exists) else _A
        if not pos:
            kind = _A if kind == _E else _E
        be, ba = _forms(f.body, pos)
        same, other = (be, ba) if kind == _E else (ba, be)
        a = [(kind, f.var)] + same
        b = [(kind, f.var)] + other
        best = a if _blocks(a) <= _blocks(b) else b
        return best, best
    raise TypeError(f"not a formula: {f!r}")


def _first_quantifier_kind(f, pos=True):
    if isinstance(f, Not):
        return _first_quantifier_kind(f.body, not pos)
    if isinstance(f, BINARY):
        left_pos = not pos if isinstance(f, Implies) else pos
        return (_first_quantifier_kind(f.left, left_pos)
                or _first_quantifier_kind(f.right, pos))
    if isinstance(f, QUANTIFIERS):
        kind = _E if isinstance(f, Exists) else _A
        return kind if pos else (_A if kind == _E else _E)
    return None


def _strip(f):
    if isinstance(f, Not):
        return Not(_strip(f.body))
    if isinstance(f, BINARY):
        return type(f)(_strip(f.left), _strip(f.right))
    if isinstance(f, QUANTIFIERS):
        return _strip(f.body)
    return f


def _prefix(f):
    e, a = _forms(f, True)
    be, ba = _blocks(e), _blocks(a)
    if be != ba:
        return e if be < ba else a
    return e if _first_quantifier_kind(f) == _E else a


def to_prenex(f: Formula) -> Formula:
    """A logically equivalent prenex formula (over nonempty domains).

    Bound variables are made pairwise distinct and distinct from the free
    variables; names are kept where no clash arises.
    """
    g = distinct_binders(f)
    out = _strip(g)
    for kind, var in reversed(_prefix(g)):
        out = (Exists if kind == _E else Forall)(var, out)
    return out


def split_prefix(f: Formula):
    """Leading quantifiers ``[(kind, var), ...]`` and the remaining body."""
    prefix = []
    while isinstance(f, QUANTIFIERS):
        prefix.append((_E if isinstance(f, Exists) else _A, f.var))
        f = f.body
    return prefix, f


def is_prenex(f: Formula) -> bool:
    from .formula import is_quantifier_free

    _, body = split_prefix(f)
    return is_quantifier_free(body)


def class_of_prefix(prefix) -> PrenexClass:
    if not prefix:
        return PrenexClass(BOTH, 0)
    k = _blocks(prefix)
    return PrenexClass.sigma(k) if prefix[0][0] == _E else PrenexClass.pi(k)


def classify(f: Formula) -> PrenexClass:
    """Class of the prefix produced by :func:`to_prenex`."""
    return class_of_prefix(_prefix(distinct_binders(f)))


def prenex_forms(f: Formula) -> tuple[Formula, Formula]:
    """Two equivalent prenex forms of ``f``: the cheapest with an
    existential lead and the cheapest with a universal lead."""
    g = distinct_binders(f)
    body = _strip(g)
    out = []
    for prefix in _forms(g, True):
        h = body
        for kind, var in reversed(prefix):
            h = (Exists if kind == _E else Forall)(var, h)
        out.append(h)
    return out[0], out[1]


def fits(f: Formula, bound: PrenexClass) -> bool:
    """Whether some prenex form of ``f`` found here lies within ``bound``."""
    g = distinct_binders(f)
    return any(class_of_prefix(p).within(bound) for p in _forms(g, True))


def prefix_blocks(f: Formula) -> list[tuple[str, list[str]]]:
    """The alternation blocks of a prenex formula's prefix."""
    prefix, _ = split_prefix(f)
    out = []
    for kind, var in prefix:
        if out and out[-1][0] == kind:
            out[-1][1].append(var)
        else:
            out.append((kind, [var]))
    return out


def innermost_kind(f: Formula):
    """'E' or 'A' for the innermost quantifier of a prenex formula, None if
    there is no quantifier."""
    prefix, _ = split_prefix(f)
    return prefix[-1][0] if prefix else None
