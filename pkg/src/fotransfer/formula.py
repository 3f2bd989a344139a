"""First-order formulas over purely relational signatures.

Formulas are immutable trees built from the node classes below.  Variables
are plain strings; there are no function symbols or constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import CaptureError, SignatureError

_RELNAME = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
_VAR = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_KEYWORDS = frozenset({"forall", "exists", "true", "false"})


def is_var_name(name: str) -> bool:
    return bool(_VAR.match(name)) and name not in _KEYWORDS


@dataclass(frozen=True)
class Signature:
    """Relation symbols with arities, plus whether equality is available."""

    relations: tuple[tuple[str, int], ...] = ()
    has_equality: bool = True

    def __post_init__(self):
        rels = tuple((str(n), int(a)) for n, a in self.relations)
        object.__setattr__(self, "relations", rels)
        seen = set()
        for name, arity in rels:
            if not _RELNAME.match(name):
                raise SignatureError(f"bad relation name {name!r}")
            if arity < 1:
                raise SignatureError(f"relation {name} must have arity >= 1")
            if name in seen:
                raise SignatureError(f"duplicate relation {name}")
            seen.add(name)

    @classmethod
    def of(cls, *rels: tuple[str, int], equality: bool = True) -> "Signature":
        return cls(tuple(rels), equality)

    @classmethod
    def from_spec(cls, text: str) -> "Signature":
        """Parse ``"E/2,P/1,="``; a ``=`` item switches equality on."""
        rels = []
        eq = False
        for item in filter(None, (t.strip() for t in text.split(","))):
            if item == "=":
                eq = True
                continue
            name, _, arity = item.partition("/")
            if not arity.isdigit():
                raise SignatureError(f"bad signature item {item!r}")
            rels.append((name.strip(), int(arity)))
        return cls(tuple(rels), eq)

    def to_spec(self) -> str:
        items = [f"{n}/{a}" for n, a in self.relations]
        if self.has_equality:
            items.append("=")
        return ",".join(items)

    def arity(self, name: str) -> int:
        for n, a in self.relations:
            if n == name:
                return a
        raise SignatureError(f"unknown relation {name}")

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.relations)

    def __contains__(self, name) -> bool:
        return any(n == name for n, _ in self.relations)

    def without_equality(self) -> "Signature":
        return Signature(self.relations, False)


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        from .syntax import render

        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    rel: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Equal(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


TOP = Top()
BOTTOM = Bottom()

Quantifier = Union[Exists, Forall]
BINARY = (And, Or, Implies)
QUANTIFIERS = (Exists, Forall)


def atom(rel: str, *args: str) -> Atom:
    return Atom(rel, tuple(args))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    out = None
    for p in parts:
        out = p if out is None else And(out, p)
    return TOP if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    out = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return BOTTOM if out is None else out


def iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def exists_many(vars: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(vars)):
        body = Exists(v, body)
    return body


def forall_many(vars: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(vars)):
        body = Forall(v, body)
    return body


def flatten(f: Formula, kind) -> list[Formula]:
    """Operands of an associative chain of ``kind`` (And or Or)."""
    if isinstance(f, kind):
        return flatten(f.left, kind) + flatten(f.right, kind)
    return [f]


# --- variables -------------------------------------------------------------

def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Equal):
        return frozenset((f.left, f.right))
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def bound_vars(f: Formula) -> frozenset[str]:
    out = set()
    for node in walk(f):
        if isinstance(node, QUANTIFIERS):
            out.add(node.var)
    return frozenset(out)


def all_vars(f: Formula) -> frozenset[str]:
    return free_vars(f) | bound_vars(f)


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def walk(f: Formula):
    """Pre-order traversal of all subformulas."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.body)
        elif isinstance(node, BINARY):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, QUANTIFIERS):
            stack.append(node.body)


def relations_used(f: Formula) -> dict[str, int]:
    out: dict[str, int] = {}
    for node in walk(f):
        if isinstance(node, Atom):
            if out.setdefault(node.rel, len(node.args)) != len(node.args):
                raise SignatureError(
                    f"relation {node.rel} used with arities "
                    f"{out[node.rel]} and {len(node.args)}")
    return out


def uses_equality(f: Formula) -> bool:
    return any(isinstance(n, Equal) for n in walk(f))


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, BINARY):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    if isinstance(f, QUANTIFIERS):
        return 1 + quantifier_depth(f.body)
    return 0


def is_quantifier_free(f: Formula) -> bool:
    return not any(isinstance(n, QUANTIFIERS) for n in walk(f))


def size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


def check_signature(f: Formula, sig: Signature) -> None:
    """Raise SignatureError unless every atom of ``f`` fits ``sig``."""
    for node in walk(f):
        if isinstance(node, Atom):
            if node.rel not in sig:
                raise SignatureError(f"unknown relation {node.rel}")
            if sig.arity(node.rel) != len(node.args):
                raise SignatureError(
                    f"arity mismatch: {node.rel} has arity {sig.arity(node.rel)}, "
                    f"used with {len(node.args)} arguments")
        elif isinstance(node, Equal) and not sig.has_equality:
            raise SignatureError("equality atom in a signature without equality")


def infer_signature(f: Formula, equality: bool | None = None) -> Signature:
    rels = relations_used(f)
    eq = uses_equality(f) if equality is None else equality
    return Signature(tuple(sorted(rels.items())), eq)


def fresh_var(base: str, avoid) -> str:
    """First name ``base``, ``base_1``, ``base_2``... not in ``avoid``."""
    root = re.sub(r"_\d+\Z", "", base) or "v"
    if base not in avoid:
        return base
    i = 1
    while f"{root}_{i}" in avoid:
        i += 1
    return f"{root}_{i}"


# --- substitution and renaming ---------------------------------------------

def substitute(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Replace free variables according to ``mapping``.

    Refuses with CaptureError when a replacement variable would fall under a
    binder of ``f``; callers alpha-rename first (see :func:`rename_apart`).
    """
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return f
    return _subst(f, mapping)


def _subst(f, mapping):
    if not mapping:
        return f
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(mapping.get(a, a) for a in f.args))
    if isinstance(f, Equal):
        return Equal(mapping.get(f.left, f.left), mapping.get(f.right, f.right))
    if isinstance(f, (Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(_subst(f.left, mapping), _subst(f.right, mapping))
    if isinstance(f, QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        if not inner:
            return f
        live = free_vars(f.body)
        if any(k in live and v == f.var for k, v in inner.items()):
            raise CaptureError(
                f"substituting into the scope of bound variable {f.var} captures it")
        return type(f)(f.var, _subst(f.body, inner))
    raise TypeError(f"not a formula: {f!r}")


def rename_apart(f: Formula, avoid, names=None) -> Formula:
    """Rename every bound variable of ``f`` so none lies in ``avoid`` and no
    two binders share a name.  ``names`` (a callable) picks new names."""
    used = set(avoid) | free_vars(f)
    pick = names or (lambda base, taken: fresh_var(base, taken))

    def go(g, env):
        if isinstance(g, Atom):
            return Atom(g.rel, tuple(env.get(a, a) for a in g.args))
        if isinstance(g, Equal):
            return Equal(env.get(g.left, g.left), env.get(g.right, g.right))
        if isinstance(g, (Top, Bottom)):
            return g
        if isinstance(g, Not):
            return Not(go(g.body, env))
        if isinstance(g, BINARY):
            return type(g)(go(g.left, env), go(g.right, env))
        new = pick(g.var, used)
        used.add(new)
        return type(g)(new, go(g.body, {**env, g.var: new}))

    return go(f, {})


def distinct_binders(f: Formula) -> Formula:
    """Keep binder names where possible, renaming only clashes with free
    variables or earlier binders."""
    return rename_apart(f, ())


def alpha_normalize(f: Formula) -> Formula:
    """Rename bound variables to v0, v1, ... in binder (pre-)order,
    skipping names that occur free in ``f``."""
    counter = [0]

    def pick(_base, taken):
        while f"v{counter[0]}" in taken:
            counter[0] += 1
        name = f"v{counter[0]}"
        counter[0] += 1
        return name

    return rename_apart(f, (), pick)


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    return alpha_normalize(f) == alpha_normalize(g)


# --- normal forms and guards -------------------------------------------------

def nnf(f: Formula) -> Formula:
    """Negation normal form: negations only on atoms, no implications."""
    return _nnf(f, True)


def _nnf(f, pos):
    if isinstance(f, (Atom, Equal)):
        return f if pos else Not(f)
    if isinstance(f, Top):
        return TOP if pos else BOTTOM
    if isinstance(f, Bottom):
        return BOTTOM if pos else TOP
    if isinstance(f, Not):
        return _nnf(f.body, not pos)
    if isinstance(f, And):
        cls = And if pos else Or
        return cls(_nnf(f.left, pos), _nnf(f.right, pos))
    if isinstance(f, Or):
        cls = Or if pos else And
        return cls(_nnf(f.left, pos), _nnf(f.right, pos))
    if isinstance(f, Implies):
        if pos:
            return Or(_nnf(f.left, False), _nnf(f.right, True))
        return And(_nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Exists):
        return (Exists if pos else Forall)(f.var, _nnf(f.body, pos))
    if isinstance(f, Forall):
        return (Forall if pos else Exists)(f.var, _nnf(f.body, pos))
    raise TypeError(f"not a formula: {f!r}")


def is_nnf(f: Formula) -> bool:
    for node in walk(f):
        if isinstance(node, Implies):
            return False
        if isinstance(node, Not) and not isinstance(node.body, (Atom, Equal)):
            return False
    return True


def miniscope(f: Formula) -> Formula:
    """Equivalent NNF formula with every quantifier pushed as far inward as
    conjunctions, disjunctions and vacuous binding allow."""
    return _mini(nnf(f))


def _mini(f):
    if isinstance(f, (And, Or)):
        return type(f)(_mini(f.left), _mini(f.right))
    if isinstance(f, (Exists, Forall)):
        return _push(type(f), f.var, _mini(f.body))
    return f


def _push(q, var, g):
    if var not in free_vars(g):
        return g
    spread, split = (Forall, Exists) if isinstance(g, And) else (Exists, Forall)
    if isinstance(g, (And, Or)):
        kind = type(g)
        if q is spread:
            return kind(_push(q, var, g.left), _push(q, var, g.right))
        parts = flatten(g, kind)
        inside = [p for p in parts if var in free_vars(p)]
        outside = [p for p in parts if var not in free_vars(p)]
        if outside:
            rest = inside[0]
            for p in inside[1:]:
                rest = kind(rest, p)
            outside.append(_push(q, var, rest))
            out = outside[0]
            for p in outside[1:]:
                out = kind(out, p)
            return out
    return q(var, g)


def instantiate(component: Formula, formal: tuple[str, ...], actual: tuple[str, ...],
                avoid=()) -> Formula:
    """Plug ``actual`` variables into the ``formal`` argument slots of a
    component formula, renaming its bound variables out of the way."""
    if len(formal) != len(actual):
        raise SignatureError(
            f"component expects {len(formal)} arguments, got {len(actual)}")
    body = rename_apart(component, set(avoid) | set(actual) | set(formal))
    return substitute(body, dict(zip(formal, actual)))


def relativize(f: Formula, dom: Formula, var: str = "x", params=()) -> Formula:
    """Guard every quantifier of ``f`` by the domain formula ``dom``.

    ``dom`` has the designated free variable ``var`` plus parameters.
    ``exists y. G`` becomes ``exists y. (dom(y) & G')`` and ``forall y. G``
    becomes ``forall y. (dom(y) -> G')``.  Capture is refused, not repaired.
    """
    params = tuple(params)
    extra = free_vars(dom) - {var} - set(params)
    if extra:
        raise CaptureError(f"domain formula has unexpected free variables {sorted(extra)}")
    dom_bound = bound_vars(dom)
    f_bound = bound_vars(f)
    clash = f_bound & (dom_bound | set(params))
    if clash:
        raise CaptureError(f"bound variables {sorted(clash)} clash with the domain formula")
    if var in f_bound and var in dom_bound:
        raise CaptureError(f"designated variable {var} is bound inside the domain formula")

    def guard(y):
        return substitute(dom, {var: y})

    def go(g):
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, BINARY):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, Exists):
            return Exists(g.var, And(guard(g.var), go(g.body)))
        if isinstance(g, Forall):
            return Forall(g.var, Implies(guard(g.var), go(g.body)))
        return g

    return go(f)
