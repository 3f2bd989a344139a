"""Feferman-Vaught decomposition over finite powers.

In the power ``A^(k+1)`` an element is a (k+1)-tuple of elements of ``A``
and a relation holds of tuples iff it holds in every coordinate.  Under
that convention every formula ``phi`` is equivalent to a disjunction of
clauses, each clause a conjunction over coordinates ``i`` of a base formula
evaluated in ``A`` at the i-th projections::

    A^(k+1) |= phi[a]   iff   some clause c has   A |= c[i][a_i]  for all i

Component formulas keep the variable names of ``phi``; the i-th entry of a
clause is read with every variable bound to its i-th projection.

The decomposition is computed by structural induction on the miniscoped
negation normal form.  Internally a clause
is a tuple of literal sets (one conjunction per coordinate).  Negation is a
CNF-to-DNF distribution with contradiction and subsumption pruning; an
existential distributes into every clause and every coordinate because the
coordinates of a witness are independent.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import BudgetError, LogicError
from .evaluate import Evaluator
from .formula import (
    TOP, And, Atom, Bottom, Equal, Exists, Forall, Formula, Implies, Not, Or, Top,
    conj, flatten, free_vars, miniscope,
)
from .structures import FiniteStructure
from .syntax import render

MAX_CLAUSES = 200_000
VERIFY_BUDGET = 20_000


def product(factors) -> FiniteStructure:
    """``A_0 x ... x A_k`` with coordinatewise relations; element index =
    mixed-radix digits, first coordinate most significant."""
    factors = list(factors)
    if not factors:
        raise LogicError("a product needs at least one coordinate")
    sig = factors[0].sig
    if any(F.sig != sig for F in factors):
        raise LogicError("product factors must share one signature")
    sizes = [F.size for F in factors]
    size = 1
    for n in sizes:
        size *= n
    if size > 4096:
        raise BudgetError(f"product of size {size} exceeds 4096")
    tables = {}
    for rel, ar in sig.relations:
        out = []
        for pick in itertools.product(*(sorted(F.rel(rel)) for F in factors)):
            # pick[i] is the tuple used in coordinate i
            out.append(tuple(_index([pick[i][j] for i in range(len(factors))], sizes)
                             for j in range(ar)))
        tables[rel] = out
    name = "x".join(F.name for F in factors)
    return FiniteStructure.build(sig, size, tables, name=name)


def power(A: FiniteStructure, m: int) -> FiniteStructure:
    """``A^m``: the product of ``m`` copies of ``A``."""
    if m < 1:
        raise LogicError("a power needs at least one coordinate")
    return product([A] * m).renamed(f"{A.name}^{m}")


def _index(digits, sizes):
    v = 0
    for d, n in zip(digits, sizes):
        v = v * n + d
    return v


def projections(e: int, n, m: int) -> tuple[int, ...]:
    """Coordinates of element ``e`` of a power (``n`` an int) or of a
    product (``n`` the list of factor sizes)."""
    sizes = [n] * m if isinstance(n, int) else list(n)
    out = []
    for size in reversed(sizes):
        e, d = divmod(e, size)
        out.append(d)
    return tuple(reversed(out))


@dataclass(frozen=True)
class FVDecomposition:
    k: int
    clauses: tuple[tuple[Formula, ...], ...]

    @property
    def r(self) -> int:
        return len(self.clauses)

    def free_vars(self) -> frozenset:
        return frozenset().union(*(free_vars(f) for c in self.clauses for f in c))

    def drop(self, index: int) -> "FVDecomposition":
        return FVDecomposition(self.k, self.clauses[:index] + self.clauses[index + 1:])

    def render(self) -> str:
        if not self.clauses:
            return "false"
        return "\n".join(" ; ".join(render(f) for f in c) for c in self.clauses)


# --- clause algebra ------------------------------------------------------------

def _neg(lit: Formula) -> Formula:
    if isinstance(lit, Not):
        return lit.body
    return Not(lit)


@functools.lru_cache(maxsize=None)
def _conjuncts(f: Formula) -> frozenset:
    return frozenset(flatten(f, And))


@functools.lru_cache(maxsize=None)
def _entails(a: Formula, b: Formula) -> bool:
    """Cheap sound entailment between literals: equality, monotonicity of
    an existential in its conjunct set, and contraposition."""
    if a == b:
        return True
    if isinstance(a, Exists) and isinstance(b, Exists) and a.var == b.var:
        have = _conjuncts(a.body)
        return all(any(_entails(x, y) for x in have) for y in _conjuncts(b.body))
    if isinstance(a, Not) and isinstance(b, Not):
        return _entails(b.body, a.body)
    return False


def _consistent(comp) -> bool:
    for lit in comp:
        if isinstance(lit, Bottom):
            return False
        if isinstance(lit, Not) and any(_entails(x, lit.body) for x in comp):
            return False
    return True


def _clean(clause):
    """None for a clause with a contradictory coordinate."""
    return clause if all(_consistent(c) for c in clause) else None


def _norm_lit(lit: Formula):
    """Double negations and constants out; returns None for TOP."""
    while isinstance(lit, Not) and isinstance(lit.body, Not):
        lit = lit.body.body
    if isinstance(lit, Top) or (isinstance(lit, Not) and isinstance(lit.body, Bottom)):
        return None
    if isinstance(lit, Not) and isinstance(lit.body, Top):
        return Bottom()
    return lit


def _with(clause, i, lit):
    lit = _norm_lit(lit)
    if lit is None or any(_entails(x, lit) for x in clause[i]):
        return clause
    out = list(clause)
    out[i] = frozenset({x for x in clause[i] if not _entails(lit, x)} | {lit})
    return _clean(tuple(out))


def _implied(have, want) -> bool:
    return all(any(_entails(x, y) for x in have) for y in want)


def _subsumes(c, d):
    """Clause d entails clause c coordinatewise."""
    return all(_implied(b, a) for a, b in zip(c, d))


def _reduce(clauses):
    """Deduplicate and remove subsumed clauses (weaker clause wins)."""
    uniq = sorted(set(clauses), key=lambda c: (sum(len(x) for x in c), _key(c)))
    kept = []
    for c in uniq:
        if not any(_subsumes(d, c) for d in kept):
            kept.append(c)
    if len(kept) > MAX_CLAUSES:
        raise BudgetError(f"decomposition exceeds {MAX_CLAUSES} clauses")
    return kept


def _key(c):
    return tuple(tuple(sorted(render(l) for l in comp)) for comp in c)


def _top(m):
    return [tuple(frozenset() for _ in range(m))]


def _and(xs, ys):
    out = []
    for c in xs:
        for d in ys:
            e = c
            for i, comp in enumerate(d):
                for lit in comp:
                    if e is None:
                        break
                    e = _with(e, i, lit)
            if e is not None:
                out.append(e)
    return _reduce(out)


def _not(xs, m):
    out = _top(m)
    for c in xs:
        options = [(i, _neg(lit)) for i in range(m) for lit in sorted(c[i], key=render)]
        nxt = []
        for d in out:
            for i, lit in options:
                e = _with(d, i, lit)
                if e is not None:
                    nxt.append(e)
        out = _reduce(nxt)
        if not out:
            break
    return out


def _exists(var, xs):
    out = []
    for c in xs:
        comps = []
        for comp in c:
            inside = sorted((l for l in comp if var in free_vars(l)), key=render)
            outside = {l for l in comp if var not in free_vars(l)}
            if inside:
                outside.add(Exists(var, conj(inside)))
            comps.append(frozenset(outside))
        e = _clean(tuple(comps))
        if e is not None:
            out.append(e)
    return _reduce(out)


def _decompose(f: Formula, m: int):
    if isinstance(f, (Atom, Equal)):
        return [tuple(frozenset({f}) for _ in range(m))]
    if isinstance(f, Top):
        return _top(m)
    if isinstance(f, Bottom):
        return []
    if isinstance(f, Not):
        return _not(_decompose(f.body, m), m)
    if isinstance(f, And):
        return _and(_decompose(f.left, m), _decompose(f.right, m))
    if isinstance(f, Or):
        return _reduce(_decompose(f.left, m) + _decompose(f.right, m))
    if isinstance(f, Implies):
        return _reduce(_not(_decompose(f.left, m), m) + _decompose(f.right, m))
    if isinstance(f, Exists):
        return _exists(f.var, _decompose(f.body, m))
    if isinstance(f, Forall):
        return _not(_exists(f.var, _not(_decompose(f.body, m), m)), m)
    raise TypeError(f"not a formula: {f!r}")


def _tidy(f: Formula) -> Formula:
    """Read ``!exists v. !b`` back as ``forall v. b`` for display."""
    if isinstance(f, Not):
        b = f.body
        if isinstance(b, Not):
            return _tidy(b.body)
        if isinstance(b, Exists) and isinstance(b.body, Not):
            return Forall(b.var, _tidy(b.body.body))
        return Not(_tidy(b))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(_tidy(f.left), _tidy(f.right))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, _tidy(f.body))
    return f


def fv_decompose(phi: Formula, k: int) -> FVDecomposition:
    """Clauses of ``k+1`` base formulas equivalent to ``phi`` on ``A^(k+1)``."""
    if k < 0:
        raise LogicError("k must be >= 0")
    m = k + 1
    raw = _decompose(miniscope(phi), m)
    clauses = []
    for c in raw:
        clauses.append(tuple(_tidy(conj(sorted(comp, key=render))) if comp else TOP for comp in c))
    clauses.sort(key=lambda c: tuple(render(f) for f in c))
    return FVDecomposition(k, tuple(clauses))


# --- verification --------------------------------------------------------------------

@dataclass(frozen=True)
class FVResult:
    ok: bool
    checked: int
    counterexample: tuple | None = None


def fv_check(phi: Formula, k: int, A: FiniteStructure,
             decomposition: FVDecomposition | None = None) -> FVResult:
    """Exhaustive comparison of ``phi`` on ``A^(k+1)`` with the clauses on
    ``A`` over every assignment of the free variables."""
    return fv_check_product(phi, [A] * (k + 1), decomposition)


def fv_check_product(phi: Formula, factors,
                     decomposition: FVDecomposition | None = None) -> FVResult:
    """As :func:`fv_check` on ``A_0 x ... x A_k``; clause entry i is read in
    ``A_i``.  The construction never assumes the factors are equal, so the
    same clauses serve products of distinct structures."""
    factors = list(factors)
    m = len(factors)
    dec = decomposition if decomposition is not None else fv_decompose(phi, m - 1)
    if dec.k != m - 1:
        raise LogicError("decomposition has the wrong number of components")
    xs = tuple(sorted(free_vars(phi) | dec.free_vars()))
    sizes = [F.size for F in factors]
    size = 1
    for n in sizes:
        size *= n
    total = size ** len(xs)
    if total > VERIFY_BUDGET:
        raise BudgetError(f"{total} assignments exceed the verification budget {VERIFY_BUDGET}")
    P = product(factors)
    big = Evaluator(P).program(phi)
    small = [Evaluator(F) for F in factors]
    # repeated factors share one truth table
    owner = [next(j for j, F in enumerate(factors) if F is G) for G in factors]
    table: dict = {}

    def truth(i, f, base_asg):
        key_f = (owner[i], f)
        t = table.get(key_f)
        if t is None:
            prog = small[i].program(f)
            t = table[key_f] = (prog.free, prog, {})
        free, prog, memo = t
        key = tuple(base_asg[v] for v in free)
        if key not in memo:
            memo[key] = prog(dict(zip(free, key)))
        return memo[key]

    count = 0
    for values in itertools.product(range(P.size), repeat=len(xs)):
        asg = dict(zip(xs, values))
        proj = [projections(v, sizes, m) for v in values]
        lhs = big({v: asg[v] for v in big.free})
        coords = [{x: p[i] for x, p in zip(xs, proj)} for i in range(m)]
        rhs = any(all(truth(i, c[i], coords[i]) for i in range(m)) for c in dec.clauses)
        count += 1
        if lhs != rhs:
            return FVResult(False, count, tuple(values))
    return FVResult(True, count)


def fv_verify(phi: Formula, k: int, A: FiniteStructure,
              decomposition: FVDecomposition | None = None) -> bool:
    return fv_check(phi, k, A, decomposition).ok
