"""Seeded test corpora: formulas, prenex sentences, structures, schemes.

Everything here is deterministic for a given seed so suite reports are
reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .errors import BudgetError
from .formula import (
    And, Atom, Equal, Exists, Forall, Formula, Implies, Not, Or, Signature, TOP, atom,
    free_vars, is_sentence, uses_equality,
)
from .schemes import Component, Scheme, default_args
from .structures import FiniteStructure
from .syntax import parse

BINARY_SIG = Signature((("E", 2),), True)
BINARY_SIG_NOEQ = BINARY_SIG.without_equality()

# 30 formulas over one binary relation, quantifier depth <= 3.
FV_CORPUS = (
    "E(x,y)",
    "!E(x,x)",
    "E(x,y) -> E(y,x)",
    "x = y",
    "exists x. E(x,x)",
    "forall x. E(x,x)",
    "exists x. forall y. E(x,y)",
    "forall x. exists y. E(x,y)",
    "exists y. forall x. E(x,y)",
    "forall x. forall y. (E(x,y) -> E(y,x))",
    "exists x. exists y. (E(x,y) & !E(y,x))",
    "forall x. (E(x,x) | (exists y. E(y,x)))",
    "exists x. (forall y. (E(x,y) -> E(y,y)))",
    "forall x. exists y. (E(x,y) & !(x = y))",
    "exists x. forall y. (E(x,y) | !E(y,x))",
    "forall y. (E(x,y) -> (exists z. E(y,z)))",
    "exists z. (E(x,z) & E(z,y))",
    "forall z. (E(z,x) -> E(z,y))",
    "forall x. forall y. forall z. ((E(x,y) & E(y,z)) -> E(x,z))",
    "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(z,x))",
    "forall x. exists y. forall z. (E(x,y) & (E(y,z) -> E(x,z)))",
    "exists x. forall y. exists z. (E(x,z) & E(z,y))",
    "forall x. exists y. forall z. (E(z,y) -> E(z,x))",
    "exists x. forall y. exists z. (E(y,z) | E(z,x))",
    "forall x. ((exists y. E(x,y)) -> (exists z. E(z,x)))",
    "!(exists x. forall y. E(y,x))",
    "(exists x. E(x,x)) & (forall x. exists y. E(y,x))",
    "forall x. forall y. (x = y | E(x,y) | E(y,x))",
    "exists x. forall y. (E(y,x) -> x = y)",
    "forall x. exists y. exists z. (E(x,y) & E(y,z) & !E(x,z))",
)

# Bounded arithmetic sentences over partial + and x on 0..N, prenex with
# negation-normal matrices.
ARITH_CORPUS = (
    "exists z. Plus(z,z,z)",
    "exists z. Times(z,z,z)",
    "forall x. Plus(x,x,x)",
    "forall x. exists z. Plus(x,z,x)",
    "forall x. exists o. Times(x,o,x)",
    "exists z. forall x. Times(x,z,z)",
    "exists z. forall x. Plus(z,x,x)",
    "forall x. exists y. Plus(x,x,y)",
    "forall x. forall y. exists z. Plus(x,y,z)",
    "forall x. forall y. forall z. (!Plus(x,y,z) | Plus(y,x,z))",
    "forall x. forall y. forall z. (!Times(x,y,z) | Times(y,x,z))",
    "exists x. exists y. (!(x = y) & Plus(x,x,y))",
    "exists x. exists y. (!(x = y) & Times(x,x,y))",
    "forall x. forall y. forall z. forall w. (!Plus(x,y,z) | !Plus(x,y,w) | z = w)",
    "exists x. forall y. (!Plus(x,y,y) | x = y | Plus(y,x,y))",
    "forall x. exists y. exists z. (Plus(x,y,z) & !(y = z))",
    "exists x. exists y. exists z. (Plus(x,x,y) & Times(x,x,y) & Plus(y,y,z) & !(x = z))",
    "exists x. exists y. (Times(x,x,y) & Plus(x,x,y) & !(x = y))",
    "exists x. forall y. exists z. (Plus(y,z,x) | Times(y,z,x))",
    "forall x. forall y. exists z. (!Times(x,y,z) | Plus(x,y,z))",
)


def fv_corpus() -> list[Formula]:
    return [parse(t, BINARY_SIG) for t in FV_CORPUS]


def arith_corpus() -> list[Formula]:
    from .codings import ARITH_SIG
    return [parse(t, ARITH_SIG) for t in ARITH_CORPUS]


# --- random formulas -----------------------------------------------------------

def random_literal(rng: random.Random, sig: Signature, vars) -> Formula:
    vars = list(vars)
    choices = list(sig.relations)
    if sig.has_equality and len(vars) > 1 and rng.random() < 0.15:
        a, b = rng.sample(vars, 2)
        g: Formula = Equal(a, b)
    else:
        rel, ar = rng.choice(choices)
        g = Atom(rel, tuple(rng.choice(vars) for _ in range(ar)))
    return Not(g) if rng.random() < 0.4 else g


def random_matrix(rng: random.Random, sig: Signature, vars, size: int, must=()) -> Formula:
    """Negation-normal quantifier-free formula with ``size`` literals that
    mentions every variable in ``must``."""
    lits = [random_literal(rng, sig, vars) for _ in range(size)]
    need = [v for v in must if not any(v in free_vars(l) for l in lits)]
    for v in need:
        rel, ar = rng.choice(list(sig.relations))
        args = [v] + [rng.choice(list(vars)) for _ in range(ar - 1)]
        rng.shuffle(args)
        lits.append(Atom(rel, tuple(args)))
    rng.shuffle(lits)
    out = lits[0]
    for l in lits[1:]:
        out = (And if rng.random() < 0.5 else Or)(out, l)
    return out


def random_prenex(rng: random.Random, sig: Signature, kind: str, blocks: int,
                  free=(), matrix_size: int = 3, max_block: int = 2,
                  prefix: str = "v") -> Formula:
    """Prenex formula with exactly ``blocks`` alternation blocks led by
    ``kind`` ("Sigma" or "Pi"), free variables among ``free``."""
    bound = []
    layout = []
    q = Exists if kind == "Sigma" else Forall
    counter = itertools.count()
    for _ in range(blocks):
        vs = [f"{prefix}{next(counter)}" for _ in range(rng.randint(1, max_block))]
        layout.append((q, vs))
        bound += vs
        q = Forall if q is Exists else Exists
    vars = list(free) + bound
    if not vars:
        return TOP if rng.random() < 0.5 else Not(TOP)
    body = random_matrix(rng, sig, vars, max(matrix_size, 1), must=bound)
    for q, vs in reversed(layout):
        for v in reversed(vs):
            body = q(v, body)
    return body


def random_formula(rng: random.Random, sig: Signature, depth: int, free=("x", "y"),
                   pool=("x", "y", "z")) -> Formula:
    """Arbitrary (non-prenex) formula of quantifier depth <= ``depth``."""
    def go(d, scope):
        r = rng.random()
        if d == 0 or r < 0.3:
            return random_literal(rng, sig, scope)
        if r < 0.6:
            v = rng.choice(pool)
            return (Exists if rng.random() < 0.5 else Forall)(v, go(d - 1, sorted(set(scope) | {v})))
        if r < 0.7:
            return Not(go(d, scope))
        left, right = go(d - 1, scope), go(d - 1, scope)
        return rng.choice((And, Or, Implies))(left, right)

    scope = list(free) if free else [pool[0]]
    f = go(depth, scope)
    if not free:
        for v in sorted(free_vars(f)):
            f = Exists(v, f)
    return f


def formula_corpus(seed: int = 7, extra: int = 30) -> list[Formula]:
    """The fixed FV corpus plus ``extra`` random formulas (depth <= 3, at
    most two free variables) over one binary relation with equality."""
    rng = random.Random(seed)
    out = fv_corpus()
    for i in range(extra):
        free = ("x", "y")[: i % 3]
        out.append(random_formula(rng, BINARY_SIG, 3, free=free))
    return out


def sentence_corpus(seed: int = 11, count: int = 24, rel: str = "E", equality: bool = False,
                    max_r: int = 3) -> list[Formula]:
    """Prenex sentences with r <= ``max_r`` blocks over one binary relation,
    both leading kinds, small matrices."""
    sig = Signature(((rel, 2),), equality)
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = "Sigma" if i % 2 == 0 else "Pi"
        blocks = 1 + (i // 2) % max_r
        out.append(random_prenex(rng, sig, kind, blocks, matrix_size=rng.randint(1, 3),
                                 max_block=1 if blocks == 3 else 2))
    return out


# --- structures -----------------------------------------------------------------

def random_structure(rng: random.Random, sig: Signature, size: int,
                     density: float = 0.4, name: str | None = None) -> FiniteStructure:
    tables = {}
    for rel, ar in sig.relations:
        tables[rel] = [t for t in itertools.product(range(size), repeat=ar)
                       if rng.random() < density]
    return FiniteStructure.build(sig, size, tables, name=name or f"rand{size}")


def binary_classes(size: int, sig: Signature = BINARY_SIG_NOEQ) -> list[FiniteStructure]:
    """One representative per isomorphism class of structures with a single
    binary relation on ``size`` elements (least adjacency bitmask)."""
    if len(sig.relations) != 1 or sig.relations[0][1] != 2:
        raise ValueError("binary_classes needs a signature with one binary relation")
    cells = size * size
    if cells > 20:
        raise BudgetError(f"2^{cells} structures exceed the enumeration budget")
    rel = sig.relations[0][0]
    masks = np.arange(1 << cells, dtype=np.int64)
    best = masks.copy()
    for perm in itertools.permutations(range(size)):
        moved = np.zeros_like(masks)
        for a in range(size):
            for b in range(size):
                bit = (masks >> (a * size + b)) & 1
                moved |= bit << (perm[a] * size + perm[b])
        np.minimum(best, moved, out=best)
    reps = sorted(set(int(m) for m in np.unique(best)))
    out = []
    for m in reps:
        rows = [(a, b) for a in range(size) for b in range(size) if (m >> (a * size + b)) & 1]
        out.append(FiniteStructure.build(sig, size, {rel: rows}, name=f"c{size}_{m}"))
    return out


# --- random schemes ---------------------------------------------------------------

SCHEME_TARGET = Signature((("T", 2), ("U", 3)), False)


def random_sigma_scheme(rng: random.Random, source_sig: Signature, k: int, params=(),
                        target: Signature = SCHEME_TARGET) -> Scheme:
    """A Sigma_k-scheme with random components of exactly k blocks over
    ``target``; correctness is the standard complementarity condition."""
    params = tuple(params)
    source_sig = source_sig.without_equality()

    def comp(args, tag):
        f = random_prenex(rng, target, "Sigma", k, free=tuple(args) + params,
                          matrix_size=2, max_block=1, prefix=tag)
        return Component(tuple(args), f)

    rels, corels = [], []
    for rel, ar in source_sig.relations:
        args = default_args(ar)
        rels.append((rel, comp(args, "r")))
        corels.append((rel, comp(args, "s")))
    return Scheme(f"random{k}", source_sig, target, params, comp(("x",), "d"),
                  tuple(rels), corels=tuple(corels), declared_k=k)


def equality_free(fs) -> list[Formula]:
    return [f for f in fs if not uses_equality(f)]


def sentences_only(fs) -> list[Formula]:
    return [f for f in fs if is_sentence(f)]
