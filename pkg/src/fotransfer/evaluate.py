"""Tarskian evaluation on finite structures by exhaustive quantifier expansion.

A formula is compiled once per structure into a flat node array and run on
a machine.  The compiled Cython machine is used when the extension was
built; otherwise, or when ``FOTRANSFER_PURE=1`` is set, the pure-Python
machine with the identical algorithm is used.  ``KERNEL`` names the choice.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, Sequence

from . import _pykernel
from .errors import BudgetError, LogicError, SignatureError
from .formula import (
    And, Atom, Bottom, Equal, Exists, Forall, Formula, Implies, Not, Or, Top,
    flatten, free_vars,
)
from .structures import FiniteStructure

if os.environ.get("FOTRANSFER_PURE") == "1":
    Machine = _pykernel.Machine
    KERNEL = "python"
else:
    try:
        from ._ckernel import Machine  # type: ignore[no-redef]
        KERNEL = "cython"
    except ImportError:
        Machine = _pykernel.Machine
        KERNEL = "python"

MEMO_NODE_CAP = 1 << 21
MEMO_TOTAL_CAP = 1 << 25

_OPS = {Top: 0, Bottom: 1, Atom: 2, Equal: 3, Not: 4, And: 5, Or: 6,
        Implies: 7, Exists: 8, Forall: 9}


class Program:
    """A formula compiled against one structure; callable on assignments."""

    def __init__(self, A: FiniteStructure, f: Formula, machine_cls=None):
        self.structure = A
        self.formula = f
        self.free = tuple(sorted(free_vars(f)))
        arity = dict(A.sig.relations)
        rel_index = {r: i for i, r in enumerate(A.sig.names())}
        slots: dict[str, int] = {}

        def slot(v):
            return slots.setdefault(v, len(slots))

        op, a, b, c = [], [], [], []
        args, fv_off, fv_n, fvslots, memo_off = [], [], [], [], []
        memo_size = 0
        n = A.size

        def emit(kind, x=0, y=0, z=0):
            op.append(kind)
            a.append(x)
            b.append(y)
            c.append(z)
            fv_off.append(0)
            fv_n.append(0)
            memo_off.append(-1)
            return len(op) - 1

        def comp(g):
            nonlocal memo_size
            if isinstance(g, Atom):
                if g.rel not in arity:
                    raise SignatureError(f"structure has no relation {g.rel}")
                if arity[g.rel] != len(g.args):
                    raise SignatureError(
                        f"arity mismatch: {g.rel}/{arity[g.rel]} used with {len(g.args)} arguments")
                off = len(args)
                args.extend(slot(v) for v in g.args)
                return emit(2, rel_index[g.rel], off, len(g.args))
            if isinstance(g, Equal):
                return emit(3, slot(g.left), slot(g.right))
            if isinstance(g, (Top, Bottom)):
                return emit(_OPS[type(g)])
            if isinstance(g, Not):
                return emit(4, comp(g.body))
            if isinstance(g, (And, Or, Implies)):
                left = comp(g.left)
                right = comp(g.right)
                return emit(_OPS[type(g)], left, right)
            if isinstance(g, (Exists, Forall)):
                body = comp(g.body)
                i = emit(_OPS[type(g)], body, slot(g.var))
                fv = sorted(free_vars(g))
                cells = n ** len(fv)
                if cells <= MEMO_NODE_CAP and memo_size + cells <= MEMO_TOTAL_CAP:
                    fv_off[i] = len(fvslots)
                    fv_n[i] = len(fv)
                    fvslots.extend(slot(v) for v in fv)
                    memo_off[i] = memo_size
                    memo_size += cells
                return i
            raise TypeError(f"not a formula: {g!r}")

        for v in self.free:
            slot(v)
        self.root = comp(f)
        self.slots = slots
        tables, rel_off = [], []
        pos = 0
        for rel in A.sig.names():
            rel_off.append(pos)
            d = A.dense(rel)
            tables.append(d)
            pos += len(d)
        import numpy as np

        flat = np.concatenate(tables) if tables else np.zeros(1, dtype=np.uint8)
        cls = machine_cls or Machine
        self.machine = cls(op, a, b, c, args, fv_off, fv_n, fvslots, memo_off,
                           memo_size, flat, rel_off, n, len(slots))

    def __call__(self, asg: Mapping[str, int] | None = None) -> bool:
        asg = asg or {}
        missing = [v for v in self.free if v not in asg]
        if missing:
            raise LogicError(f"unassigned free variables {missing}")
        for v in self.free:
            e = asg[v]
            if not 0 <= e < self.structure.size:
                raise LogicError(f"value {e} for {v} outside the universe")
            self.machine.set_slot(self.slots[v], int(e))
        return bool(self.machine.run(self.root))

    def at(self, *values: int) -> bool:
        """Truth with the free variables (sorted by name) bound to ``values``."""
        return self(dict(zip(self.free, values)))


class Evaluator:
    """Caches compiled programs for one structure."""

    def __init__(self, A: FiniteStructure, machine_cls=None):
        self.structure = A
        self.machine_cls = machine_cls
        self._programs: dict[Formula, Program] = {}

    def program(self, f: Formula) -> Program:
        p = self._programs.get(f)
        if p is None:
            p = self._programs[f] = Program(self.structure, f, self.machine_cls)
        return p

    def __call__(self, f: Formula, asg: Mapping[str, int] | None = None) -> bool:
        return self.program(f)(asg)

    def satisfying(self, f: Formula, vars: Sequence[str], fixed: Mapping[str, int] | None = None,
                   candidates: Mapping[str, Iterable[int]] | None = None):
        """All tuples over ``vars`` satisfying ``f`` (with ``fixed`` for the
        remaining free variables), in lexicographic order.  Top-level
        conjuncts are checked as soon as their variables are bound."""
        fixed = dict(fixed or {})
        vars = tuple(vars)
        extra = free_vars(f) - set(vars) - set(fixed)
        if extra:
            raise LogicError(f"unassigned free variables {sorted(extra)}")
        conjuncts = flatten(f, And)
        stage: list[list[Program]] = [[] for _ in range(len(vars) + 1)]
        for g in conjuncts:
            need = free_vars(g) - set(fixed)
            depth = max((vars.index(v) + 1 for v in need), default=0)
            stage[depth].append(self.program(g))
        domains = [list(candidates.get(v, self.structure.universe)) if candidates
                   else list(self.structure.universe) for v in vars]
        asg = dict(fixed)
        out = []

        def ok(progs):
            return all(p({v: asg[v] for v in p.free}) for p in progs)

        def go(d):
            if d == len(vars):
                out.append(tuple(asg[v] for v in vars))
                return
            v = vars[d]
            for e in domains[d]:
                asg[v] = e
                if ok(stage[d + 1]):
                    go(d + 1)
            asg.pop(v, None)

        if ok(stage[0]):
            go(0)
        return out


def evaluate(A: FiniteStructure, f: Formula, asg: Mapping[str, int] | None = None) -> bool:
    """Truth value of ``f`` in ``A`` under ``asg``."""
    return Program(A, f)(asg)


def check_budget(size: int, exponent: int, limit: int = 10 ** 7) -> None:
    if size ** exponent > limit:
        raise BudgetError(f"{size}^{exponent} assignments exceed the budget {limit}")
