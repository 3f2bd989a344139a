"""Naive reference evaluator: direct recursion on the formula tree.

Kept deliberately independent of the compiled evaluator (no node arrays,
no memo, no dense tables) so the two can be checked against each other.
"""

from .formula import And, Atom, Bottom, Equal, Exists, Forall, Implies, Not, Or, Top


def naive_eval(A, f, asg=None):
    asg = dict(asg or {})
    tables = {rel: set(t) for rel, t in zip(A.sig.names(), A.tables)}
    return _go(f, asg, tables, range(A.size))


def _go(f, asg, tables, universe):
    if isinstance(f, Atom):
        return tuple(asg[v] for v in f.args) in tables[f.rel]
    if isinstance(f, Equal):
        return asg[f.left] == asg[f.right]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _go(f.body, asg, tables, universe)
    if isinstance(f, And):
        return _go(f.left, asg, tables, universe) and _go(f.right, asg, tables, universe)
    if isinstance(f, Or):
        return _go(f.left, asg, tables, universe) or _go(f.right, asg, tables, universe)
    if isinstance(f, Implies):
        return (not _go(f.left, asg, tables, universe)) or _go(f.right, asg, tables, universe)
    if isinstance(f, (Exists, Forall)):
        results = (_go(f.body, {**asg, f.var: e}, tables, universe) for e in universe)
        return any(results) if isinstance(f, Exists) else all(results)
    raise TypeError(f"not a formula: {f!r}")
