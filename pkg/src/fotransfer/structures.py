"""Finite relational structures, the eq-congruence, quotients, isomorphism.

The universe of a structure of size ``n`` is ``0..n-1``.  Relation tables
are stored as sorted tuples of tuples so iteration order is reproducible.

File format (one structure)::

    structure NAME
    universe N
    rel RELNAME ARITY
    e1 e2 ... eARITY        # one tuple per line
    end
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import BudgetError, ParseError, StructureError
from .formula import Signature

ISO_BUDGET = 12


@dataclass(frozen=True)
class FiniteStructure:
    sig: Signature
    size: int
    tables: tuple[tuple[tuple[int, ...], ...], ...]
    name: str = field(default="A", compare=False)

    def __post_init__(self):
        if self.size < 1:
            raise StructureError("universe must be nonempty")
        if len(self.tables) != len(self.sig.relations):
            raise StructureError("one table per relation of the signature")
        canon = []
        for (rel, arity), table in zip(self.sig.relations, self.tables):
            rows = set()
            for t in table:
                t = tuple(int(e) for e in t)
                if len(t) != arity:
                    raise StructureError(f"tuple {t} has wrong length for {rel}/{arity}")
                if any(e < 0 or e >= self.size for e in t):
                    raise StructureError(f"tuple {t} of {rel} leaves the universe")
                rows.add(t)
            canon.append(tuple(sorted(rows)))
        object.__setattr__(self, "tables", tuple(canon))

    @classmethod
    def build(cls, sig: Signature, size: int,
              tables: Mapping[str, Iterable] | None = None, name="A") -> "FiniteStructure":
        tables = dict(tables or {})
        unknown = set(tables) - set(sig.names())
        if unknown:
            raise StructureError(f"tables for unknown relations {sorted(unknown)}")
        return cls(sig, size, tuple(tuple(tables.get(r, ())) for r in sig.names()), name)

    @property
    def universe(self) -> range:
        return range(self.size)

    def rel(self, name: str) -> frozenset:
        return self._sets[name]

    def holds(self, name: str, tup) -> bool:
        return tuple(tup) in self._sets[name]

    @cached_property
    def _sets(self):
        return {r: frozenset(t) for r, t in zip(self.sig.names(), self.tables)}

    def dense(self, name: str) -> np.ndarray:
        """Flat 0/1 table of ``name`` indexed in row-major order."""
        return self._dense[name]

    @cached_property
    def _dense(self):
        out = {}
        for (rel, arity), table in zip(self.sig.relations, self.tables):
            cells = self.size ** arity
            if cells > 1 << 27:
                raise BudgetError(f"dense table for {rel} would hold {cells} cells")
            arr = np.zeros(cells, dtype=np.uint8)
            if table:
                idx = np.zeros(len(table), dtype=np.int64)
                for j in range(arity):
                    idx = idx * self.size + np.fromiter((t[j] for t in table), np.int64, len(table))
                arr[idx] = 1
            out[rel] = arr
        return out

    def renamed(self, name: str) -> "FiniteStructure":
        return FiniteStructure(self.sig, self.size, self.tables, name)


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min))
        if any(not b for b in blocks):
            raise StructureError("partition blocks must be nonempty")
        seen = set()
        for b in blocks:
            if seen & b:
                raise StructureError("partition blocks overlap")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(frozenset([i]) for i in range(n)))

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(i)
        return cls(tuple(frozenset(g) for g in groups.values()))

    def covers(self, n: int) -> bool:
        return set().union(*self.blocks) == set(range(n)) if self.blocks else n == 0

    def block_index(self) -> dict[int, int]:
        return {e: i for i, b in enumerate(self.blocks) for e in b}

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


# --- eq-congruence and quotients --------------------------------------------

def _profile(A: FiniteStructure, x: int):
    """Per relation and argument position, the set of contexts (the tuple
    with position i blanked) in which ``x`` at position i makes it hold."""
    key = []
    for rel, arity in A.sig.relations:
        for i in range(arity):
            ctx = frozenset(t[:i] + t[i + 1:] for t in A.rel(rel) if t[i] == x)
            key.append(ctx)
    return tuple(key)


def eq_congruence(A: FiniteStructure) -> Partition:
    """Indistinguishability: x ~ y iff for every relation R, position i and
    choice of the other arguments, R holds with x at i iff with y at i."""
    return Partition.from_labels([_profile(A, x) for x in A.universe])


def is_congruence(A: FiniteStructure, P: Partition) -> bool:
    if not P.covers(A.size):
        return False
    idx = P.block_index()
    sizes = [len(b) for b in P.blocks]
    for rel, arity in A.sig.relations:
        counts: dict = {}
        for t in A.rel(rel):
            bt = tuple(idx[e] for e in t)
            counts[bt] = counts.get(bt, 0) + 1
        for bt, c in counts.items():
            full = 1
            for b in bt:
                full *= sizes[b]
            if c != full:
                return False
    return True


def quotient(A: FiniteStructure, P: Partition) -> FiniteStructure:
    """The structure on the blocks of ``P`` (ordered by least element)."""
    if not P.covers(A.size):
        raise StructureError("partition does not cover the universe")
    if not is_congruence(A, P):
        raise StructureError("partition is not a congruence for the relations")
    idx = P.block_index()
    tables = {rel: {tuple(idx[e] for e in t) for t in A.rel(rel)} for rel in A.sig.names()}
    return FiniteStructure.build(A.sig, len(P.blocks), tables, name=f"{A.name}/eq")


def reduce(A: FiniteStructure) -> FiniteStructure:
    """A modulo its eq-congruence."""
    return quotient(A, eq_congruence(A))


def substructure(A: FiniteStructure, elements: Iterable[int], name=None) -> FiniteStructure:
    """Induced substructure on ``elements`` (renumbered in increasing order)."""
    keep = sorted(set(elements))
    if not keep:
        raise StructureError("empty substructure")
    pos = {e: i for i, e in enumerate(keep)}
    tables = {rel: [tuple(pos[e] for e in t) for t in A.rel(rel) if all(e in pos for e in t)]
              for rel in A.sig.names()}
    return FiniteStructure.build(A.sig, len(keep), tables, name=name or A.name)


# --- isomorphism --------------------------------------------------------------

def iso_check(A: FiniteStructure, B: FiniteStructure, budget: int = ISO_BUDGET) -> bool:
    """Is there a bijection preserving and reflecting every relation?"""
    if max(A.size, B.size) > budget:
        raise BudgetError(f"iso_check limited to size {budget}")
    return find_isomorphism(A, B) is not None


def find_isomorphism(A: FiniteStructure, B: FiniteStructure):
    if A.size != B.size:
        return None
    if dict(A.sig.relations) != dict(B.sig.relations):
        return None
    rels = A.sig.names()
    if any(len(A.rel(r)) != len(B.rel(r)) for r in rels):
        return None

    def invariant(S, x):
        out = []
        for r in rels:
            tabs = S.rel(r)
            ar = dict(S.sig.relations)[r]
            for i in range(ar):
                out.append(sum(1 for t in tabs if t[i] == x))
            out.append(sum(1 for t in tabs if all(e == x for e in t)))
        return tuple(out)

    inv_a = [invariant(A, x) for x in A.universe]
    inv_b = [invariant(B, x) for x in B.universe]
    if sorted(inv_a) != sorted(inv_b):
        return None
    order = sorted(A.universe, key=lambda x: (sum(1 for y in A.universe if inv_a[y] == inv_a[x]), x))
    arity = dict(A.sig.relations)
    mapping: dict[int, int] = {}
    used = set()

    def consistent(x):
        mapped = list(mapping)
        for r in rels:
            ar = arity[r]
            ta, tb = A.rel(r), B.rel(r)
            for tup in itertools.product(mapped, repeat=ar):
                if x not in tup:
                    continue
                if (tup in ta) != (tuple(mapping[e] for e in tup) in tb):
                    return False
        return True

    def search(i):
        if i == len(order):
            return True
        x = order[i]
        for y in B.universe:
            if y in used or inv_b[y] != inv_a[x]:
                continue
            mapping[x] = y
            used.add(y)
            if consistent(x) and search(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if search(0) else None


# --- file format --------------------------------------------------------------

def dump_structure(A: FiniteStructure, name: str | None = None) -> str:
    lines = [f"structure {name or A.name}", f"universe {A.size}"]
    for (rel, arity), table in zip(A.sig.relations, A.tables):
        lines.append(f"rel {rel} {arity}")
        lines.extend(" ".join(map(str, t)) for t in table)
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_structures(text: str, equality: bool = True) -> list[FiniteStructure]:
    """All structures in ``text``; ``#`` starts a comment."""
    out = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if cur is None:
            if head != "structure" or len(words) != 2:
                raise ParseError("expected 'structure NAME'", raw, 0, lineno)
            cur = {"name": words[1], "size": None, "rels": [], "tables": {}, "rel": None}
            continue
        if head == "universe":
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError("expected 'universe N'", raw, 0, lineno)
            cur["size"] = int(words[1])
        elif head == "rel":
            if len(words) != 3 or not words[2].isdigit():
                raise ParseError("expected 'rel NAME ARITY'", raw, 0, lineno)
            if any(r == words[1] for r, _ in cur["rels"]):
                raise ParseError(f"relation {words[1]} declared twice", raw, 0, lineno)
            cur["rels"].append((words[1], int(words[2])))
            cur["tables"][words[1]] = []
            cur["rel"] = (words[1], int(words[2]))
        elif head == "end":
            if cur["size"] is None:
                raise ParseError("missing 'universe' line", raw, 0, lineno)
            try:
                sig = Signature(tuple(cur["rels"]), equality)
                out.append(FiniteStructure.build(sig, cur["size"], cur["tables"], cur["name"]))
            except Exception as exc:
                raise ParseError(str(exc), raw, 0, lineno) from exc
            cur = None
        else:
            if cur["rel"] is None:
                raise ParseError("tuple line before any 'rel' line", raw, 0, lineno)
            try:
                tup = tuple(int(w) for w in words)
            except ValueError:
                raise ParseError(f"bad tuple line {line!r}", raw, 0, lineno) from None
            rel, arity = cur["rel"]
            if len(tup) != arity:
                raise ParseError(f"{rel} expects {arity} entries", raw, 0, lineno)
            if cur["size"] is not None and any(e >= cur["size"] for e in tup):
                raise ParseError(f"entry outside universe {cur['size']}", raw, 0, lineno)
            cur["tables"][rel].append(tup)
    if cur is not None:
        raise ParseError("structure not terminated by 'end'", "", 0, None)
    return out


def parse_structure(text: str) -> FiniteStructure:
    found = parse_structures(text)
    if len(found) != 1:
        raise ParseError(f"expected exactly one structure, found {len(found)}", text, 0)
    return found[0]


def all_structures(sig: Signature, size: int):
    """Every structure over ``sig`` with universe ``0..size-1``."""
    cells = []
    for rel, arity in sig.relations:
        cells.append(list(itertools.product(range(size), repeat=arity)))
    total = sum(len(c) for c in cells)
    if total > 20:
        raise BudgetError(f"{2 ** total} structures is beyond enumeration")
    for bits in itertools.product((0, 1), repeat=total):
        pos = 0
        tables = {}
        for (rel, _), c in zip(sig.relations, cells):
            tables[rel] = [t for t, bit in zip(c, bits[pos:pos + len(c)]) if bit]
            pos += len(c)
        yield FiniteStructure.build(sig, size, tables, name=f"s{size}")
