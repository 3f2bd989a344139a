"""Concrete codings at desk scale.

* Finite undirected graphs in finite partial orders, decoded by the
  parameterless Sigma_1-scheme :func:`fpo_scheme`.
* The partial order coding arithmetic: numbers are minimal elements, a pair
  element sits above chains of 2 and 3 cover steps from its coordinates, and
  chains of 4 / 5 cover steps from the sum / product.  :func:`vn_fragment`
  builds the finite piece on ``0..N`` and :func:`vn_scheme` reads
  addition and multiplication back by counting cover steps.
* Two further schemes with encoders, used by the soundness suites: a
  parameterized "palette" Sigma_k-scheme and a general scheme with a
  nontrivial equivalence formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ParseError, StructureError
from .formula import (
    TOP, And, Atom, Equal, Exists, Forall, Formula, Implies, Not, Or, Signature,
    atom, conj,
)
from .schemes import Component, Scheme
from .structures import FiniteStructure

LE_SIG = Signature((("Le", 2),), True)
GRAPH_SIG = Signature((("E", 2),), False)
ARITH_SIG = Signature((("Plus", 3), ("Times", 3)), True)


# --- graphs ---------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    directed: bool = False

    def __post_init__(self):
        edges = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise StructureError(f"edge ({a},{b}) mentions a vertex >= {self.n}")
            if not self.directed:
                if a == b:
                    raise StructureError("undirected graphs have no self-loops")
                a, b = min(a, b), max(a, b)
            edges.add((a, b))
        object.__setattr__(self, "edges", frozenset(edges))

    def adjacent(self, a: int, b: int) -> bool:
        if self.directed:
            return (a, b) in self.edges
        return (min(a, b), max(a, b)) in self.edges

    def non_edges(self):
        return [(a, b) for a, b in itertools.combinations(range(self.n), 2)
                if not self.adjacent(a, b)]


def all_graphs(n: int):
    """Every labeled undirected graph on vertices 0..n-1."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield Graph(n, frozenset(p for p, b in zip(pairs, bits) if b))


def graph_structure(G: Graph) -> FiniteStructure:
    """The graph as an L(E)-structure without equality (E symmetric when
    undirected)."""
    if G.n < 1:
        raise StructureError("the empty graph has no structure")
    rows = set()
    for a, b in G.edges:
        rows.add((a, b))
        if not G.directed:
            rows.add((b, a))
    return FiniteStructure.build(GRAPH_SIG, G.n, {"E": rows}, name=f"G{G.n}")


def parse_graph(text: str, directed: bool = False) -> Graph:
    """``graph N`` / ``edge a b`` lines / ``end``."""
    n = None
    edges = []
    done = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if done:
            raise ParseError("text after 'end'", raw, 0, lineno)
        words = line.split()
        if n is None:
            if words[0] != "graph" or len(words) != 2 or not words[1].isdigit():
                raise ParseError("expected 'graph N'", raw, 0, lineno)
            n = int(words[1])
        elif words[0] == "edge" and len(words) == 3:
            try:
                edges.append((int(words[1]), int(words[2])))
            except ValueError:
                raise ParseError("bad edge line", raw, 0, lineno) from None
        elif words == ["end"]:
            done = True
        else:
            raise ParseError(f"unexpected line {line!r}", raw, 0, lineno)
    if n is None or not done:
        raise ParseError("graph must start with 'graph N' and finish with 'end'", text, 0, None)
    try:
        return Graph(n, frozenset(edges), directed)
    except StructureError as exc:
        raise ParseError(str(exc), text, 0, None) from None


def dump_graph(G: Graph) -> str:
    lines = [f"graph {G.n}"] + [f"edge {a} {b}" for a, b in sorted(G.edges)] + ["end"]
    return "\n".join(lines) + "\n"


# --- posets ----------------------------------------------------------------------

@dataclass(frozen=True)
class Poset:
    """A finite partial order stored as the reflexive table ``Le``."""

    structure: FiniteStructure
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        A = self.structure
        if dict(A.sig.relations) != {"Le": 2}:
            raise StructureError("a poset has exactly the relation Le/2")
        le = A.rel("Le")
        for x in A.universe:
            if (x, x) not in le:
                raise StructureError(f"Le is not reflexive at {x}")
        for x, y in le:
            if x != y and (y, x) in le:
                raise StructureError(f"Le is not antisymmetric at ({x},{y})")
        succ: dict[int, set] = {}
        for x, y in le:
            succ.setdefault(x, set()).add(y)
        for x, y in le:
            if not succ.get(y, set()) <= succ[x]:
                raise StructureError(f"Le is not transitive through ({x},{y})")
        if self.labels and len(self.labels) != A.size:
            raise StructureError("one label per element")

    @classmethod
    def generated(cls, size: int, covers, labels=(), name="P") -> "Poset":
        """The partial order generated by the strict relations ``covers``."""
        up: list[set] = [set() for _ in range(size)]
        for a, b in covers:
            up[a].add(b)
        closure = [None] * size
        state = [0] * size

        def reach(x):
            if state[x] == 2:
                return closure[x]
            if state[x] == 1:
                raise StructureError("generating relation has a cycle")
            state[x] = 1
            out = {x}
            for y in up[x]:
                out |= reach(y)
            state[x] = 2
            closure[x] = out
            return out

        rows = [(x, y) for x in range(size) for y in reach(x)]
        A = FiniteStructure.build(LE_SIG, size, {"Le": rows}, name=name)
        return cls(A, tuple(labels))

    @property
    def size(self) -> int:
        return self.structure.size

    def le(self, x: int, y: int) -> bool:
        return self.structure.holds("Le", (x, y))

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.le(x, y)

    def element(self, label: str) -> int:
        return self.labels.index(label)

    def minimal(self) -> list[int]:
        return [x for x in range(self.size) if not any(self.lt(y, x) for y in range(self.size))]

    def maximal(self) -> list[int]:
        return [x for x in range(self.size) if not any(self.lt(x, y) for y in range(self.size))]

    def covers(self) -> set[tuple[int, int]]:
        out = set()
        n = self.size
        for x, y in self.structure.rel("Le"):
            if x != y and not any(self.lt(x, z) and self.lt(z, y) for z in range(n)):
                out.add((x, y))
        return out


def random_poset(rng, size: int, density: float = 0.3) -> Poset:
    """Transitive closure of a random relation compatible with 0 < 1 < ..."""
    covers = [(a, b) for a, b in itertools.combinations(range(size), 2) if rng.random() < density]
    perm = list(range(size))
    rng.shuffle(perm)
    return Poset.generated(size, [(perm[a], perm[b]) for a, b in covers], name=f"rp{size}")


# --- graphs in partial orders ---------------------------------------------------------

def orientation_gadget(G: Graph) -> Graph:
    """Experimental: an undirected graph recording a directed one.

    Each vertex gets two pendant leaves; each arc a->b becomes a path
    a - t - h - b whose tail-side node t carries one pendant leaf.
    """
    if not G.directed:
        return G
    n = G.n
    edges = []
    nxt = n
    for v in range(n):
        edges += [(v, nxt), (v, nxt + 1)]
        nxt += 2
    for a, b in sorted(G.edges):
        t, h, leaf = nxt, nxt + 1, nxt + 2
        nxt += 3
        edges += [(a, t), (t, h), (h, b), (t, leaf)]
    return Graph(nxt, frozenset(edges))


def encode_graph_as_poset(G: Graph) -> Poset:
    """A finite poset in which :func:`fpo_scheme` decodes ``G``.

    Vertex x gets private elements u_x < x < v_x; an edge {x,y} gets a
    fresh common upper bound, a non-edge a fresh common lower bound.
    Directed graphs go through :func:`orientation_gadget` first
    (experimental).
    """
    if G.directed:
        G = orientation_gadget(G)
    labels = [f"x{v}" for v in range(G.n)]
    covers = []
    for v in range(G.n):
        u, w = len(labels), len(labels) + 1
        labels += [f"u{v}", f"v{v}"]
        covers += [(u, v), (v, w)]
    for a, b in sorted(G.edges):
        z = len(labels)
        labels.append(f"z{a},{b}")
        covers += [(a, z), (b, z)]
    for a, b in G.non_edges():
        w = len(labels)
        labels.append(f"w{a},{b}")
        covers += [(w, a), (w, b)]
    return Poset.generated(len(labels), covers, labels, name=f"fpo{G.n}")


def _lt(a, b):
    return And(atom("Le", a, b), Not(atom("Le", b, a)))


def _incomparable(a, b):
    return And(Not(atom("Le", a, b)), Not(atom("Le", b, a)))


def fpo_scheme(complete: bool = False) -> Scheme:
    """The parameterless Sigma_1-scheme coding graphs in partial orders::

        dom(x)   <->  exists u v. u < x < v
        E(x,y)   <->  x, y incomparable and have a common upper bound
        Ebar(x,y) <-> x, y incomparable and have a common lower bound

    As given, E and Ebar are complementary only on incomparable pairs (both
    fail on the diagonal), and the correctness condition says exactly that.
    ``complete=True`` adds ``x <= y | y <= x`` to the complement formula,
    making the two genuine complements on all of D x D.
    """
    dom = Exists("u", Exists("v", And(_lt("u", "x"), _lt("x", "v"))))
    edge = And(_incomparable("x", "y"), Exists("z", And(atom("Le", "x", "z"), atom("Le", "y", "z"))))
    co = And(_incomparable("x", "y"), Exists("z", And(atom("Le", "z", "x"), atom("Le", "z", "y"))))
    alpha = None
    if complete:
        co = Or(co, Or(atom("Le", "x", "y"), atom("Le", "y", "x")))
    else:
        def D(v):
            return Exists("u", Exists("w", And(_lt("u", v), _lt(v, "w"))))

        def at(f, a, b):
            from .formula import substitute
            return substitute(f, {"x": a, "y": b})

        pos, neg = at(edge, "a", "b"), at(co, "a", "b")
        alpha = And(
            Exists("d", D("d")),
            Forall("a", Forall("b", Implies(
                conj([D("a"), D("b"), _incomparable("a", "b")]),
                And(Or(pos, neg), Or(Not(pos), Not(neg)))))))
    return Scheme("fpo-complete" if complete else "fpo", GRAPH_SIG, LE_SIG, (),
                  Component(("x",), dom), (("E", Component(("x", "y"), edge)),),
                  corels=(("E", Component(("x", "y"), co)),),
                  correctness=alpha, declared_k=1)


# --- arithmetic in a partial order -------------------------------------------------

CHAIN_STEPS = {"first": 2, "second": 3, "sum": 4, "product": 5}


def vn_fragment(N: int) -> Poset:
    """The finite piece of the arithmetic-coding partial order on 0..N.

    Elements: minimal p_0..p_N; c_{n,m} for all n, m <= N; fresh chains of
    2 and 3 cover steps from p_n and p_m up to c_{n,m}; a chain of 4 cover
    steps from p_{n+m} when n+m <= N; a chain of 5 cover steps from p_{n*m}
    when n*m <= N.
    """
    if N < 0:
        raise StructureError("N must be >= 0")
    labels = [f"p{n}" for n in range(N + 1)]
    pair = {}
    for n in range(N + 1):
        for m in range(N + 1):
            pair[n, m] = len(labels)
            labels.append(f"c{n},{m}")
    covers = []

    def chain(bottom, top, steps, tag):
        prev = bottom
        for i in range(1, steps):
            node = len(labels)
            labels.append(f"{tag}.{i}")
            covers.append((prev, node))
            prev = node
        covers.append((prev, top))

    for n in range(N + 1):
        for m in range(N + 1):
            c = pair[n, m]
            chain(n, c, 2, f"l{n},{m}")
            chain(m, c, 3, f"r{n},{m}")
            if n + m <= N:
                chain(n + m, c, 4, f"s{n},{m}")
            if n * m <= N:
                chain(n * m, c, 5, f"t{n},{m}")
    P = Poset.generated(len(labels), covers, labels, name=f"vn{N}")
    _self_check(P, N)
    return P


def _self_check(P: Poset, N: int):
    """Every saturated chain from a number to a pair element has one of the
    four intended lengths, and the minimal elements are the numbers."""
    if sorted(P.minimal()) != list(range(N + 1)):
        raise StructureError("minimal elements are not exactly p_0..p_N")
    up: dict[int, list] = {}
    for a, b in P.covers():
        up.setdefault(a, []).append(b)
    pairs = {P.element(f"c{n},{m}") for n in range(N + 1) for m in range(N + 1)}
    allowed = set(CHAIN_STEPS.values())

    def lengths(x, depth=0):
        if x in pairs:
            yield depth
            return
        for y in up.get(x, ()):
            yield from lengths(y, depth + 1)

    for p in range(N + 1):
        for d in lengths(p):
            if d not in allowed:
                raise StructureError(f"saturated chain of {d} steps from p{p}")


def arithmetic_structure(N: int) -> FiniteStructure:
    """{0..N} with addition and multiplication as partial ternary relations."""
    plus = [(a, b, a + b) for a in range(N + 1) for b in range(N + 1) if a + b <= N]
    times = [(a, b, a * b) for a in range(N + 1) for b in range(N + 1) if a * b <= N]
    return FiniteStructure.build(ARITH_SIG, N + 1, {"Plus": plus, "Times": times},
                                 name=f"arith{N}")


def cover_formula(a: str, b: str, z: str = "z") -> Formula:
    return And(_lt(a, b), Not(Exists(z, And(_lt(a, z), _lt(z, b)))))


def chain_formula(steps: int, a: str, d: str) -> Formula:
    """A saturated chain of exactly ``steps`` cover steps from a up to d."""
    ys = [a] + [f"y{i}" for i in range(1, steps)] + [d]
    out = cover_formula(ys[-2], ys[-1])
    for i in reversed(range(1, steps)):
        out = Exists(ys[i], And(cover_formula(ys[i - 1], ys[i]), out))
    return out


def minimal_formula(x: str, z: str = "z") -> Formula:
    return Forall(z, Implies(atom("Le", z, x), atom("Le", x, z)))


def maximal_formula(x: str, z: str = "z") -> Formula:
    return Forall(z, Implies(atom("Le", x, z), atom("Le", z, x)))


def vn_operation(steps: int) -> Formula:
    """op(a,b,c): three numbers below a common maximal d via chains of 2, 3
    and ``steps`` cover steps."""
    guards = [minimal_formula(v) for v in ("a", "b", "c")]
    body = conj([maximal_formula("d"), chain_formula(2, "a", "d"),
                 chain_formula(3, "b", "d"), chain_formula(steps, "c", "d")])
    return conj(guards + [Exists("d", body)])


def vn_scheme() -> Scheme:
    """Parameterless general scheme reading arithmetic off the partial order:
    numbers are the minimal elements, equality is equality."""
    return Scheme("vn", ARITH_SIG, LE_SIG, (),
                  Component(("x",), minimal_formula("x")),
                  (("Plus", Component(("a", "b", "c"), vn_operation(CHAIN_STEPS["sum"]))),
                   ("Times", Component(("a", "b", "c"), vn_operation(CHAIN_STEPS["product"])))),
                  eq=Component(("x", "y"), Equal("x", "y")))


# --- further suite schemes ------------------------------------------------------------

PALETTE_SIG = Signature((("S", 3), ("U", 2)), True)
DIGRAPH_SIG = Signature((("R", 2),), False)


def palette_scheme(k: int = 1) -> Scheme:
    """Parameterized Sigma_k-scheme (k = 1 or 2) for a binary relation R.

    D = elements two U-steps above p.  R(x,y) holds when some colour z with
    S(x,y,z) hangs below q; its complement when some S-colour does not.
    For k = 2 the middle U-step must be p's only U-successor.
    """
    if k not in (1, 2):
        raise ValueError("palette_scheme supports k = 1 or 2")
    if k == 1:
        dom = Exists("h", And(atom("U", "p", "h"), atom("U", "h", "x")))
    else:
        dom = Exists("h", conj([atom("U", "p", "h"), atom("U", "h", "x"),
                                Forall("w", Implies(atom("U", "p", "w"), Equal("w", "h")))]))
    rel = Exists("z", And(atom("S", "x", "y", "z"), atom("U", "q", "z")))
    co = Exists("z", And(atom("S", "x", "y", "z"), Not(atom("U", "q", "z"))))
    return Scheme(f"palette{k}", DIGRAPH_SIG, PALETTE_SIG, ("p", "q"),
                  Component(("x",), dom), (("R", Component(("x", "y"), rel)),),
                  corels=(("R", Component(("x", "y"), co)),), declared_k=k)


def palette_encode(C: FiniteStructure):
    """A target structure and parameter values coding the digraph ``C``."""
    m = C.size
    p, h, q, yes, no = m, m + 1, m + 2, m + 3, m + 4
    U = [(p, h), (q, yes)] + [(h, v) for v in range(m)]
    S = [(a, b, yes if C.holds("R", (a, b)) else no) for a in range(m) for b in range(m)]
    A = FiniteStructure.build(PALETTE_SIG, m + 5, {"S": S, "U": U}, name=f"pal{m}")
    return A, {"p": p, "q": q}


QUOT_SIG = Signature((("Sm", 2), ("T", 2)), True)
DIGRAPH_EQ_SIG = Signature((("R", 2),), True)


def quotient_scheme() -> Scheme:
    """General scheme: elements with an Sm-neighbour, modulo Sm, with R read
    from T."""
    return Scheme("quotient", DIGRAPH_EQ_SIG, QUOT_SIG, (),
                  Component(("x",), Exists("y", atom("Sm", "x", "y"))),
                  (("R", Component(("x", "y"), atom("T", "x", "y"))),),
                  eq=Component(("x", "y"), atom("Sm", "x", "y")), declared_k=1)


def quotient_encode(C: FiniteStructure, copies) -> FiniteStructure:
    """Blow each element of ``C`` up into ``copies[i]`` indistinguishable
    copies; Sm relates copies of one element."""
    owner = [i for i, c in enumerate(copies) for _ in range(c)]
    n = len(owner)
    Sm = [(a, b) for a in range(n) for b in range(n) if owner[a] == owner[b]]
    T = [(a, b) for a in range(n) for b in range(n) if C.holds("R", (owner[a], owner[b]))]
    return FiniteStructure.build(QUOT_SIG, n, {"Sm": Sm, "T": T}, name=f"blow{n}")
