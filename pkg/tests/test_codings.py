import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fotransfer import codings
from fotransfer.codings import (
    Graph, Poset, all_graphs, arithmetic_structure, dump_graph, encode_graph_as_poset,
    fpo_scheme, graph_structure, orientation_gadget, parse_graph, vn_fragment, vn_scheme,
)
from fotransfer.errors import ParseError, StructureError
from fotransfer.evaluate import Evaluator
from fotransfer.schemes import check_correctness, decode
from fotransfer.structures import iso_check, reduce
from fotransfer.syntax import parse, render


def expected_vn_size(N):
    # numbers, pair elements, interiors of the 2- and 3-step chains, then
    # interiors of sum and product chains where defined
    nums = range(N + 1)
    sums = sum(1 for n, m in itertools.product(nums, repeat=2) if n + m <= N)
    prods = sum(1 for n, m in itertools.product(nums, repeat=2) if n * m <= N)
    return (N + 1) + (N + 1) ** 2 * (1 + 1 + 2) + 3 * sums + 4 * prods


def test_triangle_encodes_to_twelve_elements():
    P = encode_graph_as_poset(Graph(3, {(0, 1), (1, 2), (0, 2)}))
    assert P.size == 12


def test_single_vertex_and_two_isolated_vertices():
    assert encode_graph_as_poset(Graph(1, set())).size == 3
    P = encode_graph_as_poset(Graph(2, set()))
    assert P.size == 7
    assert P.lt(P.element("w0,1"), P.element("x0"))


def test_fpo_domain_formula_text():
    assert render(fpo_scheme().dom.formula) == \
        "exists u. exists v. ((Le(u,x) & !Le(x,u)) & (Le(x,v) & !Le(v,x)))"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_small_graph_round_trips(n):
    s = fpo_scheme()
    for G in all_graphs(n):
        P = encode_graph_as_poset(G)
        assert check_correctness(s, P.structure)
        # equality-free coding: the graph is recovered up to indistinguishable vertices
        assert iso_check(decode(s, P.structure), reduce(graph_structure(G)))


def test_domain_is_exactly_the_vertices():
    G = Graph(3, {(0, 1)})
    P = encode_graph_as_poset(G)
    ev = Evaluator(P.structure)
    D = [e for (e,) in ev.satisfying(fpo_scheme().dom.formula, ("x",))]
    assert [P.labels[e] for e in D] == ["x0", "x1", "x2"]


def test_vn_fragment_sizes():
    assert vn_fragment(0).size == 12 == expected_vn_size(0)
    for N in (1, 3, 6):
        assert vn_fragment(N).size == expected_vn_size(N)
    assert vn_fragment(6).size == 395


def test_vn_operations_on_numbers():
    P = vn_fragment(6)
    plus, times = (c.formula for _, c in vn_scheme().rels)
    ev = Evaluator(P.structure)
    p = lambda n: P.element(f"p{n}")
    assert ev(plus, {"a": p(1), "b": p(2), "c": p(3)})
    assert not ev(plus, {"a": p(1), "b": p(2), "c": p(4)})
    for m in range(7):
        assert ev(times, {"a": p(0), "b": p(m), "c": p(0)})
    assert ev(times, {"a": p(2), "b": p(3), "c": p(6)})
    assert not ev(times, {"a": p(2), "b": p(3), "c": p(5)})


@pytest.mark.parametrize("N", [0, 3, 4])
def test_vn_decodes_to_arithmetic(N):
    s = vn_scheme()
    P = vn_fragment(N)
    assert check_correctness(s, P.structure)
    assert decode(s, P.structure) == arithmetic_structure(N).renamed(f"vn:vn{N}")


def test_graph_file_round_trip_and_errors():
    G = parse_graph("# path\ngraph 3\nedge 0 1\nedge 2 1\nend\n")
    assert G.edges == frozenset({(0, 1), (1, 2)})
    assert parse_graph(dump_graph(G)) == G
    with pytest.raises(ParseError):
        parse_graph("graph 2\nedge 0 2\nend\n")
    with pytest.raises(ParseError):
        parse_graph("graph 2\nedge 0 1\n")
    with pytest.raises(ParseError):
        parse_graph("graph 2\nedge 1 1\nend\n")


def test_poset_validation():
    sig = codings.LE_SIG
    from fotransfer.structures import FiniteStructure
    with pytest.raises(StructureError):
        Poset(FiniteStructure.build(sig, 2, {"Le": [(0, 0)]}))
    with pytest.raises(StructureError):
        Poset(FiniteStructure.build(sig, 2, {"Le": [(0, 0), (1, 1), (0, 1), (1, 0)]}))
    with pytest.raises(StructureError):
        Poset.generated(2, [(0, 1), (1, 0)])


@pytest.mark.experimental
def test_orientation_gadget_separates_two_vertex_digraphs():
    digraphs = [Graph(2, set(es), directed=True)
                for r in range(5) for es in itertools.combinations([(0, 0), (0, 1), (1, 0), (1, 1)], r)]
    loopless = [G for G in digraphs if all(a != b for a, b in G.edges)]
    for G, H in itertools.combinations(loopless, 2):
        same = iso_check(graph_structure(G), graph_structure(H))
        coded = iso_check(graph_structure(orientation_gadget(G)),
                          graph_structure(orientation_gadget(H)))
        assert same == coded


@settings(max_examples=40)
@given(st.randoms(use_true_random=False), st.integers(1, 6))
def test_random_posets_are_posets(rng, size):
    P = codings.random_poset(rng, size)
    assert all(P.le(x, x) for x in range(size))
    for x, y in itertools.product(range(size), repeat=2):
        if P.le(x, y) and P.le(y, x):
            assert x == y
    assert set(P.minimal()) == {x for x in range(size) if not any(P.lt(y, x) for y in range(size))}


def test_palette_encoding_decodes_back():
    rng = random.Random(4)
    from fotransfer.corpus import random_structure
    for k in (1, 2):
        s = codings.palette_scheme(k)
        for _ in range(5):
            C = random_structure(rng, codings.DIGRAPH_SIG, rng.randint(1, 3))
            A, pv = codings.palette_encode(C)
            assert check_correctness(s, A, pv, strict=True)
            assert iso_check(decode(s, A, pv, strict=True), reduce(C))


def test_quotient_encoding_decodes_back():
    from fotransfer.structures import FiniteStructure
    C = FiniteStructure.build(codings.DIGRAPH_EQ_SIG, 2, {"R": [(0, 1)]})
    A = codings.quotient_encode(C, [2, 3])
    s = codings.quotient_scheme()
    assert check_correctness(s, A)
    assert iso_check(decode(s, A), C)
