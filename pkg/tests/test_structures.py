import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import structures
from fotransfer.corpus import BINARY_SIG_NOEQ, sentence_corpus
from fotransfer.errors import BudgetError, ParseError, StructureError
from fotransfer.evaluate import evaluate
from fotransfer.formula import Signature
from fotransfer.structures import (
    FiniteStructure, Partition, all_structures, dump_structure, eq_congruence,
    is_congruence, iso_check, parse_structure, parse_structures, quotient, reduce,
    substructure,
)

R = Signature.of(("R", 2), equality=False)


def indistinguishable(A, x, y):
    # x and y swap freely in any single argument position
    for rel, ar in A.sig.relations:
        table = A.rel(rel)
        for i in range(ar):
            for rest in itertools.product(A.universe, repeat=ar - 1):
                with_x = rest[:i] + (x,) + rest[i:]
                with_y = rest[:i] + (y,) + rest[i:]
                if (with_x in table) != (with_y in table):
                    return False
    return True


def brute_partition(A):
    blocks = []
    for x in A.universe:
        for b in blocks:
            if indistinguishable(A, x, min(b)):
                b.add(x)
                break
        else:
            blocks.append({x})
    return Partition(tuple(frozenset(b) for b in blocks))


def test_eq_congruence_merges_common_predecessors():
    A = FiniteStructure.build(R, 3, {"R": [(0, 2), (1, 2)]})
    assert eq_congruence(A) == Partition((frozenset({0, 1}), frozenset({2})))
    assert eq_congruence(A) == brute_partition(A)


def test_eq_congruence_of_empty_relation_is_one_block():
    A = FiniteStructure.build(R, 4, {"R": []})
    assert eq_congruence(A).blocks == (frozenset(range(4)),)


def test_distinct_profiles_give_singletons():
    A = FiniteStructure.build(R, 3, {"R": [(0, 1), (1, 2)]})
    assert eq_congruence(A).is_discrete()


def test_quotient_of_example():
    A = FiniteStructure.build(R, 3, {"R": [(0, 2), (1, 2)]})
    B = reduce(A)
    assert B.size == 2
    assert B.rel("R") == frozenset({(0, 1)})


def test_quotient_rejects_non_congruence():
    A = FiniteStructure.build(R, 3, {"R": [(0, 1)]})
    P = Partition((frozenset({0, 1}), frozenset({2})))
    assert not is_congruence(A, P)
    with pytest.raises(StructureError):
        quotient(A, P)


def test_partition_blocks_must_be_disjoint():
    with pytest.raises(StructureError):
        Partition((frozenset({0, 1}), frozenset({1})))


def test_iso_two_cycle_versus_antichain():
    cycle = FiniteStructure.build(R, 2, {"R": [(0, 1), (1, 0)]})
    loops = FiniteStructure.build(R, 2, {"R": [(0, 0), (1, 1)]})
    empty = FiniteStructure.build(R, 2, {"R": []})
    assert not iso_check(cycle, empty)
    assert not iso_check(cycle, loops)
    assert iso_check(cycle, FiniteStructure.build(R, 2, {"R": [(1, 0), (0, 1)]}))


def test_iso_finds_relabelled_path():
    a = FiniteStructure.build(R, 3, {"R": [(0, 1), (1, 2)]})
    b = FiniteStructure.build(R, 3, {"R": [(2, 0), (1, 2)]})
    assert iso_check(a, b)


def test_iso_budget():
    A = FiniteStructure.build(R, 13, {"R": []})
    with pytest.raises(BudgetError):
        iso_check(A, A)


def test_structure_rejects_out_of_range_tuple():
    with pytest.raises(StructureError):
        FiniteStructure.build(R, 2, {"R": [(0, 2)]})


def test_file_round_trip_with_comments():
    text = "# two structures\nstructure a\nuniverse 2\nrel R 2\n0 1  # an edge\nend\n" \
           "structure b\nuniverse 1\nrel R 2\nend\n"
    found = parse_structures(text, equality=False)
    assert [s.name for s in found] == ["a", "b"]
    again = parse_structures("".join(dump_structure(s) for s in found), equality=False)
    assert again == found


def test_file_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_structure("structure a\nuniverse 2\nrel R 2\n0 5\nend\n")
    assert info.value.line == 4
    with pytest.raises(ParseError):
        parse_structure("structure a\nuniverse 2\n")


def test_all_structures_counts():
    assert sum(1 for _ in all_structures(R, 2)) == 16
    assert sum(1 for _ in all_structures(Signature.of(("P", 1)), 3)) == 8


def test_substructure_renumbers():
    A = FiniteStructure.build(R, 4, {"R": [(1, 3), (3, 0), (2, 2)]})
    B = substructure(A, [3, 1])
    assert B.size == 2 and B.rel("R") == frozenset({(0, 1)})


@given(structures(sig=R))
def test_eq_congruence_matches_brute_force(A):
    assert eq_congruence(A) == brute_partition(A)


@given(structures(sig=R))
def test_reduced_structure_is_reduced_and_congruent(A):
    P = eq_congruence(A)
    assert is_congruence(A, P)
    assert eq_congruence(reduce(A)).is_discrete()


@given(structures(sig=R), st.sampled_from(sentence_corpus(count=12, rel="R")))
def test_reduction_preserves_equality_free_sentences(A, phi):
    assert evaluate(A, phi) == evaluate(reduce(A), phi)


@given(structures(sig=R), st.randoms(use_true_random=False))
def test_iso_invariant_under_permutation(A, rng):
    perm = list(A.universe)
    rng.shuffle(perm)
    B = FiniteStructure.build(R, A.size, {"R": [(perm[a], perm[b]) for a, b in A.rel("R")]})
    assert iso_check(A, B)
