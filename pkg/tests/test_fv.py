import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SIG, formulas, structures
from fotransfer.corpus import BINARY_SIG, fv_corpus
from fotransfer.errors import BudgetError, LogicError
from fotransfer.evaluate import evaluate
from fotransfer.formula import Signature, free_vars, is_sentence
from fotransfer.fv import (
    fv_check, fv_check_product, fv_decompose, fv_verify, power, product, projections,
)
from fotransfer.structures import FiniteStructure, all_structures
from fotransfer.suites import MUTATION_TARGET
from fotransfer.syntax import parse, render

P1 = Signature.of(("P", 1))


def test_atom_gives_one_clause_of_copies():
    dec = fv_decompose(parse("P(x)", P1), 1)
    assert dec.r == 1
    assert [render(f) for f in dec.clauses[0]] == ["P(x)", "P(x)"]


def test_existential_needs_a_witness_in_every_coordinate():
    dec = fv_decompose(parse("exists x. P(x)", P1), 1)
    assert [[render(f) for f in c] for c in dec.clauses] == [["exists x. P(x)", "exists x. P(x)"]]


def test_negated_atom_splits_over_coordinates():
    dec = fv_decompose(parse("!P(x)", P1), 2)
    assert sorted(dec.render().splitlines()) == [
        "!P(x) ; true ; true", "true ; !P(x) ; true", "true ; true ; !P(x)"]


def test_false_has_no_clauses():
    dec = fv_decompose(parse("P(x) & !P(x)", P1), 1)
    assert dec.r == 0 and dec.render() == "false"


def test_power_of_size_one_structure():
    A = FiniteStructure.build(SIG, 1, {"E": [(0, 0)], "P": []})
    assert power(A, 3).size == 1
    assert fv_verify(parse("forall x. exists y. (E(x,y) & !P(y))"), 2, A)


def test_power_is_coordinatewise():
    A = FiniteStructure.build(BINARY_SIG, 2, {"E": [(0, 1), (1, 1)]})
    B = power(A, 2)
    for a, b in itertools.product(B.universe, repeat=2):
        pa, pb = projections(a, 2, 2), projections(b, 2, 2)
        want = all((pa[i], pb[i]) in A.rel("E") for i in range(2))
        assert B.holds("E", (a, b)) == want


def test_power_budget():
    A = FiniteStructure.build(BINARY_SIG, 5, {"E": []})
    with pytest.raises(BudgetError):
        power(A, 6)
    with pytest.raises(LogicError):
        power(A, 0)


def test_verify_budget():
    A = FiniteStructure.build(BINARY_SIG, 3, {"E": []})
    phi = parse("E(x,y) & E(y,z) & E(z,w)", BINARY_SIG)
    with pytest.raises(BudgetError):
        fv_check(phi, 2, A)


def test_dropping_a_clause_is_detected_on_powers():
    phi = parse(MUTATION_TARGET, BINARY_SIG)
    dec = fv_decompose(phi, 1)
    structures = [A for n in (1, 2) for A in all_structures(BINARY_SIG, n)]
    assert not all(fv_check(phi, 1, A, dec.drop(0)).ok for A in structures)


def test_some_clauses_are_redundant_over_powers_only():
    # "a source in coordinate 0" implies the shared clause when both
    # coordinates are the same structure, but not in a mixed product
    phi = parse(MUTATION_TARGET, BINARY_SIG)
    dec = fv_decompose(phi, 1)
    assert dec.r == 3
    structures = [A for n in (1, 2, 3) for A in all_structures(BINARY_SIG, n)]
    redundant = [i for i in range(dec.r)
                 if all(fv_check(phi, 1, A, dec.drop(i)).ok for A in structures)]
    assert len(redundant) == 2
    source = FiniteStructure.build(BINARY_SIG, 1, {"E": []})
    cycle = FiniteStructure.build(BINARY_SIG, 3, {"E": [(0, 1), (1, 2), (2, 0)]})
    assert fv_check_product(phi, [source, cycle], dec).ok
    killed = [i for i in redundant
              if not fv_check_product(phi, [source, cycle], dec.drop(i)).ok
              or not fv_check_product(phi, [cycle, source], dec.drop(i)).ok]
    assert killed == redundant


def test_product_of_distinct_factors():
    A = FiniteStructure.build(BINARY_SIG, 2, {"E": [(0, 1)]})
    B = FiniteStructure.build(BINARY_SIG, 3, {"E": [(2, 2), (0, 2)]})
    C = product([A, B])
    assert C.size == 6
    for a, b in itertools.product(C.universe, repeat=2):
        pa, pb = projections(a, [2, 3], 2), projections(b, [2, 3], 2)
        want = (pa[0], pb[0]) in A.rel("E") and (pa[1], pb[1]) in B.rel("E")
        assert C.holds("E", (a, b)) == want
    for phi in fv_corpus():
        assert fv_check_product(phi, [A, B]).ok


def test_sentences_decompose_into_sentences():
    for phi in fv_corpus():
        dec = fv_decompose(phi, 1)
        assert dec.free_vars() <= free_vars(phi)
        if is_sentence(phi):
            assert all(is_sentence(f) for c in dec.clauses for f in c)


def test_decomposition_is_deterministic():
    phi = parse("forall x. exists y. (E(x,y) & !(x = y))", BINARY_SIG)
    assert fv_decompose(phi, 2).render() == fv_decompose(phi, 2).render()


@settings(max_examples=60)
@given(formulas(max_leaves=4), structures(max_size=2), st.integers(0, 1))
def test_decomposition_agrees_with_power(phi, A, k):
    assert fv_check(phi, k, A).ok


@settings(max_examples=40)
@given(formulas(max_leaves=4), structures(max_size=2))
def test_sentence_truth_in_square_follows_clauses(phi, A):
    if not is_sentence(phi):
        return
    dec = fv_decompose(phi, 1)
    want = any(all(evaluate(A, f) for f in c) for c in dec.clauses)
    assert evaluate(power(A, 2), phi) == want
