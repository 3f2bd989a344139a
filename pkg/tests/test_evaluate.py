import os
import subprocess
import sys

import pytest
from hypothesis import given

from conftest import SIG, assignments, formulas, structures
from fotransfer import _pykernel, evaluate
from fotransfer.errors import LogicError, SignatureError
from fotransfer.evaluate import Evaluator, Program
from fotransfer.formula import Signature, free_vars
from fotransfer.oracle import naive_eval
from fotransfer.structures import FiniteStructure
from fotransfer.syntax import parse

R = Signature.of(("R", 2), equality=False)


def truth_table_exists_forall_not(A):
    # independent check: exists x with no y such that R(y,x)
    return any(all((y, x) not in A.rel("R") for y in A.universe) for x in A.universe)


def test_example_two_element_structure():
    A = FiniteStructure.build(R, 2, {"R": [(0, 1)]})
    f = parse("exists x. forall y. !R(y,x)", R)
    assert truth_table_exists_forall_not(A) is True
    assert evaluate.evaluate(A, f) is True


def test_true_and_empty_predicate():
    A = FiniteStructure.build(Signature.of(("P", 1)), 3, {"P": []})
    assert evaluate.evaluate(A, parse("true"))
    assert not evaluate.evaluate(A, parse("exists x. P(x)"))


def test_unassigned_variable_is_an_error():
    A = FiniteStructure.build(R, 2, {"R": []})
    with pytest.raises(LogicError):
        evaluate.evaluate(A, parse("R(x,y)", R), {"x": 0})


def test_signature_mismatch_is_an_error():
    A = FiniteStructure.build(R, 2, {"R": []})
    with pytest.raises(SignatureError):
        evaluate.evaluate(A, parse("Q(x)"), {"x": 0})


def test_satisfying_prunes_with_early_conjuncts():
    A = FiniteStructure.build(SIG, 4, {"E": [(0, 1), (1, 2), (2, 3)], "P": [(1,), (2,)]})
    f = parse("P(x) & P(y) & E(x,y)")
    assert Evaluator(A).satisfying(f, ("x", "y")) == [(1, 2)]


@given(formulas(), structures())
def test_compiled_evaluator_matches_naive_oracle(f, A):
    ev = Evaluator(A)
    for asg in assignments(A, free_vars(f)):
        assert ev(f, asg) == naive_eval(A, f, asg)


@given(formulas(), structures())
def test_python_and_default_machines_agree(f, A):
    fast = Evaluator(A)
    slow = Evaluator(A, machine_cls=_pykernel.Machine)
    for asg in assignments(A, free_vars(f)):
        assert fast(f, asg) == slow(f, asg)


def test_memo_caps_do_not_change_answers(monkeypatch):
    A = FiniteStructure.build(SIG, 3, {"E": [(0, 1), (1, 2), (2, 0)], "P": [(0,)]})
    f = parse("forall x. exists y. (E(x,y) & (forall z. (E(y,z) -> (exists w. E(z,w)))))")
    want = naive_eval(A, f)
    monkeypatch.setattr(evaluate, "MEMO_NODE_CAP", 1)
    assert Program(A, f)() == want


def test_pure_python_switch_selects_python_kernel():
    env = dict(os.environ, FOTRANSFER_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from fotransfer.evaluate import KERNEL; print(KERNEL)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
