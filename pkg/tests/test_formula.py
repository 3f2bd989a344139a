import pytest
from hypothesis import given

from conftest import SIG, formulas
from fotransfer.errors import CaptureError, ParseError, SignatureError
from fotransfer.formula import (
    TOP, And, Atom, Equal, Exists, Forall, Implies, Not, Or, Signature, alpha_equivalent,
    alpha_normalize, atom, bound_vars, free_vars, is_nnf, miniscope, nnf, relativize,
    substitute,
)
from fotransfer.syntax import parse, render

R = Signature.of(("R", 2), equality=False)


def test_parse_worked_example_sentence():
    f = parse("exists x. forall y. (R(x,y) | !R(y,x))", R)
    assert f == Exists("x", Forall("y", Or(atom("R", "x", "y"), Not(atom("R", "y", "x")))))


def test_parse_true_constant():
    assert parse("true") == TOP


def test_parse_rejects_arity_mismatch():
    with pytest.raises(SignatureError):
        parse("R(x,y,z)", R)


def test_parse_rejects_unknown_relation():
    with pytest.raises(SignatureError):
        parse("Q(x)", R)


def test_parse_rejects_equality_without_equality_flag():
    with pytest.raises(SignatureError):
        parse("x = y", R)


def test_parse_reports_position_of_syntax_error():
    with pytest.raises(ParseError) as info:
        parse("exists x (R(x,x))", R)
    assert info.value.pos == 9
    assert "position 9" in str(info.value)


def test_parse_requires_parenthesized_quantifier_operand():
    with pytest.raises(ParseError):
        parse("R(x,x) | exists y. R(y,y)", R)
    assert parse("R(x,x) | (exists y. R(y,y))", R) == Or(
        atom("R", "x", "x"), Exists("y", atom("R", "y", "y")))


def test_quantifier_scope_extends_right():
    f = parse("forall x. R(x,x) & R(x,y)", R)
    assert f == Forall("x", And(atom("R", "x", "x"), atom("R", "x", "y")))


def test_implication_associates_right_and_binds_loosest():
    f = parse("P(x) -> P(y) -> P(z) | P(x)")
    assert f == Implies(atom("P", "x"), Implies(atom("P", "y"), Or(atom("P", "z"), atom("P", "x"))))


def test_conjunction_associates_left():
    assert parse("P(x) & P(y) & P(z)") == And(And(atom("P", "x"), atom("P", "y")), atom("P", "z"))


def test_render_examples():
    assert render(Exists("x", atom("P", "x"))) == "exists x. P(x)"
    assert render(And(TOP, Not(TOP))) == "(true & !true)"
    assert render(parse("true & false")) == "(true & false)"
    assert render(Not(Equal("x", "y"))) == "!(x = y)"


def test_free_vars_examples():
    assert free_vars(atom("R", "x", "y")) == {"x", "y"}
    assert free_vars(Exists("x", atom("R", "x", "y"))) == {"y"}
    assert free_vars(parse("forall x. exists y. R(x,y)", R)) == set()


def test_substitute_refuses_capture():
    f = Exists("y", atom("R", "x", "y"))
    with pytest.raises(CaptureError):
        substitute(f, {"x": "y"})
    assert substitute(f, {"x": "z"}) == Exists("y", atom("R", "z", "y"))


def test_relativize_examples():
    D = atom("D", "x")
    assert relativize(Exists("x", atom("P", "x")), D) == Exists("x", And(atom("D", "x"), atom("P", "x")))
    assert relativize(Forall("x", atom("P", "x")), D) == Forall("x", Implies(atom("D", "x"), atom("P", "x")))


def test_relativize_refuses_capture_of_domain_parameter():
    with pytest.raises(CaptureError):
        relativize(Exists("p", atom("P", "p")), atom("D", "x", "p"), params=("p",))


def test_alpha_normalize_numbers_binders():
    f = parse("exists a. forall b. R(a,b)", R)
    assert render(alpha_normalize(f)) == "exists v0. forall v1. R(v0,v1)"


@given(formulas())
def test_parse_render_round_trip(f):
    assert parse(render(f)) == f
    assert alpha_equivalent(parse(render(f)), alpha_normalize(f))


@given(formulas())
def test_alpha_normal_form_has_no_shadowing(f):
    g = alpha_normalize(f)
    assert not (bound_vars(g) & free_vars(g))


@given(formulas())
def test_nnf_and_miniscope_are_negation_normal(f):
    assert is_nnf(nnf(f))
    assert is_nnf(miniscope(f))
    assert free_vars(miniscope(f)) <= free_vars(f)
