import random

import pytest
from hypothesis import given, settings

from conftest import structures
from fotransfer import codings
from fotransfer.corpus import random_structure, sentence_corpus
from fotransfer.errors import CaptureError, CorrectnessError, ParseError, SchemeError
from fotransfer.evaluate import evaluate
from fotransfer.formula import Signature, free_vars
from fotransfer.prenex import PrenexClass, classify
from fotransfer.schemes import (
    Component, Scheme, check_correctness, complexity_report, correctness_report, decode,
    dump_scheme, identity_scheme, parameter_assignments, parse_scheme, reduction_F,
    symbolic_scheme, tilde_translate, transfer_bound,
)
from fotransfer.structures import FiniteStructure, iso_check
from fotransfer.suites import WORKED_INPUT, WORKED_OUTPUT, same_up_to_renaming
from fotransfer.syntax import parse, render

R = Signature.of(("R", 2), equality=False)

OVERLAP_SCHEME = """\
scheme overlap from R/2 to T/2 params
k: 1
dom: true
rel R: T(x,y)
corel R: T(x,y) | T(y,x)
end
"""


def test_worked_translation_exact():
    s = symbolic_scheme(R, k=1, params=("p",))
    out = tilde_translate(s, parse(WORKED_INPUT, R))
    assert render(out) == WORKED_OUTPUT
    assert same_up_to_renaming(out, parse(WORKED_OUTPUT))


def test_existential_innermost_keeps_polarity():
    s = symbolic_scheme(R, k=1, params=())
    out = tilde_translate(s, parse("forall x. exists y. (R(x,y) & !R(y,y))", R))
    assert render(out) == ("forall x. (Dom(x) -> (exists y. (Dom(y) & "
                           "(PhiR(x,y) & PhiRbar(y,y)))))")


def test_identity_translation_is_relativized_to_true():
    s = identity_scheme(R)
    out = tilde_translate(s, parse("exists x. R(x,x)", R))
    assert render(out) == "exists x. (true & R(x,x))"


def test_reduction_F_quantifies_parameters():
    s = symbolic_scheme(R, k=1, params=("p",))
    F = reduction_F(s, parse(WORKED_INPUT, R))
    assert render(F).startswith("forall p. (")
    assert free_vars(F) == frozenset()


def test_F_of_true_is_valid_on_random_targets():
    s = codings.palette_scheme(1)
    F = reduction_F(s, parse("true"))
    rng = random.Random(3)
    for _ in range(20):
        A = random_structure(rng, s.target_sig, rng.randint(1, 3))
        assert evaluate(A, F)


def test_transfer_bound_examples():
    assert transfer_bound(PrenexClass.sigma(2), 1, False) == (PrenexClass.sigma(2), 2, True)
    assert transfer_bound(PrenexClass.pi(3), 4, True) == (PrenexClass.pi(6), 2, True)
    bound, r, met = transfer_bound(PrenexClass.sigma(1), 2, False)
    assert (bound, r, met) == (PrenexClass.sigma(3), 2, False)


def test_complexity_report_worked_example():
    s = identity_scheme(R)
    rep = complexity_report(s, parse(WORKED_INPUT, R))
    assert (str(rep.input_class), str(rep.bound), rep.within_bound) == ("Sigma 2", "Sigma 2", True)


def test_complexity_report_with_parameters():
    s = symbolic_scheme(R, k=4, params=("p",), opaque=False)
    phi = parse("forall a. exists b. forall c. (R(a,b) | R(b,c))", R)
    rep = complexity_report(s, phi)
    assert str(rep.input_class) == "Pi 3"
    assert str(rep.bound) == "Pi 6"
    assert rep.within_bound and rep.hypotheses_met


def test_fpo_fails_on_one_element_poset():
    s = codings.fpo_scheme()
    P = codings.Poset.generated(1, [])
    assert not check_correctness(s, P.structure)


def test_overlapping_complements_fail_correctness():
    s = parse_scheme(OVERLAP_SCHEME)
    A = FiniteStructure.build(s.target_sig, 2, {"T": [(0, 1)]})
    rep = correctness_report(s, A)
    assert not rep.alpha
    assert rep.overlaps
    assert not rep.ok()


def test_verbatim_fpo_fails_on_the_diagonal_only():
    s = codings.fpo_scheme()
    P = codings.encode_graph_as_poset(codings.Graph(2, [(0, 1)]))
    rep = correctness_report(s, P.structure)
    assert rep.ok() and not rep.ok(strict=True)
    assert {t[0] == t[1] for _, t in rep.gaps} == {True}
    assert check_correctness(codings.fpo_scheme(complete=True), P.structure, strict=True)


def test_scheme_file_round_trip():
    s = codings.fpo_scheme()
    again = parse_scheme(dump_scheme(s))
    assert again == s
    assert parse_scheme(dump_scheme(again)) == again


def test_scheme_file_with_explicit_arguments_and_comments():
    text = "# demo\nscheme demo from R/2 to T/2\nk: 1\ndom: true\nrel R(a,b): T(b,a)\n" \
           "corel R(a,b):\n  !T(b,a)\nend\n"
    s = parse_scheme(text)
    assert s.rel("R").args == ("a", "b")
    A = FiniteStructure.build(s.target_sig, 2, {"T": [(0, 1)]})
    assert decode(s, A, strict=True).rel("R") == frozenset({(1, 0)})


def test_scheme_file_errors():
    with pytest.raises(ParseError):
        parse_scheme("scheme x from R/2 to T/2\ndom: true\n")
    with pytest.raises(ParseError):
        parse_scheme("scheme x from R/2 to T/2\ndom: T(x,\nend\n")
    with pytest.raises(SchemeError):
        parse_scheme("scheme x from R/2 to T/2\ndom: true\nend\n")


def test_translation_rejects_bad_inputs():
    s = symbolic_scheme(R, k=1, params=("p",))
    with pytest.raises(SchemeError):
        tilde_translate(s, parse("(exists x. R(x,x)) & (exists y. R(y,y))", R))
    with pytest.raises(SchemeError):
        tilde_translate(s, parse("R(x,x)", R))
    with pytest.raises(CaptureError):
        tilde_translate(s, parse("exists p. R(p,p)", R))


def test_universal_innermost_needs_complement():
    s = Scheme("nocorel", R, Signature.of(("T", 2), equality=False), (),
               Component(("x",), parse("true")),
               (("R", Component(("x", "y"), parse("T(x,y)", Signature.of(("T", 2))))),),
               corels=(), declared_k=1)
    with pytest.raises(SchemeError):
        tilde_translate(s, parse("forall x. R(x,x)", R))


def test_sigma_scheme_rejects_high_components():
    with pytest.raises(SchemeError):
        parse_scheme("scheme hi from R/2 to T/2\nk: 1\ndom: true\n"
                     "rel R: forall z. T(x,z)\ncorel R: !T(x,y)\nend\n")


def test_decode_rejects_failed_correctness():
    s = parse_scheme(OVERLAP_SCHEME)
    A = FiniteStructure.build(s.target_sig, 2, {"T": [(0, 1)]})
    with pytest.raises(CorrectnessError):
        decode(s, A)


def test_decode_identity_reduces_structure():
    s = identity_scheme(R)
    A = FiniteStructure.build(R, 3, {"R": [(0, 2), (1, 2)]})
    assert iso_check(decode(s, A), FiniteStructure.build(R, 2, {"R": [(0, 1)]}))


@settings(max_examples=40)
@given(structures(sig=R))
def test_identity_scheme_is_sound(A):
    s = identity_scheme(R)
    B = decode(s, A)
    for phi in sentence_corpus(count=10, rel="R"):
        assert evaluate(A, tilde_translate(s, phi)) == evaluate(B, phi)


def test_palette_scheme_is_sound_for_strictly_correct_parameters():
    s = codings.palette_scheme(2)
    rng = random.Random(8)
    checked = 0
    for _ in range(6):
        C = random_structure(rng, codings.DIGRAPH_SIG, rng.randint(1, 2))
        A, pv = codings.palette_encode(C)
        for asg in parameter_assignments(s, A):
            if not check_correctness(s, A, asg, strict=True):
                continue
            B = decode(s, A, asg, strict=True)
            for phi in sentence_corpus(count=6, rel="R"):
                assert evaluate(A, tilde_translate(s, phi), asg) == evaluate(B, phi)
            checked += 1
    assert checked > 0
