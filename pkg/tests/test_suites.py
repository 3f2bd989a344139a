import pytest

from fotransfer.suites import SUITES, Check, run_suite, same_up_to_renaming
from fotransfer.syntax import parse


@pytest.mark.parametrize("name", ["formula", "models", "schemes", "codings", "fv"])
def test_quick_module_suites_pass(name):
    rows = run_suite(name, quick=True)
    assert rows
    failed = [(r.name, r.expected, r.got) for r in rows if not r.passed]
    assert failed == []


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suite("nosuch")


def test_check_fails_on_mismatch_or_overrun():
    assert Check("a", "1", "1").passed
    assert not Check("a", "1", "2").passed
    assert not Check("a", "1", "1", seconds=2.0, limit=1.0).passed


def test_renaming_ignores_bound_names_and_grouping():
    f = parse("exists x. ((P(x) & Q(x)) & P(x))")
    g = parse("exists y. (P(y) & (Q(y) & P(y)))")
    assert same_up_to_renaming(f, g)
    assert not same_up_to_renaming(f, parse("exists y. (P(y) & Q(y))"))


def test_acceptance_suite_lists_eight_criteria():
    assert len(SUITES["acceptance"]) == 8
