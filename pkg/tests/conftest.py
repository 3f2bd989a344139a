import itertools

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from fotransfer.formula import (
    TOP, BOTTOM, And, Atom, Equal, Exists, Forall, Implies, Not, Or, Signature,
)
from fotransfer.structures import FiniteStructure

settings.register_profile("default", max_examples=120, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


SIG = Signature.of(("E", 2), ("P", 1), equality=True)
VARS = ("x", "y", "z")


def atoms(vars=VARS):
    v = st.sampled_from(vars)
    return st.one_of(
        st.builds(lambda a, b: Atom("E", (a, b)), v, v),
        st.builds(lambda a: Atom("P", (a,)), v),
        st.builds(Equal, v, v),
        st.just(TOP), st.just(BOTTOM),
    )


def formulas(max_leaves=8):
    def extend(children):
        v = st.sampled_from(VARS)
        return st.one_of(
            st.builds(Not, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Exists, v, children),
            st.builds(Forall, v, children),
        )
    return st.recursive(atoms(), extend, max_leaves=max_leaves)


@st.composite
def structures(draw, sig=SIG, max_size=3):
    n = draw(st.integers(1, max_size))
    tables = {}
    for rel, ar in sig.relations:
        cells = list(itertools.product(range(n), repeat=ar))
        tables[rel] = [t for t in cells if draw(st.booleans())]
    return FiniteStructure.build(sig, n, tables)


def assignments(A, f_vars):
    xs = sorted(f_vars)
    for values in itertools.product(A.universe, repeat=len(xs)):
        yield dict(zip(xs, values))
