"""Invariant suites shared by ``fotransfer check`` and the test-suite.

A suite is a list of check functions; each returns :class:`Check` rows
(name, expected, got).  ``quick=True`` shrinks the corpora for smoke runs;
the acceptance criteria always run at full scale.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import codings, corpus, fv
from .evaluate import Evaluator
from .formula import (
    And, Or, Signature, alpha_equivalent, flatten, free_vars, is_sentence,
    uses_equality,
)
from .oracle import naive_eval
from .prenex import PrenexClass, classify, fits, is_prenex, to_prenex, split_prefix, class_of_prefix
from .schemes import (
    check_correctness, complexity_report, correctness_report, decode, identity_scheme,
    parameter_assignments, symbolic_scheme, tilde_translate, reduction_F,
)
from .structures import (
    FiniteStructure, all_structures, eq_congruence, iso_check, quotient,
)
from .syntax import parse, render


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    got: str
    seconds: float = field(default=0.0, compare=False)
    limit: float | None = field(default=None, compare=False)
    detail: str = field(default="", compare=False)

    @property
    def passed(self) -> bool:
        in_time = self.limit is None or self.seconds <= self.limit
        return self.expected == self.got and in_time


def _timed(name, limit, fn):
    t0 = time.perf_counter()
    expected, got = fn()
    return Check(name, str(expected), str(got), time.perf_counter() - t0, limit)


def _reassociate(f):
    """Right-nest every maximal And/Or chain so associativity is ignored."""
    from .formula import Exists, Forall, Implies, Not
    if isinstance(f, (And, Or)):
        parts = [_reassociate(p) for p in flatten(f, type(f))]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = type(f)(p, out)
        return out
    if isinstance(f, Not):
        return Not(_reassociate(f.body))
    if isinstance(f, Implies):
        return Implies(_reassociate(f.left), _reassociate(f.right))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, _reassociate(f.body))
    return f


def same_up_to_renaming(f, g) -> bool:
    return alpha_equivalent(_reassociate(f), _reassociate(g))


# --- acceptance criteria ------------------------------------------------------------

WORKED_INPUT = "exists x. forall y. (R(x,y) | !R(y,x))"
WORKED_OUTPUT = "exists x. (Dom(x,p) & (forall y. (Dom(y,p) -> (!PhiRbar(x,y,p) | !PhiR(y,x,p)))))"


def criterion_worked_translation():
    def run():
        s = symbolic_scheme(Signature((("R", 2),), False), k=1, params=("p",))
        got = tilde_translate(s, parse(WORKED_INPUT))
        want = parse(WORKED_OUTPUT, s.target_sig)
        return "match", "match" if same_up_to_renaming(got, want) else render(got)
    return [_timed("C1 worked translation", 1.0, run)]


def _accounting_pairs(count: int, seed: int):
    rng = random.Random(seed)
    src = Signature((("R", 2), ("P", 1)), False)
    for i in range(count):
        k = 1 + i % 4
        r = 2 + (i // 4) % 2
        if i % 2 == 0:
            phi = corpus.random_prenex(rng, src, "Sigma", r, matrix_size=3)
            s = corpus.random_sigma_scheme(rng, src, k)
        else:
            phi = corpus.random_prenex(rng, src, "Pi", r + 1, matrix_size=3)
            s = corpus.random_sigma_scheme(rng, src, k, params=("p", "q"))
        yield phi, s


def criterion_transfer_accounting(count: int = 120, seed: int = 2):
    def random_pairs():
        bad = 0
        for phi, s in _accounting_pairs(count, seed):
            rep = complexity_report(s, phi)
            rederived = class_of_prefix(split_prefix(to_prenex(rep.output))[0])
            if not (rep.hypotheses_met and rep.within_bound) or rederived != rep.output_class:
                bad += 1
        return f"{count} pairs, 0 violations", f"{count} pairs, {bad} violations"

    def named():
        fpo = complexity_report(codings.fpo_scheme(), parse(WORKED_INPUT.replace("R(", "E(")))
        s = symbolic_scheme(Signature((("R", 2),), False), k=4, params=("p", "q"), opaque=False)
        pi3 = parse("forall x. exists y. forall z. (R(x,y) | !R(y,z))")
        e = complexity_report(s, pi3)
        got = (f"{fpo.input_class}->{fpo.output_class} bound {fpo.bound} {fpo.within_bound}; "
               f"{e.input_class}->{e.output_class} bound {e.bound} {e.within_bound}")
        return ("Sigma 2->Sigma 2 bound Sigma 2 True; Pi 3->Pi 6 bound Pi 6 True", got)

    t0 = time.perf_counter()
    rows = [_timed("C2 transfer accounting (random)", 30.0, random_pairs),
            _timed("C2 transfer accounting (named instances)", 30.0, named)]
    total = time.perf_counter() - t0
    return [Check(r.name, r.expected, r.got, total, r.limit) for r in rows]


def criterion_graph_roundtrip():
    def run(sizes):
        scheme = codings.fpo_scheme()
        good = 0
        graphs = [G for n in sizes for G in codings.all_graphs(n)]
        for G in graphs:
            P = codings.encode_graph_as_poset(G)
            D = decode(scheme, P.structure)
            C = codings.graph_structure(G)
            good += iso_check(D, quotient(C, eq_congruence(C)))
        return f"{len(graphs)}/{len(graphs)}", f"{good}/{len(graphs)}"

    t0 = time.perf_counter()
    rows = [_timed("C3 graph round trip (4 vertices)", 60.0, lambda: run((4,))),
            _timed("C3 graph round trip (1-3 vertices)", 60.0, lambda: run((1, 2, 3)))]
    total = time.perf_counter() - t0
    return [Check(r.name, r.expected, r.got, total, r.limit) for r in rows]


def soundness_cases(quick: bool = False):
    """(scheme, target structures, sentences) for the soundness suite."""
    rng = random.Random(5)
    sent_e = corpus.sentence_corpus(rel="E", count=12 if quick else 24)
    sent_r = corpus.sentence_corpus(rel="R", count=12 if quick else 24)
    sent_req = corpus.sentence_corpus(seed=13, rel="R", equality=True, count=12 if quick else 24)
    ident_targets = [A for n in (1, 2, 3) for A in all_structures(corpus.BINARY_SIG_NOEQ, n)]
    if quick:
        ident_targets = ident_targets[::7]
    fpo_targets = [codings.encode_graph_as_poset(G).structure
                   for n in (1, 2) for G in codings.all_graphs(n)]
    fpo_targets += [codings.random_poset(rng, rng.randint(3, 8)).structure
                    for _ in range(10 if quick else 40)]
    small_r = [A for n in (1, 2) for A in all_structures(codings.DIGRAPH_SIG, n)]
    small_r += [corpus.random_structure(rng, codings.DIGRAPH_SIG, 3) for _ in range(6 if quick else 24)]
    yield identity_scheme(corpus.BINARY_SIG_NOEQ), ident_targets, sent_e
    yield codings.fpo_scheme(complete=True), fpo_targets, sent_e
    for k in (1, 2):
        yield codings.palette_scheme(k), [codings.palette_encode(C)[0] for C in small_r], sent_r
    q_targets = []
    for C in [A for n in (1, 2) for A in all_structures(codings.DIGRAPH_EQ_SIG, n)] + \
            [corpus.random_structure(rng, codings.DIGRAPH_EQ_SIG, 3) for _ in range(8)]:
        copies = [rng.randint(1, 2) for _ in range(C.size)]
        q_targets.append(codings.quotient_encode(C, copies))
    q_targets += [corpus.random_structure(rng, codings.QUOT_SIG, rng.randint(1, 4))
                  for _ in range(10 if quick else 60)]
    yield codings.quotient_scheme(), q_targets, sent_req


def criterion_soundness(quick: bool = False):
    stats = {}

    def run():
        discrepancies = 0
        for s, targets, sentences in soundness_cases(quick):
            translations = [tilde_translate(s, phi) for phi in sentences]
            codings_found = 0
            for A in targets:
                ev = Evaluator(A)
                for pv in parameter_assignments(s, A):
                    if not correctness_report(s, A, pv, ev).ok(strict=True):
                        continue
                    codings_found += 1
                    D = decode(s, A, pv, strict=True, evaluator=ev)
                    dv = Evaluator(D)
                    for phi, t in zip(sentences, translations):
                        discrepancies += ev(t, pv) != dv(phi)
            stats[s.name] = (codings_found, len(sentences))
        return "0 discrepancies", f"{discrepancies} discrepancies"

    main = _timed("C4 scheme soundness", 300.0, run)
    used = sum(1 for found, _ in stats.values() if found)
    detail = ", ".join(f"{name}: {found} codings x {n} sentences"
                       for name, (found, n) in stats.items())
    return [Check(main.name, main.expected, main.got, main.seconds, main.limit, detail),
            Check("C4 every suite scheme exercised", f"{len(stats)}/{len(stats)}",
                  f"{used}/{len(stats)}", main.seconds, main.limit)]


def criterion_arithmetic(N: int = 6):
    def run():
        P = codings.vn_fragment(N)
        ev = Evaluator(P.structure)
        s = codings.vn_scheme()
        p = [P.element(f"p{i}") for i in range(N + 1)]
        wrong = 0
        results = {}
        for rel, op in (("Plus", lambda a, b: a + b), ("Times", lambda a, b: a * b)):
            comp = s.rel(rel)
            prog = ev.program(comp.formula)
            for n, m in itertools.product(range(N + 1), repeat=2):
                got = {c for c in range(N + 1) if prog(dict(zip(comp.args, (p[n], p[m], p[c]))))}
                want = {op(n, m)} if op(n, m) <= N else set()
                wrong += got != want
            truth = {(p[a], p[b], p[op(a, b)]) for a in range(N + 1) for b in range(N + 1)
                     if op(a, b) <= N}
            scan = set(ev.satisfying(comp.formula, comp.args))
            results[rel] = scan == truth
        return ("98 pair checks exact; scans exact",
                f"{98 - wrong} pair checks exact; scans "
                f"{'exact' if all(results.values()) else results}")
    return [_timed("C5 arithmetic fragment", 120.0, run)]


def fv_structures(max_size: int = 3):
    return [A for n in range(1, max_size + 1) for A in all_structures(corpus.BINARY_SIG, n)]


MUTATION_TARGET = "exists x. forall y. (E(x,y) | !E(y,x))"


def mixed_factors(max_size: int = 3):
    """One structure per isomorphism class, over the FV signature."""
    return [FiniteStructure.build(corpus.BINARY_SIG, A.size, {"E": A.rel("E")}, name=A.name)
            for n in range(1, max_size + 1) for A in corpus.binary_classes(n)]


def criterion_feferman_vaught(quick: bool = False):
    def run():
        structures = fv_structures(2 if quick else 3)
        failures = 0
        total = 0
        for phi in corpus.fv_corpus():
            for k in (1, 2):
                dec = fv.fv_decompose(phi, k)
                for A in structures:
                    total += 1
                    failures += not fv.fv_verify(phi, k, A, dec)
        return f"{total}/{total}", f"{total - failures}/{total}"

    def mutation_powers():
        # over powers alone some clauses are implied by others, so only
        # some deletions can be visible there
        phi = parse(MUTATION_TARGET, corpus.BINARY_SIG)
        dec = fv.fv_decompose(phi, 1)
        structures = fv_structures(2)
        killed = sum(any(not fv.fv_verify(phi, 1, A, dec.drop(i)) for A in structures)
                     for i in range(dec.r))
        return "a deleted clause is detected", \
            "a deleted clause is detected" if killed else f"no deletion detected (0/{dec.r})"

    def mutation_products():
        phi = parse(MUTATION_TARGET, corpus.BINARY_SIG)
        dec = fv.fv_decompose(phi, 1)
        factors = mixed_factors()
        killed = 0
        for i in range(dec.r):
            mutant = dec.drop(i)
            killed += any(not fv.fv_check_product(phi, [A, B], mutant).ok
                          for A in factors for B in factors)
        return f"{dec.r}/{dec.r} mutants killed", f"{killed}/{dec.r} mutants killed"

    t0 = time.perf_counter()
    rows = [_timed("C6 Feferman-Vaught verification", 300.0, run),
            _timed("C6 clause deletion detected on powers", 300.0, mutation_powers),
            _timed("C6 clause deletion detected on mixed products", 300.0, mutation_products)]
    total = time.perf_counter() - t0
    return [Check(r.name, r.expected, r.got, total, r.limit) for r in rows]


def criterion_oracle(quick: bool = False):
    def run():
        formulas = corpus.formula_corpus()
        structures = fv_structures(2 if quick else 3)
        bad = 0
        total = 0
        for A in structures:
            ev = Evaluator(A)
            for f in formulas:
                xs = sorted(free_vars(f))
                for values in itertools.product(A.universe, repeat=len(xs)):
                    asg = dict(zip(xs, values))
                    total += 1
                    bad += ev(f, asg) != naive_eval(A, f, asg)
        return "0 disagreements", f"{bad} disagreements"
    return [_timed("C7 evaluator vs naive oracle", 60.0, run)]


def quotient_sentences():
    fs = corpus.formula_corpus() + corpus.sentence_corpus()
    return [f for f in fs if is_sentence(f) and not uses_equality(f)]


def criterion_quotient_truth(quick: bool = False):
    def run():
        sentences = quotient_sentences()
        sizes = (1, 2, 3) if quick else (1, 2, 3, 4)
        structures = [A for n in sizes for A in corpus.binary_classes(n)]
        bad = 0
        for A in structures:
            Q = quotient(A, eq_congruence(A))
            ea, eq = Evaluator(A), Evaluator(Q)
            for f in sentences:
                bad += ea(f) != eq(f)
        return "0 disagreements", f"{bad} disagreements"
    return [_timed("C8 quotient truth preservation", 120.0, run)]


ACCEPTANCE = (
    criterion_worked_translation,
    criterion_transfer_accounting,
    criterion_graph_roundtrip,
    criterion_soundness,
    criterion_arithmetic,
    criterion_feferman_vaught,
    criterion_oracle,
    criterion_quotient_truth,
)


# --- module invariants -----------------------------------------------------------------

def formula_invariants(quick: bool = False):
    rows = []
    fs = corpus.formula_corpus()
    structures = fv_structures(2 if quick else 3)
    roundtrip = sum(alpha_equivalent(parse(render(f)), f) for f in fs)
    rows.append(Check("parse(render(f)) = f", f"{len(fs)}/{len(fs)}", f"{roundtrip}/{len(fs)}"))
    prenex_ok = sum(is_prenex(to_prenex(f)) and classify(to_prenex(f)) == classify(f) for f in fs)
    rows.append(Check("to_prenex is prenex, same class", f"{len(fs)}/{len(fs)}", f"{prenex_ok}/{len(fs)}"))
    bad = 0
    for A in structures:
        ev = Evaluator(A)
        for f in fs:
            g = to_prenex(f)
            xs = sorted(free_vars(f))
            for values in itertools.product(A.universe, repeat=len(xs)):
                asg = dict(zip(xs, values))
                bad += ev(f, asg) != ev(g, asg)
    rows.append(Check("eval(f) = eval(to_prenex(f))", "0", str(bad)))
    from .formula import Not
    dual = sum(classify(Not(f)) == classify(f).dual() for f in fs)
    rows.append(Check("classify(!f) is the dual class", f"{len(fs)}/{len(fs)}", f"{dual}/{len(fs)}"))
    return rows


def model_invariants(quick: bool = False):
    rows = []
    structures = [A for n in (1, 2, 3) for A in corpus.binary_classes(n)]
    idem = sum(eq_congruence(quotient(A, eq_congruence(A))).is_discrete() for A in structures)
    rows.append(Check("quotient by eq-congruence is reduced", f"{len(structures)}/{len(structures)}",
                      f"{idem}/{len(structures)}"))
    rng = random.Random(3)
    pool = [A for A in all_structures(corpus.BINARY_SIG_NOEQ, 3)]
    sample = [rng.choice(pool) for _ in range(8 if quick else 24)]
    bad = 0
    for A, B, C in itertools.product(sample[:8], repeat=3):
        ab, bc, ac = iso_check(A, B), iso_check(B, C), iso_check(A, C)
        bad += (ab and bc and not ac) or ab != iso_check(B, A) or not iso_check(A, A)
    rows.append(Check("iso_check is an equivalence", "0", str(bad)))
    return rows


def scheme_invariants(quick: bool = False):
    rows = []
    sig = corpus.BINARY_SIG_NOEQ
    ident = identity_scheme(sig)
    structures = [A for n in (1, 2, 3) for A in all_structures(sig, n)]
    if quick:
        structures = structures[::5]
    good = sum(iso_check(decode(ident, A), quotient(A, eq_congruence(A))) for A in structures)
    rows.append(Check("decode(identity, A) = A/eq(A)", f"{len(structures)}/{len(structures)}",
                      f"{good}/{len(structures)}"))
    fpo = codings.fpo_scheme()
    one = codings.Poset.generated(1, []).structure
    rows.append(Check("fpo correctness fails on a 1-element poset", "False",
                      str(check_correctness(fpo, one, {}))))
    true_f = reduction_F(fpo, parse("true"))
    from .structures import all_structures as _all
    valid = all(Evaluator(A)(true_f) for n in (1, 2, 3) for A in _all(codings.LE_SIG, n))
    rows.append(Check("F(true) holds everywhere (size <= 3)", "True", str(valid)))
    return rows


def coding_invariants(quick: bool = False):
    rows = []
    N = 3 if quick else 6
    for n in range(N + 1):
        P = codings.vn_fragment(n)
        rows.append(Check(f"vn_fragment({n}) minimal elements", str(list(range(n + 1))),
                          str(sorted(P.minimal()))))
    P = codings.vn_fragment(N)
    ev = Evaluator(P.structure)
    c2 = ev.program(codings.chain_formula(2, "a", "d"))
    c3 = ev.program(codings.chain_formula(3, "a", "d"))
    bad = 0
    for n, m in itertools.product(range(N + 1), repeat=2):
        c = P.element(f"c{n},{m}")
        low2 = {a for a in range(N + 1) if c2({"a": a, "d": c})}
        low3 = {a for a in range(N + 1) if c3({"a": a, "d": c})}
        bad += low2 != {n} or low3 != {m}
    rows.append(Check("pairing uniqueness", "0", str(bad)))
    s = codings.vn_scheme()
    bad = 0
    arith = corpus.arith_corpus()
    for n in range(2 if quick else 4):
        V = codings.vn_fragment(n).structure
        ev_v = Evaluator(V)
        ev_a = Evaluator(codings.arithmetic_structure(n))
        for beta in arith:
            bad += ev_v(tilde_translate(s, beta)) != ev_a(beta)
    rows.append(Check("arithmetic sentence transport", "0", str(bad)))
    D = decode(s, codings.vn_fragment(4).structure, {}, check=False)
    rows.append(Check("decode(vn, vn_fragment(4)) is arithmetic on 0..4", "True",
                      str(D.tables == codings.arithmetic_structure(4).tables)))
    return rows


def fv_invariants(quick: bool = False):
    rows = []
    bad = 0
    for phi in corpus.fv_corpus():
        if is_sentence(phi):
            dec = fv.fv_decompose(phi, 1)
            bad += bool(dec.free_vars())
    rows.append(Check("sentences decompose into sentences", "0", str(bad)))
    A = corpus.random_structure(random.Random(1), corpus.BINARY_SIG, 2)
    bad = 0
    for m in (1, 2, 3):
        P = fv.power(A, m)
        for t in itertools.product(range(P.size), repeat=2):
            proj = [fv.projections(e, A.size, m) for e in t]
            want = all(A.holds("E", (proj[0][i], proj[1][i])) for i in range(m))
            bad += P.holds("E", t) != want
    rows.append(Check("power relations hold coordinatewise", "0", str(bad)))
    rng = random.Random(9)
    factors = mixed_factors(2 if quick else 3)
    bad = 0
    pairs = 0
    for phi in corpus.fv_corpus():
        dec = fv.fv_decompose(phi, 1)
        for _ in range(3 if quick else 10):
            A, B = rng.choice(factors), rng.choice(factors)
            pairs += 1
            bad += not fv.fv_check_product(phi, [A, B], dec).ok
    rows.append(Check(f"decompositions hold on {pairs} mixed products", "0", str(bad)))
    return rows


SUITES = {
    "formula": (formula_invariants,),
    "models": (model_invariants,),
    "schemes": (scheme_invariants,),
    "codings": (coding_invariants,),
    "fv": (fv_invariants,),
    "acceptance": ACCEPTANCE,
}


def run_suite(name: str, quick: bool = False) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    rows = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        for fn in SUITES[n]:
            rows.extend(fn(quick=quick) if _takes_quick(fn) else fn())
    return rows


def _takes_quick(fn) -> bool:
    import inspect
    return "quick" in inspect.signature(fn).parameters
