"""Coding schemes, the sentence translation and the reduction built on it.

A scheme codes L0-structures inside L1-structures: a domain formula, an
optional equivalence formula, one formula per L0 relation and, for a
Sigma_k-scheme, one complement formula per relation.  Every component may
mention the scheme's parameters as extra free variables.

Two translation modes exist:

* Sigma_k mode (complement formulas present, no equality): literals of the
  prenex matrix are replaced by the polarity rule, which keeps the output
  within Sigma_{r+k-1} for a Sigma_r input.
* general mode (no complement formulas): every atom is replaced by its
  relation formula and equality by the equivalence formula.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import CaptureError, CorrectnessError, ParseError, SchemeError, SignatureError
from .evaluate import Evaluator
from .formula import (
    BOTTOM, TOP, And, Atom, Bottom, Equal, Exists, Forall, Formula, Implies, Not,
    Or, Signature, Top, all_vars, atom, bound_vars, check_signature, conj, disj,
    exists_many, forall_many, free_vars, instantiate, is_nnf, nnf,
)
from .prenex import PrenexClass, classify, fits, is_prenex, split_prefix
from .structures import FiniteStructure, Partition, eq_congruence, quotient
from .syntax import parse, render


def default_args(arity: int) -> tuple[str, ...]:
    if arity <= 3:
        return ("x", "y", "z")[:arity]
    return tuple(f"x{i}" for i in range(1, arity + 1))


@dataclass(frozen=True)
class Component:
    """A scheme formula together with its formal argument variables."""

    args: tuple[str, ...]
    formula: Formula

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(set(self.args)) != len(self.args):
            raise SchemeError(f"repeated argument variable in {self.args}")

    def at(self, actual, params=(), avoid=()) -> Formula:
        """The component with ``actual`` plugged into its argument slots."""
        return instantiate(self.formula, self.args, tuple(actual), set(avoid) | set(params))


@dataclass(frozen=True)
class Scheme:
    name: str
    source_sig: Signature
    target_sig: Signature
    params: tuple[str, ...]
    dom: Component
    rels: tuple[tuple[str, Component], ...]
    eq: Component | None = None
    corels: tuple[tuple[str, Component], ...] | None = None
    correctness: Formula | None = None
    declared_k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "rels", tuple(self.rels))
        if self.corels is not None:
            object.__setattr__(self, "corels", tuple(self.corels))
        names = dict(self.rels)
        if set(names) != set(self.source_sig.names()):
            raise SchemeError(
                f"relation formulas given for {sorted(names)}, "
                f"source signature has {sorted(self.source_sig.names())}")
        if len(self.dom.args) != 1:
            raise SchemeError("domain formula takes exactly one argument")
        if self.eq is not None and len(self.eq.args) != 2:
            raise SchemeError("equivalence formula takes exactly two arguments")
        for label, comp in self.components():
            overlap = set(comp.args) & set(self.params)
            if overlap:
                raise SchemeError(f"{label}: arguments {sorted(overlap)} clash with parameters")
            extra = free_vars(comp.formula) - set(comp.args) - set(self.params)
            if extra:
                raise SchemeError(f"{label}: unexpected free variables {sorted(extra)}")
            check_signature(comp.formula, self.target_sig)
        for rel, comp in self.rels + (self.corels or ()):
            if len(comp.args) != self.source_sig.arity(rel):
                raise SchemeError(f"formula for {rel} has the wrong number of arguments")
        if self.corels is not None:
            if self.eq is not None:
                raise SchemeError("a Sigma_k-scheme has no equivalence formula")
            if self.source_sig.has_equality:
                raise SchemeError("a Sigma_k-scheme codes a language without equality")
            unknown = set(dict(self.corels)) - set(names)
            if unknown:
                raise SchemeError(f"complement formulas for unknown relations {sorted(unknown)}")
            if self.declared_k is None:
                raise SchemeError("a Sigma_k-scheme needs a declared k")
            bound = PrenexClass.sigma(self.declared_k)
            for label, comp in self.components():
                if not fits(comp.formula, bound):
                    cls = classify(comp.formula)
                    raise SchemeError(f"{label} has class {cls}, not within {bound}")
        if self.correctness is None:
            if self.corels is not None:
                alpha = sigma_correctness(self.dom, self.rels, self.corels)
            else:
                alpha = general_correctness(self.dom, self.eq, self.rels)
            object.__setattr__(self, "correctness", alpha)
        extra = free_vars(self.correctness) - set(self.params)
        if extra:
            raise SchemeError(f"correctness condition has free variables {sorted(extra)}")
        check_signature(self.correctness, self.target_sig)
        if self.corels is not None:
            bound = PrenexClass.pi(self.declared_k + 1)
            if not fits(self.correctness, bound):
                cls = classify(self.correctness)
                raise SchemeError(f"correctness condition has class {cls}, not within {bound}")

    @property
    def mode(self) -> str:
        return "sigma" if self.corels is not None else "general"

    @property
    def k(self) -> int:
        """Declared k, or the least k >= 1 bounding every component."""
        if self.declared_k is not None:
            return self.declared_k
        k = 1
        for _, comp in self.components():
            c = classify(comp.formula)
            while not c.within(PrenexClass.sigma(k)):
                k += 1
        return k

    def components(self):
        yield "dom", self.dom
        if self.eq is not None:
            yield "eq", self.eq
        for rel, comp in self.rels:
            yield f"rel {rel}", comp
        for rel, comp in self.corels or ():
            yield f"corel {rel}", comp

    def rel(self, name: str) -> Component:
        return dict(self.rels)[name]

    def corel(self, name: str) -> Component | None:
        return dict(self.corels or ()).get(name)


# --- standard correctness conditions ----------------------------------------

def _fresh_args(n, avoid, base="a"):
    out = []
    i = 0
    while len(out) < n:
        v = f"{base}{i}"
        if v not in avoid:
            out.append(v)
        i += 1
    return tuple(out)


def _component_vars(*comps):
    out = set()
    for c in comps:
        if c is not None:
            out |= set(c.args) | all_vars(c.formula)
    return out


def sigma_correctness(dom: Component, rels, corels) -> Formula:
    """D is nonempty and each relation formula is the complement of its
    complement formula on D.  Pi_{k+1} when the components are Sigma_k."""
    corel = dict(corels)
    v = _fresh_args(1, _component_vars(dom), "d")[0]
    parts = [Exists(v, dom.at((v,)))]
    for rel, comp in rels:
        if rel not in corel:
            continue
        co = corel[rel]
        xs = _fresh_args(len(comp.args), _component_vars(dom, comp, co))
        pos = comp.at(xs)
        neg = co.at(xs)
        guard = conj(dom.at((x,)) for x in xs)
        body = And(Or(pos, neg), Or(Not(pos), Not(neg)))
        parts.append(forall_many(xs, Implies(guard, body)))
    return conj(parts)


def general_correctness(dom: Component, eq: Component | None, rels) -> Formula:
    """D nonempty, the equivalence formula an equivalence on D, and every
    relation formula compatible with it.  Trivial clauses for a literal
    equality are left out."""
    avoid = _component_vars(dom, eq, *(c for _, c in rels))
    d0 = _fresh_args(1, avoid, "d")[0]
    parts = [Exists(d0, dom.at((d0,)))]
    literal_eq = eq is None or eq.formula == Equal(*eq.args)
    if not literal_eq:
        a, b, c = _fresh_args(3, avoid)
        D = lambda v: dom.at((v,))
        E = lambda u, v: eq.at((u, v))
        parts.append(Forall(a, Implies(D(a), E(a, a))))
        parts.append(forall_many((a, b), Implies(And(D(a), D(b)), Implies(E(a, b), E(b, a)))))
        parts.append(forall_many((a, b, c), Implies(conj([D(a), D(b), D(c)]),
                                                    Implies(And(E(a, b), E(b, c)), E(a, c)))))
        for rel, comp in rels:
            n = len(comp.args)
            xs = _fresh_args(2 * n, avoid)
            us, vs = xs[:n], xs[n:]
            guard = conj([D(v) for v in xs] + [E(u, v) for u, v in zip(us, vs)])
            parts.append(forall_many(xs, Implies(guard, Implies(comp.at(us), comp.at(vs)))))
    return conj(parts)


# --- translation ---------------------------------------------------------------

def _check_input(s: Scheme, phi: Formula):
    if free_vars(phi):
        raise SchemeError(f"input is not a sentence (free {sorted(free_vars(phi))})")
    check_signature(phi, s.source_sig)
    if not is_prenex(phi):
        raise SchemeError("input sentence is not in prenex form")
    clash = bound_vars(phi) & set(s.params)
    if clash:
        raise CaptureError(f"bound variables {sorted(clash)} coincide with scheme parameters")


def tilde_translate(s: Scheme, phi: Formula) -> Formula:
    """Relativize to the domain formula and replace literals; the scheme's
    parameters stay free in the result."""
    _check_input(s, phi)
    prefix, matrix = split_prefix(phi)
    avoid = all_vars(phi) | set(s.params)

    def comp_at(c, args):
        return c.at(args, s.params, avoid)

    if s.mode == "sigma":
        existential = not prefix or prefix[-1][0] == "E"

        def lit(g, positive):
            if isinstance(g, Equal):
                raise SchemeError("equality atom in a Sigma_k-scheme translation")
            rel = g.rel
            if positive:
                if existential:
                    return comp_at(s.rel(rel), g.args)
                co = s.corel(rel)
                if co is None:
                    raise SchemeError(f"polarity rule needs the complement formula of {rel}")
                return Not(comp_at(co, g.args))
            if not existential:
                return Not(comp_at(s.rel(rel), g.args))
            co = s.corel(rel)
            if co is None:
                raise SchemeError(f"polarity rule needs the complement formula of {rel}")
            return comp_at(co, g.args)

        def go(g):
            if isinstance(g, (Atom, Equal)):
                return lit(g, True)
            if isinstance(g, Not):
                return lit(g.body, False)
            if isinstance(g, (And, Or)):
                return type(g)(go(g.left), go(g.right))
            return g

        body = go(matrix if is_nnf(matrix) else nnf(matrix))
    else:
        def go(g):
            if isinstance(g, Atom):
                return comp_at(s.rel(g.rel), g.args)
            if isinstance(g, Equal):
                if s.eq is None:
                    if not s.target_sig.has_equality:
                        raise SchemeError("equality atom but target has no equality")
                    return g
                return comp_at(s.eq, (g.left, g.right))
            if isinstance(g, Not):
                return Not(go(g.body))
            if isinstance(g, (And, Or, Implies)):
                return type(g)(go(g.left), go(g.right))
            return g

        body = go(matrix)

    for kind, v in reversed(prefix):
        guard = comp_at(s.dom, (v,))
        body = Exists(v, And(guard, body)) if kind == "E" else Forall(v, Implies(guard, body))
    return body


def reduction_F(s: Scheme, phi: Formula) -> Formula:
    """``forall p. (alpha(p) -> phi~(p))``, or ``alpha -> phi~`` without
    parameters."""
    body = Implies(s.correctness, tilde_translate(s, phi))
    return forall_many(s.params, body) if s.params else body


@dataclass(frozen=True)
class TranslationReport:
    input_class: PrenexClass
    output: Formula
    output_class: PrenexClass
    bound: PrenexClass
    within_bound: bool
    tilde_class: PrenexClass
    r: int
    k: int
    hypotheses_met: bool
    note: str = ""


def transfer_bound(input_class: PrenexClass, k: int, with_params: bool):
    """(bound, r, hypotheses_met) for the two halves of the transfer lemma.

    Without parameters a Sigma_r input (r >= 2) is sent into Sigma_{r+k-1};
    with parameters a Pi_{r+1} input is sent into Pi_{r+k}.  An input
    outside the hypotheses is treated as a member of the least admissible
    class containing it.
    """
    if not with_params:
        r = 2
        while not input_class.within(PrenexClass.sigma(r)):
            r += 1
        met = input_class.kind == "Sigma" and input_class.k == r
        return PrenexClass.sigma(r + k - 1), r, met
    r = 2
    while not input_class.within(PrenexClass.pi(r + 1)):
        r += 1
    met = input_class.kind == "Pi" and input_class.k == r + 1
    return PrenexClass.pi(r + k), r, met


def complexity_report(s: Scheme, phi: Formula) -> TranslationReport:
    input_class = classify(phi)
    k = s.k
    bound, r, met = transfer_bound(input_class, k, bool(s.params))
    out = reduction_F(s, phi)
    out_class = classify(out)
    note = "" if met else f"input {input_class} outside the lemma's hypotheses; r = {r} used"
    if s.mode != "sigma":
        note = (note + "; " if note else "") + "general scheme: bound assumes Sigma_k components"
    return TranslationReport(input_class, out, out_class, bound, fits(out, bound),
                             classify(tilde_translate(s, phi)), r, k, met, note)


# --- semantics on finite structures --------------------------------------------

@dataclass
class CorrectnessReport:
    alpha: bool
    domain: list[int]
    eq_equivalence: bool = True
    eq_compatible: bool = True
    overlaps: list = field(default_factory=list)
    gaps: list = field(default_factory=list)

    @property
    def semantic(self) -> bool:
        return bool(self.domain) and self.eq_equivalence and self.eq_compatible \
            and not self.overlaps

    def ok(self, strict: bool = False) -> bool:
        good = self.alpha and self.semantic
        return good and not self.gaps if strict else good

    @property
    def discrepancy(self) -> bool:
        """The correctness formula and the direct checks disagree."""
        return self.alpha != self.semantic


def _check_params(s: Scheme, A: FiniteStructure, pvals: Mapping[str, int]):
    missing = [p for p in s.params if p not in pvals]
    if missing:
        raise SchemeError(f"parameters {missing} need values")
    for p in s.params:
        if not 0 <= pvals[p] < A.size:
            raise SchemeError(f"parameter {p}={pvals[p]} outside the universe")
    return {p: int(pvals[p]) for p in s.params}


def _table(ev: Evaluator, comp: Component, D, pv):
    cand = {a: D for a in comp.args}
    return set(ev.satisfying(comp.formula, comp.args, pv, cand))


def correctness_report(s: Scheme, A: FiniteStructure, pvals: Mapping[str, int] | None = None,
                       evaluator: Evaluator | None = None) -> CorrectnessReport:
    pv = _check_params(s, A, pvals or {})
    ev = evaluator or Evaluator(A)
    alpha = ev(s.correctness, pv)
    D = [e for (e,) in ev.satisfying(s.dom.formula, s.dom.args, pv)]
    rep = CorrectnessReport(alpha, D)
    if not D:
        return rep
    if s.mode == "sigma":
        for rel, comp in s.rels:
            co = s.corel(rel)
            if co is None:
                continue
            pos, neg = _table(ev, comp, D, pv), _table(ev, co, D, pv)
            rep.overlaps.extend((rel, t) for t in sorted(pos & neg))
            for t in itertools.product(D, repeat=len(comp.args)):
                if t not in pos and t not in neg:
                    rep.gaps.append((rel, t))
        return rep
    if s.eq is not None:
        E = _table(ev, s.eq, D, pv)
        refl = all((a, a) in E for a in D)
        sym = all((b, a) in E for a, b in E)
        trans = all((a, c) in E for a, b in E for b2, c in E if b == b2)
        rep.eq_equivalence = refl and sym and trans
        if rep.eq_equivalence:
            cls = {a: frozenset(b for b in D if (a, b) in E) for a in D}
            for rel, comp in s.rels:
                T = _table(ev, comp, D, pv)
                for t in itertools.product(D, repeat=len(comp.args)):
                    rep_t = tuple(min(cls[e]) for e in t)
                    if (t in T) != (rep_t in T):
                        rep.eq_compatible = False
                        break
    return rep


def check_correctness(s: Scheme, A: FiniteStructure, pvals: Mapping[str, int] | None = None,
                      strict: bool = False) -> bool:
    """The correctness formula holds and the direct semantic checks pass.

    ``strict`` additionally demands that relation and complement formulas
    cover every tuple over D, i.e. are genuine complements there.
    """
    return correctness_report(s, A, pvals).ok(strict)


def decode(s: Scheme, A: FiniteStructure, pvals: Mapping[str, int] | None = None,
           check: bool = True, strict: bool = False,
           evaluator: Evaluator | None = None) -> FiniteStructure:
    """The L0-structure coded in ``A``: the structure induced on D by the
    relation formulas, modulo the equivalence formula (general mode) or
    modulo its eq-congruence (Sigma_k mode)."""
    pv = _check_params(s, A, pvals or {})
    ev = evaluator or Evaluator(A)
    if check:
        rep = correctness_report(s, A, pv, ev)
        if not rep.ok(strict):
            raise CorrectnessError(f"scheme {s.name}: parameters {pv} fail the correctness check")
    D = [e for (e,) in ev.satisfying(s.dom.formula, s.dom.args, pv)]
    if not D:
        raise CorrectnessError(f"scheme {s.name}: empty domain")
    pos = {e: i for i, e in enumerate(D)}
    tables = {}
    for rel, comp in s.rels:
        tables[rel] = [tuple(pos[e] for e in t) for t in _table(ev, comp, D, pv)]
    induced = FiniteStructure.build(s.source_sig, len(D), tables, name=f"{s.name}:{A.name}")
    if s.mode == "sigma":
        return quotient(induced, eq_congruence(induced))
    if s.eq is None:
        return induced
    E = _table(ev, s.eq, D, pv)
    labels = [min(pos[b] for b in D if (a, b) in E) for a in D]
    return quotient(induced, Partition.from_labels(labels))


def parameter_assignments(s: Scheme, A: FiniteStructure):
    for values in itertools.product(A.universe, repeat=len(s.params)):
        yield dict(zip(s.params, values))


# --- standard schemes -------------------------------------------------------------

def identity_scheme(sig: Signature) -> Scheme:
    """Every element codes itself; complements are literal negations."""
    sig = sig.without_equality()
    rels, corels = [], []
    for rel, arity in sig.relations:
        args = default_args(arity)
        rels.append((rel, Component(args, atom(rel, *args))))
        corels.append((rel, Component(args, Not(atom(rel, *args)))))
    return Scheme("identity", sig, sig, (), Component(("x",), TOP), tuple(rels),
                  corels=tuple(corels), declared_k=1)


def _pad_sigma(core: Formula, k: int, avoid, base: str) -> Formula:
    """Wrap ``core`` in k alternating blocks starting with exists; each
    block's variable is fed into the core atom so no block is vacuous."""
    out = core
    names = _fresh_args(k, avoid, base)
    if not isinstance(core, Atom):
        raise SchemeError("padding expects an atom")
    out = Atom(core.rel, core.args + names)
    for i in reversed(range(k)):
        out = (Exists if i % 2 == 0 else Forall)(names[i], out)
    return out


def symbolic_scheme(source_sig: Signature, k: int = 1, params=("p",),
                    opaque: bool = True) -> Scheme:
    """A Sigma_k-scheme whose components are uninterpreted target relations.

    ``Dom(x, p...)``, ``Phi<R>(x..., p...)`` and ``Phi<R>bar(x..., p...)``.
    With ``opaque=False`` each component carries k genuine alternation
    blocks (extra arguments of the target relation), so its class is
    exactly Sigma_k.
    """
    params = tuple(params)
    source_sig = source_sig.without_equality()
    pad = 0 if opaque else k
    target = [("Dom", 1 + len(params) + pad)]
    for rel, arity in source_sig.relations:
        target.append((f"Phi{rel}", arity + len(params) + pad))
        target.append((f"Phi{rel}bar", arity + len(params) + pad))
    tsig = Signature(tuple(target), False)

    def comp(name, args):
        core = atom(name, *(args + params))
        if opaque:
            return Component(args, core)
        return Component(args, _pad_sigma(core, k, set(args) | set(params), "w"))

    rels, corels = [], []
    for rel, arity in source_sig.relations:
        args = default_args(arity)
        rels.append((rel, comp(f"Phi{rel}", args)))
        corels.append((rel, comp(f"Phi{rel}bar", args)))
    return Scheme(f"symbolic{k}", source_sig, tsig, params, comp("Dom", ("x",)),
                  tuple(rels), corels=tuple(corels), declared_k=k)


# --- scheme file format -----------------------------------------------------------

_SECTION = re.compile(
    r"(?P<key>dom|eq|correctness|k|rel|corel)"
    r"(?:\s+(?P<rel>[A-Z][A-Za-z0-9_]*))?"
    r"(?:\((?P<args>[^)]*)\))?\s*:")


def parse_scheme(text: str) -> Scheme:
    """Read a scheme from its text form::

        scheme NAME from SIG0 to SIG1 params p1,...
        k: 1
        dom: FORMULA
        eq: FORMULA
        rel R: FORMULA            # or rel R(a,b): FORMULA
        corel R: FORMULA
        correctness: FORMULA
        end

    Signatures are written ``E/2,P/1`` with a trailing ``,=`` for equality
    (``-`` for the empty signature).  A formula may continue over several
    lines.  Without ``correctness:`` the standard condition is built.
    """
    lines = [(i, l.split("#", 1)[0].rstrip()) for i, l in enumerate(text.splitlines(), 1)]
    lines = [(i, l) for i, l in lines if l.strip()]
    if not lines:
        raise ParseError("empty scheme file", text, 0, 1)
    lineno, header = lines[0]
    words = header.split()
    if len(words) < 6 or words[0] != "scheme" or words[2] != "from" or words[4] != "to":
        raise ParseError("expected 'scheme NAME from SIG0 to SIG1 params ...'", header, 0, lineno)
    name = words[1]

    def sig_of(t):
        return Signature((), False) if t == "-" else Signature.from_spec(t)

    try:
        sig0, sig1 = sig_of(words[3]), sig_of(words[5])
    except SignatureError as exc:
        raise ParseError(str(exc), header, 0, lineno) from None
    params: tuple[str, ...] = ()
    if len(words) > 6:
        if words[6] != "params":
            raise ParseError("expected 'params'", header, 0, lineno)
        params = tuple(p for p in "".join(words[7:]).split(",") if p)
    sections = []
    ended = False
    for lineno, line in lines[1:]:
        stripped = line.strip()
        if stripped == "end":
            ended = True
            break
        m = _SECTION.match(stripped)
        if m:
            sections.append([m, stripped[m.end():].strip(), lineno])
        elif sections:
            sections[-1][1] += " " + stripped
        else:
            raise ParseError("text before the first section", line, 0, lineno)
    if not ended:
        raise ParseError("scheme not terminated by 'end'", text, 0, lines[-1][0])

    dom = eq = alpha = None
    k = None
    rels, corels = [], []
    for m, body, lineno in sections:
        key, rel, argtext = m.group("key"), m.group("rel"), m.group("args")
        args = tuple(a.strip() for a in argtext.split(",")) if argtext else None
        try:
            if key == "k":
                k = int(body)
                continue
            f = parse(body)
        except (ParseError, ValueError) as exc:
            raise ParseError(f"in section {key!r}: {exc}", body, 0, lineno) from None
        if key == "dom":
            dom = Component(args or ("x",), f)
        elif key == "eq":
            eq = Component(args or ("x", "y"), f)
        elif key == "correctness":
            alpha = f
        else:
            if args is None:
                if rel not in sig0:
                    raise ParseError(f"unknown relation {rel}", m.group(0), 0, lineno)
                args = default_args(sig0.arity(rel))
            (rels if key == "rel" else corels).append((rel, Component(args, f)))
    if dom is None:
        raise ParseError("missing 'dom:' section", text, 0, None)
    try:
        return Scheme(name, sig0, sig1, params, dom, tuple(rels), eq,
                      tuple(corels) if corels else None, alpha, k)
    except (SchemeError, SignatureError) as exc:
        raise SchemeError(f"scheme {name}: {exc}") from None


def dump_scheme(s: Scheme) -> str:
    def sig_text(sig):
        return sig.to_spec() or "-"

    head = f"scheme {s.name} from {sig_text(s.source_sig)} to {sig_text(s.target_sig)}"
    if s.params:
        head += " params " + ",".join(s.params)
    lines = [head]
    if s.declared_k is not None:
        lines.append(f"k: {s.declared_k}")

    def section(label, comp, default):
        if comp.args == default:
            return f"{label}: {render(comp.formula)}"
        return f"{label}({','.join(comp.args)}): {render(comp.formula)}"

    lines.append(section("dom", s.dom, ("x",)))
    if s.eq is not None:
        lines.append(section("eq", s.eq, ("x", "y")))
    for rel, comp in s.rels:
        lines.append(section(f"rel {rel}", comp, default_args(len(comp.args))))
    for rel, comp in s.corels or ():
        lines.append(section(f"corel {rel}", comp, default_args(len(comp.args))))
    lines.append(f"correctness: {render(s.correctness)}")
    lines.append("end")
    return "\n".join(lines) + "\n"
