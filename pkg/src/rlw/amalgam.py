"""Spans, amalgam search, the forced-identification refuter, 1AP/EAP class
checks, FSI-chain computation, and the AP decision procedure for finitely
generated semilinear varieties.

Span enumeration fixes phi1 as a subuniverse inclusion (finite chains have a
unique order automorphism, so this loses nothing up to equivalence) and walks
spans by (|B|+|C|, |C|, |B|, ...), so reported witnesses are minimal in that
order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (FiniteAlgebra, NotAChain, NotSemilinear, NotSimple,
                      NotSubalgebraClosed, SignatureMismatch)
from .completion import enumerate_chains
from .morphisms import (Morphism, are_isomorphic, compose, embeddings, homs,
                        is_essential, is_hom, morphism)
from .properties import handy_fixed_points, is_semilinear, mirror_fixed_points
from .structure import classify, congruences, has_cep, natural_projection, subalgebra, subuniverses


@dataclass(frozen=True)
class Span:
    A: FiniteAlgebra
    B: FiniteAlgebra
    C: FiniteAlgebra
    phi1: Morphism
    phi2: Morphism

    def __post_init__(self):
        for phi, tgt in ((self.phi1, self.B), (self.phi2, self.C)):
            if not phi.injective or not is_hom(self.A, tgt, phi.mapping):
                raise SignatureMismatch(f"{phi} is not an embedding of {self.A.name}")

    def __repr__(self):
        return (f"<Span {self.A.name} -> {self.B.name} {list(self.phi1.mapping)}, "
                f"{self.A.name} -> {self.C.name} {list(self.phi2.mapping)}>")


def span(A, B, C, phi1, phi2):
    return Span(A, B, C, morphism(A, B, phi1), morphism(A, C, phi2))


@dataclass(frozen=True)
class ClassSpec:
    """Either an explicit finite list of algebras or all chains of size <= bound
    over a constant signature satisfying a property filter."""
    algebras: tuple | None = None
    bound: int | None = None
    signature: tuple = ()
    require: tuple = ()

    @classmethod
    def explicit(cls, algebras):
        return cls(algebras=tuple(algebras))

    @classmethod
    def bounded(cls, bound, signature=(), require=None):
        return cls(bound=bound, signature=tuple(signature),
                   require=tuple(sorted((require or {}).items())))

    def members(self):
        if self.algebras is not None:
            yield from self.algebras
            return
        for n in range(1, self.bound + 1):
            yield from enumerate_chains(n, dict(self.require), self.signature)

    def describe(self):
        if self.algebras is not None:
            return {"kind": "list", "members": [a.name for a in self.algebras]}
        return {"kind": "bounded", "bound": self.bound,
                "signature": list(self.signature), "require": dict(self.require)}


@dataclass(frozen=True)
class AmalgamReport:
    verdict: str                 # Found | NotFoundExhaustive | Refuted | Unknown
    amalgam: tuple | None = None  # (D, psi1, psi2)
    trace: tuple | None = None
    class_info: dict | None = None

    @property
    def found(self):
        return self.verdict == "Found"


def _verify_amalgam(s, D, psi1, psi2, one_sided):
    assert is_hom(s.B, D, psi1.mapping) and psi1.injective
    assert is_hom(s.C, D, psi2.mapping)
    assert one_sided or psi2.injective
    for a in s.A.elements:
        assert psi1.mapping[s.phi1.mapping[a]] == psi2.mapping[s.phi2.mapping[a]]


def is_essential_span(s):
    """A span is essential when its second leg is an essential embedding."""
    return bool(is_essential(s.phi2))


def find_amalgam(s, K, one_sided=False):
    """Search the class for D, psi1 (injective), psi2 (injective unless
    one_sided) with psi1 o phi1 = psi2 o phi2; first hit in canonical order."""
    for D in K.members():
        if dict(D.constants).keys() != dict(s.B.constants).keys():
            continue
        for psi1 in homs(s.B, D, injective=True):
            pinned = compose(psi1, s.phi1)
            for psi2 in homs(s.C, D, injective=not one_sided,
                             commute_with=(s.phi2, pinned), limit=1):
                _verify_amalgam(s, D, psi1, psi2, one_sided)
                return AmalgamReport("Found", (D, psi1, psi2),
                                     class_info=K.describe())
    return AmalgamReport("NotFoundExhaustive", class_info=K.describe())


# -- the chain refuter --------------------------------------------------------

class _Merge:
    """Partial matching between B and C; same-side merges are contradictions
    (C1) because both maps into a chain amalgam are injections."""

    def __init__(self, B, C):
        self.B, self.C = B, C
        self.b2c, self.c2b = {}, {}
        self.trace = []

    def add(self, b, c, rule, note):
        old = self.b2c.get(b)
        if old == c:
            return None
        self.trace.append((rule, b, c, note))
        if old is not None:
            return ("C1", "C", old, c,
                    f"{self.B.label(b)} is matched with both "
                    f"{self.C.label(old)} and {self.C.label(c)}")
        if c in self.c2b:
            return ("C1", "B", self.c2b[c], b,
                    f"{self.C.label(c)} is matched with both "
                    f"{self.B.label(self.c2b[c])} and {self.B.label(b)}")
        self.b2c[b] = c
        self.c2b[c] = b
        # C2: order flip between the two sides
        for b2, c2 in self.b2c.items():
            if (b < b2 and not c <= c2) or (b2 < b and not c2 <= c):
                return ("C2", "-", (b, c), (b2, c2),
                        f"{self.B.label(b)} < {self.B.label(b2)} in B but "
                        f"{self.C.label(c2)} < {self.C.label(c)} in C")
        return None


def refute_chain_amalgam(s, mirror_rule=False):
    """Saturate forced identifications for a totally ordered amalgam of the
    span; Refuted(trace) certifies that no chain amalgam of any size exists.

    Rules: initial merges psi1(phi1(a)) ~ psi2(phi2(a)) and shared constants;
    (R1) u~v, u'~v' gives u*u' ~ v*v' for every basic binary operation;
    (R2) d~d' forces the unique fixed points of x -> x\\d in B and x -> x\\d'
    in C to merge (a chain map x -> x\\d has at most one fixed point, and
    homomorphisms preserve fixed-point-ness).  The optional mirror rule does
    the same for x -> d/x.  Contradictions: two distinct elements of one side
    merged (C1) or an order flip (C2).
    """
    B, C = s.B, s.C
    for X in (B, C):
        if not (X.chain or X.is_totally_ordered):
            raise NotAChain(f"{X.name} is not a chain")
    merge = _Merge(B, C)
    ops = ("mult", "meet", "join", "lres", "rres")

    def push(pairs):
        for (b, c, rule, note) in pairs:
            conflict = merge.add(b, c, rule, note)
            if conflict is not None:
                merge.trace.append(conflict)
                return conflict
        return None

    init = [(s.phi1.mapping[a], s.phi2.mapping[a], "init",
             f"image of {s.A.label(a)}") for a in s.A.elements]
    init.append((B.unit, C.unit, "init", "unit"))
    for nm, v in B.constants:
        init.append((v, C.constant(nm), "init", f"constant {nm}"))
    conflict = push(init)
    while conflict is None:
        fresh = []
        # R2: merged (d, d') forces the unique fixed points of x\d to merge
        for d, d2 in merge.b2c.items():
            rules = [("R2", handy_fixed_points, "x\\%s")]
            if mirror_rule:
                rules.append(("R2'", mirror_fixed_points, "%s/x"))
            for rule, fixed, fmt in rules:
                fb, fc = fixed(B, d), fixed(C, d2)
                if len(fb) == 1 and len(fc) == 1 and merge.b2c.get(fb[0]) != fc[0]:
                    fresh.append((fb[0], fc[0], rule,
                                  "unique fixed point of " + fmt % B.label(d)))
        # R1: closure under the basic binary operations (mult scanned first so
        # the multiplicative identifications surface first in traces)
        items = list(merge.b2c.items())
        for op in ops:
            for (u, v) in items:
                for (u2, v2) in items:
                    bb = getattr(B, op)[u][u2]
                    cc = getattr(C, op)[v][v2]
                    if merge.b2c.get(bb) != cc:
                        fresh.append((bb, cc, "R1",
                                      f"{B.label(u)} {op} {B.label(u2)}"))
        if not fresh:
            return AmalgamReport("Unknown", trace=tuple(merge.trace))
        conflict = push(fresh)
    return AmalgamReport("Refuted", trace=tuple(merge.trace))


def replay_refutation(s, report):
    """Independent certificate check of a Refuted trace: every merge step must
    be justified by the span or by already-merged pairs, and re-running the
    merges must end in a contradiction exactly at the final step."""
    if report.verdict != "Refuted" or not report.trace:
        return False
    B, C = s.B, s.C
    ops = ("mult", "meet", "join", "lres", "rres")
    init_pairs = {(s.phi1.mapping[a], s.phi2.mapping[a]) for a in s.A.elements}
    init_pairs.add((B.unit, C.unit))
    for nm, v in B.constants:
        init_pairs.add((v, C.constant(nm)))
    merge = _Merge(B, C)
    steps = [st for st in report.trace if st[0] in ("init", "R1", "R2", "R2'")]
    for k, (rule, b, c, note) in enumerate(steps):
        matched = list(merge.b2c.items())
        if rule == "init":
            justified = (b, c) in init_pairs
        elif rule == "R1":
            justified = any(getattr(B, op)[u][u2] == b and getattr(C, op)[v][v2] == c
                            for op in ops
                            for (u, v) in matched for (u2, v2) in matched)
        elif rule in ("R2", "R2'"):
            fixed = handy_fixed_points if rule == "R2" else mirror_fixed_points
            justified = any(fixed(B, d) == [b] and fixed(C, d2) == [c]
                            for (d, d2) in matched)
        else:
            justified = False
        if not justified:
            return False
        conflict = merge.add(b, c, rule, note)
        if conflict is not None:
            return k == len(steps) - 1   # contradiction only at the last merge
    return False  # replay ended without contradiction


# -- class-level checks -------------------------------------------------------

def _dedup_by_iso(chains):
    seen = {}
    for A in chains:
        seen.setdefault(A.key(), A)
    return sorted(seen.values(), key=lambda A: (A.size, A.mult, A.constants))


def _check_subalgebra_closed(K):
    keys = {A.key() for A in K}
    for A in K:
        for sub in subuniverses(A):
            if subalgebra(A, sub).key() not in keys:
                raise NotSubalgebraClosed(
                    f"{A.name} has a subalgebra on {sub} outside the class")


def _spans_of(K):
    """All spans up to equivalence, ordered by (|B|+|C|, |C|, |B|, ...)."""
    idx = list(enumerate(K))
    keyed = sorted(((b.size + c.size, c.size, b.size, bi, ci, b, c)
                    for bi, b in idx for ci, c in idx))
    for (_, _, _, bi, ci, B, C) in keyed:
        for sub in subuniverses(B):
            A = subalgebra(B, sub, name=f"{B.name}|{','.join(map(str, sub))}")
            phi1 = morphism(A, B, sub)
            for phi2 in embeddings(A, C):
                yield Span(A, B, C, phi1, phi2)


def class_has_1ap(K):
    """One-sided amalgamation property of an explicit, subalgebra-closed list;
    returns (True, None) or (False, witness span)."""
    K = _dedup_by_iso(K)
    _check_subalgebra_closed(K)
    spec = ClassSpec.explicit(K)
    for s in _spans_of(K):
        if not find_amalgam(s, spec, one_sided=True).found:
            return False, s
    return True, None


def class_has_eap(K):
    """Essential amalgamation property: essential spans, two-sided amalgams."""
    K = _dedup_by_iso(K)
    _check_subalgebra_closed(K)
    spec = ClassSpec.explicit(K)
    for s in _spans_of(K):
        if not is_essential(s.phi2):
            continue
        if not find_amalgam(s, spec, one_sided=False).found:
            return False, s
    return True, None


# -- varieties ----------------------------------------------------------------

@dataclass(frozen=True)
class VarietyPresentation:
    generators: tuple

    def __repr__(self):
        return "V(" + ", ".join(g.name for g in self.generators) + ")"


def variety(*generators):
    return VarietyPresentation(tuple(generators))


def fsi_chains(V):
    """Totally ordered members of HS(generators), deduplicated up to iso and
    sorted by (size, table).  Jonsson: these are the FSI members of V."""
    out = []
    for g in V.generators:
        if not is_semilinear(g):
            raise NotSemilinear(f"generator {g.name} is not semilinear")
        for sub in subuniverses(g):
            B = subalgebra(g, sub)
            for theta in congruences(B):
                Q, _ = natural_projection(B, theta)
                if Q.is_totally_ordered:
                    out.append(Q.as_chain())
    return _dedup_by_iso(out)


@dataclass(frozen=True)
class ApVerdict:
    has_ap: bool
    reason: str | None = None            # None | "cep_failure" | "span_failure"
    chains: tuple = ()
    cep_witness: tuple | None = None     # (chain, subuniverse, theta blocks)
    span_witness: Span | None = field(default=None, compare=False)
    cross_check: dict | None = None

    @property
    def verdict(self):
        return "AP" if self.has_ap else "NotAP"


def decide_ap(V, cross_check=False):
    """AP for the finitely generated semilinear variety presented by V.

    Step 1: chains = FSI members (Jonsson).  Step 2: a CEP failure on a chain
    refutes AP outright (finitely generated implies residually small, and AP
    plus residual smallness forces the CEP).  Step 3: otherwise AP holds iff
    the chain class has the one-sided amalgamation property.  Cross-check mode
    also runs the essential-span/two-sided route and asserts agreement.
    """
    chains = tuple(fsi_chains(V))
    for A in chains:
        cep = has_cep(A)
        if not cep.holds:
            sub, theta = cep.witness
            return ApVerdict(False, "cep_failure", chains,
                             cep_witness=(A, sub, theta.blocks))
    ok, witness = class_has_1ap(list(chains))
    result = ApVerdict(ok, None if ok else "span_failure", chains,
                       span_witness=witness)
    if cross_check:
        ok_e, witness_e = class_has_eap(list(chains))
        assert ok_e == ok, "1AP and EAP routes disagree"
        result = ApVerdict(ok, result.reason, chains,
                           span_witness=witness,
                           cross_check={"eap": ok_e,
                                        "eap_witness": repr(witness_e) if witness_e else None})
    return result


def simple_chain_ap(A):
    """AP for V(A), A a finite simple chain: CEP plus no two distinct
    isomorphic subalgebras."""
    if not (A.chain or A.is_totally_ordered):
        raise NotAChain(f"{A.name} is not a chain")
    if A.is_trivial:
        return ApVerdict(True, None, (A,))   # the trivial variety has the AP
    cls = classify(A)
    if not cls.simple:
        raise NotSimple(f"{A.name} is not simple")
    cep = has_cep(A)
    if not cep.holds:
        return ApVerdict(False, "cep_failure", (A,),
                         cep_witness=(A, cep.witness[0], cep.witness[1].blocks))
    subs = subuniverses(A)
    algebras = [subalgebra(A, s) for s in subs]
    for i, S in enumerate(algebras):
        for j in range(i + 1, len(algebras)):
            iso = are_isomorphic(S, algebras[j])
            if iso is not None:
                # two distinct isomorphic subalgebras give the failing span
                phi1 = morphism(S, A, subs[i])
                phi2 = morphism(S, A, tuple(subs[j][iso.mapping[x]]
                                            for x in S.elements))
                return ApVerdict(False, "span_failure", (A,),
                                 span_witness=Span(S, A, A, phi1, phi2))
    return ApVerdict(True, None, (A,))


def strictly_simple_ap(A):
    """AP when A is strictly simple (congruence-distributive variety generated
    by a finite strictly simple algebra has the AP); else NotApplicable."""
    if classify(A).strictly_simple:
        return "AP"
    return "NotApplicable"
