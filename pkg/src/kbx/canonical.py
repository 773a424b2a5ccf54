"""Canonical models: regular chase presentation, truncations, Herbrand structures.

The canonical model of a KB is in general infinite, but its anonymous part is
regular: the type of a path element depends only on its final witness class,
and edges only ever connect a path to its parent.  `CanonicalStructure` stores
that finite presentation (individuals, reachable witness classes, generating
edges and type tables); `materialize` unfolds it to any finite depth.
"""

from __future__ import annotations

from itertools import product

from .model import (
    ABox,
    Atomic,
    BasicConcept,
    BasicRole,
    ConceptAssertion,
    Constant,
    Exists,
    KnowledgeBase,
    Null,
    RoleAssertion,
    Signature,
    TBox,
    Term,
    all_basic_concepts,
    concept_over,
    role_over,
)
from .reasoner import (
    WitnessClass,
    asserted_concepts,
    asserted_roles,
    concept_closure,
    kb_consistent,
    role_closure,
    witness_class,
)


class InconsistentKB(Exception):
    """The knowledge base admits no model."""


def positive_part(tbox: TBox) -> TBox:
    return tuple(ax for ax in tbox if not ax.negated_rhs)


def combined_tbox(*tboxes: TBox) -> TBox:
    """Union of TBoxes in canonical (sorted, deduplicated) order."""
    axioms = set()
    for t in tboxes:
        axioms.update(t)
    return tuple(sorted(axioms, key=str))


def class_generated(tbox: TBox, rep: BasicRole) -> tuple[BasicRole, ...]:
    """Witness classes generated by the class element of `rep`.

    Unlike `CanonicalStructure.gen` this works for any basic role, whether or
    not its class is reachable from a particular ABox.
    """
    cc = concept_closure(tbox)
    rc = role_closure(tbox)

    def rep_of(role: BasicRole) -> BasicRole:
        return witness_class(tbox, role).representative

    tail = cc.sup_concepts(Exists(rep.inverse()))
    back_rep = rep_of(rep.inverse())
    cands = {c.role for c in tail if isinstance(c, Exists)}
    reps = {
        rep_of(r)
        for r in cands
        if rep_of(r) != back_rep
        and all(rep_of(s) == rep_of(r) for s in cands if rc.subsumes(s, r))
    }
    return tuple(sorted(reps, key=str))


def element_label(e) -> str:
    """Stable rendering of interpretation elements (terms or witness paths)."""
    if isinstance(e, tuple):
        parts = [str(e[0])] + [f"w[{r}]" for r in e[1:]]
        return ".".join(parts)
    return str(e)


class FiniteInterpretation:
    """A finite interpretation: atomic concept and role extensions over hashables."""

    def __init__(self, elements, concept_facts, role_facts, constants):
        """Args are iterables of (name, elem) / (name, elem, elem) plus a
        Constant -> element map; extra elements may carry no facts at all."""
        self.elements: tuple = tuple(sorted(set(elements), key=element_label))
        self.concept_ext: dict[str, frozenset] = {}
        self.role_ext: dict[str, frozenset] = {}
        self.constant_elems: dict = dict(constants)
        cext: dict[str, set] = {}
        for name, e in concept_facts:
            cext.setdefault(name, set()).add(e)
        rext: dict[str, set] = {}
        self._pair_roles: dict = {}
        for name, e1, e2 in role_facts:
            rext.setdefault(name, set()).add((e1, e2))
            self._pair_roles.setdefault((e1, e2), set()).add(BasicRole(name))
            self._pair_roles.setdefault((e2, e1), set()).add(BasicRole(name, inverted=True))
        self.concept_ext = {n: frozenset(s) for n, s in cext.items()}
        self.role_ext = {n: frozenset(s) for n, s in rext.items()}
        self._types: dict = {e: set() for e in self.elements}
        for name, ext in self.concept_ext.items():
            for e in ext:
                self._types[e].add(Atomic(name))
        for (e1, _e2), roles in self._pair_roles.items():
            for r in roles:
                self._types[e1].add(Exists(r))
        self._types = {e: frozenset(t) for e, t in self._types.items()}

    def ttype(self, e, sigma: Signature | None = None) -> frozenset:
        t = self._types[e]
        if sigma is None:
            return t
        return frozenset(c for c in t if concept_over(c, sigma))

    def rtype(self, e1, e2, sigma: Signature | None = None) -> frozenset:
        roles = self._pair_roles.get((e1, e2), frozenset())
        if sigma is None:
            return frozenset(roles)
        return frozenset(r for r in roles if role_over(r, sigma))

    def concept_facts(self):
        for name in sorted(self.concept_ext):
            for e in sorted(self.concept_ext[name], key=element_label):
                yield name, e

    def role_facts(self):
        for name in sorted(self.role_ext):
            for e1, e2 in sorted(
                self.role_ext[name], key=lambda p: (element_label(p[0]), element_label(p[1]))
            ):
                yield name, e1, e2

    def fact_count(self) -> int:
        return sum(len(v) for v in self.concept_ext.values()) + sum(
            len(v) for v in self.role_ext.values()
        )


class CanonicalStructure:
    """Finite presentation of a canonical model.

    States are the ABox individuals plus the reachable witness-class
    representatives; `gen` maps each state to the classes it generates.
    """

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        tbox = kb.tbox
        cc = concept_closure(tbox)
        rc = role_closure(tbox)
        aconc = asserted_concepts(kb)
        self.individuals: tuple[Term, ...] = tuple(kb.abox.all_terms())
        self.individual_types: dict[Term, frozenset] = {}
        for t in self.individuals:
            tp: set = set()
            for b in aconc.get(t, ()):
                tp |= cc.sup_concepts(b)
            self.individual_types[t] = frozenset(tp)
        self.individual_roles: dict = {}
        for pair, roles in asserted_roles(kb).items():
            derived: set = set()
            for r in roles:
                derived |= rc.sup_roles(r)
            self.individual_roles[pair] = frozenset(derived)
        satisfied: dict[Term, set] = {t: set() for t in self.individuals}
        for (t1, _t2), roles in self.individual_roles.items():
            satisfied[t1] |= roles

        def rep_of(role: BasicRole) -> BasicRole:
            return witness_class(tbox, role).representative

        def minimal(cands: set, r: BasicRole) -> bool:
            return all(
                rep_of(s) == rep_of(r) for s in cands if rc.subsumes(s, r)
            )

        self.gen: dict = {}
        for t in self.individuals:
            cands = {c.role for c in self.individual_types[t] if isinstance(c, Exists)}
            reps = {
                rep_of(r)
                for r in cands
                if r not in satisfied[t] and minimal(cands, r)
            }
            self.gen[t] = tuple(sorted(reps, key=str))

        self.classes: dict[BasicRole, WitnessClass] = {}
        self.class_types: dict[BasicRole, frozenset] = {}
        todo = [r for t in self.individuals for r in self.gen[t]]
        while todo:
            rep = todo.pop()
            if rep in self.classes:
                continue
            self.classes[rep] = witness_class(tbox, rep)
            self.class_types[rep] = cc.sup_concepts(Exists(rep.inverse()))
            self.gen[rep] = class_generated(tbox, rep)
            todo.extend(self.gen[rep])

    def states(self):
        return list(self.individuals) + sorted(self.classes, key=str)

    def state_type(self, state, sigma: Signature | None = None) -> frozenset:
        tp = (
            self.individual_types[state]
            if isinstance(state, (Constant, Null))
            else self.class_types[state]
        )
        if sigma is None:
            return tp
        return frozenset(c for c in tp if concept_over(c, sigma))

    def edge_roles(self, child_rep: BasicRole, sigma: Signature | None = None) -> frozenset:
        """All roles holding on a generating edge (parent, child), both orientations."""
        roles = role_closure(self.kb.tbox).sup_roles(child_rep)
        if sigma is None:
            return roles
        return frozenset(r for r in roles if role_over(r, sigma))


def build_canonical(kb: KnowledgeBase, check_consistency: bool = True) -> CanonicalStructure:
    """Construct the regular presentation; raises InconsistentKB on clash."""
    if check_consistency and not kb_consistent(kb):
        raise InconsistentKB("knowledge base is inconsistent")
    return CanonicalStructure(kb)


def derives_assertion(kb: KnowledgeBase, assertion) -> bool:
    """Whether the KB entails a single membership assertion."""
    tbox = kb.tbox
    if isinstance(assertion, ConceptAssertion):
        cc = concept_closure(tbox)
        have = asserted_concepts(kb).get(assertion.term, set())
        return any(cc.subsumes(b, assertion.concept) for b in have)
    rc = role_closure(tbox)
    have = asserted_roles(kb).get((assertion.first, assertion.second), set())
    return any(rc.subsumes(r, assertion.role) for r in have)


def ttype_at(c: CanonicalStructure, path: tuple, sigma: Signature | None = None) -> frozenset:
    """Type of a path element; depends only on the path's last component."""
    if len(path) == 1:
        return c.state_type(path[0], sigma)
    return c.state_type(path[-1], sigma)


def rtype_edge(
    c: CanonicalStructure, p1: tuple, p2: tuple, sigma: Signature | None = None
) -> frozenset:
    """Roles holding between two path elements (empty unless adjacent)."""
    if len(p1) == 1 and len(p2) == 1:
        roles = c.individual_roles.get((p1[0], p2[0]), frozenset())
        if sigma is None:
            return roles
        return frozenset(r for r in roles if role_over(r, sigma))
    if len(p2) == len(p1) + 1 and p2[:-1] == p1:
        return c.edge_roles(p2[-1], sigma)
    if len(p1) == len(p2) + 1 and p1[:-1] == p2:
        return frozenset(r.inverse() for r in c.edge_roles(p1[-1], sigma))
    return frozenset()


def materialize(c: CanonicalStructure, depth: int) -> FiniteInterpretation:
    """Finite truncation: all paths with at most `depth` witness steps."""
    paths: list[tuple] = [(t,) for t in c.individuals]
    frontier = list(paths)
    for _ in range(depth):
        nxt = []
        for p in frontier:
            state = p[-1] if len(p) > 1 else p[0]
            for rep in c.gen[state]:
                nxt.append(p + (rep,))
        paths.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    path_set = set(paths)
    concept_facts = []
    role_facts = []
    for p in paths:
        tp = ttype_at(c, p)
        for b in tp:
            if isinstance(b, Atomic):
                concept_facts.append((b.name, p))
    for (t1, t2), roles in c.individual_roles.items():
        for r in roles:
            if not r.inverted:
                role_facts.append((r.name, (t1,), (t2,)))
    for p in paths:
        if len(p) > 1 and p[:-1] in path_set:
            parent = p[:-1]
            for r in c.edge_roles(p[-1]):
                if not r.inverted:
                    role_facts.append((r.name, parent, p))
                else:
                    role_facts.append((r.name, p, parent))
    constants = {t: (t,) for t in c.individuals if isinstance(t, Constant)}
    return FiniteInterpretation(paths, concept_facts, role_facts, constants)


def build_vabox(abox: ABox) -> FiniteInterpretation:
    """Herbrand structure of an ABox.

    Existential assertions are first normalized away by introducing a fresh
    labeled null as the required successor (the successor is a null, so this
    stays within extended-ABox semantics).
    """
    used = {t.name for t in abox.all_terms() if isinstance(t, Null)}
    counter = 0

    def fresh() -> Null:
        nonlocal counter
        while True:
            counter += 1
            name = f"v{counter}"
            if name not in used:
                used.add(name)
                return Null(name)

    elements = list(abox.all_terms())
    concept_facts = []
    role_facts = []
    for a in abox.assertions:
        if isinstance(a, ConceptAssertion):
            if isinstance(a.concept, Atomic):
                concept_facts.append((a.concept.name, a.term))
            else:
                succ = fresh()
                elements.append(succ)
                role = a.concept.role
                if role.inverted:
                    role_facts.append((role.name, succ, a.term))
                else:
                    role_facts.append((role.name, a.term, succ))
        else:
            role_facts.append((a.role.name, a.first, a.second))
    constants = {t: t for t in elements if isinstance(t, Constant)}
    return FiniteInterpretation(elements, concept_facts, role_facts, constants)


def closure_abox(kb1: KnowledgeBase, t12: TBox, sigma2: Signature) -> ABox:
    """All target-signature facts over the source individuals entailed by the
    positive part of the combined KB (existential concept facts included)."""
    pos = positive_part(combined_tbox(kb1.tbox, t12))
    k = KnowledgeBase(pos, kb1.abox)
    terms = kb1.abox.all_terms()
    facts = []
    for t in terms:
        for b in all_basic_concepts(sigma2):
            if derives_assertion(k, ConceptAssertion(b, t)):
                facts.append(ConceptAssertion(b, t))
    for t1, t2 in product(terms, terms):
        for p in sorted(sigma2.roles):
            fact = RoleAssertion(BasicRole(p), t1, t2)
            if derives_assertion(k, fact):
                facts.append(fact)
    return ABox.make(facts)
