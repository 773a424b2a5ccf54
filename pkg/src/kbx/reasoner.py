"""Structural reasoning over TBoxes: closures, entailment, consistency.

The positive fragment of a TBox induces a reflexive-transitive subsumption
closure on roles (closed under inversion) and one on basic concepts (absorbing
role subsumption into existentials).  Disjointness axioms are normalized into
symmetric clash pair sets.  Consistency of small KBs reduces to checking each
co-asserted pair of concepts/roles against the TBox, which in turn reduces to a
clash scan over the (finitely many) witness classes reachable from the pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .model import (
    Atomic,
    BasicConcept,
    BasicRole,
    ConceptAssertion,
    ConceptInclusion,
    Exists,
    KnowledgeBase,
    RoleAssertion,
    RoleInclusion,
    TBox,
    Term,
)


@dataclass(frozen=True)
class RoleClosure:
    """Reflexive-transitive role subsumption, closed under inversion."""

    sups: dict

    def sup_roles(self, r: BasicRole) -> frozenset[BasicRole]:
        got = self.sups.get(r)
        return got if got is not None else frozenset([r])

    def subsumes(self, sub: BasicRole, sup: BasicRole) -> bool:
        return sup in self.sup_roles(sub)


@dataclass(frozen=True)
class ConceptClosure:
    """Reflexive-transitive concept subsumption over the occurring universe."""

    sups: dict
    roles: RoleClosure

    def sup_concepts(self, c: BasicConcept) -> frozenset[BasicConcept]:
        got = self.sups.get(c)
        if got is not None:
            return got
        if isinstance(c, Exists):
            return frozenset(Exists(s) for s in self.roles.sup_roles(c.role))
        return frozenset([c])

    def subsumes(self, sub: BasicConcept, sup: BasicConcept) -> bool:
        return sup in self.sup_concepts(sub)


@dataclass(frozen=True)
class WitnessClass:
    """An equivalence class of mutually subsuming roles, named by its least member."""

    representative: BasicRole
    members: frozenset[BasicRole]

    def __str__(self) -> str:
        return f"w[{self.representative}]"


def _transitive_closure(edges: dict) -> dict:
    closure = {node: set(targets) for node, targets in edges.items()}
    for node in closure:
        closure[node].add(node)
    changed = True
    while changed:
        changed = False
        for node, targets in closure.items():
            extra = set()
            for t in targets:
                extra |= closure.get(t, {t})
            if not extra <= targets:
                targets |= extra
                changed = True
    return {node: frozenset(targets) for node, targets in closure.items()}


def _role_universe(tbox: TBox) -> set[BasicRole]:
    roles: set[BasicRole] = set()
    for ax in tbox:
        if isinstance(ax, RoleInclusion):
            roles.add(ax.lhs)
            roles.add(ax.rhs)
        else:
            for side in (ax.lhs, ax.rhs):
                if isinstance(side, Exists):
                    roles.add(side.role)
    return roles | {r.inverse() for r in roles}


@lru_cache(maxsize=None)
def role_closure(tbox: TBox) -> RoleClosure:
    universe = _role_universe(tbox)
    edges: dict = {r: set() for r in universe}
    for ax in tbox:
        if isinstance(ax, RoleInclusion) and not ax.negated_rhs:
            edges[ax.lhs].add(ax.rhs)
            edges[ax.lhs.inverse()].add(ax.rhs.inverse())
    return RoleClosure(_transitive_closure(edges))


@lru_cache(maxsize=None)
def concept_closure(tbox: TBox) -> ConceptClosure:
    roles = role_closure(tbox)
    universe: set[BasicConcept] = set()
    for ax in tbox:
        if isinstance(ax, ConceptInclusion):
            universe.add(ax.lhs)
            universe.add(ax.rhs)
    universe |= {Exists(r) for r in roles.sups}
    edges: dict = {c: set() for c in universe}
    for ax in tbox:
        if isinstance(ax, ConceptInclusion) and not ax.negated_rhs:
            edges[ax.lhs].add(ax.rhs)
    for c in universe:
        if isinstance(c, Exists):
            edges[c] |= {Exists(s) for s in roles.sup_roles(c.role)}
    return ConceptClosure(_transitive_closure(edges), roles)


def derives_concept(tbox: TBox, sub: BasicConcept, sup: BasicConcept) -> bool:
    """Positive concept subsumption: sub is below sup in the closure."""
    return concept_closure(tbox).subsumes(sub, sup)


def derives_role(tbox: TBox, sub: BasicRole, sup: BasicRole) -> bool:
    """Positive role subsumption, closed under inversion."""
    return role_closure(tbox).subsumes(sub, sup)


@lru_cache(maxsize=None)
def concept_disjoint_pairs(tbox: TBox) -> frozenset:
    """Normalized concept clash pairs, closed under swapping."""
    pairs: set[tuple[BasicConcept, BasicConcept]] = set()
    for ax in tbox:
        if isinstance(ax, ConceptInclusion) and ax.negated_rhs:
            pairs.add((ax.lhs, ax.rhs))
            pairs.add((ax.rhs, ax.lhs))
    return frozenset(pairs)


@lru_cache(maxsize=None)
def role_disjoint_pairs(tbox: TBox) -> frozenset:
    """Normalized role clash pairs, closed under swapping and joint inversion."""
    pairs: set[tuple[BasicRole, BasicRole]] = set()
    for ax in tbox:
        if isinstance(ax, RoleInclusion) and ax.negated_rhs:
            for a, b in ((ax.lhs, ax.rhs), (ax.lhs.inverse(), ax.rhs.inverse())):
                pairs.add((a, b))
                pairs.add((b, a))
    return frozenset(pairs)


@lru_cache(maxsize=None)
def witness_class(tbox: TBox, role: BasicRole) -> WitnessClass:
    rc = role_closure(tbox)
    members = frozenset(s for s in rc.sup_roles(role) if rc.subsumes(s, role))
    return WitnessClass(min(members, key=str), members)


def class_subsumed(tbox: TBox, lower: WitnessClass, upper: WitnessClass) -> bool:
    """Order on witness classes induced by role subsumption."""
    return derives_role(tbox, lower.representative, upper.representative)


def _type_clash(tbox: TBox, concepts: frozenset) -> bool:
    pairs = concept_disjoint_pairs(tbox)
    return any(a in concepts and b in concepts for a, b in pairs)


def _edge_clash(tbox: TBox, roles: frozenset) -> bool:
    pairs = role_disjoint_pairs(tbox)
    return any(a in roles and b in roles for a, b in pairs)


def _reachable_tail_reps(tbox: TBox, root_type: frozenset) -> set[BasicRole]:
    """Witness-class representatives reachable by chasing existentials.

    Deliberately ignores the satisfaction/minimality side conditions of the
    generating relation: extra classes never fabricate clashes because their
    types are subsumed by the types of the elements that actually absorb them.
    """
    cc = concept_closure(tbox)
    todo = [witness_class(tbox, c.role).representative for c in root_type if isinstance(c, Exists)]
    seen: set[BasicRole] = set()
    while todo:
        rep = todo.pop()
        if rep in seen:
            continue
        seen.add(rep)
        tail = cc.sup_concepts(Exists(rep.inverse()))
        for c in tail:
            if isinstance(c, Exists):
                nxt = witness_class(tbox, c.role).representative
                if nxt not in seen:
                    todo.append(nxt)
    return seen


def _chase_consistent(tbox: TBox, root_types: list, root_edges: list) -> bool:
    rc = role_closure(tbox)
    cc = concept_closure(tbox)
    for t in root_types:
        if _type_clash(tbox, t):
            return False
    for e in root_edges:
        if _edge_clash(tbox, e):
            return False
    reachable: set[BasicRole] = set()
    for t in root_types:
        reachable |= _reachable_tail_reps(tbox, t)
    for rep in reachable:
        if _type_clash(tbox, cc.sup_concepts(Exists(rep.inverse()))):
            return False
        if _edge_clash(tbox, rc.sup_roles(rep)):
            return False
    return True


@lru_cache(maxsize=None)
def pair_consistent_concepts(tbox: TBox, b: BasicConcept, c: BasicConcept) -> bool:
    """Whether asserting both concepts of one fresh individual is consistent."""
    cc = concept_closure(tbox)
    root = cc.sup_concepts(b) | cc.sup_concepts(c)
    return _chase_consistent(tbox, [root], [])


@lru_cache(maxsize=None)
def pair_consistent_roles(tbox: TBox, r: BasicRole, q: BasicRole) -> bool:
    """Whether asserting both roles of one fresh individual pair is consistent."""
    rc = role_closure(tbox)
    cc = concept_closure(tbox)
    edge = rc.sup_roles(r) | rc.sup_roles(q)
    t1 = cc.sup_concepts(Exists(r)) | cc.sup_concepts(Exists(q))
    t2 = cc.sup_concepts(Exists(r.inverse())) | cc.sup_concepts(Exists(q.inverse()))
    return _chase_consistent(tbox, [t1, t2], [edge])


def asserted_concepts(kb: KnowledgeBase) -> dict:
    """Basic concepts directly asserted of each term (role facts included)."""
    out: dict[Term, set[BasicConcept]] = {}
    for a in kb.abox.assertions:
        if isinstance(a, ConceptAssertion):
            out.setdefault(a.term, set()).add(a.concept)
        else:
            out.setdefault(a.first, set()).add(Exists(a.role))
            out.setdefault(a.second, set()).add(Exists(a.role.inverse()))
    return out


def asserted_roles(kb: KnowledgeBase) -> dict:
    """Basic roles directly asserted of each ordered term pair, both orientations."""
    out: dict[tuple[Term, Term], set[BasicRole]] = {}
    for a in kb.abox.assertions:
        if isinstance(a, RoleAssertion):
            out.setdefault((a.first, a.second), set()).add(a.role)
            out.setdefault((a.second, a.first), set()).add(a.role.inverse())
    return out


def kb_consistent(kb: KnowledgeBase) -> bool:
    """Consistency via pairwise checks of co-asserted concepts and roles."""
    tbox = kb.tbox
    for _term, concepts in asserted_concepts(kb).items():
        cs = sorted(concepts, key=str)
        for i, b in enumerate(cs):
            for c in cs[i:]:
                if not pair_consistent_concepts(tbox, b, c):
                    return False
    for _pair, roles in asserted_roles(kb).items():
        rs = sorted(roles, key=str)
        for i, r in enumerate(rs):
            for q in rs[i:]:
                if not pair_consistent_roles(tbox, r, q):
                    return False
    return True


def tbox_trivial(tbox: TBox) -> bool:
    """True iff every axiom is a tautology of the form X [= X."""
    return all(not ax.negated_rhs and ax.lhs == ax.rhs for ax in tbox)
