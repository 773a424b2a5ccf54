"""Brute-force reference implementations used by the test suite.

Everything here trades efficiency for obviousness: saturation by blind rule
application, homomorphism search by full enumeration, an oblivious chase that
ignores witness minimality.  None of it shares algorithmic code with the main
modules — that independence is the point, so keep it that way.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from .model import (
    ABox,
    Atomic,
    BasicRole,
    ConceptAssertion,
    ConceptInclusion,
    Exists,
    KnowledgeBase,
    RoleAssertion,
    RoleInclusion,
    Signature,
    TBox,
    Variable,
    concept_over,
    role_over,
)


@dataclass(frozen=True)
class OracleConfig:
    depth_limit: int = 6
    domain_limit: int = 6
    seed: int = 0

    def __post_init__(self):
        if self.depth_limit <= 0 or self.domain_limit <= 0:
            raise ValueError("oracle limits must be positive")


@dataclass(frozen=True)
class SaturationResult:
    concept_pairs: frozenset
    role_pairs: frozenset

    def entails_concept(self, lhs, rhs) -> bool:
        return lhs == rhs or (lhs, rhs) in self.concept_pairs

    def entails_role(self, lhs, rhs) -> bool:
        return lhs == rhs or (lhs, rhs) in self.role_pairs


def naive_saturate(tbox: TBox) -> SaturationResult:
    """All entailed positive inclusions over the occurring names, by repeated
    rule application (reflexivity, transitivity, role inversion, existential
    monotonicity) until nothing new appears."""
    roles: set = set()
    concepts: set = set()
    for ax in tbox:
        if isinstance(ax, RoleInclusion):
            roles.update((ax.lhs, ax.rhs))
        else:
            concepts.update((ax.lhs, ax.rhs))
    for c in list(concepts):
        if isinstance(c, Exists):
            roles.add(c.role)
    roles |= {r.inverse() for r in roles}
    concepts |= {Exists(r) for r in roles}

    rpairs = {(r, r) for r in roles}
    cpairs = {(c, c) for c in concepts}
    for ax in tbox:
        if ax.negated_rhs:
            continue
        if isinstance(ax, RoleInclusion):
            rpairs.add((ax.lhs, ax.rhs))
        else:
            cpairs.add((ax.lhs, ax.rhs))

    changed = True
    while changed:
        changed = False
        for (a, b) in list(rpairs):
            cand = {(a.inverse(), b.inverse())}
            cand |= {(a, d) for (c, d) in rpairs if c == b}
            cand.add((Exists(a), Exists(b)))
            for p in cand:
                if isinstance(p[0], BasicRole):
                    if p not in rpairs:
                        rpairs.add(p)
                        changed = True
                elif p not in cpairs:
                    cpairs.add(p)
                    changed = True
        for (a, b) in list(cpairs):
            for (c, d) in list(cpairs):
                if c == b and (a, d) not in cpairs:
                    cpairs.add((a, d))
                    changed = True
    return SaturationResult(frozenset(cpairs), frozenset(rpairs))


class ChaseStructure:
    """Mutable finite structure grown by the oblivious chase."""

    def __init__(self):
        self.elements: list = []
        self.atomic: set = set()  # (concept name, element)
        self.edges: set = set()  # (role name, e1, e2)

    def holds(self, concept, e) -> bool:
        if isinstance(concept, Atomic):
            return (concept.name, e) in self.atomic
        r = concept.role
        if r.inverted:
            return any(x == e for (n, _y, x) in self.edges if n == r.name)
        return any(x == e for (n, x, _y) in self.edges if n == r.name)

    def has_edge(self, role: BasicRole, e1, e2) -> bool:
        if role.inverted:
            return (role.name, e2, e1) in self.edges
        return (role.name, e1, e2) in self.edges

    def add_edge(self, role: BasicRole, e1, e2):
        if role.inverted:
            self.edges.add((role.name, e2, e1))
        else:
            self.edges.add((role.name, e1, e2))

    def ttype(self, e, sigma: Signature | None = None) -> frozenset:
        out = {Atomic(n) for (n, x) in self.atomic if x == e}
        for (n, x, y) in self.edges:
            if x == e:
                out.add(Exists(BasicRole(n)))
            if y == e:
                out.add(Exists(BasicRole(n, inverted=True)))
        if sigma is not None:
            out = {c for c in out if concept_over(c, sigma)}
        return frozenset(out)

    def rtype(self, e1, e2, sigma: Signature | None = None) -> frozenset:
        out = set()
        for (n, x, y) in self.edges:
            if x == e1 and y == e2:
                out.add(BasicRole(n))
            if x == e2 and y == e1:
                out.add(BasicRole(n, inverted=True))
        if sigma is not None:
            out = {r for r in out if role_over(r, sigma)}
        return frozenset(out)


def naive_chase(kb: KnowledgeBase, depth: int) -> ChaseStructure:
    """Oblivious chase: saturate non-generating consequences to fixpoint, then
    give every unsatisfied existential a fresh successor, `depth` times over.
    No minimization — redundant witnesses are created freely."""
    s = ChaseStructure()
    positive = [ax for ax in kb.tbox if not ax.negated_rhs]
    for t in kb.abox.all_terms():
        s.elements.append(t)
    for a in kb.abox.assertions:
        if isinstance(a, RoleAssertion):
            s.add_edge(a.role, a.first, a.second)
        elif isinstance(a.concept, Atomic):
            s.atomic.add((a.concept.name, a.term))

    fresh = [0]

    def new_element():
        fresh[0] += 1
        e = f"!{fresh[0]}"
        s.elements.append(e)
        return e

    def saturate():
        changed = True
        while changed:
            changed = False
            for ax in positive:
                if isinstance(ax, RoleInclusion):
                    for (n, x, y) in list(s.edges):
                        for inv in (False, True):
                            r = BasicRole(n, inverted=inv)
                            e1, e2 = (y, x) if inv else (x, y)
                            if r == ax.lhs and not s.has_edge(ax.rhs, e1, e2):
                                s.add_edge(ax.rhs, e1, e2)
                                changed = True
                elif isinstance(ax.rhs, Atomic):
                    for e in s.elements:
                        if s.holds(ax.lhs, e) and not s.holds(ax.rhs, e):
                            s.atomic.add((ax.rhs.name, e))
                            changed = True

    saturate()
    # Existential assertions in the ABox are obligations like any others.
    pending = [
        (a.term, a.concept.role)
        for a in kb.abox.assertions
        if isinstance(a, ConceptAssertion) and isinstance(a.concept, Exists)
    ]
    for _round in range(depth):
        for (e, r) in pending:
            if not s.holds(Exists(r), e):
                s.add_edge(r, e, new_element())
        saturate()
        pending = []
        for ax in positive:
            if isinstance(ax, ConceptInclusion) and isinstance(ax.rhs, Exists):
                for e in list(s.elements):
                    if s.holds(ax.lhs, e) and not s.holds(ax.rhs, e):
                        pending.append((e, ax.rhs.role))
        if not pending:
            break
    return s


def _default_chase_depth(tbox: TBox) -> int:
    names = set()
    for ax in tbox:
        for side in (ax.lhs, ax.rhs):
            if isinstance(side, BasicRole):
                names.add(side.name)
            elif isinstance(side, Exists):
                names.add(side.role.name)
    return 2 * len(names) + 2


def chase_inconsistent(kb: KnowledgeBase, depth: int | None = None) -> bool:
    """Clash detection on the oblivious chase.  Complete as long as `depth`
    exceeds the longest generating chain; the default is generous for the
    small TBoxes the oracle suite feeds in."""
    if depth is None:
        depth = _default_chase_depth(kb.tbox)
    s = naive_chase(kb, depth)
    for ax in kb.tbox:
        if not ax.negated_rhs:
            continue
        if isinstance(ax, RoleInclusion):
            for (n, x, y) in s.edges:
                for inv in (False, True):
                    r = BasicRole(n, inverted=inv)
                    e1, e2 = (y, x) if inv else (x, y)
                    if r == ax.lhs and s.has_edge(ax.rhs, e1, e2):
                        return True
        else:
            for e in s.elements:
                if s.holds(ax.lhs, e) and s.holds(ax.rhs, e):
                    return True
    return False


def axiom_tautology(axiom) -> bool:
    """Exhaustive two-element countermodel search; two elements suffice to
    refute any non-tautological inclusion in this logic."""
    names = []
    for side in (axiom.lhs, axiom.rhs):
        if isinstance(side, BasicRole):
            names.append(("role", side.name))
        elif isinstance(side, Exists):
            names.append(("role", side.role.name))
        else:
            names.append(("concept", side.name))
    names = sorted(set(names))
    domain = (0, 1)
    spaces = []
    for kind, _n in names:
        if kind == "concept":
            spaces.append([frozenset(c) for c in _subsets(domain)])
        else:
            spaces.append([frozenset(c) for c in _subsets(tuple(product(domain, domain)))])
    for combo in product(*spaces):
        ext = {n: e for (_k, n), e in zip(names, combo)}

        def members(side):
            if isinstance(side, Atomic):
                return {e for e in domain if e in ext[side.name]}
            role = side if isinstance(side, BasicRole) else side.role
            pairs = ext[role.name]
            if role.inverted:
                pairs = {(b, a) for (a, b) in pairs}
            if isinstance(side, Exists):
                return {a for (a, _b) in pairs}
            return pairs

        lhs = members(axiom.lhs)
        rhs = members(axiom.rhs)
        ok = lhs.isdisjoint(rhs) if axiom.negated_rhs else lhs <= rhs
        if not ok:
            return False
    return True


def _subsets(items):
    out = [frozenset()]
    for it in items:
        out += [s | {it} for s in out]
    return out


def brute_homomorphism(src, tgt, sigma: Signature | None = None):
    """Exhaustive homomorphism search between finite interpretations.

    Tries every assignment of source elements to target elements (constants
    pinned), so keep the domains tiny.  Returns a dict or None.
    """
    src_elems = list(src.elements)
    tgt_elems = list(tgt.elements)
    pinned = {}
    for c, e in src.constant_elems.items():
        if c not in tgt.constant_elems:
            return None
        pinned[e] = tgt.constant_elems[c]
    free = [e for e in src_elems if e not in pinned]
    cfacts = [
        (n, e)
        for n, ext in src.concept_ext.items()
        if sigma is None or n in sigma.concepts
        for e in ext
    ]
    rfacts = [
        (n, e1, e2)
        for n, ext in src.role_ext.items()
        if sigma is None or n in sigma.roles
        for (e1, e2) in ext
    ]
    for combo in product(tgt_elems, repeat=len(free)):
        h = dict(pinned)
        h.update(zip(free, combo))
        if all(
            h[e] in tgt.concept_ext.get(n, frozenset()) for (n, e) in cfacts
        ) and all(
            (h[e1], h[e2]) in tgt.role_ext.get(n, frozenset()) for (n, e1, e2) in rfacts
        ):
            return h
    return None


def qbf_valid(prefix, clauses) -> bool:
    """Truth of a prenex CNF QBF.

    `prefix` is a sequence of ("forall" | "exists", var) pairs, `clauses` a
    collection of clauses, each a collection of (var, positive) literals.
    """

    def ev(i, assignment):
        if i == len(prefix):
            return all(
                any(assignment[v] == pos for (v, pos) in clause) for clause in clauses
            )
        q, v = prefix[i]
        results = (ev(i + 1, {**assignment, v: val}) for val in (False, True))
        return all(results) if q == "forall" else any(results)

    return ev(0, {})


def graph_reachable(edges, source, target) -> bool:
    adj: dict = {}
    for (u, v) in edges:
        adj.setdefault(u, []).append(v)
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            return True
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return source == target


def three_colorable(vertices, edges) -> bool:
    vs = list(vertices)
    for colors in product(range(3), repeat=len(vs)):
        col = dict(zip(vs, colors))
        if all(col[u] != col[v] for (u, v) in edges):
            return True
    return False


def certain_answer(kb: KnowledgeBase, concept_atoms, role_atoms, depth: int | None = None) -> bool:
    """Brute certain-answer test for a conjunctive query.

    `concept_atoms` are (BasicConcept, term) pairs and `role_atoms` are
    (BasicRole, term, term) triples; terms may be constants, nulls or
    `Variable`s.  Evaluation runs over the oblivious chase: an inconsistent
    KB entails everything, variables range over all chase elements, and a
    query constant the chase never saw satisfies nothing."""
    concept_atoms = tuple(concept_atoms)
    role_atoms = tuple(role_atoms)
    if depth is None:
        depth = _default_chase_depth(kb.tbox)
    if chase_inconsistent(kb, depth):
        return True
    s = naive_chase(kb, depth)
    variables: list = []
    for atom in concept_atoms:
        if isinstance(atom[1], Variable) and atom[1] not in variables:
            variables.append(atom[1])
    for atom in role_atoms:
        for t in atom[1:]:
            if isinstance(t, Variable) and t not in variables:
                variables.append(t)
    for choice in product(s.elements, repeat=len(variables)):
        assignment = dict(zip(variables, choice))

        def image(t):
            return assignment[t] if isinstance(t, Variable) else t

        if all(s.holds(c, image(t)) for (c, t) in concept_atoms) and all(
            s.has_edge(r, image(t1), image(t2)) for (r, t1, t2) in role_atoms
        ):
            return True
    return False
