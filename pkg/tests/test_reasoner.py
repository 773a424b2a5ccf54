"""Derivation and consistency checks against small hand-built TBoxes."""

import pytest

from kbx.model import (
    ABox,
    Atomic,
    BasicRole,
    ConceptAssertion,
    ConceptInclusion,
    Constant,
    Exists,
    KnowledgeBase,
    Null,
    RoleAssertion,
    RoleInclusion,
)
from kbx.reasoner import derives_concept, derives_role, kb_consistent, tbox_trivial

F, G, H = Atomic("F"), Atomic("G"), Atomic("H")
S, T = BasicRole("S"), BasicRole("T")


def test_derives_concept_is_reflexive_and_transitive():
    tbox = (ConceptInclusion(F, G), ConceptInclusion(G, H))
    assert derives_concept(tbox, F, F)
    assert derives_concept(tbox, F, H)
    assert not derives_concept(tbox, H, F)


def test_role_inclusions_project_onto_existentials():
    """S [= T lifts to exists S [= exists T and exists S- [= exists T-."""
    tbox = (RoleInclusion(S, T),)
    assert derives_role(tbox, S, T)
    assert derives_role(tbox, S.inverse(), T.inverse())
    assert derives_concept(tbox, Exists(S), Exists(T))
    assert derives_concept(tbox, Exists(S.inverse()), Exists(T.inverse()))
    assert not derives_concept(tbox, Exists(S), Exists(T.inverse()))


def test_derivation_through_mixed_chains():
    tbox = (
        ConceptInclusion(F, Exists(S)),
        RoleInclusion(S, T),
        ConceptInclusion(Exists(T), G),
    )
    assert derives_concept(tbox, F, G)


def test_inverse_role_inclusion_closes_both_directions():
    tbox = (RoleInclusion(S, T.inverse()),)
    assert derives_role(tbox, S, T.inverse())
    assert derives_role(tbox, S.inverse(), T)
    assert not derives_role(tbox, S, T)


def test_kb_consistent_detects_concept_clash():
    tbox = (ConceptInclusion(F, G, negated_rhs=True),)
    abox = ABox.make(
        [ConceptAssertion(F, Constant("a")), ConceptAssertion(G, Constant("a"))]
    )
    assert not kb_consistent(KnowledgeBase(tbox, abox))
    split = ABox.make(
        [ConceptAssertion(F, Constant("a")), ConceptAssertion(G, Constant("b"))]
    )
    assert kb_consistent(KnowledgeBase(tbox, split))


def test_kb_consistent_follows_derivation_to_a_clash():
    """F(a) plus F [= exists S, exists S [= not F is fine, but S disjoint S- on a
    symmetric edge is not."""
    tbox = (
        ConceptInclusion(F, Exists(S)),
        ConceptInclusion(Exists(S), G, negated_rhs=True),
    )
    abox = ABox.make([ConceptAssertion(F, Constant("a")), ConceptAssertion(G, Constant("a"))])
    assert not kb_consistent(KnowledgeBase(tbox, abox))

    role_tbox = (RoleInclusion(S, S.inverse(), negated_rhs=True),)
    loop = ABox.make([RoleAssertion(S, Constant("a"), Constant("a"))])
    assert not kb_consistent(KnowledgeBase(role_tbox, loop))


def test_nulls_participate_in_clashes():
    tbox = (ConceptInclusion(F, G, negated_rhs=True),)
    abox = ABox.make(
        [ConceptAssertion(F, Null("n")), ConceptAssertion(G, Null("n"))]
    )
    assert not kb_consistent(KnowledgeBase(tbox, abox))


def test_consistent_kb_with_existentials():
    kb = KnowledgeBase(
        (ConceptInclusion(F, Exists(S)), ConceptInclusion(Exists(S.inverse()), Exists(S))),
        ABox.make([ConceptAssertion(F, Constant("a"))]),
    )
    assert kb_consistent(kb)


@pytest.mark.parametrize(
    "tbox, trivial",
    [
        ((), True),
        ((ConceptInclusion(F, F),), True),
        ((ConceptInclusion(F, G),), False),
        ((RoleInclusion(S, S),), True),
    ],
)
def test_tbox_trivial(tbox, trivial):
    assert tbox_trivial(tbox) is trivial
