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
    Signature,
)


def test_role_inverse_is_an_involution():
    s = BasicRole("S")
    assert s.inverse() == BasicRole("S", inverted=True)
    assert s.inverse().inverse() == s


def test_role_assertion_normalizes_inverted_roles():
    """S-(a, b) is stored as S(b, a), so equal edges compare equal."""
    direct = RoleAssertion(BasicRole("S"), Constant("b"), Constant("a"))
    flipped = RoleAssertion(BasicRole("S", inverted=True), Constant("a"), Constant("b"))
    assert direct == flipped
    assert flipped.role == BasicRole("S")


def test_abox_make_deduplicates():
    fact = ConceptAssertion(Atomic("F"), Constant("a"))
    assert ABox.make([fact, fact]).assertions == (fact,)


def test_term_and_axiom_display_forms():
    assert str(Null("n1")) == "_n1"
    assert str(Constant("a")) == "a"
    assert str(Exists(BasicRole("S", inverted=True))) == "exists S-"
    assert str(ConceptInclusion(Atomic("F"), Atomic("G"), negated_rhs=True)) == "F [= not G"
    assert str(RoleInclusion(BasicRole("S"), BasicRole("T", inverted=True))) == "S [= T-"


def test_signature_make_and_membership():
    sig = Signature.make(concepts=("F", "G"), roles=("S",))
    assert "F" in sig.concepts and "S" in sig.roles
    assert "H" not in sig.concepts


def test_knowledge_base_is_hashable_and_comparable():
    kb = KnowledgeBase((), ABox.make([ConceptAssertion(Atomic("F"), Constant("a"))]))
    same = KnowledgeBase((), ABox.make([ConceptAssertion(Atomic("F"), Constant("a"))]))
    assert kb == same
    assert hash(kb) == hash(same)
