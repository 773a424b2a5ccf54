"""Canonical-structure construction, materialization, and ABox closure."""

import pytest

from kbx.canonical import (
    InconsistentKB,
    build_canonical,
    build_vabox,
    closure_abox,
    combined_tbox,
    derives_assertion,
    element_label,
    materialize,
    positive_part,
)
from kbx.model import (
    ABox,
    Atomic,
    ConceptAssertion,
    ConceptInclusion,
    Constant,
    KnowledgeBase,
    Null,
)
from kbx.syntax import parse_kb, parse_mapping


def test_single_witness_generation():
    kb = parse_kb("kb { roles { S } tbox { F [= exists S; exists S- [= G; } abox { F(a); } }")
    fi = materialize(build_canonical(kb), 1)
    assert sorted(element_label(e) for e in fi.elements) == ["a", "a.w[S]"]
    assert {element_label(e) for e in fi.concept_ext["G"]} == {"a.w[S]"}
    assert {element_label(e) for e in fi.concept_ext["F"]} == {"a"}


def test_infinite_chain_grows_with_depth():
    kb = parse_kb(
        "kb { roles { S } tbox { F [= exists S; exists S- [= exists S; } abox { F(a); } }"
    )
    c = build_canonical(kb)
    for depth in range(4):
        assert len(materialize(c, depth).elements) == depth + 1


def test_no_witness_when_existential_already_satisfied():
    """An asserted S-edge satisfies F [= exists S, so no anonymous element appears."""
    kb = parse_kb("kb { roles { S } tbox { F [= exists S; } abox { F(a); S(a, b); } }")
    fi = materialize(build_canonical(kb), 3)
    assert sorted(element_label(e) for e in fi.elements) == ["a", "b"]


def test_build_canonical_rejects_inconsistent_kb():
    kb = parse_kb("kb { tbox { F [= not G; } abox { F(a); G(a); } }")
    with pytest.raises(InconsistentKB):
        build_canonical(kb)
    # the check can be disabled for callers that handle inconsistency themselves
    build_canonical(kb, check_consistency=False)


def test_derives_assertion_uses_the_chase():
    kb = parse_kb("kb { roles { S } tbox { F [= exists S; exists S- [= G; } abox { F(a); } }")
    assert derives_assertion(kb, ConceptAssertion(Atomic("F"), Constant("a")))
    assert not derives_assertion(kb, ConceptAssertion(Atomic("G"), Constant("a")))


def test_closure_abox_translates_named_facts():
    kb = parse_kb("kb { roles { S } tbox { F [= G; } abox { F(a); S(a, b); } }")
    m = parse_mapping(
        "mapping { source { F, G, role S } target { Fp, Gp, role Sp }"
        " tbox { F [= Fp; G [= Gp; S [= Sp; } }"
    )
    closure = closure_abox(kb, m.t12, m.sigma2)
    names = sorted(str(a) for a in closure.assertions)
    assert names == [
        "Fp(a)",
        "Gp(a)",
        "Sp(a, b)",
        "exists Sp (a)",
        "exists Sp- (b)",
    ]


def test_closure_abox_skips_anonymous_only_consequences():
    """Facts holding only at anonymous witnesses contribute nothing over constants."""
    kb = parse_kb("kb { roles { S } tbox { F [= exists S; exists S- [= G; } abox { F(a); } }")
    m = parse_mapping("mapping { source { F, G, role S } target { Gp } tbox { G [= Gp; } }")
    assert closure_abox(kb, m.t12, m.sigma2).assertions == ()


def test_positive_part_drops_negated_axioms():
    keep = ConceptInclusion(Atomic("F"), Atomic("H"))
    drop = ConceptInclusion(Atomic("F"), Atomic("G"), negated_rhs=True)
    assert positive_part((drop, keep)) == (keep,)


def test_combined_tbox_merges_and_deduplicates():
    ax = ConceptInclusion(Atomic("F"), Atomic("H"))
    assert combined_tbox((ax,), (ax,)) == (ax,)


def test_build_vabox_maps_nulls_to_plain_elements():
    abox = ABox.make(
        [ConceptAssertion(Atomic("Gp"), Null("n1")), ConceptAssertion(Atomic("Fp"), Constant("a"))]
    )
    fi = build_vabox(abox)
    assert len(fi.elements) == 2
    assert Constant("a") in fi.constant_elems
