"""UCQ-representation membership, existence, and synthesis on the worked examples."""

import pytest

from conftest import load_kb, load_mapping

from kbx.model import Atomic, BasicRole, ConceptInclusion, Constant
from kbx.representability import (
    PreconditionViolated,
    find_generating_pass,
    is_ucq_representation,
    representation_exists,
    synthesize_representation,
)


def t1_fg():
    return load_kb("ex5_kb").tbox


def t2_fpgp():
    return load_kb("ex5_t2").tbox


def test_candidate_tbox_represents_simple_hierarchy():
    verdict = is_ucq_representation(load_mapping("ex5_map"), t1_fg(), t2_fpgp())
    assert verdict.answer == "yes"


def test_membership_survives_disjointness_in_the_mapping():
    """A negated mapping axiom alone does not break representation."""
    verdict = is_ucq_representation(load_mapping("ex6_map"), t1_fg(), t2_fpgp())
    assert verdict.answer == "yes"


def test_membership_fails_when_disjointness_hits_mapped_data():
    verdict = is_ucq_representation(load_mapping("ex7_map"), t1_fg(), t2_fpgp())
    assert verdict.answer == "no"
    ce = verdict.counterexample
    assert sorted(str(a) for a in ce.abox.assertions) == ["F(a)", "H(a)"]
    # the source data is inconsistent with candidate-side consequences, so a
    # fresh-constant query separates the two sides
    assert str(ce.query) == "Fp(c0)"


def test_membership_fails_on_role_pieces():
    """Data arriving through an unconstrained role piece defeats the candidate."""
    verdict = is_ucq_representation(
        load_mapping("ex8_map"), load_kb("ex8_kb").tbox, load_kb("ex8_t2").tbox
    )
    assert verdict.answer == "no"
    ce = verdict.counterexample
    (piece,) = ce.abox.assertions
    assert piece.role == BasicRole("T2")
    assert piece.second == Constant("a")
    assert str(ce.query) == "Gp(a)"


def test_membership_rejects_candidates_over_the_source_signature():
    bad_t2 = (ConceptInclusion(Atomic("F"), Atomic("Gp")),)
    with pytest.raises(PreconditionViolated, match="source"):
        is_ucq_representation(load_mapping("ex5_map"), t1_fg(), bad_t2)


def test_double_image_blocks_any_representation():
    """Two source concepts sharing a target image disagree about what follows."""
    verdict = representation_exists(load_mapping("ex9_map"), t1_fg())
    assert verdict.answer == "no"
    assert verdict.reason


def test_synthesis_round_trip_on_the_repaired_mapping():
    mapping = load_mapping("ex10_map")
    verdict = representation_exists(mapping, t1_fg())
    assert verdict.answer == "yes"
    synthesized = synthesize_representation(mapping, t1_fg())
    assert synthesized == (ConceptInclusion(Atomic("Fp"), Atomic("Gp")),)
    assert is_ucq_representation(mapping, t1_fg(), synthesized).answer == "yes"


def test_synthesis_returns_none_when_nothing_represents():
    assert synthesize_representation(load_mapping("ex9_map"), t1_fg()) is None


def test_generating_pass_found_for_regenerable_witness():
    gp = find_generating_pass(
        load_mapping("ex8_map"), load_kb("ex8_kb").tbox, Atomic("F"), BasicRole("S1")
    )
    assert gp is not None
    assert len(gp.chain) == 2
    assert gp.edge_labels  # at least one hop


def test_generating_pass_requires_an_actual_neighbor():
    with pytest.raises(PreconditionViolated, match="no neighbor"):
        find_generating_pass(
            load_mapping("ex5_map"), t1_fg(), Atomic("F"), BasicRole("S")
        )
