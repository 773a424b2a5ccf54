"""Universal-solution checking and construction on the worked examples."""

from conftest import load_kb, load_mapping

from kbx.canonical import build_canonical, build_vabox, combined_tbox
from kbx.exchange import (
    is_sigma2_positive,
    is_universal_solution,
    universal_solution_extended,
    universal_solution_plain,
)
from kbx.homomorphism import verify_embedding_into_regular, verify_simulation
from kbx.model import ABox, Atomic, ConceptAssertion, Constant, KnowledgeBase, Null
from kbx.syntax import serialize


def test_plain_candidate_is_universal_solution():
    verdict = is_universal_solution(load_kb("ex1_kb"), load_mapping("ex1_map"), load_kb("ex1_cand"))
    assert verdict.answer == "yes"
    assert verdict.certificate is not None


def test_disjointness_in_source_blocks_solutions():
    """Adding F [= not G to the source TBox leaks negative information."""
    verdict = is_universal_solution(load_kb("ex2_kb"), load_mapping("ex1_map"), load_kb("ex1_cand"))
    assert verdict.answer == "no"
    positivity = is_sigma2_positive(load_kb("ex2_kb"), load_mapping("ex1_map"))
    assert not positivity
    assert positivity.clause == "a"


def test_extended_solution_exists_where_plain_does_not():
    kb, mapping = load_kb("ex3_kb"), load_mapping("ex3_map")
    extended = universal_solution_extended(kb, mapping)
    assert extended.answer == "yes"
    assert extended.witness == ABox.make([ConceptAssertion(Atomic("Gp"), Null("n1"))])
    plain = universal_solution_plain(kb, mapping)
    assert plain.answer == "no"


def test_candidate_with_anonymous_witness_checks_out():
    verdict = is_universal_solution(
        load_kb("ex3_kb"), load_mapping("ex3_map"), load_kb("ex3_cand")
    )
    assert verdict.answer == "yes"


def test_loop_candidate_covers_infinite_source_chain():
    kb, mapping = load_kb("ex4_kb"), load_mapping("ex4_map")
    verdict = is_universal_solution(kb, mapping, load_kb("ex4_cand"))
    assert verdict.answer == "yes"
    plain = universal_solution_plain(kb, mapping)
    assert plain.answer == "yes"
    assert plain.witness is not None


def test_dropping_a_needed_fact_breaks_the_candidate():
    thin = KnowledgeBase(
        (), ABox.make([ConceptAssertion(Atomic("Fp"), Constant("a"))])
    )
    verdict = is_universal_solution(load_kb("ex1_kb"), load_mapping("ex1_map"), thin)
    assert verdict.answer == "no"
    assert verdict.counterexample


def test_yes_certificates_recheck_independently():
    """The (simulation, embedding) pair in a yes verdict passes the standalone verifiers."""
    kb, mapping = load_kb("ex3_kb"), load_mapping("ex3_map")
    verdict = universal_solution_extended(kb, mapping)
    table, h = verdict.certificate
    source = build_canonical(
        KnowledgeBase(combined_tbox(kb.tbox, mapping.t12), kb.abox),
        check_consistency=False,
    )
    witness = build_vabox(verdict.witness)
    assert verify_simulation(source, witness, table, mapping.sigma2)
    assert verify_embedding_into_regular(witness, source, h, mapping.sigma2)


def test_extended_search_respects_depth_cap():
    kb, mapping = load_kb("ex3_kb"), load_mapping("ex3_map")
    capped = universal_solution_extended(kb, mapping, depth_cap=0)
    assert capped.answer in ("yes", "unknown")
    assert universal_solution_extended(kb, mapping, depth_cap=6).answer == "yes"


def test_witness_serializes_to_parseable_text():
    verdict = universal_solution_extended(load_kb("ex3_kb"), load_mapping("ex3_map"))
    text = serialize(KnowledgeBase((), verdict.witness))
    assert "Gp(_n1)" in text
