"""Knowledge-base exchange for lightweight ontologies.

Source knowledge bases are translated along inclusion mappings into a target
signature; this package decides whether universal solutions exist (with or
without labeled nulls), checks candidate solutions, decides whether a target
TBox represents the source TBox query-faithfully, synthesizes such TBoxes,
and validates exchange witnesses with alternating tree automata.
"""

from .canonical import (
    CanonicalStructure,
    FiniteInterpretation,
    InconsistentKB,
    build_canonical,
    build_vabox,
    closure_abox,
    materialize,
)
from .exchange import (
    SolutionVerdict,
    is_sigma2_positive,
    is_universal_solution,
    universal_solution_extended,
    universal_solution_plain,
)
from .model import (
    ABox,
    Atomic,
    BasicRole,
    ConceptAssertion,
    ConceptInclusion,
    Constant,
    Exists,
    KnowledgeBase,
    Mapping,
    Null,
    RoleAssertion,
    RoleInclusion,
    Signature,
    Variable,
)
from .automata import (
    LabeledTreePrefix,
    TreeAutomaton,
    build_acan,
    build_afin,
    build_amod,
    check_runs,
    dump_automaton,
    encode_canonical_tree,
    pad_kb,
)
from .reasoner import (
    derives_concept,
    derives_role,
    kb_consistent,
    tbox_trivial,
)
from .representability import (
    GeneratingPass,
    RepresentationVerdict,
    find_generating_pass,
    is_ucq_representation,
    representation_exists,
    synthesize_representation,
)
from .syntax import ParseError, parse_kb, parse_mapping, serialize

__version__ = "0.1.0"

__all__ = [
    "ABox",
    "Atomic",
    "BasicRole",
    "CanonicalStructure",
    "ConceptAssertion",
    "ConceptInclusion",
    "Constant",
    "Exists",
    "FiniteInterpretation",
    "GeneratingPass",
    "InconsistentKB",
    "KnowledgeBase",
    "LabeledTreePrefix",
    "Mapping",
    "Null",
    "ParseError",
    "RepresentationVerdict",
    "RoleAssertion",
    "RoleInclusion",
    "Signature",
    "SolutionVerdict",
    "TreeAutomaton",
    "Variable",
    "build_acan",
    "build_afin",
    "build_amod",
    "build_canonical",
    "build_vabox",
    "check_runs",
    "closure_abox",
    "derives_concept",
    "derives_role",
    "dump_automaton",
    "encode_canonical_tree",
    "find_generating_pass",
    "is_sigma2_positive",
    "is_ucq_representation",
    "is_universal_solution",
    "kb_consistent",
    "materialize",
    "pad_kb",
    "parse_kb",
    "parse_mapping",
    "representation_exists",
    "serialize",
    "synthesize_representation",
    "tbox_trivial",
    "universal_solution_extended",
    "universal_solution_plain",
]
