"""Shared test helpers: loading the checked-in example corpus."""

from pathlib import Path

import pytest

from kbx.syntax import parse_kb, parse_mapping

CORPUS = Path(__file__).parent / "corpus"


def load_kb(name):
    """Parse ``tests/corpus/<name>.kbx`` as a knowledge base."""
    return parse_kb((CORPUS / f"{name}.kbx").read_text())


def load_mapping(name):
    """Parse ``tests/corpus/<name>.kbx`` as a mapping."""
    return parse_mapping((CORPUS / f"{name}.kbx").read_text())


@pytest.fixture
def corpus_dir():
    return CORPUS
