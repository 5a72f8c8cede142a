"""
Fixtures package: the fixture DSL and the bundled corpus.

Exports:
- parse_fixture / FixtureSyntaxError: text -> Document
- format_document: Document -> text
- load_document / load_text / load_fixture / FixtureError: Document -> rings, maps and checks
- corpus_files: the *.lk files under fixtures/corpus
"""

from .lexer import FixtureSyntaxError, tokenize
from .parser import parse_fixture
from .printer import format_document, format_expression
from .loader import (
    CHECK_KINDS,
    Fixture,
    FixtureError,
    check_id,
    corpus_files,
    load_document,
    load_fixture,
    load_text,
)

__all__ = [
    "FixtureSyntaxError", "tokenize", "parse_fixture", "format_document", "format_expression",
    "CHECK_KINDS", "Fixture", "FixtureError", "check_id", "corpus_files", "load_document",
    "load_fixture", "load_text",
]
