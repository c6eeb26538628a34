"""Parsing, normalisation and deduplication of bibliographic records."""
from .bibtex import parse_bibtex
from .dedupe import DedupReport, dedupe
from .distance import bounded_distance, damerau_levenshtein, normalize_title, title_similarity
from .normalize import UNKNOWN_INSTITUTION, load_alias_table, normalize_institution, split_affiliation
from .records import (
    DOC_TYPES,
    AuthorRef,
    BibRecord,
    Corpus,
    CorpusError,
    Provenance,
    Rejection,
    normalize_keyword,
    normalize_person,
)
from .scopus import ParseOptions, parse_scopus_csv

__all__ = [
    "DOC_TYPES", "AuthorRef", "BibRecord", "Corpus", "CorpusError", "DedupReport", "ParseOptions",
    "Provenance", "Rejection", "UNKNOWN_INSTITUTION", "bounded_distance", "damerau_levenshtein",
    "dedupe", "load_alias_table", "normalize_institution", "normalize_keyword", "normalize_person",
    "normalize_title", "parse_bibtex", "parse_scopus_csv", "split_affiliation", "title_similarity",
]
