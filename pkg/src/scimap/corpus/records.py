"""Bibliographic record types shared by the parsers, dedupe and builders."""
from __future__ import annotations

import hashlib
import json
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable

DOC_TYPES = ("article", "review", "conference_paper", "book", "book_chapter", "other")

_WS = re.compile(r"\s+")


class CorpusError(ValueError):
    """Fatal problem with a corpus source (bad header, unbalanced braces, ...)."""


def normalize_keyword(raw: str) -> str:
    return _WS.sub(" ", unicodedata.normalize("NFKC", raw).lower()).strip()


def normalize_person(raw: str) -> str:
    text = unicodedata.normalize("NFKD", raw)
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    return _WS.sub(" ", text.lower()).strip()


@dataclass(frozen=True)
class AuthorRef:
    author_name: str
    affiliations: tuple[str, ...] = ()
    country: str | None = None

    def __post_init__(self):
        if not self.author_name:
            raise ValueError("author_name must be non-empty")


@dataclass(frozen=True)
class BibRecord:
    record_id: str
    title: str
    year: int = 0
    doc_type: str = "other"
    authors: tuple[AuthorRef, ...] = ()
    keywords: frozenset[str] = frozenset()
    author_keywords: frozenset[str] = frozenset()
    references: tuple[str, ...] = ()
    source_title: str = ""
    doi: str | None = None

    def __post_init__(self):
        if not self.title.strip():
            raise ValueError("empty title")
        if self.doc_type not in DOC_TYPES:
            raise ValueError(f"unknown doc_type {self.doc_type!r}")
        if any(not k for k in self.keywords):
            raise ValueError("empty keyword")
        if not self.author_keywords <= self.keywords:
            raise ValueError("author keywords must be a subset of keywords")

    def label(self) -> str:
        """Short citation label in the ``Surname I, 2018, Source`` style."""
        parts = []
        if self.authors:
            parts.append(self.authors[0].author_name)
        if self.year:
            parts.append(str(self.year))
        if self.source_title:
            parts.append(self.source_title)
        return ", ".join(parts) if parts else self.title

    def to_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "title": self.title,
            "year": self.year,
            "doc_type": self.doc_type,
            "authors": [
                {"author_name": a.author_name, "affiliations": list(a.affiliations), "country": a.country}
                for a in self.authors
            ],
            "keywords": sorted(self.keywords),
            "author_keywords": sorted(self.author_keywords),
            "references": list(self.references),
            "source_title": self.source_title,
            "doi": self.doi,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BibRecord":
        return cls(
            record_id=d["record_id"],
            title=d["title"],
            year=int(d.get("year", 0)),
            doc_type=d.get("doc_type", "other"),
            authors=tuple(
                AuthorRef(a["author_name"], tuple(a.get("affiliations", ())), a.get("country"))
                for a in d.get("authors", ())
            ),
            keywords=frozenset(d.get("keywords", ())),
            author_keywords=frozenset(d.get("author_keywords", ())),
            references=tuple(d.get("references", ())),
            source_title=d.get("source_title", ""),
            doi=d.get("doi"),
        )


@dataclass(frozen=True)
class Rejection:
    row: int
    reason: str


@dataclass
class Provenance:
    sources: list[str] = field(default_factory=list)
    parsed_at: str = ""
    read: int = 0
    kept: int = 0
    rejected: list[Rejection] = field(default_factory=list)

    @property
    def n_rejected(self) -> int:
        return len(self.rejected)


@dataclass
class Corpus:
    records: list[BibRecord]
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self):
        seen = set()
        for r in self.records:
            if r.record_id in seen:
                raise ValueError(f"duplicate record_id {r.record_id!r}")
            seen.add(r.record_id)
        p = self.provenance
        if p.read == 0 and p.kept == 0 and not p.rejected:
            p.read = p.kept = len(self.records)
        if p.read != p.kept + p.n_rejected:
            raise ValueError("provenance counts must satisfy read = kept + rejected")

    def __len__(self) -> int:
        return len(self.records)

    def to_json(self) -> str:
        # parse timestamp deliberately omitted so corpus artifacts are byte-stable
        doc = {
            "provenance": {
                "sources": self.provenance.sources,
                "read": self.provenance.read,
                "kept": self.provenance.kept,
                "rejected": [{"row": r.row, "reason": r.reason} for r in self.provenance.rejected],
            },
            "records": [r.to_dict() for r in self.records],
        }
        return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Corpus":
        doc = json.loads(text)
        p = doc.get("provenance", {})
        records = [BibRecord.from_dict(r) for r in doc["records"]]
        prov = Provenance(
            sources=list(p.get("sources", [])),
            read=int(p.get("read", len(records))),
            kept=int(p.get("kept", len(records))),
            rejected=[Rejection(int(r["row"]), r["reason"]) for r in p.get("rejected", [])],
        )
        return cls(records, prov)


def stable_record_id(title: str, year: int, doi: str | None, first_author: str | None) -> str:
    """Content-derived id, so shuffling a corpus never renames its documents."""
    if doi:
        basis = "doi:" + doi.strip().lower()
    else:
        basis = "|".join((normalize_keyword(title), str(year), normalize_person(first_author or "")))
    return "D" + hashlib.sha1(basis.encode("utf-8")).hexdigest()[:12]


def uniquify(ids: Iterable[str]) -> list[str]:
    out, seen = [], {}
    for i in ids:
        n = seen.get(i, 0)
        seen[i] = n + 1
        out.append(i if n == 0 else f"{i}~{n + 1}")
    return out
