"""Reader for Scopus-style CSV exports."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from .normalize import normalize_institution, split_affiliation
from .records import (
    AuthorRef,
    BibRecord,
    Corpus,
    CorpusError,
    Provenance,
    Rejection,
    normalize_keyword,
    stable_record_id,
    uniquify,
)

COLUMNS = {
    "authors": "authors",
    "author(s) id": "author_ids",
    "title": "title",
    "year": "year",
    "source title": "source_title",
    "author keywords": "author_keywords",
    "index keywords": "index_keywords",
    "affiliations": "affiliations",
    "authors with affiliations": "authors_with_affiliations",
    "references": "references",
    "doi": "doi",
    "document type": "document_type",
}

DOC_TYPE_MAP = {
    "article": "article",
    "review": "review",
    "conference paper": "conference_paper",
    "book": "book",
    "book chapter": "book_chapter",
}


@dataclass
class ParseOptions:
    aliases: dict[str, str] = field(default_factory=dict)
    source_name: str = "<stream>"


def _text(stream) -> str:
    if isinstance(stream, (bytes, bytearray)):
        return bytes(stream).decode("utf-8-sig")
    if isinstance(stream, str):
        return stream.lstrip("﻿")
    data = stream.read()
    return _text(data)


def parse_timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return moment.isoformat(timespec="seconds")


def _split(cell: str) -> list[str]:
    return [p.strip() for p in cell.split(";") if p.strip()]


def _authors(row: dict, aliases: dict[str, str]) -> tuple[AuthorRef, ...]:
    names = _split(row.get("authors", ""))
    affs: dict[str, list[str]] = {n: [] for n in names}
    country: dict[str, str | None] = {n: None for n in names}

    def attach(name: str, raw_affiliation: str) -> None:
        inst, ctry = split_affiliation(raw_affiliation)
        if not inst:
            return
        key = normalize_institution(inst, aliases)
        if key not in affs[name]:
            affs[name].append(key)
        if country[name] is None and ctry:
            country[name] = ctry

    keyed = _split(row.get("authors_with_affiliations", ""))
    if keyed and names:
        by_length = sorted(names, key=len, reverse=True)
        for pos, entry in enumerate(keyed):
            owner = next((n for n in by_length if entry.startswith(n + ",")), None)
            if owner is not None:
                attach(owner, entry[len(owner) + 1:])
            elif pos < len(names) and "," in entry:
                # positional fallback when the name spelling differs between columns
                attach(names[pos], entry.split(",", 1)[1])
    else:
        for aff in _split(row.get("affiliations", "")):
            for n in names:
                attach(n, aff)
    return tuple(AuthorRef(n, tuple(affs[n]), country[n]) for n in names)


def _record(row: dict, aliases: dict[str, str]) -> BibRecord:
    title = (row.get("title") or "").strip()
    if not title:
        raise ValueError("empty title")
    year_cell = (row.get("year") or "").strip()
    try:
        year = int(year_cell) if year_cell else 0
    except ValueError:
        raise ValueError(f"bad year {year_cell!r}") from None
    author_kw = {normalize_keyword(k) for k in _split(row.get("author_keywords", ""))}
    index_kw = {normalize_keyword(k) for k in _split(row.get("index_keywords", ""))}
    author_kw.discard("")
    index_kw.discard("")
    authors = _authors(row, aliases)
    doi = (row.get("doi") or "").strip() or None
    return BibRecord(
        record_id=stable_record_id(title, year, doi, authors[0].author_name if authors else None),
        title=title,
        year=year,
        doc_type=DOC_TYPE_MAP.get((row.get("document_type") or "").strip().lower(), "other"),
        authors=authors,
        keywords=frozenset(author_kw | index_kw),
        author_keywords=frozenset(author_kw),
        references=tuple(_split(row.get("references", ""))),
        source_title=(row.get("source_title") or "").strip(),
        doi=doi,
    )


def parse_scopus_csv(stream, options: ParseOptions | None = None) -> Corpus:
    """Parse a Scopus CSV export into a :class:`Corpus`.

    Rows that cannot become a record are listed in ``provenance.rejected``
    with their line number and reason. A header without a Title column is
    fatal.
    """
    options = options or ParseOptions()
    reader = csv.reader(io.StringIO(_text(stream), newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise CorpusError("empty file: no header row") from None
    fields = [COLUMNS.get(h.strip().lower()) for h in header]
    if "title" not in fields:
        raise CorpusError("missing Title column in header")

    records: list[BibRecord] = []
    rejected: list[Rejection] = []
    read = 0
    for cells in reader:
        if not cells or not any(c.strip() for c in cells):
            continue
        read += 1
        line = reader.line_num
        if len(cells) != len(header):
            rejected.append(Rejection(line, f"malformed row: expected {len(header)} fields, got {len(cells)}"))
            continue
        row = {f: c for f, c in zip(fields, cells) if f is not None}
        try:
            records.append(_record(row, options.aliases))
        except ValueError as exc:
            rejected.append(Rejection(line, str(exc)))

    ids = uniquify(r.record_id for r in records)
    records = [r if r.record_id == i else replace(r, record_id=i) for r, i in zip(records, ids)]
    prov = Provenance([options.source_name], parse_timestamp(), read, len(records), rejected)
    return Corpus(records, prov)

