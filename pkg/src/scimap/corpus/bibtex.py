"""Small BibTeX reader: entries, quoted/braced values, @string macros."""
from __future__ import annotations

import re
from dataclasses import replace

from .records import (
    AuthorRef,
    BibRecord,
    Corpus,
    CorpusError,
    Provenance,
    Rejection,
    normalize_keyword,
    uniquify,
)
from .scopus import parse_timestamp

TYPE_MAP = {"article": "article", "inproceedings": "conference_paper", "book": "book"}

_AND = re.compile(r"\s+and\s+", re.IGNORECASE)
_WS = re.compile(r"\s+")
_IDENT = re.compile(r"[^\s\"#%'(),={}]+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, msg: str, pos: int | None = None):
        raise CorpusError(f"{msg} at byte offset {self.offset(self.pos if pos is None else pos)}")

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def ident(self) -> str:
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.fail("expected identifier")
        self.pos = m.end()
        return m.group(0)

    def braced(self) -> str:
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                self.pos += 2
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return self.text[start + 1:self.pos - 1]
            self.pos += 1
        self.fail("unbalanced braces", start)

    def quoted(self) -> str:
        start = self.pos
        self.pos += 1
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                self.pos += 2
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth < 0:
                    self.fail("unbalanced braces", self.pos)
            elif ch == '"' and depth == 0:
                self.pos += 1
                return self.text[start + 1:self.pos - 1]
            self.pos += 1
        if depth:
            self.fail("unbalanced braces", start)
        self.fail("unterminated quoted value", start)


def _clean(value: str) -> str:
    return _WS.sub(" ", value.replace("{", "").replace("}", "")).strip()


def _value(sc: _Scanner, macros: dict[str, str]) -> str:
    pieces = []
    while True:
        sc.ws()
        ch = sc.peek()
        if ch == "{":
            pieces.append(sc.braced())
        elif ch == '"':
            pieces.append(sc.quoted())
        elif ch.isdigit():
            pieces.append(sc.ident())
        elif ch:
            name = sc.ident().lower()
            pieces.append(macros.get(name, ""))
        else:
            sc.fail("unexpected end of input")
        sc.ws()
        if sc.peek() != "#":
            return "".join(pieces)
        sc.pos += 1


def _fields(sc: _Scanner, close: str, macros: dict[str, str], opened: int) -> dict[str, str]:
    fields: dict[str, str] = {}
    while True:
        sc.ws()
        ch = sc.peek()
        if ch == close:
            sc.pos += 1
            return fields
        if ch == ",":
            sc.pos += 1
            continue
        if not ch:
            sc.fail("unbalanced braces", opened)
        name = sc.ident().lower()
        sc.ws()
        if sc.peek() != "=":
            sc.fail(f"expected '=' after field {name!r}")
        sc.pos += 1
        fields[name] = _value(sc, macros)


def _skip_block(sc: _Scanner) -> None:
    if sc.peek() == "{":
        sc.braced()
        return
    start = sc.pos
    depth = 0
    while sc.pos < len(sc.text):
        ch = sc.text[sc.pos]
        depth += ch == "("
        depth -= ch == ")"
        sc.pos += 1
        if depth == 0:
            return
    sc.fail("unbalanced parentheses", start)


def _record(key: str, etype: str, fields: dict[str, str]) -> BibRecord:
    title = _clean(fields.get("title", ""))
    if not title:
        raise ValueError("missing title")
    year_match = re.search(r"\d{4}", fields.get("year", ""))
    keywords = {normalize_keyword(k) for k in re.split(r"[;,]", _clean(fields.get("keywords", "")))}
    keywords.discard("")
    author_field = _clean(fields.get("author", ""))
    authors = tuple(AuthorRef(a.strip()) for a in _AND.split(author_field) if a.strip()) if author_field else ()
    return BibRecord(
        record_id=key,
        title=title,
        year=int(year_match.group(0)) if year_match else 0,
        doc_type=TYPE_MAP.get(etype, "other"),
        authors=authors,
        keywords=frozenset(keywords),
        author_keywords=frozenset(keywords),
        source_title=_clean(fields.get("journal", "")),
        doi=_clean(fields.get("doi", "")) or None,
    )


def parse_bibtex(stream, source_name: str = "<stream>") -> Corpus:
    """Parse BibTeX entries into a :class:`Corpus`.

    Only ``title``, ``author``, ``year``, ``keywords``, ``journal`` and
    ``doi`` are read. Entries without a title are rejected (with their line
    number); unbalanced braces abort the whole parse.
    """
    if isinstance(stream, (bytes, bytearray)):
        text = bytes(stream).decode("utf-8-sig")
    elif isinstance(stream, str):
        text = stream
    else:
        data = stream.read()
        text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    sc = _Scanner(text)
    macros: dict[str, str] = {}
    parsed: list[tuple[int, str, str, dict[str, str]]] = []
    while True:
        at = text.find("@", sc.pos)
        if at < 0:
            break
        sc.pos = at + 1
        etype = sc.ident().lower()
        sc.ws()
        opener = sc.peek()
        if opener not in "{(" or not opener:
            sc.fail("expected '{' or '(' after entry type")
        if etype in ("comment", "preamble"):
            _skip_block(sc)
            continue
        close = "}" if opener == "{" else ")"
        opened = sc.pos
        sc.pos += 1
        if etype == "string":
            for name, value in _fields(sc, close, macros, opened).items():
                macros[name] = value
            continue
        sc.ws()
        key_start = sc.pos
        comma = text.find(",", sc.pos)
        end = text.find(close, sc.pos)
        if comma < 0 or (0 <= end < comma):
            sc.fail("entry without citation key", key_start)
        key = text[key_start:comma].strip()
        sc.pos = comma + 1
        fields = _fields(sc, close, macros, opened)
        parsed.append((text.count("\n", 0, at) + 1, key, etype, fields))

    records: list[BibRecord] = []
    rejected: list[Rejection] = []
    for line, key, etype, fields in parsed:
        try:
            records.append(_record(key, etype, fields))
        except ValueError as exc:
            rejected.append(Rejection(line, str(exc)))
    ids = uniquify(r.record_id for r in records)
    records = [r if r.record_id == i else replace(r, record_id=i) for r, i in zip(records, ids)]
    return Corpus(records, Provenance([source_name], parse_timestamp(), len(parsed), len(records), rejected))
