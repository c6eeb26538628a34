"""Institution and affiliation string normalisation."""
from __future__ import annotations

import csv
import io
import re
import unicodedata
from typing import Mapping

UNKNOWN_INSTITUTION = "unknown institution"

_WS = re.compile(r"\s+")
_TRAILING_ACRONYM = re.compile(r"\s*\(\s*[\w.&'-]+\s*\)\s*$")

# tokens that mark the institution-level segment of a comma-separated affiliation
_INSTITUTION_HINTS = (
    "universi", "institut", "college", "school", "academy", "centre", "center",
    "centro", "hospital", "laboratory", "polytechnic", "politecnico", "ecole", "école",
    "hochschule", "cnrs", "council", "foundation", "ministry", "agency", "corporation",
)


def _fold(text: str) -> str:
    text = unicodedata.normalize("NFKD", text)
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    return _WS.sub(" ", text.lower()).strip()


def normalize_institution(raw: str, aliases: Mapping[str, str] | None = None) -> str:
    """Canonical institution key.

    Lower-cases, strips diacritics, collapses whitespace and drops trailing
    parenthesised acronyms such as ``(CalTech)``. ``aliases`` maps an
    already-normalised name to its canonical replacement.
    """
    text = raw
    while True:
        stripped = _TRAILING_ACRONYM.sub("", text)
        if stripped == text:
            break
        text = stripped
    text = _fold(text).strip(" ,;.")
    if aliases:
        text = aliases.get(text, text)
    return text or UNKNOWN_INSTITUTION


def load_alias_table(text: str) -> dict[str, str]:
    """Parse a two-column ``raw,canonical`` CSV; keys are normalised on load."""
    table: dict[str, str] = {}
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if len(row) != 2:
            raise ValueError(f"alias table line {lineno}: expected 2 columns, got {len(row)}")
        raw, canonical = row
        if lineno == 1 and raw.strip().lower() == "raw" and canonical.strip().lower() == "canonical":
            continue
        table[normalize_institution(raw)] = normalize_institution(canonical)
    return table


def split_affiliation(text: str) -> tuple[str, str | None]:
    """Split ``"Dept X, University Y, City, Country"`` into (institution, country).

    The institution is the first segment that looks like an organisation,
    falling back to the first segment. The country is the last segment when
    there are at least two.
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        return "", None
    country = parts[-1] if len(parts) >= 2 else None
    institution = parts[0]
    for p in parts[:-1] if len(parts) >= 2 else parts:
        low = _fold(p)
        if any(h in low for h in _INSTITUTION_HINTS):
            institution = p
            break
    return institution, country
