"""Near-duplicate removal by percent title similarity."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .distance import _codes, _osa, max_edits, normalize_title
from .._accel import pick
from .records import BibRecord, Corpus, Provenance, Rejection


@dataclass
class DedupReport:
    threshold_percent: float
    merged_pairs: list[tuple[str, str, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "threshold_percent": self.threshold_percent,
            "merged_pairs": [
                {"kept_id": k, "dropped_id": d, "similarity_percent": s} for k, d, s in self.merged_pairs
            ],
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            # smaller index wins so the survivor is the earliest record
            self.parent[max(a, b)] = min(a, b)


def similar_pairs(titles: list[str], threshold_percent: float) -> dict[tuple[int, int], float]:
    """All index pairs ``(i, j)``, ``i < j``, whose normalised titles reach the threshold."""
    norm = [normalize_title(t) for t in titles]
    codes = [_codes(t) for t in norm]
    by_len = sorted(range(len(norm)), key=lambda i: (len(norm[i]), i))
    osa = pick(_osa)
    found: dict[tuple[int, int], float] = {}
    for pos, i in enumerate(by_len):
        li = len(norm[i])
        for j in by_len[pos + 1:]:
            lj = len(norm[j])
            bound = max_edits(lj, threshold_percent)
            if lj - li > bound:
                break
            if lj == 0:
                continue
            d = int(osa(codes[i], codes[j], bound)) if norm[i] != norm[j] else 0
            if d > bound:
                continue
            sim = 100.0 * (1.0 - d / lj)
            if sim >= threshold_percent:
                found[(min(i, j), max(i, j))] = sim
    return found


def _merge(kept: BibRecord, dropped: BibRecord) -> BibRecord:
    refs = list(kept.references)
    seen = set(refs)
    for r in dropped.references:
        if r not in seen:
            refs.append(r)
            seen.add(r)
    return replace(
        kept,
        keywords=kept.keywords | dropped.keywords,
        author_keywords=kept.author_keywords | dropped.author_keywords,
        references=tuple(refs),
    )


def dedupe(corpus: Corpus, threshold_percent: float = 95.0) -> tuple[Corpus, DedupReport]:
    """Merge records whose titles are at least ``threshold_percent`` similar.

    Similar pairs are grouped transitively; each group keeps its earliest
    record, which absorbs the keyword and reference sets of the others.
    """
    if not 0 < threshold_percent <= 100:
        raise ValueError(f"threshold_percent must be in (0, 100], got {threshold_percent}")
    records = corpus.records
    pairs = similar_pairs([r.title for r in records], threshold_percent)
    uf = _UnionFind(len(records))
    for i, j in pairs:
        uf.union(i, j)

    best_link: dict[int, float] = {}
    for (i, j), sim in pairs.items():
        for k in (i, j):
            best_link[k] = max(best_link.get(k, 0.0), sim)

    merged: dict[int, BibRecord] = {}
    report = DedupReport(threshold_percent)
    drops: list[Rejection] = []
    for idx, rec in enumerate(records):
        root = uf.find(idx)
        if root == idx:
            merged[idx] = rec
            continue
        merged[root] = _merge(merged[root], rec)
        report.merged_pairs.append((records[root].record_id, rec.record_id, best_link[idx]))
        drops.append(Rejection(idx + 1, f"duplicate of {records[root].record_id}"))

    kept = [merged[i] for i in sorted(merged)]
    p = corpus.provenance
    prov = Provenance(list(p.sources), p.parsed_at, p.read, len(kept), list(p.rejected) + drops)
    return Corpus(kept, prov), report
