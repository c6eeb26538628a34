"""Co-authorship, bibliographic coupling and co-word network construction."""
from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from ..corpus.distance import normalize_title
from ..corpus.records import BibRecord, Corpus, normalize_keyword, normalize_person
from .network import Network, Node


def _require(corpus: Corpus) -> None:
    if not corpus.records:
        raise ValueError("corpus is empty")


def _entities(record: BibRecord, level: str) -> dict[str, str]:
    """Distinct entity ids on one document, mapped to the raw spelling seen."""
    found: dict[str, str] = {}
    for author in record.authors:
        if level == "author":
            key = normalize_person(author.author_name)
            if key and (key not in found or author.author_name < found[key]):
                found[key] = author.author_name
        else:
            for inst in author.affiliations:
                found.setdefault(inst, inst)
    return found


def _network(kind, labels, doc_counts, weights, name) -> Network:
    nodes = [Node(i, labels[i], (("documents", doc_counts[i]),)) for i in sorted(labels)]
    edges = [(u, v, float(w)) for (u, v), w in weights.items()]
    return Network(kind, nodes, edges, name)


def build_coauthorship(corpus: Corpus, level: str = "institution", counting: str = "full") -> Network:
    """Entities linked when they appear on the same document.

    Each document adds 1 to every pair of its distinct entities under full
    counting, or ``1 / (k - 1)`` with ``k`` distinct entities under
    fractional counting. An entity listed twice on a document counts once.
    """
    _require(corpus)
    if level not in ("author", "institution"):
        raise ValueError(f"level must be 'author' or 'institution', got {level!r}")
    if counting not in ("full", "fractional"):
        raise ValueError(f"counting must be 'full' or 'fractional', got {counting!r}")
    labels: dict[str, str] = {}
    docs: Counter = Counter()
    weights: dict[tuple[str, str], Fraction | int] = defaultdict(int)
    for record in corpus.records:
        ents = _entities(record, level)
        for key, raw in ents.items():
            if key not in labels or raw < labels[key]:
                labels[key] = raw
            docs[key] += 1
        k = len(ents)
        if k < 2:
            continue
        # exact rational sums keep fractional weights independent of record order
        inc = 1 if counting == "full" else Fraction(1, k - 1)
        for pair in combinations(sorted(ents), 2):
            weights[pair] += inc
    return _network(level, labels, docs, weights, f"co-authorship ({level})")


def normalize_reference(raw: str) -> str:
    return normalize_title(raw)


def build_bibliographic_coupling(corpus: Corpus, min_shared: int = 1) -> Network:
    """Documents linked by the number of normalised references they share."""
    _require(corpus)
    if min_shared < 1:
        raise ValueError("min_shared must be >= 1")
    citing: dict[str, list[str]] = defaultdict(list)
    labels, docs = {}, {}
    for record in corpus.records:
        labels[record.record_id] = record.label()
        docs[record.record_id] = 1
        for ref in {normalize_reference(r) for r in record.references}:
            if ref:
                citing[ref].append(record.record_id)
    shared: Counter = Counter()
    for ids in citing.values():
        shared.update(combinations(sorted(ids), 2))
    weights = {pair: w for pair, w in shared.items() if w >= min_shared}
    return _network("document", labels, docs, weights, "bibliographic coupling")


def load_stoplist(text: str) -> set[str]:
    return {normalize_keyword(line) for line in text.splitlines() if line.strip() and not line.startswith("#")}


def build_coword(corpus: Corpus, stoplist: Iterable[str] = (), keyword_source: str = "all") -> Network:
    """Keywords linked by the number of documents in which both occur.

    ``keyword_source="author"`` restricts each record to its author keywords;
    the default uses the union of author and index keywords.
    """
    _require(corpus)
    if keyword_source not in ("all", "author"):
        raise ValueError(f"keyword_source must be 'all' or 'author', got {keyword_source!r}")
    stop = {normalize_keyword(s) for s in stoplist}
    labels: dict[str, str] = {}
    docs: Counter = Counter()
    weights: Counter = Counter()
    for record in corpus.records:
        kws = record.keywords if keyword_source == "all" else record.author_keywords
        kws = sorted(k for k in kws if k not in stop)
        for k in kws:
            labels[k] = k
            docs[k] += 1
        weights.update(combinations(kws, 2))
    return _network("keyword", labels, docs, weights, "co-word")


def threshold_filter(net: Network, min_weight: float = 1.0, drop_isolated: bool = False) -> Network:
    edges = [(u, v, w) for u, v, w in net.edges if w >= min_weight]
    nodes = net.nodes
    if drop_isolated:
        touched = {u for u, _, _ in edges} | {v for _, v, _ in edges}
        nodes = [nd for nd in nodes if nd.node_id in touched]
    return Network(net.node_kind, list(nodes), edges, net.name)


def connected_components(net: Network) -> list[frozenset[str]]:
    """Maximal connected node sets, largest first, then by smallest node id."""
    parent = list(range(net.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    src, dst, _ = net.edge_arrays
    for a, b in zip(src.tolist(), dst.tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[str]] = defaultdict(list)
    for i, node in enumerate(net.nodes):
        groups[find(i)].append(node.node_id)
    comps = sorted(groups.values(), key=lambda g: (-len(g), min(g)))
    return [frozenset(g) for g in comps]
