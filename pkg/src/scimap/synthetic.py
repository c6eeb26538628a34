"""Seeded synthetic corpora and networks for tests, benchmarks and demos."""
from __future__ import annotations

import csv
import io
import random
from itertools import combinations

from .corpus.dedupe import similar_pairs
from .netbuild.network import Network, Node

SCOPUS_HEADER = [
    "Authors", "Title", "Year", "Source title", "Affiliations", "Authors with affiliations",
    "Author Keywords", "Index Keywords", "References", "DOI", "Document Type",
]

_SYLLABLES = (
    "ka", "lo", "mi", "ne", "ru", "sa", "ti", "vo", "ze", "pa", "qui", "dor", "fen", "gal", "hus",
    "jor", "kel", "lan", "mor", "nis", "pol", "ras", "sil", "tor", "ul", "ven", "wex", "yar", "zon",
)
_COUNTRIES = ("USA", "France", "Japan", "Germany", "UK", "Colombia", "Brazil", "Italy", "Canada", "China")
_DOC_TYPES = ("Article", "Article", "Article", "Review", "Conference Paper", "Book")
_INDEX_TERMS = ("humans", "perception", "female", "learning", "male", "adult", "knowledge", "education")


def _word(rng: random.Random, parts: int) -> str:
    return "".join(rng.choice(_SYLLABLES) for _ in range(parts))


def _unique_words(rng: random.Random, count: int, parts: int) -> list[str]:
    out: list[str] = []
    seen: set[str] = set()
    while len(out) < count:
        w = _word(rng, parts)
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def _typo(rng: random.Random, title: str) -> str:
    positions = [i for i, ch in enumerate(title) if ch.isalpha()]
    i = rng.choice(positions)
    repl = "x" if title[i].lower() != "x" else "q"
    return title[:i] + repl + title[i + 1:]


def synthetic_rows(
    n_docs: int,
    seed: int = 0,
    duplicate_pairs: int = 0,
    n_topics: int = 12,
    keywords_per_topic: int = 40,
    n_institutions: int = 203,
    refs_per_topic: int = 60,
    threshold_percent: float = 95.0,
    keywords_range: tuple[int, int] = (3, 6),
) -> list[dict[str, str]]:
    """Scopus-style rows with topical structure.

    Exactly ``duplicate_pairs`` pairs of rows have titles at or above
    ``threshold_percent`` similarity (one-letter typos); every other pair is
    checked to fall below it.
    """
    rng = random.Random(seed)
    vocab = _unique_words(rng, 400, 2)
    topic_kw = [_unique_words(rng, keywords_per_topic, 3) for _ in range(n_topics)]
    institutions = [f"University of {w.capitalize()}" for w in _unique_words(rng, n_institutions, 3)]
    inst_country = {inst: rng.choice(_COUNTRIES) for inst in institutions}
    # institutions collaborate within a home topic group
    inst_groups = [institutions[t::n_topics] for t in range(n_topics)]
    surnames = _unique_words(rng, max(50, n_docs), 3)
    topic_refs = [
        [f"{_word(rng, 3).capitalize()} {chr(65 + rng.randrange(26))}., {_word(rng, 4)} {_word(rng, 3)}, "
         f"{_word(rng, 2).capitalize()} J, {rng.randrange(1960, 2020)}" for _ in range(refs_per_topic)]
        for _ in range(n_topics)
    ]
    n_unique = n_docs - duplicate_pairs
    titles: list[str] = []
    while len(titles) < n_unique:
        t = " ".join(rng.choice(vocab) for _ in range(rng.randint(6, 11))).capitalize()
        titles.append(t)
    # replace any accidental near-duplicates among the unique titles
    while True:
        clash = similar_pairs(titles, threshold_percent)
        if not clash:
            break
        for _, j in clash:
            titles[j] = " ".join(rng.choice(vocab) for _ in range(rng.randint(6, 11))).capitalize()
    sources = rng.sample(range(n_unique), duplicate_pairs)
    dup_titles = [_typo(rng, titles[s]) for s in sources]

    rows: list[dict[str, str]] = []
    topic_of: list[int] = []
    for i in range(n_unique):
        topic = rng.randrange(n_topics)
        topic_of.append(topic)
        group = inst_groups[topic]
        n_auth = rng.randint(1, 4)
        authors, with_aff, affs = [], [], []
        for a in range(n_auth):
            name = f"{rng.choice(surnames).capitalize()}, {chr(65 + rng.randrange(26))}."
            while name in authors:
                name = f"{rng.choice(surnames).capitalize()}, {chr(65 + rng.randrange(26))}."
            authors.append(name)
            inst = rng.choice(group) if rng.random() < 0.9 else rng.choice(institutions)
            aff = f"{inst}, {inst_country[inst]}"
            with_aff.append(f"{name}, {aff}")
            affs.append(aff)
        kws = rng.sample(topic_kw[topic], rng.randint(*keywords_range))
        if rng.random() < 0.2:
            kws.append(rng.choice(topic_kw[rng.randrange(n_topics)]))
        index_terms = rng.sample(_INDEX_TERMS, rng.randint(0, 2))
        refs = rng.sample(topic_refs[topic], rng.randint(4, 10))
        if rng.random() < 0.3:
            refs.append(rng.choice(topic_refs[rng.randrange(n_topics)]))
        rows.append({
            "Authors": "; ".join(authors),
            "Title": titles[i],
            "Year": str(rng.randrange(1990, 2021)),
            "Source title": f"Journal of {rng.choice(vocab).capitalize()}",
            "Affiliations": "; ".join(dict.fromkeys(affs)),
            "Authors with affiliations": "; ".join(with_aff),
            "Author Keywords": "; ".join(dict.fromkeys(kws)),
            "Index Keywords": "; ".join(index_terms),
            "References": "; ".join(dict.fromkeys(refs)),
            "DOI": f"10.5555/syn.{seed}.{i}",
            "Document Type": rng.choice(_DOC_TYPES),
        })
    for s, t in zip(sources, dup_titles):
        dup = dict(rows[s])
        dup["Title"] = t
        dup["DOI"] = ""
        rows.append(dup)
    # duplicates placed at random positions after their originals stay deterministic
    order = list(range(len(rows)))
    rng.shuffle(order)
    return [rows[i] for i in order]


def rows_to_csv(rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SCOPUS_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def synthetic312_csv() -> str:
    """312 records, exactly two near-duplicate pairs at >= 95% title similarity."""
    return rows_to_csv(synthetic_rows(312, seed=312, duplicate_pairs=2))


def coword_corpus_csv(n_docs: int = 1000, seed: int = 1000) -> str:
    """About 3,000 distinct keywords over ``n_docs`` documents."""
    rows = synthetic_rows(
        n_docs, seed=seed, n_topics=30, keywords_per_topic=110, refs_per_topic=150, keywords_range=(5, 10)
    )
    return rows_to_csv(rows)


def edges_for_density(n: int, density: float) -> int:
    return round(density * n * (n - 1) / 2)


def network_with_density(n: int, density: float, seed: int = 0, clusters: int | None = None) -> Network:
    """Random simple graph on ``n`` nodes with exactly ``round(density * C(n, 2))`` edges.

    With ``clusters`` set, edges are drawn inside contiguous node blocks
    first, so the graph has planted community structure.
    """
    rng = random.Random(seed)
    m = edges_for_density(n, density)
    ids = [f"n{i:04d}" for i in range(n)]
    pairs = list(combinations(range(n), 2))
    if clusters:
        block = [i * clusters // n for i in range(n)]
        inside = [p for p in pairs if block[p[0]] == block[p[1]]]
        outside = [p for p in pairs if block[p[0]] != block[p[1]]]
        rng.shuffle(inside)
        rng.shuffle(outside)
        chosen = (inside + outside)[:m]
    else:
        chosen = rng.sample(pairs, m)
    return Network("institution", [Node(i, i) for i in ids], [(ids[a], ids[b], 1.0) for a, b in chosen],
                   f"synthetic n={n} density={density}")


def random_network(n: int, m: int, seed: int = 0) -> Network:
    rng = random.Random(seed)
    ids = [f"v{i:05d}" for i in range(n)]
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Network("keyword", [Node(i, i) for i in ids], [(ids[a], ids[b], 1.0) for a, b in sorted(edges)],
                   f"random n={n} m={m}")
