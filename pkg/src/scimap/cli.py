"""Batch pipeline driver: ingest, dedupe, build, analyze, layout, export."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .community.louvain import Partition, modularity
from .corpus import (
    Corpus,
    CorpusError,
    ParseOptions,
    dedupe,
    load_alias_table,
    parse_bibtex,
    parse_scopus_csv,
)
from .corpus.records import Provenance, uniquify
from .layout import fruchterman_reingold
from .netbuild import (
    build_bibliographic_coupling,
    build_coauthorship,
    build_coword,
    load_stoplist,
    threshold_filter,
)
from .report import (
    AnalysisParams,
    export_edgelist_csv,
    export_gexf,
    export_graphml,
    import_edgelist_csv,
    read_centrality_csv,
    read_layout_csv,
    read_partition_csv,
    render_report_json,
    render_report_markdown,
    run_analysis,
    write_centrality_csv,
    write_layout_csv,
    write_partition_csv,
)

log = logging.getLogger("scimap")

COMMANDS = ("ingest", "dedupe", "build", "analyze", "layout", "export", "pipeline")
EXPORT_FORMATS = ("json", "md", "gexf", "graphml", "csv")
# echoed into the analysis report; paths and output choices are left out so reports do not depend on them
NOT_IN_REPORT = {"input", "out", "formats", "aliases", "stoplist"}


class InputError(Exception):
    """Bad input or configuration; the command exits with status 1."""


def default_seed() -> int:
    raw = os.environ.get("SCIMAP_SEED")
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SCIMAP_SEED must be an integer, got {raw!r}") from None


@dataclass
class PipelineConfig:
    input: list[str] = field(default_factory=list)
    format: str = "auto"
    aliases: str = ""
    threshold_percent: float = 95.0
    network: str = "ca"
    level: str = "institution"
    counting: str = "full"
    min_shared: int = 1
    stoplist: str = ""
    keyword_source: str = "all"
    min_weight: float = 1.0
    drop_isolated: bool = False
    resolution: float = 1.0
    seed: int = 42
    restarts: int = 1
    max_passes: int = 100
    weighted: bool = False
    normalized: bool = True
    apl_policy: str = "reachable_pairs"
    top_k: int = 10
    width: float = 1000.0
    height: float = 1000.0
    iterations: int = 500
    out: str = "out"
    formats: list[str] = field(default_factory=lambda: ["json", "md", "gexf", "graphml"])

    CHOICES = {
        "format": ("auto", "scopus", "bibtex", "corpus"),
        "network": ("ca", "bc", "cw"),
        "level": ("author", "institution"),
        "counting": ("full", "fractional"),
        "keyword_source": ("all", "author"),
        "apl_policy": ("reachable_pairs", "largest_component"),
    }

    def validate(self, need_input: bool = True) -> None:
        for name, allowed in self.CHOICES.items():
            if getattr(self, name) not in allowed:
                raise InputError(f"{name} must be one of {', '.join(allowed)}; got {getattr(self, name)!r}")
        if not 0 < self.threshold_percent <= 100:
            raise InputError("threshold_percent must be in (0, 100]")
        for fmt in self.formats:
            if fmt not in EXPORT_FORMATS:
                raise InputError(f"unknown output format {fmt!r}")
        if need_input and not self.input:
            raise InputError("no input file given (use --input)")
        for path in [*self.input, self.aliases, self.stoplist]:
            if path and not Path(path).is_file():
                raise InputError(f"input file not found: {path}")

    def echo(self) -> dict:
        return asdict(self)

    def report_echo(self) -> dict:
        return {k: v for k, v in asdict(self).items() if k not in NOT_IN_REPORT}


def _coerce(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(PipelineConfig)}
    if name not in kinds:
        raise InputError(f"unknown config key {name!r}")
    kind = kinds[name]
    text = raw.strip()
    try:
        if kind == "bool":
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if kind == "int":
            return int(text)
        if kind == "float":
            return float(text)
        if kind.startswith("list"):
            return [p.strip() for p in text.split(",") if p.strip()]
    except ValueError:
        raise InputError(f"config key {name}: cannot parse {raw!r} as {kind}") from None
    return text


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment line."""
    values = {}
    p = Path(path)
    if not p.is_file():
        raise InputError(f"config file not found: {path}")
    for lineno, line in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InputError(f"{path}:{lineno}: expected 'key = value'")
        key, value = stripped.split("=", 1)
        values[key.strip()] = _coerce(key.strip(), value)
    return values


def format_config(config: PipelineConfig) -> str:
    lines = []
    for key, value in asdict(config).items():
        if isinstance(value, list):
            value = ",".join(value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- stages


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _write(path: Path, writer) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as sink:
        writer(sink)


def load_corpus(paths: list[str], fmt: str = "auto", aliases: dict | None = None) -> Corpus:
    corpora = []
    for raw in paths:
        path = Path(raw)
        kind = fmt
        if kind == "auto":
            kind = {".json": "corpus", ".bib": "bibtex"}.get(path.suffix.lower(), "scopus")
        if kind == "corpus":
            corpora.append(Corpus.from_json(_read(path)))
        elif kind == "bibtex":
            corpora.append(parse_bibtex(path.read_bytes(), source_name=raw))
        else:
            corpora.append(parse_scopus_csv(path.read_bytes(), ParseOptions(aliases or {}, raw)))
    if len(corpora) == 1:
        return corpora[0]
    records = [r for c in corpora for r in c.records]
    ids = uniquify(r.record_id for r in records)
    records = [r if r.record_id == i else replace(r, record_id=i) for r, i in zip(records, ids)]
    prov = Provenance(
        [s for c in corpora for s in c.provenance.sources],
        corpora[0].provenance.parsed_at,
        sum(c.provenance.read for c in corpora),
        len(records),
        [rej for c in corpora for rej in c.provenance.rejected],
    )
    return Corpus(records, prov)


class Stage:
    def __init__(self, name: str, config: PipelineConfig):
        self.name = name
        self.config = config
        self.out = Path(config.out)
        self.counts: dict = {}
        self.started = time.perf_counter()

    def finish(self, artifacts: list[Path]) -> None:
        logs = self.out / "logs"
        logs.mkdir(parents=True, exist_ok=True)
        entry = {
            "stage": self.name,
            "counts": self.counts,
            "artifacts": [str(p) for p in artifacts],
            "seconds": round(time.perf_counter() - self.started, 6),
            "config": self.config.echo(),
        }
        (logs / f"{self.name}.json").write_text(json.dumps(entry, indent=2) + "\n", encoding="utf-8")
        (logs / f"{self.name}.conf").write_text(format_config(self.config), encoding="utf-8")
        log.info("%s: %s", self.name, self.counts)


def _default_input(config: PipelineConfig, *candidates: str) -> list[str]:
    if config.input:
        return config.input
    for name in candidates:
        path = Path(config.out) / name
        if path.is_file():
            return [str(path)]
    raise InputError(f"no input given and none of {', '.join(candidates)} found in {config.out}")


def cmd_ingest(config: PipelineConfig) -> Path:
    config.validate()
    st = Stage("ingest", config)
    aliases = load_alias_table(_read(Path(config.aliases))) if config.aliases else {}
    corpus = load_corpus(config.input, config.format, aliases)
    target = st.out / "corpus.json"
    _write(target, lambda s: s.write(corpus.to_json()))
    st.counts = {"read": corpus.provenance.read, "kept": len(corpus), "rejected": corpus.provenance.n_rejected}
    st.finish([target])
    return target


def cmd_dedupe(config: PipelineConfig) -> Path:
    config.input = _default_input(config, "corpus.json")
    config.validate()
    st = Stage("dedupe", config)
    aliases = load_alias_table(_read(Path(config.aliases))) if config.aliases else {}
    corpus = load_corpus(config.input, config.format, aliases)
    kept, report = dedupe(corpus, config.threshold_percent)
    target = st.out / "corpus.dedup.json"
    rep_path = st.out / "dedup_report.json"
    _write(target, lambda s: s.write(kept.to_json()))
    _write(rep_path, lambda s: s.write(json.dumps(report.to_dict(), indent=2) + "\n"))
    st.counts = {"records_in": len(corpus), "records_out": len(kept), "merged": len(report.merged_pairs)}
    st.finish([target, rep_path])
    return target


def cmd_build(config: PipelineConfig) -> Path:
    config.input = _default_input(config, "corpus.dedup.json", "corpus.json")
    config.validate()
    st = Stage("build", config)
    aliases = load_alias_table(_read(Path(config.aliases))) if config.aliases else {}
    corpus = load_corpus(config.input, config.format, aliases)
    if config.network == "ca":
        net = build_coauthorship(corpus, config.level, config.counting)
    elif config.network == "bc":
        net = build_bibliographic_coupling(corpus, config.min_shared)
    else:
        stop = load_stoplist(_read(Path(config.stoplist))) if config.stoplist else set()
        net = build_coword(corpus, stop, config.keyword_source)
    if config.min_weight != 1.0 or config.drop_isolated:
        net = threshold_filter(net, config.min_weight, config.drop_isolated)
    target = st.out / "network.csv"
    _write(target, lambda s: export_edgelist_csv(net, s))
    st.counts = {"documents": len(corpus), "nodes": net.n, "edges": net.m}
    st.finish([target])
    return target


def cmd_analyze(config: PipelineConfig) -> list[Path]:
    config.input = _default_input(config, "network.csv")
    config.validate()
    st = Stage("analyze", config)
    net = import_edgelist_csv(_read(Path(config.input[0])))
    params = AnalysisParams(
        resolution=config.resolution, seed=config.seed, restarts=config.restarts, max_passes=config.max_passes,
        weighted=config.weighted, normalized=config.normalized, apl_policy=config.apl_policy, top_k=config.top_k,
    )
    result = run_analysis(net, params, config.report_echo())
    written = []
    if "json" in config.formats:
        written.append(st.out / "report.json")
        _write(written[-1], lambda s: render_report_json(result.report, s))
    if "md" in config.formats:
        written.append(st.out / "report.md")
        _write(written[-1], lambda s: render_report_markdown(result.report, s))
    written += [st.out / "partition.csv", st.out / "centrality.csv"]
    _write(written[-2], lambda s: write_partition_csv(result.partition, s))
    _write(written[-1], lambda s: write_centrality_csv(result.centrality, s))
    rep = result.report
    st.counts = {
        "nodes": rep.n_nodes, "edges": rep.n_edges, "density": rep.macro.density,
        "average_path_length": rep.macro.average_path_length, "modularity": rep.meso.modularity,
        "clusters": rep.meso.cluster_count,
    }
    st.finish(written)
    return written


def cmd_layout(config: PipelineConfig) -> Path:
    config.input = _default_input(config, "network.csv")
    config.validate()
    st = Stage("layout", config)
    net = import_edgelist_csv(_read(Path(config.input[0])))
    coords = fruchterman_reingold(net, config.width, config.height, config.iterations, config.seed)
    target = st.out / "layout.csv"
    _write(target, lambda s: write_layout_csv(coords, s))
    st.counts = {"nodes": net.n, "iterations": coords.iterations_run}
    st.finish([target])
    return target


def cmd_export(config: PipelineConfig) -> list[Path]:
    config.input = _default_input(config, "network.csv")
    config.validate()
    st = Stage("export", config)
    net = import_edgelist_csv(_read(Path(config.input[0])))
    out = st.out
    partition = centrality = coords = None
    if (out / "partition.csv").is_file():
        with open(out / "partition.csv", encoding="utf-8") as f:
            assignment = read_partition_csv(f)
        partition = Partition(assignment, modularity(net, assignment, config.resolution), config.resolution,
                              config.seed) if net.m else Partition(assignment, 0.0)
    if (out / "centrality.csv").is_file():
        with open(out / "centrality.csv", encoding="utf-8") as f:
            centrality = read_centrality_csv(f)
    if (out / "layout.csv").is_file():
        with open(out / "layout.csv", encoding="utf-8") as f:
            coords = read_layout_csv(f)
    written = []
    if "gexf" in config.formats:
        written.append(out / "network.gexf")
        _write(written[-1], lambda s: export_gexf(net, partition, coords, s, centrality))
    if "graphml" in config.formats:
        written.append(out / "network.graphml")
        _write(written[-1], lambda s: export_graphml(net, partition, coords, s, centrality))
    if "csv" in config.formats:
        written.append(out / "network.export.csv")
        _write(written[-1], lambda s: export_edgelist_csv(net, s))
    st.counts = {"files": len(written), "partition": partition is not None, "layout": coords is not None}
    st.finish(written)
    return written


def cmd_pipeline(config: PipelineConfig) -> None:
    config.validate()
    raw_inputs = list(config.input)
    out = Path(config.out)
    for step, source in (
        (cmd_ingest, raw_inputs),
        (cmd_dedupe, [str(out / "corpus.json")]),
        (cmd_build, [str(out / "corpus.dedup.json")]),
        (cmd_analyze, [str(out / "network.csv")]),
        (cmd_layout, [str(out / "network.csv")]),
        (cmd_export, [str(out / "network.csv")]),
    ):
        config.input = source
        step(config)
    config.input = raw_inputs


HANDLERS = {
    "ingest": cmd_ingest, "dedupe": cmd_dedupe, "build": cmd_build, "analyze": cmd_analyze,
    "layout": cmd_layout, "export": cmd_export, "pipeline": cmd_pipeline,
}


# ---------------------------------------------------------------- argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _bool_flag(group, name: str, help_text: str) -> None:
    dest = name.replace("-", "_")
    group.add_argument(f"--{name}", dest=dest, action="store_const", const=True, default=argparse.SUPPRESS,
                       help=help_text)
    group.add_argument(f"--no-{name}", dest=dest, action="store_const", const=False, default=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scimap", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    S = argparse.SUPPRESS
    for name in COMMANDS:
        p = sub.add_parser(name, help=HANDLERS[name].__name__.replace("cmd_", "") + " stage")
        p.add_argument("--config", help="key = value configuration file (flags override it)")
        p.add_argument("--input", nargs="+", default=S, help="stage input file(s)")
        p.add_argument("--out", default=S, help="output directory")
        p.add_argument("--seed", type=int, default=S, help="random seed (default $SCIMAP_SEED or 42)")
        if name in ("ingest", "dedupe", "build", "pipeline"):
            p.add_argument("--format", default=S, choices=PipelineConfig.CHOICES["format"])
            p.add_argument("--aliases", default=S, help="institution alias CSV (raw,canonical)")
        if name in ("dedupe", "pipeline"):
            p.add_argument("--threshold", dest="threshold_percent", type=float, default=S,
                           help="title similarity percent (default 95)")
        if name in ("build", "pipeline"):
            p.add_argument("--network", default=S, choices=PipelineConfig.CHOICES["network"])
            p.add_argument("--level", default=S, choices=PipelineConfig.CHOICES["level"])
            p.add_argument("--counting", default=S, choices=PipelineConfig.CHOICES["counting"])
            p.add_argument("--min-shared", dest="min_shared", type=int, default=S)
            p.add_argument("--stoplist", default=S)
            p.add_argument("--keyword-source", dest="keyword_source", default=S,
                           choices=PipelineConfig.CHOICES["keyword_source"])
            p.add_argument("--min-weight", dest="min_weight", type=float, default=S)
            _bool_flag(p, "drop-isolated", "remove nodes left without edges by --min-weight")
        if name in ("analyze", "pipeline", "export"):
            p.add_argument("--resolution", type=float, default=S)
        if name in ("analyze", "pipeline"):
            p.add_argument("--restarts", type=int, default=S)
            p.add_argument("--max-passes", dest="max_passes", type=int, default=S)
            _bool_flag(p, "weighted", "weighted betweenness (edge length 1/weight)")
            _bool_flag(p, "normalized", "normalise betweenness by (n-1)(n-2)/2")
            p.add_argument("--apl-policy", dest="apl_policy", default=S,
                           choices=PipelineConfig.CHOICES["apl_policy"])
            p.add_argument("--top-k", dest="top_k", type=int, default=S)
        if name in ("layout", "pipeline"):
            p.add_argument("--width", type=float, default=S)
            p.add_argument("--height", type=float, default=S)
            p.add_argument("--iterations", type=int, default=S)
        if name in ("analyze", "export", "pipeline"):
            p.add_argument("--formats", type=lambda s: [x.strip() for x in s.split(",") if x.strip()],
                           default=S, help=f"comma list from {','.join(EXPORT_FORMATS)}")
    return parser


def resolve_config(args: argparse.Namespace) -> PipelineConfig:
    values = {"seed": default_seed()}
    if args.config:
        values.update(read_config_file(args.config))
    names = {f.name for f in fields(PipelineConfig)}
    values.update({k: v for k, v in vars(args).items() if k in names})
    return PipelineConfig(**values)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    lock = None
    try:
        config = resolve_config(args)
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        lock = out / ".scimap.lock"
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            lock = None
            raise InputError(f"output directory {out} is locked by another run ({out / '.scimap.lock'})") from None
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        HANDLERS[args.command](config)
    except (InputError, CorpusError, ValueError, FileNotFoundError) as exc:
        print(f"scimap {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort classification for exit status
        log.exception("internal error")
        print(f"scimap {args.command}: internal error: {exc}", file=sys.stderr)
        return 2
    finally:
        if lock is not None:
            lock.unlink(missing_ok=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
