"""Interchange writers: GEXF 1.3, GraphML, edge-list CSV, plus side tables."""
from __future__ import annotations

import csv
import io
from collections import Counter
from xml.sax.saxutils import escape, quoteattr

from ..community.louvain import Partition
from ..layout.fr import LayoutCoords
from ..metrics.scores import CentralityVector
from ..netbuild.network import NODE_KINDS, Network, Node

# first three mirror the usual pink / green / blue ordering of the largest clusters
PALETTE = (
    (231, 84, 128), (60, 179, 113), (65, 105, 225), (255, 165, 0), (148, 103, 189),
    (23, 190, 207), (188, 189, 34), (140, 86, 75), (127, 127, 127), (214, 39, 40),
)
SIZE_MIN, SIZE_MAX = 4.0, 40.0


def _num(x: float) -> str:
    return repr(float(x))


def _covers(net: Network, mapping, what: str) -> None:
    missing = [nd.node_id for nd in net.nodes if nd.node_id not in mapping]
    if missing:
        raise ValueError(f"{what} does not cover node {missing[0]!r}")


def cluster_colors(partition: Partition) -> dict[int, tuple[int, int, int]]:
    sizes = Counter(partition.assignment.values())
    ranked = sorted(sizes, key=lambda c: (-sizes[c], c))
    return {c: PALETTE[r % len(PALETTE)] for r, c in enumerate(ranked)}


def node_sizes(net: Network, centrality: CentralityVector) -> dict[str, float]:
    """Linear map of normalised betweenness onto ``[SIZE_MIN, SIZE_MAX]``."""
    scores = centrality.scores
    if not centrality.normalized and net.n >= 3:
        denom = (net.n - 1) * (net.n - 2) / 2.0
        scores = {k: v / denom for k, v in scores.items()}
    top = max(scores.values(), default=0.0)
    if top <= 0:
        return {k: SIZE_MIN for k in scores}
    return {k: SIZE_MIN + (SIZE_MAX - SIZE_MIN) * v / top for k, v in scores.items()}


def export_gexf(
    net: Network,
    partition: Partition | None,
    coords: LayoutCoords | None,
    sink,
    centrality: CentralityVector | None = None,
) -> None:
    """GEXF 1.3 document; viz elements only when ``coords`` is given."""
    if partition is not None:
        _covers(net, partition.assignment, "partition")
    if coords is not None:
        _covers(net, coords.positions, "coords")
    if centrality is not None:
        _covers(net, centrality.scores, "centrality")
    colors = cluster_colors(partition) if partition is not None else {}
    sizes = node_sizes(net, centrality) if centrality is not None else {}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<gexf xmlns="http://gexf.net/1.3" xmlns:viz="http://gexf.net/1.3/viz"'
        ' xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"'
        ' xsi:schemaLocation="http://gexf.net/1.3 http://gexf.net/1.3/gexf.xsd" version="1.3">',
        "  <meta>",
        "    <creator>scimap</creator>",
        f"    <description>{escape(net.name)}</description>",
        "  </meta>",
        '  <graph mode="static" defaultedgetype="undirected">',
        '    <attributes class="node" mode="static">',
        '      <attribute id="kind" title="kind" type="string"/>',
    ]
    if partition is not None:
        out.append('      <attribute id="cluster" title="cluster" type="integer"/>')
    if centrality is not None:
        out.append('      <attribute id="betweenness" title="betweenness" type="double"/>')
    out += ["    </attributes>", "    <nodes>"]
    for nd in net.nodes:
        nid = nd.node_id
        out.append(f"      <node id={quoteattr(nid)} label={quoteattr(nd.label)}>")
        out.append("        <attvalues>")
        out.append(f'          <attvalue for="kind" value={quoteattr(net.node_kind)}/>')
        if partition is not None:
            out.append(f'          <attvalue for="cluster" value="{partition.assignment[nid]}"/>')
        if centrality is not None:
            out.append(f'          <attvalue for="betweenness" value="{_num(centrality.scores[nid])}"/>')
        out.append("        </attvalues>")
        if coords is not None:
            if partition is not None:
                r, g, b = colors[partition.assignment[nid]]
                out.append(f'        <viz:color r="{r}" g="{g}" b="{b}"/>')
            x, y = coords.positions[nid]
            out.append(f'        <viz:position x="{_num(x)}" y="{_num(y)}" z="0.0"/>')
            if centrality is not None:
                out.append(f'        <viz:size value="{_num(sizes[nid])}"/>')
        out.append("      </node>")
    out += ["    </nodes>", "    <edges>"]
    for e, (u, v, w) in enumerate(net.edges):
        out.append(f'      <edge id="{e}" source={quoteattr(u)} target={quoteattr(v)} weight="{_num(w)}"/>')
    out += ["    </edges>", "  </graph>", "</gexf>"]
    sink.write("\n".join(out) + "\n")


def export_graphml(
    net: Network,
    partition: Partition | None,
    coords: LayoutCoords | None,
    sink,
    centrality: CentralityVector | None = None,
) -> None:
    """GraphML document with ``d_*`` keys; edge weights under ``d_weight``."""
    if partition is not None:
        _covers(net, partition.assignment, "partition")
    if coords is not None:
        _covers(net, coords.positions, "coords")
    if centrality is not None:
        _covers(net, centrality.scores, "centrality")
    keys = [("d_label", "node", "label", "string"), ("d_kind", "node", "kind", "string")]
    if partition is not None:
        keys.append(("d_cluster", "node", "cluster", "int"))
    if centrality is not None:
        keys.append(("d_betweenness", "node", "betweenness", "double"))
    if coords is not None:
        keys += [("d_x", "node", "x", "double"), ("d_y", "node", "y", "double")]
    keys.append(("d_weight", "edge", "weight", "double"))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns"'
        ' xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"'
        ' xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns'
        ' http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
    ]
    out += [f'  <key id="{k}" for="{f}" attr.name="{n}" attr.type="{t}"/>' for k, f, n, t in keys]
    out.append(f'  <graph id={quoteattr(net.name)} edgedefault="undirected">')
    for nd in net.nodes:
        nid = nd.node_id
        out.append(f"    <node id={quoteattr(nid)}>")
        out.append(f'      <data key="d_label">{escape(nd.label)}</data>')
        out.append(f'      <data key="d_kind">{net.node_kind}</data>')
        if partition is not None:
            out.append(f'      <data key="d_cluster">{partition.assignment[nid]}</data>')
        if centrality is not None:
            out.append(f'      <data key="d_betweenness">{_num(centrality.scores[nid])}</data>')
        if coords is not None:
            x, y = coords.positions[nid]
            out.append(f'      <data key="d_x">{_num(x)}</data>')
            out.append(f'      <data key="d_y">{_num(y)}</data>')
        out.append("    </node>")
    for e, (u, v, w) in enumerate(net.edges):
        out.append(f'    <edge id="e{e}" source={quoteattr(u)} target={quoteattr(v)}>')
        out.append(f'      <data key="d_weight">{_num(w)}</data>')
        out.append("    </edge>")
    out += ["  </graph>", "</graphml>"]
    sink.write("\n".join(out) + "\n")


EDGE_HEADER = ["source", "target", "weight"]


def export_edgelist_csv(net: Network, sink) -> None:
    """``source,target,weight`` rows after a ``#network`` / ``#node`` block.

    The node block lists every node with its label, so isolated nodes and
    labels survive a round trip.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["#network", net.name, net.node_kind])
    for nd in net.nodes:
        writer.writerow(["#node", nd.node_id, nd.label])
    writer.writerow(EDGE_HEADER)
    for u, v, w in net.edges:
        writer.writerow([u, v, _num(w)])
    sink.write(buf.getvalue())


def import_edgelist_csv(stream) -> Network:
    text = stream if isinstance(stream, str) else stream.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    reader = csv.reader(io.StringIO(text, newline=""))
    name, kind = "network", "keyword"
    nodes: dict[str, str] = {}
    edges = []
    in_data = False
    for row in reader:
        line = reader.line_num
        if not row or not "".join(row).strip():
            continue
        if not in_data:
            head = row[0]
            if head == "#network":
                if len(row) != 3 or row[2] not in NODE_KINDS:
                    raise ValueError(f"line {line}: malformed #network row")
                name, kind = row[1], row[2]
            elif head == "#node":
                if len(row) != 3:
                    raise ValueError(f"line {line}: malformed #node row")
                nodes[row[1]] = row[2]
            elif head.startswith("#"):
                continue
            elif [c.strip() for c in row] == EDGE_HEADER:
                in_data = True
            else:
                raise ValueError(f"line {line}: expected header 'source,target,weight'")
            continue
        if len(row) != 3:
            raise ValueError(f"line {line}: expected 3 fields, got {len(row)}")
        u, v, raw = row
        try:
            w = float(raw)
        except ValueError:
            raise ValueError(f"line {line}: bad weight {raw!r}") from None
        if not w > 0:
            raise ValueError(f"line {line}: weight must be positive, got {raw}")
        if u == v:
            raise ValueError(f"line {line}: self-loop on {u!r}")
        for x in (u, v):
            nodes.setdefault(x, x)
        edges.append((u, v, w))
    if not in_data:
        raise ValueError("missing header 'source,target,weight'")
    return Network(kind, [Node(i, lab) for i, lab in nodes.items()], edges, name)


def write_partition_csv(partition: Partition, sink) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["node_id", "community"])
    for node_id in sorted(partition.assignment):
        writer.writerow([node_id, partition.assignment[node_id]])


def read_partition_csv(stream) -> dict[str, int]:
    rows = list(csv.reader(stream))
    return {r[0]: int(r[1]) for r in rows[1:] if r}


def write_centrality_csv(centrality: CentralityVector, sink) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["node_id", "betweenness", f"normalized={centrality.normalized}", f"weighted={centrality.weighted}"])
    for node_id in sorted(centrality.scores):
        writer.writerow([node_id, _num(centrality.scores[node_id])])


def read_centrality_csv(stream) -> CentralityVector:
    rows = list(csv.reader(stream))
    head = rows[0]
    flags = dict(h.split("=") for h in head[2:])
    return CentralityVector(
        {r[0]: float(r[1]) for r in rows[1:] if r}, flags.get("normalized") == "True", flags.get("weighted") == "True"
    )


def write_layout_csv(coords: LayoutCoords, sink) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["#layout", f"width={_num(coords.width)}", f"height={_num(coords.height)}",
                     f"iterations={coords.iterations_run}", f"seed={coords.seed}", f"C={_num(coords.C)}"])
    writer.writerow(["node_id", "x", "y"])
    for node_id in sorted(coords.positions):
        x, y = coords.positions[node_id]
        writer.writerow([node_id, _num(x), _num(y)])


def read_layout_csv(stream) -> LayoutCoords:
    rows = list(csv.reader(stream))
    meta = dict(cell.split("=", 1) for cell in rows[0][1:])
    positions = {r[0]: (float(r[1]), float(r[2])) for r in rows[2:] if r}
    return LayoutCoords(
        positions, int(meta["iterations"]), int(meta["seed"]), float(meta["width"]), float(meta["height"]),
        float(meta["C"]),
    )
