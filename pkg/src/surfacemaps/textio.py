"""Line-oriented text formats for graphs, maps, drawings and gluing data.

All serializers sort identifiers so output is deterministic and fit for
golden-file comparison.

graph format::

    graph <name> <num_vertices> <num_edges>
    v <id> [label] [color] [x y]
    e <id1> <id2>

map format: a graph block followed by rotation and dart lines; parallel map
edges (which planarized drawings may contain) repeat their ``e`` line::

    rot <vertex> <dart> <dart> ...      # clockwise
    dart <id> <vertex> <partner>

drawing format: a map block followed by::

    cross <vertex>
    route <id1> <id2> <path vertex> ...  # path includes both endpoints

correspondence format (one merge per line)::

    merge <vertexA> <cornerA> <vertexB> <cornerB> <keep|reverse>
"""

from __future__ import annotations

from pathlib import Path

from .drawings import PlanarizedDrawing
from .graphs import COLORS, Graph, build_graph
from .maps import CombMap, MergeInstruction, SpliceCorrespondence

class FormatError(ValueError):
    """Malformed input text."""


# ---------------------------------------------------------------------------
# graphs


def _vertex_line(v, labels, colors, positions) -> str:
    parts = [f"v {v}"]
    if v in labels:
        parts.append(labels[v])
    if v in colors:
        parts.append(colors[v])
    if v in positions:
        x, y = positions[v]
        parts.append(f"{x} {y}")
    return " ".join(parts)


def write_graph(g: Graph, name: str = "g") -> str:
    lines = [f"graph {name} {g.num_vertices} {g.num_edges}"]
    for v in g.vertices:
        lines.append(_vertex_line(v, g.labels, g.colors, g.positions))
    for u, v in g.edges:
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def _parse_vertex_line(tokens: list[str]):
    if not tokens:
        raise FormatError("vertex line without an id")
    try:
        vid = int(tokens[0])
    except ValueError as exc:
        raise FormatError(f"bad vertex id {tokens[0]!r}") from exc
    rest = tokens[1:]
    position = None
    if len(rest) >= 2:
        try:
            position = (int(rest[-2]), int(rest[-1]))
            rest = rest[:-2]
        except ValueError:
            position = None
    color = None
    if rest and rest[-1] in COLORS:
        color = rest[-1]
        rest = rest[:-1]
    label = None
    if len(rest) == 1:
        label = rest[0]
    elif rest:
        raise FormatError(f"unparsed vertex tokens {rest!r}")
    return vid, label, color, position


def _graph_block(lines: list[str], start: int):
    """Parse a graph block without simplicity checks.

    Returns (vertices, edge list possibly with repeats, labels, colors,
    positions, index of the first line after the block).
    """
    header = lines[start].split()
    if len(header) != 4 or header[0] != "graph":
        raise FormatError(f"expected graph header, got {lines[start]!r}")
    try:
        nv, ne = int(header[2]), int(header[3])
    except ValueError as exc:
        raise FormatError("graph header counts must be integers") from exc
    vertices: list[int] = []
    edges: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    colors: dict[int, str] = {}
    positions: dict[int, tuple[int, int]] = {}
    i = start + 1
    while i < len(lines) and len(vertices) + len(edges) < nv + ne:
        tokens = lines[i].split()
        if tokens[0] == "v":
            vid, label, color, pos = _parse_vertex_line(tokens[1:])
            vertices.append(vid)
            if label is not None:
                labels[vid] = label
            if color is not None:
                colors[vid] = color
            if pos is not None:
                positions[vid] = pos
        elif tokens[0] == "e":
            if len(tokens) != 3:
                raise FormatError(f"bad edge line {lines[i]!r}")
            edges.append((int(tokens[1]), int(tokens[2])))
        else:
            raise FormatError(f"unexpected line in graph block: {lines[i]!r}")
        i += 1
    if len(vertices) != nv or len(edges) != ne:
        raise FormatError(
            f"graph block declares {nv} vertices / {ne} edges, found {len(vertices)} / {len(edges)}"
        )
    return vertices, edges, labels, colors, positions, i


def read_graph(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty graph text")
    vertices, edges, labels, colors, positions, i = _graph_block(lines, 0)
    if i != len(lines):
        raise FormatError("trailing lines after graph block")
    try:
        return build_graph(vertices, edges, labels=labels, colors=colors, positions=positions)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# maps


def write_map(m: CombMap, name: str = "m") -> str:
    lines = [f"graph {name} {m.num_vertices} {m.num_edges}"]
    for v in m.vertices:
        lines.append(_vertex_line(v, m.labels, m.colors, m.positions))
    for u, v in m.edge_pairs():
        lines.append(f"e {u} {v}")
    for v in sorted(m.rotations):
        lines.append("rot " + " ".join(str(d) for d in (v, *m.rotations[v])))
    for d in sorted(m.dart_vertex):
        lines.append(f"dart {d} {m.dart_vertex[d]} {m.dart_partner[d]}")
    return "\n".join(lines) + "\n"


def _map_from_lines(lines: list[str], start: int) -> tuple[CombMap, int]:
    vertices, edges, labels, colors, positions, i = _graph_block(lines, start)
    rotations: dict[int, tuple[int, ...]] = {}
    dart_vertex: dict[int, int] = {}
    dart_partner: dict[int, int] = {}
    while i < len(lines):
        tokens = lines[i].split()
        if tokens[0] == "rot":
            rotations[int(tokens[1])] = tuple(int(t) for t in tokens[2:])
        elif tokens[0] == "dart":
            if len(tokens) != 4:
                raise FormatError(f"bad dart line {lines[i]!r}")
            dart_vertex[int(tokens[1])] = int(tokens[2])
            dart_partner[int(tokens[1])] = int(tokens[3])
        else:
            break
        i += 1
    if len(dart_vertex) != 2 * len(edges):
        raise FormatError(f"expected {2 * len(edges)} darts, found {len(dart_vertex)}")
    if sorted(rotations) != sorted(vertices):
        raise FormatError("rot lines do not cover exactly the declared vertices")
    m = CombMap(
        rotations, dart_vertex, dart_partner,
        labels=labels, colors=colors, positions=positions,
    )
    if sorted(m.edge_pairs()) != sorted(tuple(sorted(e)) for e in edges):
        raise FormatError("edge lines disagree with the dart structure")
    return m, i


def read_map(text: str) -> CombMap:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty map text")
    m, i = _map_from_lines(lines, 0)
    if i != len(lines):
        raise FormatError("trailing lines after map block")
    return m


# ---------------------------------------------------------------------------
# drawings


def write_drawing(d: PlanarizedDrawing, name: str = "d") -> str:
    out = [write_map(d.map, name).rstrip("\n")]
    for x in sorted(d.crossing_vertices):
        out.append(f"cross {x}")
    for (u, v), path in sorted(d.routes.items()):
        out.append("route " + " ".join(str(t) for t in (u, v, *path)))
    return "\n".join(out) + "\n"


def read_drawing(text: str) -> PlanarizedDrawing:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty drawing text")
    m, i = _map_from_lines(lines, 0)
    crossings: set[int] = set()
    routes: dict[tuple[int, int], tuple[int, ...]] = {}
    while i < len(lines):
        tokens = lines[i].split()
        if tokens[0] == "cross":
            crossings.add(int(tokens[1]))
        elif tokens[0] == "route":
            if len(tokens) < 5:
                raise FormatError(f"bad route line {lines[i]!r}")
            u, v = int(tokens[1]), int(tokens[2])
            routes[(u, v)] = tuple(int(t) for t in tokens[3:])
        else:
            raise FormatError(f"unexpected line in drawing block: {lines[i]!r}")
        i += 1
    original_vertices = sorted(set(m.rotations) - crossings)
    original = build_graph(
        original_vertices,
        sorted(routes),
        labels={v: l for v, l in m.labels.items() if v not in crossings},
        colors={v: c for v, c in m.colors.items() if v not in crossings},
        positions={v: p for v, p in m.positions.items() if v not in crossings},
    )
    return PlanarizedDrawing(m, frozenset(crossings), routes, original)


# ---------------------------------------------------------------------------
# correspondences


def write_correspondence(corr: SpliceCorrespondence) -> str:
    lines = []
    for ins in corr.instructions:
        flag = "reverse" if ins.reverse else "keep"
        lines.append(
            f"merge {ins.vertex_a} {ins.corner_a} {ins.vertex_b} {ins.corner_b} {flag}"
        )
    return "\n".join(lines) + "\n"


def read_correspondence(text: str) -> SpliceCorrespondence:
    instructions = []
    for ln in text.splitlines():
        if not ln.strip():
            continue
        tokens = ln.split()
        if tokens[0] != "merge" or len(tokens) != 6 or tokens[5] not in ("keep", "reverse"):
            raise FormatError(f"bad merge line {ln!r}")
        instructions.append(
            MergeInstruction(
                int(tokens[1]), int(tokens[2]), int(tokens[3]), int(tokens[4]),
                reverse=tokens[5] == "reverse",
            )
        )
    return SpliceCorrespondence(tuple(instructions))


# ---------------------------------------------------------------------------
# file helpers


def load_graph(path: str | Path) -> Graph:
    return read_graph(Path(path).read_text())


def load_map(path: str | Path) -> CombMap:
    return read_map(Path(path).read_text())


def load_drawing(path: str | Path) -> PlanarizedDrawing:
    return read_drawing(Path(path).read_text())


def load_correspondence(path: str | Path) -> SpliceCorrespondence:
    return read_correspondence(Path(path).read_text())
