"""Dart-based combinatorial maps on orientable surfaces.

A map is a rotation system: for every vertex, a cyclic sequence of the darts
(edge ends) incident to it, stored in clockwise order, plus the fixed-point
free involution pairing the two darts of each edge.  Faces are the orbits of
the successor rule "arrive at v along e, leave along the edge immediately
following e in the rotation of v"; with clockwise rotations this keeps the
traced face on the left.

The map layer is deliberately self-contained at the dart level: parallel
edges are allowed (planarizing a drawing in which two edges cross twice in a
row produces them), loops are not.  The simple :class:`~surfacemaps.graphs.Graph`
type is only attached where it exists; ``support_graph`` collapses parallel
edges, ``simple_graph`` insists there are none.  Everything is immutable;
surgery (gluing, cutting) builds new maps, and derived quantities are always
recomputed by tracing, never maintained incrementally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graphs import Graph, build_graph, edge_key


class MapConsistencyError(RuntimeError):
    """A structurally impossible state, e.g. odd Euler characteristic."""


@dataclass(frozen=True)
class CombMap:
    rotations: Mapping[int, tuple[int, ...]]  # vertex -> darts, clockwise
    dart_vertex: Mapping[int, int]
    dart_partner: Mapping[int, int]
    labels: Mapping[int, str] = field(default_factory=dict)
    colors: Mapping[int, str] = field(default_factory=dict)
    positions: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "rotations", {v: tuple(rot) for v, rot in self.rotations.items()}
        )

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.rotations))

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @property
    def num_edges(self) -> int:
        return len(self.dart_vertex) // 2

    @property
    def num_darts(self) -> int:
        return len(self.dart_vertex)

    def darts(self) -> tuple[int, ...]:
        return tuple(sorted(self.dart_vertex))

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def dart_head(self, d: int) -> int:
        """Vertex at the far end of dart d's edge."""
        return self.dart_vertex[self.dart_partner[d]]

    def dart_endpoints(self, d: int) -> tuple[int, int]:
        return edge_key(self.dart_vertex[d], self.dart_head(d))

    def rotation_successor(self, d: int) -> int:
        rot = self.rotations[self.dart_vertex[d]]
        return rot[(rot.index(d) + 1) % len(rot)]

    def darts_between(self, u: int, v: int) -> tuple[int, ...]:
        """All darts at u whose edge ends at v (several when edges are parallel)."""
        return tuple(d for d in self.rotations[u] if self.dart_head(d) == v)

    def dart_between(self, u: int, v: int) -> int:
        ds = self.darts_between(u, v)
        if not ds:
            raise KeyError(f"no edge between {u} and {v}")
        if len(ds) > 1:
            raise KeyError(f"ambiguous: {len(ds)} parallel edges between {u} and {v}")
        return ds[0]

    def has_connection(self, u: int, v: int) -> bool:
        return bool(self.darts_between(u, v))

    def neighbor_rotation(self, v: int) -> tuple[int, ...]:
        """Rotation of v expressed as the cyclic order of far endpoints."""
        return tuple(self.dart_head(d) for d in self.rotations[v])

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Endpoint pair per edge (repeats listed once per parallel copy)."""
        return sorted(
            self.dart_endpoints(d) for d in self.dart_vertex if d < self.dart_partner[d]
        )

    def has_parallel_edges(self) -> bool:
        pairs = self.edge_pairs()
        return len(set(pairs)) != len(pairs)

    def support_graph(self) -> Graph:
        """Simple graph with parallel edges collapsed."""
        return build_graph(
            self.vertices,
            sorted(set(self.edge_pairs())),
            labels=dict(self.labels),
            colors=dict(self.colors),
            positions=dict(self.positions),
        )

    def simple_graph(self) -> Graph:
        if self.has_parallel_edges():
            raise MapConsistencyError("map has parallel edges; no simple underlying graph")
        return self.support_graph()

    def vertex_components(self) -> tuple[frozenset[int], ...]:
        seen: set[int] = set()
        comps = []
        for start in sorted(self.rotations):
            if start in seen:
                continue
            stack, comp = [start], {start}
            seen.add(start)
            while stack:
                u = stack.pop()
                for d in self.rotations[u]:
                    w = self.dart_head(d)
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.vertex_components()) <= 1


def map_from_rotations(graph: Graph, orders: Mapping[int, Sequence[int]]) -> CombMap:
    """Build a map on a simple graph from per-vertex cyclic neighbor orders.

    ``orders[v]`` must be a permutation of v's neighbors (clockwise); vertices
    left out fall back to sorted neighbor order.
    """
    edge_index = {e: i for i, e in enumerate(graph.edges)}
    dart_vertex: dict[int, int] = {}
    dart_partner: dict[int, int] = {}
    for e, i in edge_index.items():
        u, v = e
        dart_vertex[2 * i] = u
        dart_vertex[2 * i + 1] = v
        dart_partner[2 * i] = 2 * i + 1
        dart_partner[2 * i + 1] = 2 * i
    rotations: dict[int, tuple[int, ...]] = {}
    for v in graph.vertices:
        order = orders.get(v, graph.neighbors(v))
        if sorted(order) != sorted(graph.neighbors(v)):
            raise ValueError(f"rotation at {v} is not a permutation of its neighbors")
        rot = []
        for w in order:
            i = edge_index[edge_key(v, w)]
            rot.append(2 * i if v < w else 2 * i + 1)
        rotations[v] = tuple(rot)
    return CombMap(
        rotations,
        dart_vertex,
        dart_partner,
        labels=dict(graph.labels),
        colors=dict(graph.colors),
        positions=dict(graph.positions),
    )


def map_from_darts(
    rotations: Mapping[int, Sequence[int]],
    dart_partner: Mapping[int, int],
    labels: Mapping[int, str] | None = None,
    colors: Mapping[int, str] | None = None,
    positions: Mapping[int, tuple[int, int]] | None = None,
) -> CombMap:
    """Build a map directly from rotations and the partner involution."""
    dart_vertex = {d: v for v, rot in rotations.items() for d in rot}
    return CombMap(
        {v: tuple(rot) for v, rot in rotations.items()},
        dart_vertex,
        dict(dart_partner),
        labels=dict(labels or {}),
        colors=dict(colors or {}),
        positions=dict(positions or {}),
    )


@dataclass(frozen=True)
class FaceSet:
    """Facial walks as dart sequences; they partition the dart set."""

    faces: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.faces)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(f) for f in self.faces))

    def walk_vertices(self, m: CombMap, face: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(m.dart_vertex[d] for d in face)


def _successor_table(m: CombMap) -> dict[int, int]:
    nxt: dict[int, int] = {}
    for rot in m.rotations.values():
        k = len(rot)
        for i, d in enumerate(rot):
            nxt[d] = rot[(i + 1) % k]
    return nxt


def trace_faces(m: CombMap) -> FaceSet:
    """Orbit decomposition of the face-successor permutation."""
    nxt = _successor_table(m)
    partner = m.dart_partner
    seen: set[int] = set()
    faces: list[tuple[int, ...]] = []
    for d0 in sorted(m.dart_vertex):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = nxt[partner[d]]
        if d != d0:
            raise MapConsistencyError("face successor is not a permutation")
        faces.append(tuple(walk))
    return FaceSet(tuple(faces))


def euler_characteristic(m: CombMap) -> int:
    """v - e + f; for disconnected maps this is the raw (additive) value."""
    return m.num_vertices - m.num_edges + len(trace_faces(m))


def component_maps(m: CombMap) -> tuple[CombMap, ...]:
    comps = m.vertex_components()
    if len(comps) <= 1:
        return (m,)
    out = []
    for comp in sorted(comps, key=min):
        rotations = {v: m.rotations[v] for v in comp}
        darts = {d for v in comp for d in m.rotations[v]}
        out.append(
            CombMap(
                rotations,
                {d: m.dart_vertex[d] for d in darts},
                {d: m.dart_partner[d] for d in darts},
                labels={v: l for v, l in m.labels.items() if v in comp},
                colors={v: c for v, c in m.colors.items() if v in comp},
                positions={v: p for v, p in m.positions.items() if v in comp},
            )
        )
    return tuple(out)


def genus(m: CombMap) -> int:
    """Genus of the embedding surface; summed over components if disconnected."""
    pieces = component_maps(m)
    if len(pieces) > 1:
        return sum(genus(p) for p in pieces)
    chi = euler_characteristic(m)
    if chi % 2 != 0:
        raise MapConsistencyError(f"odd Euler characteristic {chi} on a connected map")
    g = (2 - chi) // 2
    if g < 0:
        raise MapConsistencyError(f"negative genus from chi={chi}")
    return g


def validate_map(m: CombMap) -> list[str]:
    """All invariant violations, as human-readable diagnostics (empty = valid)."""
    problems: list[str] = []
    darts = set(m.dart_vertex)
    if set(m.dart_partner) != darts:
        problems.append("partner table and vertex table disagree on the dart set")
        return problems
    for d in sorted(darts):
        p = m.dart_partner.get(d)
        if p == d:
            problems.append(f"dart {d} is its own partner")
        elif p not in darts or m.dart_partner.get(p) != d:
            problems.append(f"partner relation is not an involution at dart {d}")
    placed: dict[int, int] = {}
    for v, rot in m.rotations.items():
        for d in rot:
            if d not in darts:
                problems.append(f"rotation of {v} contains foreign dart {d}")
            elif d in placed:
                problems.append(f"dart {d} appears in rotations of both {placed[d]} and {v}")
            else:
                placed[d] = v
                if m.dart_vertex[d] != v:
                    problems.append(f"dart {d} sits at {m.dart_vertex[d]} but is rotated at {v}")
    for d in sorted(darts):
        if d not in placed:
            problems.append(f"dart {d} missing from all rotations")
    if not problems:
        for d in sorted(darts):
            if m.dart_vertex[d] == m.dart_vertex[m.dart_partner[d]]:
                problems.append(f"loop edge at vertex {m.dart_vertex[d]} (darts {d},{m.dart_partner[d]})")
    return problems


def mirrored(m: CombMap) -> CombMap:
    """Mirror image: every rotation reversed (orientation flip of the surface)."""
    return CombMap(
        {v: tuple(reversed(rot)) for v, rot in m.rotations.items()},
        dict(m.dart_vertex),
        dict(m.dart_partner),
        labels=dict(m.labels),
        colors=dict(m.colors),
        positions=dict(m.positions),
    )


def relabel_darts(m: CombMap, perm: Mapping[int, int]) -> CombMap:
    if sorted(perm) != sorted(perm.values()) or set(perm) != set(m.dart_vertex):
        raise ValueError("not a permutation of the dart set")
    return CombMap(
        {v: tuple(perm[d] for d in rot) for v, rot in m.rotations.items()},
        {perm[d]: v for d, v in m.dart_vertex.items()},
        {perm[d]: perm[p] for d, p in m.dart_partner.items()},
        labels=dict(m.labels),
        colors=dict(m.colors),
        positions=dict(m.positions),
    )


def relabel_vertices(m: CombMap, mapping: Mapping[int, int]) -> CombMap:
    """Rename vertices (darts keep their ids); mapping must be injective."""
    full = {v: mapping.get(v, v) for v in m.rotations}
    if len(set(full.values())) != len(full):
        raise ValueError("vertex relabeling is not injective")
    return CombMap(
        {full[v]: rot for v, rot in m.rotations.items()},
        {d: full[v] for d, v in m.dart_vertex.items()},
        dict(m.dart_partner),
        labels={full[v]: l for v, l in m.labels.items()},
        colors={full[v]: c for v, c in m.colors.items()},
        positions={full[v]: p for v, p in m.positions.items()},
    )


# ---------------------------------------------------------------------------
# Gluing


@dataclass(frozen=True)
class MergeInstruction:
    """Merge vertex_b of map B into vertex_a of map A.

    The merged rotation is A's rotation opened at the corner after position
    ``corner_a`` with B's rotation, started at the corner after position
    ``corner_b`` and reversed when ``reverse`` is set, inserted into the gap.
    Reversal is the orientation-reversing identification used when gluing
    two surfaces along a circle, hence the default.
    """

    vertex_a: int
    corner_a: int
    vertex_b: int
    corner_b: int
    reverse: bool = True


@dataclass(frozen=True)
class SpliceCorrespondence:
    instructions: tuple[MergeInstruction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "instructions", tuple(self.instructions))
        a_side = [ins.vertex_a for ins in self.instructions]
        b_side = [ins.vertex_b for ins in self.instructions]
        if len(set(a_side)) != len(a_side) or len(set(b_side)) != len(b_side):
            raise ValueError("a vertex may appear in at most one merge instruction")


@dataclass(frozen=True)
class GlueResult:
    map: CombMap
    vertex_map: Mapping[int, int]  # B vertex -> vertex in the glued map
    dart_map: Mapping[int, int]  # B dart -> dart in the glued map


def splice_glue_detailed(
    a: CombMap, b: CombMap, corr: SpliceCorrespondence
) -> GlueResult:
    """Disjoint union of a and b with the correspondence's vertices merged."""
    v_offset = (max(a.rotations) + 1) if a.rotations else 0
    d_offset = (max(a.dart_vertex) + 1) if a.dart_vertex else 0
    dart_map = {d: d + d_offset for d in b.dart_vertex}
    vertex_map = {v: v + v_offset for v in b.rotations}

    rotations: dict[int, tuple[int, ...]] = {v: tuple(rot) for v, rot in a.rotations.items()}
    for v, rot in b.rotations.items():
        rotations[vertex_map[v]] = tuple(dart_map[d] for d in rot)
    dart_vertex = dict(a.dart_vertex)
    dart_vertex.update({dart_map[d]: vertex_map[v] for d, v in b.dart_vertex.items()})
    dart_partner = dict(a.dart_partner)
    dart_partner.update({dart_map[d]: dart_map[p] for d, p in b.dart_partner.items()})

    for ins in corr.instructions:
        if ins.vertex_a not in a.rotations:
            raise ValueError(f"vertex {ins.vertex_a} not in map A")
        if ins.vertex_b not in b.rotations:
            raise ValueError(f"vertex {ins.vertex_b} not in map B")
        rot_a = rotations.pop(ins.vertex_a)
        vb = vertex_map[ins.vertex_b]
        rot_b = rotations.pop(vb)
        ka, kb = len(rot_a), len(rot_b)
        if not (0 <= ins.corner_a < ka):
            raise ValueError(f"corner {ins.corner_a} out of range at vertex {ins.vertex_a}")
        if not (0 <= ins.corner_b < kb):
            raise ValueError(f"corner {ins.corner_b} out of range at vertex {ins.vertex_b}")
        start = ins.corner_b
        if ins.reverse:
            inserted = [rot_b[(start - i) % kb] for i in range(kb)]
        else:
            inserted = [rot_b[(start + 1 + i) % kb] for i in range(kb)]
        merged = list(rot_a[: ins.corner_a + 1]) + inserted + list(rot_a[ins.corner_a + 1 :])
        rotations[ins.vertex_a] = tuple(merged)
        for d in inserted:
            dart_vertex[d] = ins.vertex_a
        vertex_map[ins.vertex_b] = ins.vertex_a

    for d, v in dart_vertex.items():
        if dart_vertex[dart_partner[d]] == v:
            raise ValueError("merge would create a loop")

    labels = dict(a.labels)
    colors = dict(a.colors)
    positions = dict(a.positions)
    merged_targets = {ins.vertex_a for ins in corr.instructions}
    for v in b.rotations:
        nv = vertex_map[v]
        if nv in merged_targets:
            continue  # the A-side decoration wins on merged vertices
        if v in b.labels:
            labels[nv] = b.labels[v]
        if v in b.colors:
            colors[nv] = b.colors[v]
        if v in b.positions:
            positions[nv] = b.positions[v]
    glued = CombMap(
        rotations,
        dart_vertex,
        dart_partner,
        labels={v: l for v, l in labels.items() if v in rotations},
        colors={v: c for v, c in colors.items() if v in rotations},
        positions={v: p for v, p in positions.items() if v in rotations},
    )
    return GlueResult(glued, vertex_map, dart_map)


def splice_glue(a: CombMap, b: CombMap, corr: SpliceCorrespondence) -> CombMap:
    return splice_glue_detailed(a, b, corr).map


# ---------------------------------------------------------------------------
# Cutting and contractibility


@dataclass(frozen=True)
class CutResult:
    """Map cut open along a cycle, each copy of the cycle capped by a face."""

    map: CombMap
    left_vertices: tuple[int, ...]
    right_vertices: tuple[int, ...]


def cut_along_cycle(m: CombMap, cycle: Sequence[int]) -> CutResult:
    """Duplicate the cycle into a left and a right copy.

    Non-cycle darts at a cycle vertex go to the copy matching their side of
    the rotation; both cycle copies automatically trace a capping face.
    """
    cyc = list(cycle)
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k:
        raise ValueError("cycle must visit at least 3 distinct vertices")
    d_next: dict[int, int] = {}
    d_prev: dict[int, int] = {}
    for i, v in enumerate(cyc):
        if v not in m.rotations:
            raise ValueError(f"vertex {v} not in map")
        try:
            d_next[i] = m.dart_between(v, cyc[(i + 1) % k])
            d_prev[i] = m.dart_between(v, cyc[(i - 1) % k])
        except KeyError as exc:
            raise ValueError(f"not a simple cycle of the map: {exc}") from exc
    old_darts = set(d_next.values()) | set(d_prev.values())

    next_v = max(m.rotations) + 1
    next_d = max(m.dart_vertex) + 1
    left_id = {i: next_v + 2 * i for i in range(k)}
    right_id = {i: next_v + 2 * i + 1 for i in range(k)}
    dart_vertex = {d: v for d, v in m.dart_vertex.items() if d not in old_darts}
    dart_partner = {d: p for d, p in m.dart_partner.items() if d not in old_darts}
    cycset = set(cyc)
    rotations = {v: rot for v, rot in m.rotations.items() if v not in cycset}

    # Fresh darts for the two copies of each cycle edge: ln/lp run along the
    # left copy (toward the next / previous cycle vertex), rn/rp the right.
    ln = {i: next_d + 4 * i for i in range(k)}
    lp = {i: next_d + 4 * i + 1 for i in range(k)}
    rn = {i: next_d + 4 * i + 2 for i in range(k)}
    rp = {i: next_d + 4 * i + 3 for i in range(k)}
    for i in range(k):
        j = (i + 1) % k
        dart_partner[ln[i]] = lp[j]
        dart_partner[lp[j]] = ln[i]
        dart_partner[rn[i]] = rp[j]
        dart_partner[rp[j]] = rn[i]

    for i, v in enumerate(cyc):
        rot = m.rotations[v]
        deg = len(rot)
        pn, pp = rot.index(d_next[i]), rot.index(d_prev[i])
        side_a = [rot[(pn + 1 + t) % deg] for t in range((pp - pn - 1) % deg)]
        side_b = [rot[(pp + 1 + t) % deg] for t in range((pn - pp - 1) % deg)]
        rotations[left_id[i]] = tuple([ln[i], *side_a, lp[i]])
        rotations[right_id[i]] = tuple([rp[i], *side_b, rn[i]])
        for d in (ln[i], lp[i], *side_a):
            dart_vertex[d] = left_id[i]
        for d in (rn[i], rp[i], *side_b):
            dart_vertex[d] = right_id[i]

    cut = CombMap(rotations, dart_vertex, dart_partner)
    return CutResult(cut, tuple(left_id[i] for i in range(k)), tuple(right_id[i] for i in range(k)))


def is_contractible(m: CombMap, cycle: Sequence[int]) -> bool:
    """Does the cycle bound a disc on the embedding surface?

    Cut along the cycle; the cycle is contractible exactly when the cut
    separates its surface and one side, capped, is a sphere (chi = 2).
    """
    if not cycle or cycle[0] not in m.rotations:
        raise ValueError("cycle must consist of map vertices")
    piece = m if m.is_connected() else next(
        p for p in component_maps(m) if cycle[0] in p.rotations
    )
    if not all(v in piece.rotations for v in cycle):
        raise ValueError("cycle spans several components")
    cut = cut_along_cycle(piece, cycle)
    sides = component_maps(cut.map)
    left_home = next(i for i, s in enumerate(sides) if cut.left_vertices[0] in s.rotations)
    right_home = next(i for i, s in enumerate(sides) if cut.right_vertices[0] in s.rotations)
    if left_home == right_home:
        return False
    return any(
        euler_characteristic(sides[i]) == 2 for i in (left_home, right_home)
    )


# ---------------------------------------------------------------------------
# Small cyclic-sequence helpers shared by constraints and tests


def canonical_cycle(seq: Iterable) -> tuple:
    items = tuple(seq)
    if not items:
        return items
    best = min(range(len(items)), key=lambda i: items[i:] + items[:i])
    return items[best:] + items[:best]


def cyclic_equal(a: Iterable, b: Iterable) -> bool:
    ta, tb = tuple(a), tuple(b)
    return len(ta) == len(tb) and canonical_cycle(ta) == canonical_cycle(tb)
