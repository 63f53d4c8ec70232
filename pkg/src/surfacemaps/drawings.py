"""Drawings with crossings, encoded as planarized combinatorial maps.

A drawing of a graph G on an orientable surface is stored as the map of its
planarization: every crossing becomes a degree-4 vertex whose rotation
alternates between the two edge strands passing through it, and every
original edge of G carries a route, the path of map vertices realizing it.
Routes are stored as vertex paths; when two edges cross twice in a row the
planarized map has parallel edges and the path alone does not say which copy
belongs to which route, so a dart-level assignment is resolved once per
drawing, preferring the one that makes every crossing alternate.  Only
crossing parities matter here; no over/under or sign data is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .graphs import APEX_COLOR, Graph, build_graph, edge_key
from .maps import CombMap, genus, map_from_darts, validate_map

Edge = tuple[int, int]


@dataclass(frozen=True)
class PlanarizedDrawing:
    map: CombMap
    crossing_vertices: frozenset[int]
    routes: Mapping[Edge, tuple[int, ...]]  # original edge -> map vertex path
    original_graph: Graph

    def __post_init__(self) -> None:
        object.__setattr__(self, "crossing_vertices", frozenset(self.crossing_vertices))
        object.__setattr__(
            self,
            "routes",
            {edge_key(*e): tuple(path) for e, path in self.routes.items()},
        )


# ---------------------------------------------------------------------------
# Route resolution: vertex paths -> traversed darts


def _copies_by_pair(m: CombMap) -> dict[Edge, list[int]]:
    """Per endpoint pair, the canonical dart (at the smaller endpoint) of each copy."""
    pool: dict[Edge, list[int]] = {}
    for d in sorted(m.dart_vertex):
        p = m.dart_partner[d]
        if d < p:
            pool.setdefault(m.dart_endpoints(d), []).append(d)
    return pool


def _traversed(m: CombMap, copy_dart: int, tail: int) -> int:
    """The dart of this edge copy sitting at ``tail``."""
    return copy_dart if m.dart_vertex[copy_dart] == tail else m.dart_partner[copy_dart]


def _alternation_ok(d: "PlanarizedDrawing", owner: Mapping[int, Edge]) -> bool:
    for x in d.crossing_vertices:
        rot = d.map.rotations.get(x, ())
        if len(rot) != 4:
            return False
        owners = [owner.get(t) for t in rot]
        if None in owners:
            return False
        if owners[0] != owners[2] or owners[1] != owners[3] or owners[0] == owners[1]:
            return False
    return True


def resolve_route_darts(d: PlanarizedDrawing) -> dict[Edge, tuple[int, ...]] | None:
    """Traversed darts per route, or None when routes cannot cover the edges.

    Deterministic: parallel copies are matched to route segments in sorted
    order, then reassigned within each parallel group if that is what it
    takes to make every crossing alternate.
    """
    cached = getattr(d, "_route_darts", False)
    if cached is not False:
        return cached
    pool = _copies_by_pair(d.map)
    slots: dict[Edge, list[tuple[Edge, int]]] = {}
    for e in sorted(d.routes):
        path = d.routes[e]
        for i in range(len(path) - 1):
            pair = edge_key(path[i], path[i + 1])
            slots.setdefault(pair, []).append((e, i))
    result: dict[Edge, tuple[int, ...]] | None = None
    if set(slots) == set(pool) and all(
        len(slots[pair]) == len(pool[pair]) for pair in pool
    ):
        ambiguous = sorted(pair for pair in pool if len(pool[pair]) > 1)
        choice_sets = [list(permutations(range(len(pool[pair])))) for pair in ambiguous]
        fallback = None
        for combo in product(*choice_sets):
            assign: dict[tuple[Edge, int], int] = {}
            for pair in pool:
                if pair in ambiguous:
                    perm = combo[ambiguous.index(pair)]
                else:
                    perm = (0,)
                for k, slot in enumerate(slots[pair]):
                    assign[slot] = pool[pair][perm[k]]
            route_darts = {}
            owner: dict[int, Edge] = {}
            for e in sorted(d.routes):
                path = d.routes[e]
                darts = []
                for i in range(len(path) - 1):
                    copy = assign[(e, i)]
                    t = _traversed(d.map, copy, path[i])
                    darts.append(t)
                    owner[t] = e
                    owner[d.map.dart_partner[t]] = e
                route_darts[e] = tuple(darts)
            if fallback is None:
                fallback = route_darts
            if _alternation_ok(d, owner):
                result = route_darts
                break
        if result is None:
            result = fallback
    object.__setattr__(d, "_route_darts", result)
    return result


def dart_owner(d: PlanarizedDrawing) -> dict[int, Edge]:
    """Map dart -> the original edge whose route traverses it."""
    resolved = resolve_route_darts(d)
    if resolved is None:
        raise ValueError("routes do not cover the map's edges")
    owner: dict[int, Edge] = {}
    for e, darts in resolved.items():
        for t in darts:
            owner[t] = e
            owner[d.map.dart_partner[t]] = e
    return owner


@dataclass(frozen=True)
class CrossingParityMatrix:
    """Pairwise crossing counts between original edges (zeros omitted)."""

    edges: tuple[Edge, ...]
    counts: Mapping[tuple[Edge, Edge], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        norm: dict[tuple[Edge, Edge], int] = {}
        for (e, f), c in self.counts.items():
            if e == f:
                raise ValueError("diagonal entries must stay zero")
            key = (e, f) if e < f else (f, e)
            norm[key] = norm.get(key, 0) + c
        object.__setattr__(self, "counts", norm)

    def get(self, e: Edge, f: Edge) -> int:
        e, f = edge_key(*e), edge_key(*f)
        if e == f:
            return 0
        return self.counts.get((e, f) if e < f else (f, e), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero(self) -> dict[tuple[Edge, Edge], int]:
        return {k: c for k, c in self.counts.items() if c}


def embedding_as_drawing(m: CombMap) -> PlanarizedDrawing:
    """Wrap a crossing-free map as a drawing with trivial routes."""
    return PlanarizedDrawing(
        m, frozenset(), {e: e for e in m.simple_graph().edges}, m.simple_graph()
    )


def validate_drawing(d: PlanarizedDrawing) -> list[str]:
    """All drawing-invariant violations (empty = valid)."""
    problems = validate_map(d.map)
    orig = set(d.original_graph.vertices)
    mapped = set(d.map.rotations)
    if not orig <= mapped:
        problems.append("original vertices missing from the planarized map")
    if d.crossing_vertices & orig:
        problems.append("crossing vertices overlap the original vertex set")
    if mapped - orig - d.crossing_vertices:
        problems.append("planarized map has vertices that are neither original nor crossings")
    if set(d.routes) != set(d.original_graph.edges):
        problems.append("routes are not indexed by exactly the original edges")

    passes: dict[int, list[Edge]] = {x: [] for x in d.crossing_vertices}
    for e, path in sorted(d.routes.items()):
        if tuple(sorted((path[0], path[-1]))) != e:
            problems.append(f"route of {e} does not join its endpoints")
        for v in path[1:-1]:
            if v not in d.crossing_vertices:
                problems.append(f"route of {e} passes non-crossing interior vertex {v}")
            elif v in passes:
                passes[v].append(e)
        for a, b in zip(path, path[1:]):
            if not (a in d.map.rotations and d.map.has_connection(a, b)):
                problems.append(f"route of {e} uses missing map edge ({a},{b})")

    resolved = resolve_route_darts(d)
    if resolved is None:
        problems.append("routes do not partition the map's edges")
        return problems
    owner: dict[int, Edge] = {}
    for e, darts in resolved.items():
        for t in darts:
            owner[t] = e
            owner[d.map.dart_partner[t]] = e

    for x in sorted(d.crossing_vertices):
        rot = d.map.rotations.get(x, ())
        if len(rot) != 4:
            problems.append(f"crossing vertex {x} has degree {len(rot)}, expected 4")
            continue
        through = passes.get(x, [])
        if len(through) != 2 or through[0] == through[1]:
            problems.append(f"crossing vertex {x} is not shared by exactly two routes")
            continue
        owners = [owner.get(t) for t in rot]
        if owners[0] != owners[2] or owners[1] != owners[3] or owners[0] == owners[1]:
            problems.append(f"rotation at crossing {x} does not alternate its two routes")
    return problems


def crossing_counts(d: PlanarizedDrawing) -> CrossingParityMatrix:
    counts: dict[tuple[Edge, Edge], int] = {}
    through: dict[int, list[Edge]] = {}
    for e, path in d.routes.items():
        for v in path[1:-1]:
            through.setdefault(v, []).append(e)
    for v, pair in through.items():
        if len(pair) != 2:
            raise ValueError(f"crossing vertex {v} lies on {len(pair)} routes")
        e, f = sorted(pair)
        counts[(e, f)] = counts.get((e, f), 0) + 1
    return CrossingParityMatrix(tuple(d.original_graph.edges), counts)


def _independent(e: Edge, f: Edge) -> bool:
    return not (set(e) & set(f))


def is_independently_even(d: PlanarizedDrawing) -> bool:
    """Every pair of edges with no shared endpoint crosses an even number of times."""
    return all(
        c % 2 == 0 or not _independent(e, f)
        for (e, f), c in crossing_counts(d).nonzero().items()
    )


def is_even(d: PlanarizedDrawing) -> bool:
    """Every pair of edges crosses an even number of times."""
    return all(c % 2 == 0 for c in crossing_counts(d).nonzero().values())


def is_w_even(d: PlanarizedDrawing, w: Iterable[int]) -> bool:
    """Pairs that are independent or meet inside w must cross evenly."""
    wset = set(w)
    return all(
        c % 2 == 0 or (set(e) & set(f) and not (set(e) & set(f) & wset))
        for (e, f), c in crossing_counts(d).nonzero().items()
    )


def is_even_vertex(d: PlanarizedDrawing, v: int) -> bool:
    """All pairs of edges incident to v cross each other evenly."""
    mat = crossing_counts(d)
    incident = [e for e in d.original_graph.edges if v in e]
    return all(
        mat.get(e, f) % 2 == 0
        for i, e in enumerate(incident)
        for f in incident[i + 1 :]
    )


def original_rotation(d: PlanarizedDrawing, v: int) -> tuple[Edge, ...]:
    """Rotation of an original vertex with darts replaced by their routes' edges."""
    if v in d.crossing_vertices:
        raise ValueError(f"{v} is a crossing vertex")
    if v not in set(d.original_graph.vertices):
        raise ValueError(f"{v} is not an original vertex")
    owner = dart_owner(d)
    return tuple(owner[t] for t in d.map.rotations[v])


def rotation_labels(d: PlanarizedDrawing, v: int) -> tuple[str, ...]:
    """Rotation of v as the labels of the far endpoints of its original edges."""
    labels = d.original_graph.labels
    out = []
    for e in original_rotation(d, v):
        other = e[0] if e[1] == v else e[1]
        out.append(labels.get(other, str(other)))
    return tuple(out)


def surface_genus(d: PlanarizedDrawing) -> int:
    """Genus of the surface carrying the drawing (= genus of the planarized map)."""
    return genus(d.map)


@dataclass(frozen=True)
class SplitResult:
    drawing: PlanarizedDrawing
    holes: Mapping[int, tuple[int, ...]]  # removed vertex -> stubs, in its old rotation order
    stub_colors: Mapping[int, str | None]


def split_holes(d: PlanarizedDrawing, w: Sequence[int]) -> SplitResult:
    """Cut a small hole around each vertex of w.

    Each w-vertex is deleted; every dart formerly at it now ends at a fresh
    degree-1 stub vertex.  The deleted vertex's rotation is reported per hole
    as the cyclic order of its stubs, which is exactly the boundary data a
    later gluing needs.  Requires every vertex of w to be original and even
    (no crossing may hide inside the infinitesimal hole).
    """
    worder = list(w)
    wset = set(worder)
    if len(wset) != len(worder):
        raise ValueError("w contains repeats")
    orig = set(d.original_graph.vertices)
    for v in worder:
        if v not in orig:
            raise ValueError(f"{v} is not an original vertex")
        if not is_even_vertex(d, v):
            raise ValueError(f"vertex {v} is not even; a crossing-free hole does not exist")

    m = d.map
    resolved = resolve_route_darts(d)
    if resolved is None:
        raise ValueError("routes do not partition the map's edges")
    next_id = max(m.rotations) + 1
    rotations = {v: rot for v, rot in m.rotations.items() if v not in wset}
    holes: dict[int, tuple[int, ...]] = {}
    stub_of_dart: dict[int, int] = {}
    stub_colors: dict[int, str | None] = {}
    labels = dict(d.original_graph.labels)
    for v in worder:
        stubs = []
        for dd in m.rotations[v]:
            stub = next_id
            next_id += 1
            rotations[stub] = (dd,)
            stub_of_dart[dd] = stub
            stubs.append(stub)
        holes[v] = tuple(stubs)

    new_routes: dict[Edge, tuple[int, ...]] = {}
    for e, path in d.routes.items():
        pl = list(path)
        if any(x in wset for x in pl[1:-1]):
            raise ValueError("w vertices must not appear inside routes")
        kept = next((x for x in (pl[0], pl[-1]) if x not in wset), None)
        kept_label = labels.get(kept) if kept is not None else None
        color = APEX_COLOR.get(kept_label) if kept_label else None
        darts = resolved[e]
        if path[0] in wset:
            stub = stub_of_dart[darts[0]]
            pl[0] = stub
            stub_colors[stub] = color
        if path[-1] in wset:
            stub = stub_of_dart[m.dart_partner[darts[-1]]]
            pl[-1] = stub
            stub_colors[stub] = color
        new_routes[edge_key(pl[0], pl[-1])] = tuple(pl)

    graph_vertices = [v for v in d.original_graph.vertices if v not in wset]
    graph_vertices += sorted(stub_colors)
    new_original = build_graph(
        graph_vertices,
        sorted(edge_key(p[0], p[-1]) for p in new_routes.values()),
        labels={v: l for v, l in labels.items() if v not in wset},
        colors={s: c for s, c in stub_colors.items() if c},
    )
    new_map = map_from_darts(
        rotations,
        dict(m.dart_partner),
        labels={v: l for v, l in m.labels.items() if v not in wset},
        colors={**{v: c for v, c in m.colors.items() if v not in wset},
                **{s: c for s, c in stub_colors.items() if c}},
        positions={v: p for v, p in m.positions.items() if v not in wset},
    )
    out = PlanarizedDrawing(new_map, d.crossing_vertices, new_routes, new_original)
    return SplitResult(out, holes, stub_colors)
