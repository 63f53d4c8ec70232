"""Simple undirected labeled graphs and the constructions used throughout.

Vertices are opaque integers.  Labels, color tags and integer grid positions
are optional decorations; identity is always the integer id.  Graphs are
immutable after construction and safe to share between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from string import ascii_uppercase
from typing import Iterable, Mapping

BLACK = "black"
RED = "red"
BLUE = "blue"
GREEN = "green"
YELLOW = "yellow"

COLORS = (BLACK, RED, BLUE, GREEN, YELLOW)

# Star centers labeled "1", "2", "3" attach to grid vertices of these colors.
APEX_COLOR = {"1": BLACK, "2": RED, "3": BLUE}

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Loopless simple graph with optional vertex labels/colors/positions."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    labels: Mapping[int, str] = field(default_factory=dict)
    colors: Mapping[int, str] = field(default_factory=dict)
    positions: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        verts = tuple(sorted(self.vertices))
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex ids")
        vset = set(verts)
        seen: set[Edge] = set()
        norm: list[Edge] = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) has undeclared endpoint")
            e = edge_key(u, v)
            if e in seen:
                raise ValueError(f"multiple edge ({e[0]},{e[1]})")
            seen.add(e)
            norm.append(e)
        for m in (self.labels, self.colors, self.positions):
            for v in m:
                if v not in vset:
                    raise ValueError(f"decoration on undeclared vertex {v}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        adj: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(
            self, "_adj", {v: tuple(sorted(ns)) for v, ns in adj.items()}
        )

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]  # type: ignore[attr-defined]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())  # type: ignore[attr-defined]

    def vertex_by_label(self, label: str) -> int:
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise KeyError(f"no vertex labeled {label!r}")

    def components(self) -> tuple[frozenset[int], ...]:
        seen: set[int] = set()
        comps: list[frozenset[int]] = []
        for start in self.vertices:
            if start in seen:
                continue
            stack, comp = [start], {start}
            seen.add(start)
            while stack:
                u = stack.pop()
                for w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_bipartite(self) -> tuple[bool, dict[int, int]]:
        """2-colorability check; returns (flag, side assignment)."""
        side: dict[int, int] = {}
        for start in self.vertices:
            if start in side:
                continue
            side[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.neighbors(u):
                    if w not in side:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return False, {}
        return True, side


def build_graph(
    vertices: Iterable[int],
    edges: Iterable[tuple[int, int]],
    labels: Mapping[int, str] | None = None,
    colors: Mapping[int, str] | None = None,
    positions: Mapping[int, tuple[int, int]] | None = None,
) -> Graph:
    return Graph(
        tuple(vertices),
        tuple((u, v) for u, v in edges),
        dict(labels or {}),
        dict(colors or {}),
        dict(positions or {}),
    )


def _part_label(i: int) -> str:
    return ascii_uppercase[i] if i < 26 else f"W{i + 1}"


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with the first part labeled "1".."m" and the second "A","B",...

    The numeric part is exposed as U and the lettered part as W via labels.
    """
    if m < 1 or n < 1:
        raise ValueError("parts must be nonempty")
    u_ids = tuple(range(m))
    w_ids = tuple(range(m, m + n))
    labels = {i: str(i + 1) for i in u_ids}
    labels.update({w: _part_label(j) for j, w in enumerate(w_ids)})
    edges = [(u, w) for u in u_ids for w in w_ids]
    return build_graph(u_ids + w_ids, edges, labels=labels)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("need at least one vertex")
    return build_graph(range(n), combinations(range(n), 2))


@dataclass(frozen=True)
class GridSpec:
    """An n-by-n grid, optionally with four marked unit cells.

    When ``special_cells`` is nonempty the grid is meant for the surface
    constructions: n must then be at least 8 and divisible by 8, and every
    cell must sit strictly inside the grid.  Each special cell (given by its
    bottom-left corner, 1-based) carries three marked corners: all but the
    top-right one, colored black, blue, red in clockwise order starting at
    the bottom-left corner.
    """

    n: int
    special_cells: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("grid side must be at least 2")
        cells = tuple(self.special_cells)
        if len(set(cells)) != len(cells):
            raise ValueError("special cells must be pairwise distinct")
        if cells:
            if self.n % 8 != 0:
                raise ValueError("grid side must be divisible by 8 when cells are marked")
            for x, y in cells:
                if not (1 < x < self.n - 1 and 1 < y < self.n - 1):
                    raise ValueError(f"special cell ({x},{y}) too close to the boundary")
        object.__setattr__(self, "special_cells", cells)

    @staticmethod
    def standard(n: int = 8) -> "GridSpec":
        """The default four well-separated cells at (n/4, n/4) and its mirrors."""
        q, t = n // 4, 3 * n // 4
        return GridSpec(n, ((q, q), (t, q), (q, t), (t, t)))

    def vertex_id(self, x: int, y: int) -> int:
        if not (1 <= x <= self.n and 1 <= y <= self.n):
            raise ValueError(f"({x},{y}) outside [1,{self.n}]^2")
        return (x - 1) * self.n + (y - 1)

    def marked_corners(self, cell: tuple[int, int]) -> dict[str, tuple[int, int]]:
        """Color -> corner coordinate for one special cell."""
        if cell not in self.special_cells:
            raise ValueError(f"{cell} is not a special cell")
        x, y = cell
        return {BLACK: (x, y), BLUE: (x, y + 1), RED: (x + 1, y)}

    def cell_corners(self, cell: tuple[int, int]) -> tuple[tuple[int, int], ...]:
        x, y = cell
        return ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1))


def grid(spec: GridSpec) -> Graph:
    """The n-by-n grid graph with positions; n^2 vertices, 2n(n-1) edges."""
    n = spec.n
    positions = {spec.vertex_id(x, y): (x, y) for x in range(1, n + 1) for y in range(1, n + 1)}
    edges = []
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x < n:
                edges.append((spec.vertex_id(x, y), spec.vertex_id(x + 1, y)))
            if y < n:
                edges.append((spec.vertex_id(x, y), spec.vertex_id(x, y + 1)))
    colors: dict[int, str] = {}
    for cell in spec.special_cells:
        for color, (x, y) in spec.marked_corners(cell).items():
            vid = spec.vertex_id(x, y)
            if vid in colors:
                raise ValueError(f"vertex ({x},{y}) marked twice")
            colors[vid] = color
    return build_graph(positions, edges, colors=colors, positions=positions)


def apex_grid(spec: GridSpec) -> Graph:
    """Grid plus three degree-4 apex vertices labeled "1","2","3".

    Apex "1" joins the four black marked vertices, "2" the red, "3" the blue.
    """
    if len(spec.special_cells) != 4:
        raise ValueError("apex construction needs exactly 4 special cells")
    g = grid(spec)
    n2 = spec.n * spec.n
    apexes = {n2: "1", n2 + 1: "2", n2 + 2: "3"}
    edges = list(g.edges)
    for apex_id, lab in apexes.items():
        color = APEX_COLOR[lab]
        for cell in spec.special_cells:
            x, y = spec.marked_corners(cell)[color]
            edges.append((apex_id, spec.vertex_id(x, y)))
    return build_graph(
        g.vertices + tuple(apexes),
        edges,
        labels=apexes,
        colors=g.colors,
        positions=g.positions,
    )


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Relabeled disjoint union; g2's ids are shifted above g1's."""
    offset = (max(g1.vertices) + 1) if g1.vertices else 0
    shift = lambda v: v + offset
    labels = dict(g1.labels)
    used = set(labels.values())
    for v, lab in g2.labels.items():
        labels[shift(v)] = lab if lab not in used else f"{lab}@{offset}"
    colors = dict(g1.colors)
    colors.update({shift(v): c for v, c in g2.colors.items()})
    positions = dict(g1.positions)
    positions.update({shift(v): p for v, p in g2.positions.items()})
    return build_graph(
        g1.vertices + tuple(shift(v) for v in g2.vertices),
        list(g1.edges) + [(shift(u), shift(v)) for u, v in g2.edges],
        labels=labels,
        colors=colors,
        positions=positions,
    )


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; math.inf for forests.

    BFS from every vertex; a non-tree edge seen at depth d closes a cycle of
    length at most dist[x]+dist[y]+1, and scanning all roots makes the
    minimum exact.
    """
    best = math.inf
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        while queue:
            nxt: list[int] = []
            for u in queue:
                for w in g.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
            queue = nxt
    return best
