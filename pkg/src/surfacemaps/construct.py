"""Reference constructions: the torus drawing, its grid gluings, and helpers.

Three artifacts live here.

* ``k34_genus2_map``: the crossing-free rotation system of K_{3,4} whose four
  degree-3 vertices share the rotation (1,2,3); it traces to faces 6, 6, 12
  and genus 2.
* ``search_torus_drawing``: a backtracking search for a genus-1 planarized
  drawing of K_{3,4} with a fixed crossing multiset and all four lettered
  vertices rotating (1,2,3).  The accepted drawing is shipped as
  ``data/drawing_D.map`` and loaded, not re-derived.
* ``glue_onto_grid``: cut a hole around each lettered vertex of such a
  drawing and splice the resulting stubs into the marked corners of a grid's
  four special cells, producing a drawing of the apex-grid graph whose genus
  is exactly three more than the input's.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations, product
from pathlib import Path
from typing import Mapping, Sequence

from .drawings import (
    PlanarizedDrawing,
    SplitResult,
    embedding_as_drawing,
    is_independently_even,
    split_holes,
    surface_genus,
    validate_drawing,
)
from .graphs import Graph, GridSpec, apex_grid, complete_bipartite, edge_key, grid
from .maps import (
    CombMap,
    MergeInstruction,
    SpliceCorrespondence,
    genus,
    map_from_darts,
    map_from_rotations,
    mirrored,
    relabel_vertices,
    splice_glue_detailed,
    trace_faces,
)

DATA_DIR = Path(__file__).resolve().parents[2] / "data"
DRAWING_ASSET = DATA_DIR / "drawing_D.map"

ROUTE_LABELS = tuple(f"{w}{u}" for w in "ABCD" for u in "123")


def planar_grid_map(g: Graph) -> CombMap:
    """Embed a grid graph in the plane: every rotation is (up, right, down, left)."""
    orders = {}
    for v in g.vertices:
        x, y = g.positions[v]
        pos_to_id = {g.positions[w]: w for w in g.neighbors(v)}
        clockwise = [(x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y)]
        orders[v] = [pos_to_id[p] for p in clockwise if p in pos_to_id]
    return map_from_rotations(g, orders)


def k34_genus2_map() -> CombMap:
    """K_{3,4} embedded with equal rotations (1,2,3) on the lettered side.

    Rotation of vertex 1 is (C,A,B,D); vertices 2 and 3 rotate (A,B,C,D).
    Faces trace to lengths 6, 6 and 12, hence genus 2.
    """
    g = complete_bipartite(3, 4)
    u = {lab: g.vertex_by_label(lab) for lab in ("1", "2", "3")}
    w = {lab: g.vertex_by_label(lab) for lab in ("A", "B", "C", "D")}
    orders = {w[l]: (u["1"], u["2"], u["3"]) for l in "ABCD"}
    orders[u["1"]] = (w["C"], w["A"], w["B"], w["D"])
    orders[u["2"]] = (w["A"], w["B"], w["C"], w["D"])
    orders[u["3"]] = (w["A"], w["B"], w["C"], w["D"])
    return map_from_rotations(g, orders)


# ---------------------------------------------------------------------------
# The torus drawing of K_{3,4}

#: crossing number -> the two edges (by label) meeting there.  The doubled
#: pair at A is even and meets only at A, so it disturbs neither the
#: independent-evenness nor the evenness at lettered vertices; without it no
#: rotation-uniform candidate exists at all (verified by exhausting the space).
CROSSING_PAIRS = (
    ("C1", "D1"),
    ("B2", "D2"),
    ("B3", "D3"),
    ("C1", "B3"),
    ("C1", "B3"),
    ("D2", "B3"),
    ("D2", "B3"),
    ("A1", "A2"),
    ("A1", "A2"),
)


def _route_crossings(pairs: Sequence[tuple[str, str]]) -> dict[str, list[int]]:
    route_cross: dict[str, list[int]] = {lab: [] for lab in ROUTE_LABELS}
    for x, (p, q) in enumerate(pairs):
        route_cross[p].append(x)
        route_cross[q].append(x)
    return route_cross


def _layouts(pairs: Sequence[tuple[str, str]]):
    """All crossing orders along the multi-crossing routes.

    The two crossings of a doubled pair are interchangeable names, so their
    relative order is pinned on one of their routes; this halves the space
    per doubled pair without losing any drawing up to relabeling.
    """
    route_cross = _route_crossings(pairs)
    bypair: dict[frozenset, list[int]] = {}
    for x, (p, q) in enumerate(pairs):
        bypair.setdefault(frozenset((p, q)), []).append(x)
    anchors: dict[str, list[tuple[int, int]]] = {}
    for key, xs in bypair.items():
        if len(xs) == 2:
            anchors.setdefault(min(key), []).append((xs[0], xs[1]))
    multi = [(lab, xs) for lab, xs in sorted(route_cross.items()) if len(xs) > 1]
    fixed = {lab: tuple(xs) for lab, xs in route_cross.items() if len(xs) <= 1}
    options = []
    for lab, xs in multi:
        alist = anchors.get(lab, [])
        options.append(
            [
                p
                for p in permutations(xs)
                if all(p.index(a) < p.index(b) for a, b in alist)
            ]
        )
    for combo in product(*options):
        orders = dict(fixed)
        for (lab, _), perm in zip(multi, combo):
            orders[lab] = perm
        yield orders


@dataclass(frozen=True)
class TorusDrawingResult:
    drawing: PlanarizedDrawing
    index: tuple  # (orders per multi-crossing route, strand bits, U rotation ids)
    candidates_tried: int
    seconds: float
    solutions_seen: int  # 1 unless a census was requested


def search_torus_drawing(
    pairs: Sequence[tuple[str, str]] = CROSSING_PAIRS,
    census: bool = False,
    target_genus: int = 1,
) -> TorusDrawingResult:
    """Backtracking search for the drawing; the first hit wins.

    Enumerates crossing orders along every multi-crossing route, then the two
    strand pairings per crossing, then the free rotations at 1, 2 and 3 (the
    lettered rotations are pinned to (1,2,3) throughout).  A candidate is
    accepted when its planarized map traces to ``target_genus``; the crossing
    matrix and the lettered rotations hold by construction.  With ``census``
    the scan continues through the whole space and counts every solution.
    """
    n_cross = len(pairs)
    # f = e - v + 2 - 2g with v = 7 + n_cross, e = 12 + 2*n_cross
    target_f = (12 + 2 * n_cross) - (7 + n_cross) + 2 - 2 * target_genus
    t0 = time.perf_counter()
    tried = 0
    solutions = 0
    first = None
    for orders in _layouts(pairs):
        paths = {lab: (lab[0], *orders[lab], lab[1]) for lab in ROUTE_LABELS}
        nd = 0
        partner: list[int] = []
        seg_darts: dict[str, list[tuple[int, int]]] = {}
        for lab in ROUTE_LABELS:
            p = paths[lab]
            segs = []
            for i in range(len(p) - 1):
                partner += [nd + 1, nd]
                segs.append((nd, nd + 1))
                nd += 2
            seg_darts[lab] = segs
        base = [-1] * nd
        for w in "ABCD":
            rot = tuple(seg_darts[f"{w}{u}"][0][0] for u in "123")
            for i, d in enumerate(rot):
                base[d] = rot[(i + 1) % 3]
        cross_opts = []
        for x, (lp, lq) in enumerate(pairs):
            pp, pq = paths[lp], paths[lq]
            ip, iq = pp.index(x), pq.index(x)
            p_in, p_out = seg_darts[lp][ip - 1][1], seg_darts[lp][ip][0]
            q_in, q_out = seg_darts[lq][iq - 1][1], seg_darts[lq][iq][0]
            cross_opts.append(
                (
                    ((p_in, q_in), (q_in, p_out), (p_out, q_out), (q_out, p_in)),
                    ((p_in, q_out), (q_out, p_out), (p_out, q_in), (q_in, p_in)),
                )
            )
        u_darts = [seg_darts[f"{w}{u}"][-1][1] for u in "123" for w in "ABCD"]
        uidx = {d: i for i, d in enumerate(u_darts)}
        rot_opts: list[list[list[int]]] = []
        for ui in range(3):
            own = list(range(4 * ui, 4 * ui + 4))
            opts = []
            for rest in permutations(own[1:]):
                cyc = (own[0], *rest)
                succ = [0] * 4
                for i in range(4):
                    succ[cyc[i] - 4 * ui] = cyc[(i + 1) % 4]
                opts.append(succ)
            rot_opts.append(opts)
        combos = [
            (r0, r1, r2, rot_opts[0][r0] + rot_opts[1][r1] + rot_opts[2][r2])
            for r0 in range(6)
            for r1 in range(6)
            for r2 in range(6)
        ]
        upart = [partner[d] for d in u_darts]
        for bits in range(1 << n_cross):
            sig = base.copy()
            for x in range(n_cross):
                for d, s in cross_opts[x][(bits >> x) & 1]:
                    sig[d] = s
            seen = bytearray(nd)
            for d in u_darts:
                seen[d] = 1
            chain_to = [0] * 12
            for i in range(12):
                d = sig[upart[i]]
                if d < 0:
                    chain_to[i] = uidx[upart[i]]
                    continue
                while True:
                    seen[d] = 1
                    nxt = sig[partner[d]]
                    if nxt < 0:
                        chain_to[i] = uidx[partner[d]]
                        break
                    d = nxt
            closed = 0
            for d0 in range(nd):
                if seen[d0]:
                    continue
                d = d0
                while not seen[d]:
                    seen[d] = 1
                    d = sig[partner[d]]
                closed += 1
            for r0, r1, r2, succ in combos:
                tried += 1
                visited = 0
                faces = closed
                for s in range(12):
                    if (visited >> s) & 1:
                        continue
                    t = s
                    while not (visited >> t) & 1:
                        visited |= 1 << t
                        t = succ[chain_to[t]]
                    faces += 1
                if faces != target_f:
                    continue
                solutions += 1
                if first is None:
                    drawing = _assemble_drawing(
                        pairs, paths, seg_darts, partner, bits, (r0, r1, r2)
                    )
                    first = TorusDrawingResult(
                        drawing,
                        (tuple(sorted(orders.items())), bits, (r0, r1, r2)),
                        tried,
                        time.perf_counter() - t0,
                        solutions,
                    )
                    if not census:
                        return first
    if first is None:
        raise RuntimeError(
            "exhausted the drawing search space without a candidate of the target genus"
        )
    return TorusDrawingResult(
        first.drawing, first.index, tried, time.perf_counter() - t0, solutions
    )


def _assemble_drawing(
    pairs, paths, seg_darts, partner, bits, u_choice
) -> PlanarizedDrawing:
    """Materialize one search candidate as a PlanarizedDrawing."""
    g = complete_bipartite(3, 4)
    ids = {lab: g.vertex_by_label(lab) for lab in ("1", "2", "3", "A", "B", "C", "D")}
    vkey: dict[object, int] = {w: ids[w] for w in "ABCD"}
    vkey.update({u: ids[u] for u in "123"})
    for x in range(len(pairs)):
        vkey[x] = 7 + x

    rotations: dict[int, list[int]] = {}
    for w in "ABCD":
        rotations[ids[w]] = [seg_darts[f"{w}{u}"][0][0] for u in "123"]
    for x, (lp, lq) in enumerate(pairs):
        pp, pq = paths[lp], paths[lq]
        ip, iq = pp.index(x), pq.index(x)
        p_in, p_out = seg_darts[lp][ip - 1][1], seg_darts[lp][ip][0]
        q_in, q_out = seg_darts[lq][iq - 1][1], seg_darts[lq][iq][0]
        if (bits >> x) & 1:
            rotations[vkey[x]] = [p_in, q_out, p_out, q_in]
        else:
            rotations[vkey[x]] = [p_in, q_in, p_out, q_out]
    anchored = [("A", *rest) for rest in permutations("BCD")]
    for ui, u in enumerate("123"):
        order = anchored[u_choice[ui]]
        rotations[ids[u]] = [seg_darts[f"{w}{u}"][-1][1] for w in order]

    cmap = map_from_darts(
        rotations,
        {d: partner[d] for d in range(len(partner))},
        labels=dict(g.labels),
    )
    routes = {}
    for lab in ROUTE_LABELS:
        path_ids = tuple(vkey[t] for t in paths[lab])
        routes[edge_key(path_ids[0], path_ids[-1])] = path_ids
    crossings = frozenset(7 + x for x in range(len(pairs)))
    return PlanarizedDrawing(cmap, crossings, routes, g)


def load_torus_drawing(path: str | Path | None = None) -> PlanarizedDrawing:
    from .textio import load_drawing

    return load_drawing(Path(path) if path else DRAWING_ASSET)


# ---------------------------------------------------------------------------
# Gluing a split drawing onto the grid


@dataclass(frozen=True)
class GluedConstruction:
    drawing: PlanarizedDrawing
    spec: GridSpec
    mirror_used: bool
    hole_assignment: Mapping[str, tuple[int, int]]  # letter -> special cell
    corner_log: tuple[tuple[int, int, int], ...]  # (grid vertex, corner, stub)
    edge_map: Mapping[tuple[int, int], tuple[int, int]]  # input edge -> output edge

    @property
    def map(self) -> CombMap:
        return self.drawing.map


def _square_face_corners(
    gridmap: CombMap, spec: GridSpec, cell: tuple[int, int]
) -> dict[int, int]:
    """Corner index, per marked vertex, of the gap facing the cell's square face."""
    wanted = {spec.vertex_id(x, y) for x, y in spec.cell_corners(cell)}
    for face in trace_faces(gridmap).faces:
        if len(face) == 4 and {gridmap.dart_vertex[d] for d in face} == wanted:
            corners: dict[int, int] = {}
            k = len(face)
            for j, t in enumerate(face):
                v = gridmap.dart_vertex[t]
                arrival = gridmap.dart_partner[face[(j - 1) % k]]
                corners[v] = gridmap.rotations[v].index(arrival)
            return corners
    raise RuntimeError(f"special cell {cell} does not bound a square face")


def glue_onto_grid(
    d: PlanarizedDrawing, spec: GridSpec, asset_name: str = "drawing"
) -> GluedConstruction:
    """Splice a split drawing of K_{3,4} into the grid's special cells.

    Cuts a hole around each of A, B, C, D, then merges each stub into the
    same-colored marked grid vertex at the corner facing the special cell's
    square face.  Both orientations of the drawing piece are tried and the
    one raising the genus by exactly three (the four-circle gluing) is kept;
    anything else is a fatal inconsistency.
    """
    original = d.original_graph
    w_ids = {
        original.labels[v]: v
        for v in original.vertices
        if original.labels.get(v) in {"A", "B", "C", "D"}
    }
    if sorted(w_ids) != ["A", "B", "C", "D"]:
        raise ValueError("drawing is not a labeled K_{3,4}")
    if len(spec.special_cells) != 4:
        raise ValueError("grid spec needs exactly 4 special cells")

    split = split_holes(d, [w_ids[l] for l in "ABCD"])
    grid_graph = grid(spec)
    gridmap = planar_grid_map(grid_graph)
    target = apex_grid(spec)
    cells = sorted(spec.special_cells)
    assignment = {letter: cell for letter, cell in zip("ABCD", cells)}

    instructions = []
    corner_log = []
    for letter in "ABCD":
        cell = assignment[letter]
        corners = _square_face_corners(gridmap, spec, cell)
        marked = {
            color: spec.vertex_id(x, y)
            for color, (x, y) in spec.marked_corners(cell).items()
        }
        for stub in split.holes[w_ids[letter]]:
            color = split.stub_colors[stub]
            gv = marked[color]
            instructions.append(MergeInstruction(gv, corners[gv], stub, 0, reverse=True))
            corner_log.append((gv, corners[gv], stub))
    corr = SpliceCorrespondence(tuple(instructions))

    want = genus(d.map) + 3
    for mirror in (False, True):
        piece = mirrored(split.drawing.map) if mirror else split.drawing.map
        glued = splice_glue_detailed(gridmap, piece, corr)
        if genus(glued.map) != want:
            continue
        result = _as_apex_drawing(split, glued, target, spec)
        if not is_independently_even(result.drawing):
            raise RuntimeError("glued drawing lost independent evenness")
        return GluedConstruction(
            result.drawing, spec, mirror, assignment, tuple(corner_log), result.edge_map
        )
    raise RuntimeError(
        f"no orientation of {asset_name} glues to genus {want}; construction is inconsistent"
    )


@dataclass(frozen=True)
class _ApexResult:
    drawing: PlanarizedDrawing
    edge_map: Mapping[tuple[int, int], tuple[int, int]]


def _as_apex_drawing(
    split: SplitResult, glued, target: Graph, spec: GridSpec
) -> _ApexResult:
    n2 = spec.n * spec.n
    relabel: dict[int, int] = {}
    for k, lab in enumerate("123"):
        relabel[glued.vertex_map[split.drawing.original_graph.vertex_by_label(lab)]] = n2 + k
    for i, x in enumerate(sorted(split.drawing.crossing_vertices)):
        relabel[glued.vertex_map[x]] = n2 + 3 + i
    final_map = relabel_vertices(glued.map, relabel)
    final_map = CombMap(
        final_map.rotations,
        final_map.dart_vertex,
        final_map.dart_partner,
        labels=dict(target.labels),
        colors=dict(target.colors),
        positions=dict(target.positions),
    )

    def to_final(v: int) -> int:
        g = glued.vertex_map.get(v, v)
        return relabel.get(g, g)

    routes: dict[tuple[int, int], tuple[int, ...]] = {
        e: e for e in target.edges if e[1] < n2
    }
    edge_map: dict[tuple[int, int], tuple[int, int]] = {}
    for e, path in split.drawing.routes.items():
        new_path = tuple(to_final(v) for v in path)
        new_edge = edge_key(new_path[0], new_path[-1])
        routes[new_edge] = new_path
        edge_map[_matching_input_edge(split, e)] = new_edge
    crossings = frozenset(to_final(x) for x in split.drawing.crossing_vertices)
    return _ApexResult(
        PlanarizedDrawing(final_map, crossings, routes, target), edge_map
    )


def _matching_input_edge(split: SplitResult, split_edge) -> tuple[int, int]:
    """Original input edge whose route became ``split_edge`` after hole cutting."""
    stub_home = {s: w for w, stubs in split.holes.items() for s in stubs}
    u, v = split_edge
    return edge_key(stub_home.get(u, u), stub_home.get(v, v))


def apex_grid_drawing(
    spec: GridSpec, asset_path: str | Path | None = None
) -> GluedConstruction:
    """Genus-4 independently even drawing of the apex-grid graph."""
    return glue_onto_grid(load_torus_drawing(asset_path), spec, asset_name="torus drawing")


def apex_grid_embedding(spec: GridSpec) -> GluedConstruction:
    """Genus-5 crossing-free map of the apex-grid graph."""
    return glue_onto_grid(
        embedding_as_drawing(k34_genus2_map()), spec, asset_name="genus-2 embedding"
    )


def derive_drawing_asset(
    path: str | Path | None = None, census: bool = False
) -> TorusDrawingResult:
    """Run the one-time search and write the accepted drawing to disk."""
    from .textio import write_drawing

    result = search_torus_drawing(census=census)
    problems = validate_drawing(result.drawing)
    if problems:
        raise RuntimeError(f"derived drawing fails validation: {problems}")
    if surface_genus(result.drawing) != 1:
        raise RuntimeError("derived drawing is not on the torus")
    out = Path(path) if path else DRAWING_ASSET
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(write_drawing(result.drawing, name="drawing_D"))
    return result
