"""End-to-end verification suite: rebuild every reference object and check it.

Each check records the claim it verifies, the expected and computed values
and a provenance tag; the CLI turns the resulting report into an exit code.
"""

from __future__ import annotations

import time
from pathlib import Path

from . import construct
from .construct import (
    DRAWING_ASSET,
    apex_grid_drawing,
    apex_grid_embedding,
    k34_genus2_map,
    load_torus_drawing,
)
from .drawings import (
    crossing_counts,
    is_even,
    is_independently_even,
    is_w_even,
    rotation_labels,
    surface_genus,
    validate_drawing,
)
from .graphs import GridSpec, complete_bipartite, complete_graph, disjoint_union, girth
from .maps import cyclic_equal, genus, map_from_rotations, splice_glue, trace_faces
from .maps import SpliceCorrespondence
from .report import DERIVED, PAPER, TRIVIAL, ReproReport
from .search import (
    RotationConstraint,
    check_faces_divisible,
    check_no_4_faces,
    euler_lower_bound,
    min_genus,
)

#: crossing counts the source prose lists for the torus drawing
PROSE_MATRIX = {
    tuple(sorted(pair)): count
    for pair, count in (
        (("C1", "D1"), 1),
        (("B2", "D2"), 1),
        (("B3", "D3"), 1),
        (("C1", "B3"), 2),
        (("D2", "B3"), 2),
    )
}

#: crossing counts of the shipped torus drawing: the prose matrix plus one
#: even pair meeting at A.  No drawing with the prose matrix alone admits
#: equal rotations at the lettered vertices on the torus (the search space is
#: finite and was exhausted), so the shipped drawing carries the minimal
#: extension that does.
ASSET_MATRIX = {**PROSE_MATRIX, ("A1", "A2"): 2}

SMALL_GENUS_TABLE = (
    ("K4", complete_graph(4), 0),
    ("K5", complete_graph(5), 1),
    ("K33", complete_bipartite(3, 3), 1),
)


def labeled_matrix(d) -> dict[tuple[str, str], int]:
    """Nonzero crossing counts keyed by sorted edge-label pairs."""
    labels = d.original_graph.labels

    def edge_label(e):
        u, v = e
        lu, lv = labels.get(u, str(u)), labels.get(v, str(v))
        return "".join(sorted((lu, lv)))

    return {
        tuple(sorted((edge_label(e), edge_label(f)))): c
        for (e, f), c in crossing_counts(d).nonzero().items()
    }


def reproduce_all(
    n: int = 8, asset_path: str | Path | None = None
) -> ReproReport:
    rep = ReproReport()
    spec = GridSpec.standard(n)

    # --- the bundled torus drawing ------------------------------------------
    drawing = None
    with rep.timed(
        "torus-drawing.load", "bundled independently even torus drawing", True, DERIVED
    ) as out:
        drawing = load_torus_drawing(asset_path)
        out["actual"] = validate_drawing(drawing) == []
    if drawing is not None:
        w = [drawing.original_graph.vertex_by_label(l) for l in "ABCD"]
        with rep.timed("torus-drawing.genus", "drawing lives on the torus", 1, PAPER) as out:
            out["actual"] = surface_genus(drawing)
        with rep.timed(
            "torus-drawing.rotations", "lettered vertices all rotate (1,2,3)", True, PAPER
        ) as out:
            out["actual"] = all(
                cyclic_equal(rotation_labels(drawing, v), ("1", "2", "3")) for v in w
            )
        with rep.timed(
            "torus-drawing.crossings", "crossing count of the bundled drawing",
            sum(ASSET_MATRIX.values()), DERIVED,
        ) as out:
            out["actual"] = crossing_counts(drawing).total
        with rep.timed(
            "torus-drawing.matrix", "crossing matrix of the bundled drawing",
            dict(sorted(ASSET_MATRIX.items())), DERIVED,
        ) as out:
            out["actual"] = dict(sorted(labeled_matrix(drawing).items()))
        with rep.timed(
            "torus-drawing.prose-deviation",
            "difference against the prose crossing list is known and documented",
            sorted(set(ASSET_MATRIX) - set(PROSE_MATRIX)), DERIVED,
        ) as out:
            actual = sorted(
                set(labeled_matrix(drawing).items()) - set(PROSE_MATRIX.items())
            )
            out["actual"] = sorted(pair for pair, _ in actual)
        with rep.timed(
            "torus-drawing.w-even", "pairs meeting at lettered vertices cross evenly",
            True, PAPER,
        ) as out:
            out["actual"] = is_w_even(drawing, w)
        with rep.timed(
            "torus-drawing.independently-even", "independent pairs cross evenly", True, PAPER
        ) as out:
            out["actual"] = is_independently_even(drawing)
        with rep.timed(
            "torus-drawing.not-even", "some adjacent pair crosses oddly", False, PAPER
        ) as out:
            out["actual"] = is_even(drawing)

    # --- exhaustive rotation-system checks ----------------------------------
    k34 = complete_bipartite(3, 4)
    with rep.timed(
        "k34.no-4-faces", "no facial walk of length 4 under equal outer rotations",
        True, PAPER,
    ) as out:
        ok, record = check_no_4_faces(k34, ("1", "2", "3"))
        out["actual"] = ok and record.search_space == 216
    w_ids = [k34.vertex_by_label(l) for l in "ABCD"]
    u_ids = tuple(k34.vertex_by_label(l) for l in "123")
    with rep.timed(
        "k34.min-genus-constrained", "minimum genus with equal outer rotations", 2, PAPER
    ) as out:
        value, cert = min_genus(k34, RotationConstraint({v: u_ids for v in w_ids}))
        out["actual"] = value if cert.search_space == 216 else f"bad space {cert.search_space}"

    k45 = complete_bipartite(5, 4)
    with rep.timed(
        "k45.faces-divisible-by-10", "facial walk lengths all divisible by 10",
        True, PAPER,
    ) as out:
        ok, record = check_faces_divisible(k45, ("1", "2", "3", "4", "5"))
        out["actual"] = ok and record.search_space == 7776
    with rep.timed(
        "k45.genus-at-least-5", "every constrained system has genus at least 5",
        True, PAPER,
    ) as out:
        _, record = check_faces_divisible(k45, ("1", "2", "3", "4", "5"))
        out["actual"] = min(record.genus_values(9, 20)) >= 5
    with rep.timed(
        "k45.min-genus-constrained", "exact constrained minimum found by the search",
        5, DERIVED,
    ) as out:
        w45 = [k45.vertex_by_label(l) for l in "ABCD"]
        u45 = tuple(k45.vertex_by_label(l) for l in "12345")
        value, _ = min_genus(k45, RotationConstraint({v: u45 for v in w45}))
        out["actual"] = value

    # --- Euler-formula lower bounds -----------------------------------------
    with rep.timed(
        "euler-bound.7-12-6", "walks of length 6 force genus 2 on 7 vertices 12 edges",
        2, PAPER,
    ) as out:
        out["actual"] = euler_lower_bound(7, 12, 6)
    with rep.timed(
        "euler-bound.9-20-10", "walks of length 10 force genus 5 on 9 vertices 20 edges",
        5, PAPER,
    ) as out:
        out["actual"] = euler_lower_bound(9, 20, 10)
    with rep.timed(
        "euler-bound.4-6-3", "triangle bound stays zero for a planar graph", 0, TRIVIAL
    ) as out:
        out["actual"] = euler_lower_bound(4, 6, 3)

    # --- the genus-2 embedding and the two gluings --------------------------
    with rep.timed(
        "embedding.faces-6-6-12", "equal-rotation embedding has faces 6, 6 and 12",
        (6, 6, 12), PAPER,
    ) as out:
        out["actual"] = trace_faces(k34_genus2_map()).lengths
    with rep.timed(
        "embedding.genus-2", "equal-rotation embedding fills a genus-2 surface", 2, PAPER
    ) as out:
        out["actual"] = genus(k34_genus2_map())

    glued_drawing = None
    if drawing is not None:
        with rep.timed(
            "apex-grid-drawing.genus-4",
            "drawing glued into the grid fills a genus-4 surface", 4, PAPER,
        ) as out:
            glued = apex_grid_drawing(spec, asset_path)
            glued_drawing = glued
            out["actual"] = surface_genus(glued.drawing)
        if glued_drawing is not None:
            with rep.timed(
                "apex-grid-drawing.independently-even",
                "glued drawing keeps independent pairs even", True, PAPER,
            ) as out:
                out["actual"] = is_independently_even(glued_drawing.drawing)
            with rep.timed(
                "apex-grid-drawing.matrix-preserved",
                "grid contributes no crossings to the glued drawing", True, DERIVED,
            ) as out:
                before = crossing_counts(drawing)
                after = crossing_counts(glued_drawing.drawing)
                out["actual"] = after.total == before.total and all(
                    after.get(glued_drawing.edge_map[e], glued_drawing.edge_map[f]) == c
                    for (e, f), c in before.nonzero().items()
                )

    glued_embedding = None
    with rep.timed(
        "apex-grid-embedding.genus-5",
        "embedding glued into the grid fills a genus-5 surface", 5, PAPER,
    ) as out:
        glued_embedding = apex_grid_embedding(spec)
        out["actual"] = genus(glued_embedding.map)
    if glued_embedding is not None:
        with rep.timed(
            "apex-grid-embedding.crossing-free",
            "glued embedding has no crossings", 0, PAPER,
        ) as out:
            out["actual"] = len(glued_embedding.drawing.crossing_vertices)

    # --- additivity bounds for disjoint copies ------------------------------
    for k in (1, 2, 3):
        rows = disjoint_copy_bounds(k, glued_embedding, glued_drawing)
        for name, anchor, expected, actual, prov, millis, passed in rows:
            rep.add(name, anchor, expected, actual, prov, millis, passed)

    # --- small-graph genus table --------------------------------------------
    for name, g, expected in SMALL_GENUS_TABLE:
        with rep.timed(
            f"genus-table.{name}", f"exhaustive minimum genus of {name}", expected, DERIVED
        ) as out:
            value, cert = min_genus(g)
            bound = euler_lower_bound(g.num_vertices, g.num_edges, girth(g))
            witness_ok = genus(cert.witness) == value
            out["actual"] = value if (bound <= value and witness_ok) else "inconsistent"
    return rep


def disjoint_copy_bounds(k: int, glued_embedding, glued_drawing):
    """Report rows for k disjoint copies of the apex-grid graph.

    The genus upper bound 5k comes from tracing k witness embeddings glued
    with an empty correspondence (genus adds over components); the
    even-drawing upper bound 4k from k witness drawings.  The matching lower
    bound is a cited fact, not recomputed here.
    """
    rows = []
    if k == 0 or glued_embedding is None:
        return rows
    t0 = time.perf_counter()
    union = glued_embedding.map
    for _ in range(k - 1):
        union = splice_glue(union, glued_embedding.map, SpliceCorrespondence())
    rows.append(
        (
            f"copies-{k}.embedding-genus-5k",
            "genus adds over disjoint copies of the witness embedding",
            5 * k,
            genus(union),
            TRIVIAL if k > 1 else PAPER,
            1000.0 * (time.perf_counter() - t0),
            genus(union) == 5 * k,
        )
    )
    if glued_drawing is not None:
        t0 = time.perf_counter()
        dunion = glued_drawing.map
        for _ in range(k - 1):
            dunion = splice_glue(dunion, glued_drawing.map, SpliceCorrespondence())
        value = genus(dunion)
        rows.append(
            (
                f"copies-{k}.drawing-genus-4k",
                "independently even drawings add to a genus-4k surface",
                4 * k,
                value,
                TRIVIAL if k > 1 else PAPER,
                1000.0 * (time.perf_counter() - t0),
                value == 4 * k,
            )
        )
    rows.append(
        (
            f"copies-{k}.lower-bound-cited",
            "matching genus lower bound is cited, not desk-verifiable",
            "cited",
            "cited",
            PAPER,
            0.0,
            True,
        )
    )
    return rows
