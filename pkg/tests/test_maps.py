import pytest

from surfacemaps.construct import k34_genus2_map, planar_grid_map
from surfacemaps.graphs import GridSpec, build_graph, complete_bipartite, grid
from surfacemaps.maps import (
    CombMap,
    MapConsistencyError,
    MergeInstruction,
    SpliceCorrespondence,
    canonical_cycle,
    component_maps,
    cut_along_cycle,
    cyclic_equal,
    euler_characteristic,
    genus,
    is_contractible,
    map_from_rotations,
    mirrored,
    relabel_darts,
    splice_glue,
    trace_faces,
    validate_map,
)


def toroidal_grid_map(n: int) -> CombMap:
    """n-by-n grid with opposite sides identified; uniform rotations, genus 1."""
    def vid(x, y):
        return (x % n) * n + (y % n)

    edges = set()
    for x in range(n):
        for y in range(n):
            edges.add(tuple(sorted((vid(x, y), vid(x + 1, y)))))
            edges.add(tuple(sorted((vid(x, y), vid(x, y + 1)))))
    g = build_graph(range(n * n), sorted(edges))
    orders = {
        vid(x, y): [vid(x, y + 1), vid(x + 1, y), vid(x, y - 1), vid(x - 1, y)]
        for x in range(n)
        for y in range(n)
    }
    return map_from_rotations(g, orders)


def test_equal_rotation_embedding_faces():
    m = k34_genus2_map()
    assert trace_faces(m).lengths == (6, 6, 12)
    assert euler_characteristic(m) == -2
    assert genus(m) == 2
    assert validate_map(m) == []


def test_single_edge_one_face():
    g = build_graph([0, 1], [(0, 1)])
    m = map_from_rotations(g, {})
    fs = trace_faces(m)
    assert fs.lengths == (2,)


def test_triangle_two_faces():
    g = build_graph([0, 1, 2], [(0, 1), (0, 2), (1, 2)])
    m = map_from_rotations(g, {0: (1, 2), 1: (2, 0), 2: (0, 1)})
    assert trace_faces(m).lengths == (3, 3)
    assert genus(m) == 0


def test_planar_grid_genus_zero():
    m = planar_grid_map(grid(GridSpec(8)))
    assert genus(m) == 0
    assert len(trace_faces(m)) == 50


def test_k45_common_rotation_genus_at_least_five():
    g = complete_bipartite(5, 4)
    u = tuple(g.vertex_by_label(l) for l in "12345")
    w = [g.vertex_by_label(l) for l in "ABCD"]
    orders = {v: u for v in w}
    m = map_from_rotations(g, orders)  # free side falls back to sorted order
    assert genus(m) >= 5


def test_validate_map_reports_violations():
    m = k34_genus2_map()
    rotations = dict(m.rotations)
    rotations[0] = rotations[0][:-1]  # drop a dart
    broken = CombMap(rotations, dict(m.dart_vertex), dict(m.dart_partner))
    assert any("missing from all rotations" in p for p in validate_map(broken))

    rotations = dict(m.rotations)
    rotations[0] = rotations[0] + (999,)
    broken = CombMap(rotations, dict(m.dart_vertex), dict(m.dart_partner))
    assert any("foreign dart" in p for p in validate_map(broken))


def test_genus_invariant_under_mirror_and_dart_relabeling():
    m = k34_genus2_map()
    assert genus(mirrored(m)) == genus(m)
    darts = m.darts()
    perm = {d: darts[(i + 5) % len(darts)] for i, d in enumerate(darts)}
    assert genus(relabel_darts(m, perm)) == genus(m)


def test_splice_one_point_union_of_spheres():
    tri = map_from_rotations(
        build_graph([0, 1, 2], [(0, 1), (0, 2), (1, 2)]),
        {0: (1, 2), 1: (2, 0), 2: (0, 1)},
    )
    glued = splice_glue(tri, tri, SpliceCorrespondence((MergeInstruction(0, 0, 0, 0),)))
    assert genus(glued) == 0
    assert glued.num_vertices == 5
    assert glued.num_edges == 6


def test_splice_empty_correspondence_adds_genus():
    a = k34_genus2_map()
    b = toroidal_grid_map(3)
    glued = splice_glue(a, b, SpliceCorrespondence())
    assert genus(glued) == genus(a) + genus(b)


def test_splice_errors():
    tri = map_from_rotations(
        build_graph([0, 1, 2], [(0, 1), (0, 2), (1, 2)]),
        {0: (1, 2), 1: (2, 0), 2: (0, 1)},
    )
    with pytest.raises(ValueError):
        splice_glue(tri, tri, SpliceCorrespondence((MergeInstruction(0, 5, 0, 0),)))
    with pytest.raises(ValueError):
        SpliceCorrespondence(
            (MergeInstruction(0, 0, 1, 0), MergeInstruction(0, 1, 2, 0))
        )


def test_splice_two_point_union_doubles_an_edge():
    # two triangles merged at two vertex pairs share a doubled edge
    tri = map_from_rotations(
        build_graph([0, 1, 2], [(0, 1), (0, 2), (1, 2)]),
        {0: (1, 2), 1: (2, 0), 2: (0, 1)},
    )
    glued = splice_glue(
        tri, tri,
        SpliceCorrespondence(
            (MergeInstruction(0, 0, 0, 0), MergeInstruction(1, 0, 1, 0))
        ),
    )
    assert validate_map(glued) == []
    assert glued.has_parallel_edges()
    assert glued.num_vertices == 4
    assert glued.num_edges == 6
    assert genus(glued) in (0, 1)


def test_contractible_square_in_planar_grid():
    spec = GridSpec(6)
    m = planar_grid_map(grid(spec))
    square = [spec.vertex_id(2, 2), spec.vertex_id(3, 2),
              spec.vertex_id(3, 3), spec.vertex_id(2, 3)]
    assert is_contractible(m, square)


def test_contractible_facial_walk():
    tri = map_from_rotations(
        build_graph([0, 1, 2], [(0, 1), (0, 2), (1, 2)]),
        {0: (1, 2), 1: (2, 0), 2: (0, 1)},
    )
    assert is_contractible(tri, [0, 1, 2])


def test_toroidal_meridian_not_contractible():
    n = 4
    m = toroidal_grid_map(n)
    assert genus(m) == 1
    meridian = [x * n for x in range(n)]  # fixed column, wraps around
    # oracle: cutting along the meridian leaves one connected annulus
    cut = cut_along_cycle(m, meridian)
    pieces = component_maps(cut.map)
    assert len(pieces) == 1
    assert euler_characteristic(pieces[0]) == 2  # annulus with two caps
    assert not is_contractible(m, meridian)
    # while a unit square on the same torus bounds a disc
    square = [0, n, n + 1, 1]
    assert is_contractible(m, square)


def test_cut_preserves_dart_count_and_caps():
    n = 4
    m = toroidal_grid_map(n)
    meridian = [x * n for x in range(n)]
    cut = cut_along_cycle(m, meridian)
    assert cut.map.num_darts == m.num_darts + 2 * len(meridian)
    lengths = trace_faces(cut.map).lengths
    assert lengths.count(4) >= 2  # both caps appear as quadrilateral faces


def test_contractible_errors():
    m = planar_grid_map(grid(GridSpec(4)))
    with pytest.raises(ValueError):
        is_contractible(m, [0, 1])  # too short
    with pytest.raises(ValueError):
        is_contractible(m, [0, 1, 2])  # not a cycle: (0,2) missing


def test_corrupted_partner_table_is_detected():
    g = build_graph([0, 1, 2], [(0, 1), (0, 2), (1, 2)])
    m = map_from_rotations(g, {0: (1, 2), 1: (2, 0), 2: (0, 1)})
    partner = dict(m.dart_partner)
    partner[0] = 3
    partner[2] = 3  # two darts claim the same partner
    broken = CombMap(dict(m.rotations), dict(m.dart_vertex), partner)
    assert validate_map(broken)
    with pytest.raises(MapConsistencyError):
        trace_faces(broken)


def test_cyclic_helpers():
    assert canonical_cycle((2, 3, 1)) == (1, 2, 3)
    assert cyclic_equal((1, 2, 3), (2, 3, 1))
    assert not cyclic_equal((1, 2, 3), (1, 3, 2))
    assert cyclic_equal((), ())
