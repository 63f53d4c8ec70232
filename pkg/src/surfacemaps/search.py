"""Exact minimum genus over rotation systems, plus Euler-formula bounds.

The search is a plain exhaustive enumeration: every free vertex of degree d
contributes (d-1)! canonical cyclic orders (smallest neighbor anchored,
remaining neighbors permuted lexicographically).  Claims produced here are
proofs by exhaustion, so an over-budget request is refused outright rather
than approximated.  An optional branch-and-bound mode prunes by a partial
Euler bound but is off by default; plain enumeration defines correctness.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .graphs import Graph, edge_key, girth
from .maps import CombMap, genus, map_from_rotations


class SearchBudgetExceeded(RuntimeError):
    """The rotation-system space is larger than the configured budget."""


@dataclass(frozen=True)
class RotationConstraint:
    """Partial rotation assignment: vertex -> fixed cyclic order of neighbors."""

    fixed: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "fixed", {v: tuple(order) for v, order in self.fixed.items()}
        )

    def validated_against(self, g: Graph) -> "RotationConstraint":
        for v, order in self.fixed.items():
            if v not in set(g.vertices):
                raise ValueError(f"constraint on unknown vertex {v}")
            if sorted(order) != sorted(g.neighbors(v)):
                raise ValueError(f"constraint at {v} is not a cyclic order of its neighbors")
        return self


@dataclass(frozen=True)
class GenusCertificate:
    """Evidence for a genus value: a witness map, an exhaustion, or a bound."""

    kind: str  # "witness" | "exhaustive-min" | "euler-bound"
    value: int
    search_space: int | None = None
    witness: CombMap | None = None
    witness_index: tuple[int, ...] | None = None
    parameters: tuple | None = None

    def to_json_obj(self, witness_ref: str | None = None) -> dict:
        return {
            "kind": self.kind,
            "parameters": list(self.parameters) if self.parameters else None,
            "value": self.value,
            "search_space": self.search_space,
            "witness": witness_ref,
        }


def euler_lower_bound(v: int, e: int, length_bound: int | float) -> int:
    """Genus lower bound from chi = v - e + f with f <= 2e / length_bound.

    For a 2-cell embedding whose every facial walk has length at least L,
    2e >= L*f, so chi <= v - e + floor(2e/L) and the genus is at least
    ceil((2 - chi)/2), clamped at zero.
    """
    if v < 1 or e < 1:
        raise ValueError("need at least one vertex and one edge")
    if not (length_bound >= 3):
        raise ValueError("facial walk length bound must be at least 3")
    # an embedding always has at least one face, so the walk bound cannot
    # push f below 1 (forests: every walk repeats edges and 2e/L is useless)
    f_max = 1 if math.isinf(length_bound) else max(1, (2 * e) // int(length_bound))
    chi_max = v - e + f_max
    return max(0, (2 - chi_max + 1) // 2)


def _anchored_orders(neighbors: Sequence[int]) -> list[tuple[int, ...]]:
    """Canonical representatives of the cyclic orders of a neighbor set."""
    ns = sorted(neighbors)
    if len(ns) <= 2:
        return [tuple(ns)]
    return [(ns[0],) + rest for rest in permutations(ns[1:])]


class RotationSpace:
    """Shared machinery for enumerating rotation systems of one graph.

    Precomputes, for every free vertex and every canonical cyclic order, the
    dart successor fragment it induces, so a candidate's face permutation is
    assembled by a handful of list writes.
    """

    def __init__(self, graph: Graph, constraint: RotationConstraint | None = None):
        self.graph = graph
        self.constraint = (constraint or RotationConstraint()).validated_against(graph)
        edge_index = {e: i for i, e in enumerate(graph.edges)}
        self.num_darts = 2 * graph.num_edges
        self.partner = [0] * self.num_darts
        for i in range(graph.num_edges):
            self.partner[2 * i] = 2 * i + 1
            self.partner[2 * i + 1] = 2 * i

        def dart(v: int, w: int) -> int:
            i = edge_index[edge_key(v, w)]
            return 2 * i if v < w else 2 * i + 1

        self._dart = dart
        base = [-1] * self.num_darts
        for v, order in self.constraint.fixed.items():
            darts = [dart(v, w) for w in order]
            for i, d in enumerate(darts):
                base[d] = darts[(i + 1) % len(darts)]
        self.base_sigma = base
        self.free_vertices = sorted(
            v for v in graph.vertices if v not in self.constraint.fixed
        )
        self.orders: list[list[tuple[int, ...]]] = []
        self.fragments: list[list[list[tuple[int, int]]]] = []
        for v in self.free_vertices:
            per_vertex_orders = _anchored_orders(graph.neighbors(v))
            frags = []
            for order in per_vertex_orders:
                darts = [dart(v, w) for w in order]
                frags.append(
                    [(d, darts[(i + 1) % len(darts)]) for i, d in enumerate(darts)]
                )
            self.orders.append(per_vertex_orders)
            self.fragments.append(frags)

    @property
    def size(self) -> int:
        n = 1
        for per_vertex in self.orders:
            n *= len(per_vertex)
        return n

    def face_lengths(self, choice: Sequence[int]) -> tuple[int, ...]:
        sigma = self.base_sigma.copy()
        for frags, c in zip(self.fragments, choice):
            for d, s in frags[c]:
                sigma[d] = s
        partner = self.partner
        nd = self.num_darts
        seen = bytearray(nd)
        lengths = []
        for d0 in range(nd):
            if seen[d0]:
                continue
            n = 0
            d = d0
            while not seen[d]:
                seen[d] = 1
                n += 1
                d = sigma[partner[d]]
            lengths.append(n)
        return tuple(sorted(lengths))

    def genus_of(self, choice: Sequence[int]) -> int:
        f = len(self.face_lengths(choice))
        chi = self.graph.num_vertices - self.graph.num_edges + f
        return (2 - chi) // 2

    def choices(self, first_range: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
        ranges = [range(len(per)) for per in self.orders]
        if first_range is not None and ranges:
            ranges[0] = first_range  # type: ignore[assignment]
        yield from product(*ranges)

    def rotation_system(self, choice: Sequence[int]) -> dict[int, tuple[int, ...]]:
        system = dict(self.constraint.fixed)
        for v, per_vertex, c in zip(self.free_vertices, self.orders, choice):
            system[v] = per_vertex[c]
        return system

    def witness_map(self, choice: Sequence[int]) -> CombMap:
        return map_from_rotations(self.graph, self.rotation_system(choice))


def _search_chunk(
    space: RotationSpace, first_indices: Sequence[int]
) -> tuple[int, tuple[int, ...]] | None:
    best: tuple[int, tuple[int, ...]] | None = None
    if not space.free_vertices:
        g = space.genus_of(())
        return (g, ())
    for choice in space.choices(first_indices):
        g = space.genus_of(choice)
        if best is None or (g, choice) < best:
            best = (g, choice)
    return best


def _search_chunk_worker(args) -> tuple[int, tuple[int, ...]] | None:
    graph, fixed, first_indices = args
    space = RotationSpace(graph, RotationConstraint(fixed))
    return _search_chunk(space, first_indices)


def partition_first_choice(space: RotationSpace, jobs: int) -> list[list[int]]:
    """Deterministic split of the outermost free vertex's choices."""
    if not space.free_vertices:
        return [[0]]
    first = list(range(len(space.orders[0])))
    jobs = max(1, min(jobs, len(first)))
    return [first[i::jobs] for i in range(jobs)]


def min_genus(
    g: Graph,
    constraint: RotationConstraint | None = None,
    budget: int = 10**8,
    jobs: int = 1,
    prune: bool = False,
) -> tuple[int, GenusCertificate]:
    """Exact minimum genus over all rotation systems extending the constraint.

    Returns the minimum and an exhaustive-min certificate carrying the
    lexicographically first witness.  The result is independent of ``jobs``:
    chunks are merged by (genus, choice index), so scheduling cannot change
    either the minimum or the witness.
    """
    if not g.is_connected():
        raise ValueError("minimum genus search requires a connected graph")
    space = RotationSpace(g, constraint)
    if space.size > budget:
        raise SearchBudgetExceeded(
            f"search space {space.size} exceeds budget {budget}; refusing to approximate"
        )
    if prune:
        best = _search_pruned(space)
    elif jobs <= 1 or not space.free_vertices:
        best = _search_chunk(space, list(range(len(space.orders[0]))) if space.free_vertices else [])
    else:
        chunks = partition_first_choice(space, jobs)
        fixed = dict(space.constraint.fixed)
        results = []
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for res in pool.map(
                _search_chunk_worker, [(g, fixed, chunk) for chunk in chunks]
            ):
                if res is not None:
                    results.append(res)
        best = min(results)
    assert best is not None
    value, choice = best
    cert = GenusCertificate(
        kind="exhaustive-min",
        value=value,
        search_space=space.size,
        witness=space.witness_map(choice),
        witness_index=tuple(choice),
        parameters=(g.num_vertices, g.num_edges),
    )
    return value, cert


def _closed_faces_and_open_darts(sigma: list[int], partner: list[int]) -> tuple[int, int]:
    """Count face orbits fully determined by the partial successor table.

    Returns (closed face count, number of darts not on a closed orbit).
    """
    nd = len(sigma)
    state = bytearray(nd)  # 0 unknown, 1 on closed orbit, 2 touched but open
    closed = 0
    for d0 in range(nd):
        if state[d0]:
            continue
        path = []
        d = d0
        ok = True
        while True:
            if state[d]:
                ok = state[d] == 1 and not path
                break
            path.append(d)
            s = sigma[partner[d]]
            if s < 0:
                ok = False
                break
            d = s
            if d == d0:
                break
        if ok and path:
            closed += 1
            for d in path:
                state[d] = 1
        else:
            for d in path:
                state[d] = 2
    open_darts = sum(1 for d in range(nd) if state[d] != 1)
    return closed, open_darts


def _search_pruned(space: RotationSpace) -> tuple[int, tuple[int, ...]]:
    """DFS with pruning by a partial Euler bound; same result as plain search."""
    v_count = space.graph.num_vertices
    e_count = space.graph.num_edges
    best: tuple[int, tuple[int, ...]] | None = None
    sigma = space.base_sigma.copy()

    def bound() -> int:
        closed, open_darts = _closed_faces_and_open_darts(sigma, space.partner)
        f_max = closed + open_darts // 2
        chi_max = v_count - e_count + f_max
        return max(0, (2 - chi_max + 1) // 2)

    def rec(depth: int, prefix: list[int]) -> None:
        nonlocal best
        if best is not None and bound() > best[0]:
            return
        if depth == len(space.free_vertices):
            g = space.genus_of(tuple(prefix))
            cand = (g, tuple(prefix))
            if best is None or cand < best:
                best = cand
            return
        for c, frag in enumerate(space.fragments[depth]):
            for d, s in frag:
                sigma[d] = s
            prefix.append(c)
            rec(depth + 1, prefix)
            prefix.pop()
            for d, _ in frag:
                sigma[d] = -1
        return

    if not space.free_vertices:
        return (space.genus_of(()), ())
    rec(0, [])
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# Exhaustive facial-walk checks for the two reference bipartite graphs


@dataclass(frozen=True)
class ExhaustiveFaceRecord:
    """Every trace of an exhaustive scan over constrained rotation systems."""

    search_space: int
    traces: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (choice, lengths)

    @property
    def all_lengths(self) -> set[int]:
        return {n for _, lengths in self.traces for n in lengths}

    def genus_values(self, v: int, e: int) -> set[int]:
        return {(2 - (v - e + len(lengths))) // 2 for _, lengths in self.traces}


def _bipartite_parts(g: Graph, sizes: tuple[int, int]) -> tuple[list[int], list[int]]:
    ok, side = g.is_bipartite()
    if not ok:
        raise ValueError("graph is not bipartite")
    a = sorted(v for v in g.vertices if side[v] == 0)
    b = sorted(v for v in g.vertices if side[v] == 1)
    if (len(a), len(b)) == sizes:
        return a, b
    if (len(b), len(a)) == sizes:
        return b, a
    raise ValueError(f"expected bipartite parts of sizes {sizes}, got {(len(a), len(b))}")


def _resolve_cyclic_order(g: Graph, order: Sequence[int | str]) -> tuple[int, ...]:
    out = []
    for item in order:
        if isinstance(item, str):
            out.append(g.vertex_by_label(item))
        else:
            out.append(item)
    return tuple(out)


def _common_rotation_scan(
    g: Graph, fixed_part: Iterable[int], order: Sequence[int | str]
) -> tuple[ExhaustiveFaceRecord, RotationSpace]:
    resolved = _resolve_cyclic_order(g, order)
    constraint = RotationConstraint({v: resolved for v in fixed_part})
    space = RotationSpace(g, constraint)
    traces = tuple(
        (tuple(choice), space.face_lengths(choice)) for choice in space.choices()
    )
    return ExhaustiveFaceRecord(space.size, traces), space


def check_no_4_faces(
    g: Graph, w_rotation: Sequence[int | str]
) -> tuple[bool, ExhaustiveFaceRecord]:
    """Scan all rotation systems of a K_{3,4} whose 4-side shares one rotation.

    True when no facial walk of length 4 shows up in any of the 216 systems.
    """
    full, w_part = _bipartite_parts(g, (3, 4))
    if [g.degree(v) for v in w_part] != [3, 3, 3, 3]:
        raise ValueError("4-side must have uniform degree 3")
    record, _ = _common_rotation_scan(g, w_part, w_rotation)
    return 4 not in record.all_lengths, record


def check_faces_divisible(
    g: Graph, w_rotation: Sequence[int | str], divisor: int = 10
) -> tuple[bool, ExhaustiveFaceRecord]:
    """Scan all rotation systems of a K_{4,5} whose 4-side shares one rotation.

    True when every facial walk length in all 7776 systems is divisible by
    ``divisor``.
    """
    five, four = _bipartite_parts(g, (5, 4))
    if [g.degree(v) for v in four] != [5, 5, 5, 5]:
        raise ValueError("4-side must have uniform degree 5")
    record, _ = _common_rotation_scan(g, four, w_rotation)
    ok = all(n % divisor == 0 for n in record.all_lengths)
    return ok, record
