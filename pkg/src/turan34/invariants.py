"""Isomorphism invariants of triple systems, computed two independent ways.

The primary operations work from the bare triangle set by literal definition
(subset search); the predict_* functions derive the same families from layout
structure.  Agreement between the two routes is what the test suite certifies.

An empty cluster is a maximal triangle-free vertex set on more than one third
of the vertices.  Cores, unions, legs and feet are derived from clusters by
intersection/union operations and are likewise preserved by isomorphism.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from collections import Counter

from .triplesystem import TripleSystem
from .construction import BLUE, LEFT, RED, RIGHT, Layout, color_sets


# -- brute-force invariant tower ---------------------------------------------


def _is_triple_free(ts: TripleSystem, members) -> bool:
    return not any(ts.has(*t) for t in itertools.combinations(sorted(members), 3))


def _extension_blocked(ts: TripleSystem, members, v: int) -> bool:
    """True iff adding v to the triangle-free set creates a triangle."""
    return any(
        ts.has(*sorted((a, b, v))) for a, b in itertools.combinations(members, 2)
    )


def _maximal_triple_free_sets(ts: TripleSystem):
    """All maximal triangle-free vertex sets, by depth-first growth."""
    n = ts.n
    out = []

    def grow(members: list[int], start: int):
        maximal = True
        for v in range(n):
            if v in members or _extension_blocked(ts, members, v):
                continue
            maximal = False
            if v >= start:
                members.append(v)
                grow(members, v + 1)
                members.pop()
        if maximal:
            out.append(frozenset(members))
        return

    grow([], 0)
    return out


def empty_clusters(ts: TripleSystem) -> list[frozenset[int]]:
    """Maximal triangle-free sets on more than n/3 vertices, sorted."""
    found = {
        s for s in _maximal_triple_free_sets(ts) if 3 * len(s) > ts.n
    }
    return sorted(found, key=sorted)


@dataclass(frozen=True)
class EmptyCore:
    """Intersection of same-size clusters meeting every other cluster in <= 1 vertex."""

    members: frozenset[int]
    defining_size: int


def empty_cores(ts: TripleSystem, clusters=None) -> list[EmptyCore]:
    """All empty cores, over the intersection semilattice of each size class.

    The clusters whose intersection defines a core are exempt from the
    at-most-one-shared-vertex condition; every other cluster of the same
    size or larger is checked literally.
    """
    if clusters is None:
        clusters = empty_clusters(ts)
    by_size: dict[int, list[frozenset[int]]] = {}
    for c in clusters:
        by_size.setdefault(len(c), []).append(c)
    cores = set()
    for size, family in by_size.items():
        lattice = set(family)
        frontier = set(family)
        while frontier:
            new = set()
            for i, c in itertools.product(frontier, family):
                meet = i & c
                if len(meet) >= 2 and meet not in lattice:
                    new.add(meet)
            lattice |= new
            frontier = new
        bigger = [c for c in clusters if len(c) >= size]
        for candidate in lattice:
            if len(candidate) < 2:
                continue
            defining = {c for c in family if candidate <= c}
            if all(
                len(candidate & c) <= 1 for c in bigger if c not in defining
            ):
                cores.add(EmptyCore(candidate, size))
    return sorted(cores, key=lambda c: (c.defining_size, sorted(c.members)))


@dataclass(frozen=True)
class EmptyUnion:
    """Union of the same-size clusters containing one empty core."""

    members: frozenset[int]
    core: EmptyCore


def empty_unions(ts: TripleSystem, clusters=None) -> list[EmptyUnion]:
    """One union per core, deduplicated by member set."""
    if clusters is None:
        clusters = empty_clusters(ts)
    seen: dict[frozenset[int], EmptyUnion] = {}
    for core in empty_cores(ts, clusters):
        members = frozenset(
            itertools.chain.from_iterable(
                c for c in clusters
                if len(c) == core.defining_size and core.members <= c
            )
        )
        if members not in seen:
            seen[members] = EmptyUnion(members, core)
    return sorted(seen.values(), key=lambda u: sorted(u.members))


@dataclass(frozen=True)
class ColumnLeg:
    """Intersection of two distinct empty unions; proper when it has >= 2 vertices."""

    members: frozenset[int]
    proper: bool


def column_legs(ts: TripleSystem, unions=None) -> list[ColumnLeg]:
    if unions is None:
        unions = empty_unions(ts)
    legs = []
    for u, w in itertools.combinations(unions, 2):
        members = u.members & w.members
        legs.append(ColumnLeg(members, len(members) >= 2))
    return sorted(legs, key=lambda l: (-len(l.members), sorted(l.members)))


@dataclass(frozen=True)
class ColumnFoot:
    """Leg vertices tied for the most triangles private to them within the leg."""

    leg: frozenset[int]
    members: frozenset[int]


def _private_triangles(ts: TripleSystem, leg: frozenset[int], v: int) -> int:
    rest = leg - {v}
    return sum(
        1
        for a, b in itertools.combinations(
            (u for u in range(ts.n) if u != v), 2
        )
        if a not in rest and b not in rest and ts.has(*sorted((a, b, v)))
    )


def column_feet(ts: TripleSystem, legs=None) -> list[ColumnFoot]:
    if legs is None:
        legs = column_legs(ts)
    feet = []
    for leg in legs:
        if not leg.members:
            feet.append(ColumnFoot(leg.members, frozenset()))
            continue
        counts = {v: _private_triangles(ts, leg.members, v) for v in leg.members}
        best = max(counts.values())
        feet.append(
            ColumnFoot(leg.members, frozenset(v for v, c in counts.items() if c == best))
        )
    return feet


def indistinguishable(ts: TripleSystem, u: int, v: int) -> bool:
    """True iff swapping u and v is an automorphism of the system."""
    if u == v:
        raise ValueError("vertices must be distinct")
    for w in (u, v):
        if not 0 <= w < ts.n:
            raise ValueError(f"vertex {w} out of range 0..{ts.n - 1}")
    for c, d in itertools.combinations(
        (w for w in range(ts.n) if w not in (u, v)), 2
    ):
        if ts.has(*sorted((u, c, d))) != ts.has(*sorted((v, c, d))):
            return False
    return True


# -- the aggregated fingerprint ------------------------------------------------


@dataclass(frozen=True)
class InvariantRecord:
    """Relabeling-invariant summary; equal records are necessary for isomorphism."""

    n: int
    triangle_count: int
    degree_sequence: tuple[int, ...]
    cluster_size_census: tuple[tuple[int, int], ...]
    core_census: tuple[tuple[tuple[int, int], int], ...]
    union_size_census: tuple[tuple[int, int], ...]
    leg_size_multiset: tuple[int, ...]
    foot_size_multiset: tuple[int, ...]
    vertex_profile: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "triangle_count": self.triangle_count,
            "degree_sequence": list(self.degree_sequence),
            "cluster_size_census": [list(x) for x in self.cluster_size_census],
            "core_census": [
                {"defining_size": ds, "size": sz, "count": ct}
                for (ds, sz), ct in self.core_census
            ],
            "union_size_census": [list(x) for x in self.union_size_census],
            "leg_size_multiset": list(self.leg_size_multiset),
            "foot_size_multiset": list(self.foot_size_multiset),
            "vertex_profile": [
                {"triangles": d, "cluster_memberships": [list(m) for m in ms]}
                for d, ms in self.vertex_profile
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def fingerprint(ts: TripleSystem) -> InvariantRecord:
    clusters = empty_clusters(ts)
    cores = empty_cores(ts, clusters)
    unions = empty_unions(ts, clusters)
    legs = column_legs(ts, unions)
    feet = column_feet(ts, legs)
    degrees = [ts.vertex_triangle_count(v) for v in range(ts.n)]
    profile = []
    for v in range(ts.n):
        memberships = Counter(len(c) for c in clusters if v in c)
        profile.append((degrees[v], tuple(sorted(memberships.items()))))
    return InvariantRecord(
        n=ts.n,
        triangle_count=ts.triangle_count(),
        degree_sequence=tuple(sorted(degrees)),
        cluster_size_census=tuple(sorted(Counter(len(c) for c in clusters).items())),
        core_census=tuple(
            sorted(
                Counter((c.defining_size, len(c.members)) for c in cores).items()
            )
        ),
        union_size_census=tuple(
            sorted(Counter(len(u.members) for u in unions).items())
        ),
        leg_size_multiset=tuple(sorted(len(l.members) for l in legs)),
        foot_size_multiset=tuple(sorted(len(f.members) for f in feet)),
        vertex_profile=tuple(sorted(profile)),
    )


# -- layout-based predictions ---------------------------------------------------


def _below_in_column(layout: Layout, col: int, members) -> list[int]:
    """Column vertices lower than every member vertex in that column.

    With no member in the column the condition is vacuous and the whole
    column qualifies.
    """
    in_col = [v for v in members if layout.col_of(v) == col]
    if not in_col:
        return layout.column(col)
    cutoff = min(layout.row_of(v) for v in in_col)
    return [v for v in layout.column(col) if layout.row_of(v) < cutoff]


def predict_empty_clusters(layout: Layout) -> list[frozenset[int]]:
    """The cluster family a construction-4 layout must have.

    Large clusters: a size-k color set plus one vertex below it in each
    column.  Small clusters: a size-(k-1) color set completed the same way;
    a size-k color set with its lowest vertex in one column traded upward;
    and the backwards clusters, which pair a monochromatic column run with
    one opposite-colored vertex above it.
    """
    k = layout.k
    out: set[frozenset[int]] = set()
    for cs in color_sets(layout):
        x, y = cs.left_column, RIGHT[cs.left_column]
        members = cs.members
        below_x = _below_in_column(layout, x, members)
        below_y = _below_in_column(layout, y, members)
        if len(members) in (k, k - 1):
            for u in below_x:
                for v in below_y:
                    out.add(members | {u, v})
        if len(members) == k:
            for side, other_below in ((x, below_y), (y, below_x)):
                side_members = sorted(
                    (v for v in members if layout.col_of(v) == side),
                    key=layout.row_of,
                )
                if not side_members:
                    continue
                w = side_members[0]
                ceiling = (
                    layout.row_of(side_members[1])
                    if len(side_members) > 1
                    else layout.rows + 1
                )
                swaps = [
                    u
                    for u in layout.column(side)
                    if layout.row_of(w) < layout.row_of(u) < ceiling
                ]
                for u in swaps:
                    for v in other_below:
                        out.add((members - {w}) | {u, v})
    for p in range(3):
        run = [v for v in layout.column(p) if layout.row_of(v) <= k]
        colored = [v for v in run if layout.row_of(v) >= 2]
        if colored and all(layout.colors[v] is BLUE for v in colored):
            # A red vertex above the whole blue run sits either in the top
            # row or beside the run's top with the red-higher order.
            top_right = layout.vertex_at(RIGHT[p], k + 1)
            if top_right is not None and layout.colors[top_right] is RED:
                out.add(frozenset(run) | {top_right})
            beside = layout.vertex_at(RIGHT[p], k)
            if (
                beside is not None
                and layout.colors[beside] is RED
                and (p, k) not in layout.blue_higher
            ):
                out.add(frozenset(run) | {beside})
        if colored and all(layout.colors[v] is RED for v in colored):
            # Top rows are red, so a blue vertex above the red run can only
            # sit beside the run's top, raised by its order flag.
            b = layout.vertex_at(LEFT[p], k)
            if (
                b is not None
                and layout.colors[b] is BLUE
                and (LEFT[p], k) in layout.blue_higher
            ):
                out.add(frozenset(run) | {b})
    return sorted(out, key=sorted)


def predict_empty_cores(layout: Layout) -> list[EmptyCore]:
    """Color set plus the bottom vertex of each column whose row-2 vertex it holds.

    Valid for non-exceptional constructions with k >= 3.
    """
    k = layout.k
    out = []
    for cs in color_sets(layout):
        members = set(cs.members)
        for col in (cs.left_column, RIGHT[cs.left_column]):
            if layout.vertex_at(col, 2) in members:
                members.add(layout.vertex_at(col, 1))
        size = k + 2 if len(cs.members) == k else k + 1
        if len(members) >= 2:
            out.append(EmptyCore(frozenset(members), size))
    return sorted(out, key=lambda c: (c.defining_size, sorted(c.members)))


def predict_empty_unions(layout: Layout) -> list[frozenset[int]]:
    """A color set and all vertices below it (non-exceptional, k >= 3)."""
    out = []
    for cs in color_sets(layout):
        x, y = cs.left_column, RIGHT[cs.left_column]
        out.append(
            cs.members
            | set(_below_in_column(layout, x, cs.members))
            | set(_below_in_column(layout, y, cs.members))
        )
    return sorted({frozenset(u) for u in out}, key=sorted)


def _bottom_run(layout: Layout, col: int) -> tuple[list[int], object]:
    """The bottom vertex plus the maximal same-colored run above it."""
    column = layout.column(col)
    run = [column[0]]
    run_color = None
    for v in column[1:]:
        if run_color is None:
            run_color = layout.colors[v]
        if layout.colors[v] is run_color:
            run.append(v)
        else:
            break
    return run, run_color


def predict_column_legs(layout: Layout) -> list[frozenset[int]]:
    """One leg per column: its bottom monochromatic run (non-exceptional, k >= 3)."""
    return sorted(
        (frozenset(_bottom_run(layout, col)[0]) for col in range(3)), key=sorted
    )


def predict_column_feet(layout: Layout) -> list[frozenset[int]]:
    """Leg vertices below every opposite-side colored vertex that could separate them.

    For a blue leg the separators are the red vertices in the column to the
    right; for a red leg, the blue vertices in the column to the left.
    """
    rank = layout.order_rank
    out = []
    for col in range(3):
        run, run_color = _bottom_run(layout, col)
        if run_color is BLUE:
            blockers = [
                v
                for v in layout.column(RIGHT[col])
                if layout.row_of(v) >= 2 and layout.colors[v] is RED
            ]
        else:
            blockers = [
                v
                for v in layout.column(LEFT[col])
                if layout.row_of(v) >= 2 and layout.colors[v] is BLUE
            ]
        floor = min((rank[v] for v in blockers), default=None)
        if floor is None:
            out.append(frozenset(run))
        else:
            out.append(frozenset(v for v in run if rank[v] < floor))
    return sorted(out, key=sorted)
