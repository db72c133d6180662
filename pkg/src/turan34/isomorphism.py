"""Canonical forms, isomorphism certificates and class partitioning.

The canonizer refines an ordered partition seeded by vertex triangle counts
and codegree multisets, then backtracks over cell-respecting labelings and
keeps the lexicographically least triangle list.  Leaves that reproduce the
first or the best form yield automorphisms, which prune sibling branches
(candidates in one orbit explore identical subtrees) and, collected, generate
the automorphism group; sympy supplies the group order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from sympy.combinatorics import Permutation, PermutationGroup

from .triplesystem import TripleSystem


@dataclass(frozen=True)
class CanonicalForm:
    """Relabeling-invariant normal form plus search by-products."""

    n: int
    triples: tuple[tuple[int, int, int], ...]
    automorphism_count: int = field(compare=False)
    labeling: tuple[int, ...] = field(compare=False, repr=False)

    @property
    def key(self) -> tuple:
        return (self.n, self.triples)

    def system(self) -> TripleSystem:
        return TripleSystem(self.n, self.triples)

    def render(self) -> str:
        lines = [f"canonical n={self.n}"]
        lines.extend(f"{a} {b} {c}" for a, b, c in self.triples)
        return "\n".join(lines) + "\n"


def _codegree_matrix(ts: TripleSystem) -> list[list[int]]:
    codeg = [[0] * ts.n for _ in range(ts.n)]
    for a, b, c in ts.triples():
        codeg[a][b] += 1
        codeg[b][a] += 1
        codeg[a][c] += 1
        codeg[c][a] += 1
        codeg[b][c] += 1
        codeg[c][b] += 1
    return codeg


def _initial_cells(ts: TripleSystem, codeg) -> list[list[int]]:
    keys = {}
    for v in range(ts.n):
        row = codeg[v]
        keys[v] = (sum(row) // 2, tuple(sorted(row[u] for u in range(ts.n) if u != v)))
    cells: dict[tuple, list[int]] = {}
    for v in range(ts.n):
        cells.setdefault(keys[v], []).append(v)
    return [cells[k] for k in sorted(cells)]


def _refine(cells: list[list[int]], codeg, n: int) -> list[list[int]]:
    """Split cells by (cell index, codegree) profiles until stable."""
    while True:
        index = [0] * n
        for i, cell in enumerate(cells):
            for v in cell:
                index[v] = i
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(
                    sorted((index[u], codeg[v][u]) for u in range(n) if u != v)
                )
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                out.append(groups[sig])
        if not changed:
            return out
        cells = out


class _Canonizer:
    def __init__(self, ts: TripleSystem):
        self.ts = ts
        self.n = ts.n
        self.codeg = _codegree_matrix(ts)
        self.sorted_triples = sorted(ts.triples())
        self.first: tuple | None = None
        self.first_labeling: list[int] | None = None
        self.best: tuple | None = None
        self.best_labeling: list[int] | None = None
        self.generators: list[tuple[int, ...]] = []

    def run(self) -> CanonicalForm:
        cells = _refine(_initial_cells(self.ts, self.codeg), self.codeg, self.n)
        self._search(cells, [])
        if self.generators:
            group = PermutationGroup([Permutation(g) for g in self.generators])
            aut = int(group.order())
        else:
            aut = 1
        return CanonicalForm(
            self.n, self.best, aut, tuple(self.best_labeling)
        )

    # -- search -------------------------------------------------------------

    def _form(self, labeling: list[int]) -> tuple:
        return tuple(
            sorted(
                tuple(sorted((labeling[a], labeling[b], labeling[c])))
                for a, b, c in self.sorted_triples
            )
        )

    def _record_leaf(self, cells: list[list[int]]):
        labeling = [0] * self.n
        for pos, cell in enumerate(cells):
            labeling[cell[0]] = pos
        form = self._form(labeling)
        if self.first is None:
            self.first = form
            self.first_labeling = labeling
        elif form == self.first:
            self._add_automorphism(self.first_labeling, labeling)
        if self.best is None or form < self.best:
            self.best = form
            self.best_labeling = labeling
        elif form == self.best and self.best_labeling != labeling:
            self._add_automorphism(self.best_labeling, labeling)

    def _add_automorphism(self, lab_a: list[int], lab_b: list[int]):
        inverse_a = [0] * self.n
        for v, pos in enumerate(lab_a):
            inverse_a[pos] = v
        perm = tuple(inverse_a[lab_b[v]] for v in range(self.n))
        if any(perm[v] != v for v in range(self.n)) and perm not in self.generators:
            self.generators.append(perm)

    def _search(self, cells: list[list[int]], base: list[int]):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self._record_leaf(cells)
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if tried and self._in_orbit_of_tried(v, tried, base):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            self._search(_refine(child, self.codeg, self.n), base + [v])

    def _in_orbit_of_tried(self, v: int, tried: list[int], base: list[int]) -> bool:
        gens = [
            g for g in self.generators if all(g[b] == b for b in base)
        ]
        if not gens:
            return False
        orbit = set(tried)
        frontier = list(tried)
        while frontier:
            u = frontier.pop()
            for g in gens:
                w = g[u]
                if w not in orbit:
                    if w == v:
                        return True
                    orbit.add(w)
                    frontier.append(w)
        return v in orbit


def canonical_form(ts: TripleSystem) -> CanonicalForm:
    """The least triangle rendering over all relabelings, with |Aut| attached."""
    return _Canonizer(ts).run()


def are_isomorphic(x: TripleSystem, y: TripleSystem):
    """Isomorphism verdict plus a witness permutation mapping x onto y.

    Every positive verdict is certified: the returned witness is applied and
    checked before being handed back.
    """
    if x.n != y.n or x.triangle_count() != y.triangle_count():
        return False, None
    fx = canonical_form(x)
    fy = canonical_form(y)
    if fx.key != fy.key:
        return False, None
    inv_y = [0] * y.n
    for v, pos in enumerate(fy.labeling):
        inv_y[pos] = v
    witness = tuple(inv_y[fx.labeling[v]] for v in range(x.n))
    if x.relabel(witness) != y:
        raise AssertionError("canonical labelings produced an unsound witness")
    return True, witness


def iso_classes(family) -> list[list[int]]:
    """Partition indices of the family by canonical form, in first-seen order."""
    classes: dict[tuple, list[int]] = {}
    for i, ts in enumerate(family):
        classes.setdefault(canonical_form(ts).key, []).append(i)
    return list(classes.values())
