"""Triple systems: triangle sets of 2-complexes with a complete 1-skeleton.

Vertices are 0..n-1.  A system stores only its triangles (3-subsets); all
vertices and all edges are implicitly present, so the forbidden configuration
is four vertices carrying all four of their triangles (a K4).  Triangles are
kept in a dense bitmask indexed by the colex rank of the sorted triple, which
makes membership tests O(1) during the 4-subset scans and the cover search.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb


def triple_rank(a: int, b: int, c: int) -> int:
    """Colex rank of a sorted triple among all 3-subsets of the naturals."""
    return a + comb(b, 2) + comb(c, 3)


@lru_cache(maxsize=None)
def triples_by_rank(n: int) -> tuple[tuple[int, int, int], ...]:
    """All sorted triples on 0..n-1, indexed by colex rank."""
    return tuple(
        (a, b, c)
        for c in range(2, n)
        for b in range(1, c)
        for a in range(b)
    )


def _check_triple(t, n: int) -> tuple[int, int, int]:
    try:
        a, b, c = t
    except (TypeError, ValueError):
        raise ValueError(f"not a triple: {t!r}") from None
    if not 0 <= a < b < c < n:
        raise ValueError(f"triple {t!r} is not strictly increasing in range 0..{n - 1}")
    return a, b, c


class TripleSystem:
    """Immutable triangle set on n vertices.

    Equality and hashing are by (n, triangle set); all operations are pure
    and return new systems, so instances are freely shareable.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, triples=()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        mask = 0
        for t in triples:
            a, b, c = _check_triple(t, n)
            bit = 1 << triple_rank(a, b, c)
            if mask & bit:
                raise ValueError(f"duplicate triple {t!r}")
            mask |= bit
        self.n = n
        self.mask = mask

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "TripleSystem":
        ts = cls.__new__(cls)
        ts.n = n
        ts.mask = mask
        return ts

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TripleSystem)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"TripleSystem(n={self.n}, triangles={self.triangle_count()})"

    def has(self, a: int, b: int, c: int) -> bool:
        """Membership of the sorted triple (a, b, c)."""
        return bool(self.mask >> triple_rank(a, b, c) & 1)

    def __contains__(self, t) -> bool:
        a, b, c = sorted(t)
        return self.has(a, b, c)

    def triples(self) -> frozenset[tuple[int, int, int]]:
        table = triples_by_rank(self.n)
        mask = self.mask
        return frozenset(t for r, t in enumerate(table) if mask >> r & 1)

    def triangle_count(self) -> int:
        return self.mask.bit_count()

    def missing_triples(self) -> frozenset[tuple[int, int, int]]:
        """Complement of the triangle set within all n-choose-3 triples."""
        table = triples_by_rank(self.n)
        mask = self.mask
        return frozenset(t for r, t in enumerate(table) if not mask >> r & 1)

    def vertex_triangle_count(self, v: int) -> int:
        """Number of triangles containing vertex v."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")
        count = 0
        for a, b in itertools.combinations(
            (u for u in range(self.n) if u != v), 2
        ):
            x, y, z = sorted((a, b, v))
            if self.has(x, y, z):
                count += 1
        return count

    def find_k4(self):
        """Some 4-set carrying all four of its triangles, or None if K4-free."""
        for w, x, y, z in itertools.combinations(range(self.n), 4):
            if (
                self.has(w, x, y)
                and self.has(w, x, z)
                and self.has(w, y, z)
                and self.has(x, y, z)
            ):
                return frozenset((w, x, y, z))
        return None

    def is_maximal_k4_free(self) -> bool:
        """True iff adding any absent triangle creates a K4.

        Requires the system to be K4-free already.
        """
        k4 = self.find_k4()
        if k4 is not None:
            raise ValueError(f"system already contains a K4: {sorted(k4)}")
        for a, b, c in self.missing_triples():
            completes = False
            for d in range(self.n):
                if d in (a, b, c):
                    continue
                if (
                    self.has(*sorted((a, b, d)))
                    and self.has(*sorted((a, c, d)))
                    and self.has(*sorted((b, c, d)))
                ):
                    completes = True
                    break
            if not completes:
                return False
        return True

    def add_triple(self, a: int, b: int, c: int) -> "TripleSystem":
        a, b, c = _check_triple((a, b, c), self.n)
        return TripleSystem.from_mask(self.n, self.mask | 1 << triple_rank(a, b, c))

    def delete_vertex(self, v: int) -> "TripleSystem":
        """Induced system on the other vertices, compacted to 0..n-2."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")
        shift = [u if u < v else u - 1 for u in range(self.n)]
        kept = (
            (shift[a], shift[b], shift[c])
            for (a, b, c) in self.triples()
            if v not in (a, b, c)
        )
        return TripleSystem(self.n - 1, kept)

    def relabel(self, perm) -> "TripleSystem":
        """Apply the vertex bijection perm (perm[old] = new)."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm is not a bijection on 0..n-1")
        return TripleSystem(
            self.n,
            (tuple(sorted((perm[a], perm[b], perm[c]))) for a, b, c in self.triples()),
        )

    def render(self) -> str:
        """Canonical text format: header line, then lexicographically sorted rows."""
        lines = [f"n={self.n}"]
        lines.extend(f"{a} {b} {c}" for a, b, c in sorted(self.triples()))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "TripleSystem":
        """Inverse of render; rejects malformed, out-of-range, unsorted or duplicate triples."""
        lines = [
            line.strip()
            for line in text.splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("missing 'n=<count>' header line")
        try:
            n = int(lines[0][2:])
        except ValueError:
            raise ValueError(f"bad header line: {lines[0]!r}") from None
        triples = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"malformed triple line: {line!r}")
            try:
                a, b, c = (int(p) for p in parts)
            except ValueError:
                raise ValueError(f"malformed triple line: {line!r}") from None
            if not a < b < c:
                raise ValueError(f"triple not strictly increasing: {line!r}")
            triples.append((a, b, c))
        return cls(n, triples)
