"""Column/row layouts and the extremal-family constructions.

A layout places n vertices into 3 cyclically ordered columns and ceil(n/3)
rows (row 1 at the bottom; empty slots only in the top row), colors the
non-bottom vertices red or blue, and fixes a total order: higher row means
higher vertex, rows default to left-to-right, and an optional per-row flag
raises a blue vertex above the red vertex in the column to its right.  Only
those blue/red relative orders can affect the compiled complex, so a layout
is exactly one representative of its equivalence class.

Residue conventions: n = 3k leaves the top row full, n = 3k+1 puts the sole
top vertex in column 0, n = 3k+2 fills columns 0 and 1 of the top row.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

from .triplesystem import TripleSystem, triples_by_rank, triple_rank


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"


RED = Color.RED
BLUE = Color.BLUE

RIGHT = (1, 2, 0)  # column to the right, cyclically
LEFT = (2, 0, 1)


def rows_for(n: int) -> int:
    return -(-n // 3)


def top_row_columns(n: int) -> tuple[int, ...]:
    """Occupied columns of the top row under the residue conventions."""
    r = n % 3
    return (0, 1, 2) if r == 0 else tuple(range(r))


@dataclass(frozen=True)
class Layout:
    """A populated grid with coloring and order flags.

    colors is indexed by vertex id; id 3*(row-1)+col for the full rows,
    then 3k, 3k+1 for a partial top row.  Bottom-row colors are normalized
    to RED on construction (they never influence the compiled complex).
    blue_higher holds (col, row) pairs naming a blue vertex that sits above
    the red vertex in the column to its right within the same row.
    """

    n: int
    colors: tuple[Color, ...]
    blue_higher: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"layouts need n >= 3, got {self.n}")
        if len(self.colors) != self.n:
            raise ValueError(f"expected {self.n} colors, got {len(self.colors)}")
        if any(not isinstance(c, Color) for c in self.colors):
            raise ValueError("colors must be Color values")
        normalized = tuple(
            RED if self.row_of(v) == 1 else self.colors[v] for v in range(self.n)
        )
        object.__setattr__(self, "colors", normalized)
        object.__setattr__(self, "blue_higher", frozenset(self.blue_higher))
        for col, row in self.blue_higher:
            v = self.vertex_at(col, row)
            w = self.vertex_at(RIGHT[col], row)
            if v is None or w is None:
                raise ValueError(f"order flag at empty slot: column {col}, row {row}")
            if self.colors[v] is not BLUE or self.colors[w] is not RED:
                raise ValueError(
                    f"order flag needs blue at column {col} and red at column "
                    f"{RIGHT[col]} in row {row}"
                )

    # -- grid geometry ----------------------------------------------------

    @property
    def k(self) -> int:
        return self.n // 3

    @property
    def rows(self) -> int:
        return rows_for(self.n)

    def vertex_at(self, col: int, row: int):
        """Vertex id at (col, row), or None for an empty slot."""
        if not (0 <= col < 3 and 1 <= row <= self.rows):
            return None
        if row <= self.k and 3 * (row - 1) + col < self.n:
            return 3 * (row - 1) + col
        if row == self.k + 1 and col in top_row_columns(self.n):
            return 3 * self.k + col
        return None

    def col_of(self, v: int) -> int:
        return v - 3 * self.k if v >= 3 * self.k else v % 3

    def row_of(self, v: int) -> int:
        return self.k + 1 if v >= 3 * self.k and self.n % 3 else v // 3 + 1

    def column(self, col: int) -> list[int]:
        """Vertices of a column, bottom to top."""
        out = []
        for row in range(1, self.rows + 1):
            v = self.vertex_at(col, row)
            if v is not None:
                out.append(v)
        return out

    def row_vertices(self, row: int) -> list[int]:
        return [v for col in range(3) if (v := self.vertex_at(col, row)) is not None]

    def colored_vertices(self) -> list[int]:
        """Vertices outside the (uncolored) bottom row."""
        return list(range(3, self.n))

    # -- the total order ---------------------------------------------------

    @cached_property
    def order_rank(self) -> tuple[int, ...]:
        """order_rank[v] positions v in the completed total order.

        Rows ascend; within a row columns run left to right except that the
        blue member of a blue-left/red-right pair is placed per its flag.
        A row has at most one such pair, so a single swap settles it.
        """
        rank = [0] * self.n
        pos = 0
        for row in range(1, self.rows + 1):
            cols = [c for c in range(3) if self.vertex_at(c, row) is not None]
            for c in range(3):
                v = self.vertex_at(c, row)
                w = self.vertex_at(RIGHT[c], row)
                if v is None or w is None:
                    continue
                if self.colors[v] is BLUE and self.colors[w] is RED:
                    i, j = cols.index(c), cols.index(RIGHT[c])
                    blue_up = (c, row) in self.blue_higher
                    if (blue_up and i < j) or (not blue_up and i > j):
                        cols[i], cols[j] = cols[j], cols[i]
            for c in cols:
                rank[self.vertex_at(c, row)] = pos
                pos += 1
        return tuple(rank)

    def higher(self, u: int, v: int) -> bool:
        return self.order_rank[u] > self.order_rank[v]


class PrefixCounts(NamedTuple):
    """Red/blue counts per column among vertices strictly above a cutoff row.

    (a, b) belong to column 0, (c, d) to column 1, (e, f) to column 2;
    the first of each pair is the red count.
    """

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int


@dataclass(frozen=True)
class ColorSet:
    """Red vertices of one column plus blue vertices of the column to its right."""

    left_column: int
    members: frozenset[int]


# -- bound formulas --------------------------------------------------------


def conjectured_max(n: int) -> int:
    """Conjectured maximum triangle count of a K4-free system on n vertices."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    k, r = divmod(n, 3)
    if r == 0:
        return (5 * k**3 - 3 * k**2) // 2
    if r == 1:
        return (5 * k**3 + 2 * k**2 - k) // 2
    return (5 * k**3 + 7 * k**2 + 2 * k) // 2


def missing_row_formula(pc: PrefixCounts) -> int:
    """Missing triangles whose lowest vertex lies in the cutoff row.

    Exact value of ((a+d)^2 + (b+e)^2 + (c+f)^2 + (a+b+c+d+e+f)^2) / 2,
    which is always an even sum of squares.
    """
    a, b, c, d, e, f = pc
    total = a + b + c + d + e + f
    s = (a + d) ** 2 + (b + e) ** 2 + (c + f) ** 2 + total**2
    return s // 2


def prefix_counts(layout: Layout, cutoff_row: int) -> PrefixCounts:
    """Per-column red/blue counts over the rows strictly above cutoff_row."""
    counts = [0] * 6
    for v in range(layout.n):
        if layout.row_of(v) > cutoff_row:
            col = layout.col_of(v)
            counts[2 * col + (0 if layout.colors[v] is RED else 1)] += 1
    return PrefixCounts(*counts)


# -- color sets and coloring conditions -------------------------------------


def color_sets(layout: Layout, above_row: int = 1) -> tuple[ColorSet, ColorSet, ColorSet]:
    """The three color sets, restricted to rows strictly above above_row.

    The default cutoff of 1 excludes exactly the uncolored bottom row; the
    three member sets partition the colored vertices above the cutoff.
    """
    members: list[set[int]] = [set(), set(), set()]
    for v in range(layout.n):
        if layout.row_of(v) <= max(above_row, 1):
            continue
        col = layout.col_of(v)
        if layout.colors[v] is RED:
            members[col].add(v)
        else:
            members[LEFT[col]].add(v)
    return tuple(ColorSet(c, frozenset(members[c])) for c in range(3))


def check_coloring_conditions(layout: Layout) -> bool:
    """Residue-specific balance rule on every top-j-rows prefix, j <= k."""
    n, k = layout.n, layout.k
    r = n % 3
    if r == 0:
        return all(
            len({layout.colors[v] for v in layout.row_vertices(row)}) == 1
            for row in range(1, k + 1)
        )
    for j in range(1, k + 1):
        red = [0, 0, 0]
        for v in range(n):
            if layout.row_of(v) > layout.rows - j and layout.colors[v] is RED:
                red[layout.col_of(v)] += 1
        if r == 1:
            # Column 0 holds the top vertex and may lead its left neighbor by one.
            ok = red[1] <= red[0] and red[2] <= red[1] and red[0] <= red[2] + 1
        else:
            # Column 2 has no top vertex and may trail its left neighbor by one.
            ok = red[0] >= red[2] and red[1] >= red[0] and red[2] >= red[1] - 1
        if not ok:
            return False
    return True


def check_construction4(layout: Layout) -> bool:
    """Top-row vertices red; for n = 3k+1 the top vertex of every column is red."""
    if not check_coloring_conditions(layout):
        raise ValueError("layout does not satisfy the coloring conditions")
    for col in top_row_columns(layout.n):
        v = layout.vertex_at(col, layout.rows)
        if v is not None and layout.colors[v] is not RED:
            return False
    if layout.n % 3 == 1:
        for col in range(3):
            top = layout.column(col)[-1]
            if layout.colors[top] is not RED:
                return False
    return True


# -- compiling a layout to its complex ---------------------------------------


def complex_from_layout(layout: Layout) -> TripleSystem:
    """Apply the four missing-triangle rules to produce the triangle set."""
    n = layout.n
    col = [layout.col_of(v) for v in range(n)]
    rank = layout.order_rank
    colors = layout.colors
    mask = 0
    for r, (x, y, z) in enumerate(triples_by_rank(n)):
        if not _is_missing(x, y, z, col, rank, colors):
            mask |= 1 << r
    return TripleSystem.from_mask(n, mask)


def _is_missing(x, y, z, col, rank, colors) -> bool:
    cx, cy, cz = col[x], col[y], col[z]
    if cx == cy == cz:
        # Rule 1: same column with the top two the same color.
        top2 = sorted((x, y, z), key=rank.__getitem__)[1:]
        return colors[top2[0]] is colors[top2[1]]
    if cx != cy and cy != cz and cx != cz:
        return False
    if cx == cy:
        p, q, s = x, y, z
    elif cx == cz:
        p, q, s = x, z, y
    else:
        p, q, s = y, z, x
    pair_col, single_col = col[p], col[s]
    hp = p if rank[p] > rank[q] else q
    # Rule 2: higher of the pair red, third vertex in the column to its right.
    if colors[hp] is RED and single_col == RIGHT[pair_col]:
        return True
    # Rule 3: higher of the pair blue, third vertex in the column to its left.
    if colors[hp] is BLUE and single_col == LEFT[pair_col]:
        return True
    # Rule 4: the lone vertex on top, highest in the left column blue,
    # highest in the right column red.
    if rank[s] > rank[hp]:
        if single_col == RIGHT[pair_col]:
            left_top, right_top = hp, s
        else:
            left_top, right_top = s, hp
        return colors[left_top] is BLUE and colors[right_top] is RED
    return False


# -- the enumerated family ----------------------------------------------------


def _red_columns(start: int, count: int, leftward: bool) -> list[int]:
    """Columns taken by the next `count` red vertices of the forced fill."""
    step = -1 if leftward else 1
    return [(start + step * i) % 3 for i in range(count)]


def _row_codes(reds_allowed) -> list[tuple[int, bool | None]]:
    """(red count, blue_higher flag or None) choices for one free row."""
    codes: list[tuple[int, bool | None]] = []
    for r in reds_allowed:
        if r in (0, 3):
            codes.append((r, None))
        else:
            codes.append((r, False))
            codes.append((r, True))
    return codes


def enumerate_construction4(n: int) -> list[Layout]:
    """One layout per equivalence class of the extremal construction.

    Cardinalities: 2^(k-2) for n = 3k, (1/2)6^(k-1) for n = 3k+1 and
    6^(k-1) for n = 3k+2 (each 1 when k <= 1).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    k, r = divmod(n, 3)
    rows = rows_for(n)

    if r == 0:
        out = []
        for mids in itertools.product((RED, BLUE), repeat=max(k - 2, 0)):
            row_color = {row: mids[row - 2] for row in range(2, k)}
            row_color[k] = RED
            colors = tuple(row_color.get(v // 3 + 1, RED) for v in range(n))
            out.append(Layout(n, colors))
        return out

    leftward = r == 2
    start_total = 1 if r == 1 else 2
    free_rows = list(range(2, rows))  # intermediate rows, bottom to top
    if r == 1 and k >= 2:
        second_row = rows - 1
        free_rows.remove(second_row)
    out = []
    row_choices: list[tuple[int, list[tuple[int, bool | None]]]] = []
    for row in free_rows:
        row_choices.append((row, _row_codes((0, 1, 2, 3))))
    if r == 1 and k >= 2:
        # The row below the top vertex: columns 1 and 2 must stay red-topped.
        row_choices.append((rows - 1, _row_codes((2, 3))))

    rows_ordered = sorted(row_choices, key=lambda rc: -rc[0])  # top to bottom
    for picks in itertools.product(*(codes for _, codes in rows_ordered)):
        colors: dict[int, Color] = {}
        flags = set()
        total = start_total
        for (row, _), (red_count, flag) in zip(rows_ordered, picks):
            red_cols = _red_columns(
                (1 - total) % 3 if leftward else total % 3, red_count, leftward
            )
            for c in range(3):
                v = 3 * (row - 1) + c
                colors[v] = RED if c in red_cols else BLUE
            if flag is not None and flag:
                blue_col = next(
                    c
                    for c in range(3)
                    if c not in red_cols and RIGHT[c] in red_cols
                )
                flags.add((blue_col, row))
            total += red_count
        full = tuple(
            colors.get(v, RED) if v < 3 * k else RED for v in range(n)
        )
        out.append(Layout(n, full, frozenset(flags)))
    return out


def construction2_colorings(n: int, with_flags: bool = False) -> Iterator[Layout]:
    """Every coloring of the general row/column construction (bottom row fixed).

    Sweeps all red/blue assignments of the non-bottom vertices; with_flags
    additionally sweeps every admissible order flag combination.  Exhaustive
    only at desk scale (2^(n-3) colorings).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    colored = list(range(3, n))
    for combo in itertools.product((RED, BLUE), repeat=len(colored)):
        colors = (RED,) * 3 + combo
        base = Layout(n, colors)
        if not with_flags:
            yield base
            continue
        candidates = [
            (c, row)
            for row in range(2, base.rows + 1)
            for c in range(3)
            if (v := base.vertex_at(c, row)) is not None
            and (w := base.vertex_at(RIGHT[c], row)) is not None
            and colors[v] is BLUE
            and colors[w] is RED
        ]
        for flag_bits in itertools.product((False, True), repeat=len(candidates)):
            flags = frozenset(
                pair for pair, bit in zip(candidates, flag_bits) if bit
            )
            yield Layout(n, colors, flags)


# -- named complexes ---------------------------------------------------------


def all_red_layout(n: int) -> Layout:
    return Layout(n, (RED,) * n)


def turan_original(n: int) -> TripleSystem:
    """The classical three-part construction: the all-red layout compiled."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    return complex_from_layout(all_red_layout(n))


def exceptional_complex7() -> TripleSystem:
    """The one 7-vertex extremal complex outside the enumerated family.

    Vertices 0..5 form the all-red 6-vertex complex (0,1,2 bottom row,
    3,4,5 top row); vertex 6 lies in exactly the triangles {6, top, bottom}.
    """
    base = turan_original(6)
    extra = [(b, t, 6) for t in (3, 4, 5) for b in (0, 1, 2)]
    return TripleSystem(7, list(base.triples()) + extra)


def is_exceptional_construction(layout: Layout) -> bool:
    """The two colorings for which the empty-core characterization fails."""
    if not check_construction4(layout):
        raise ValueError("layout is not in the enumerated family")
    n, k = layout.n, layout.k
    r = n % 3
    if k < 2:
        # a single construction exists and carries no blue vertices
        return False
    colored = layout.colored_vertices()
    if r == 1:
        blues = [v for v in colored if layout.colors[v] is BLUE]
        if len(blues) != 1:
            return False
        v = blues[0]
        if layout.col_of(v) != 0 or layout.row_of(v) != k:
            return False
        return (0, k) in layout.blue_higher
    if r == 2:
        return all(
            layout.colors[v] is BLUE
            for v in colored
            if layout.row_of(v) <= k
        )
    return False


# -- layout text format --------------------------------------------------------


def render_layout(layout: Layout) -> str:
    """Header, rows from the top (R/B/./x), then sorted swap annotations."""
    lines = [f"layout n={layout.n} k={layout.k}"]
    for row in range(layout.rows, 0, -1):
        cells = []
        for col in range(3):
            v = layout.vertex_at(col, row)
            if v is None:
                cells.append(".")
            elif row == 1:
                cells.append("x")
            else:
                cells.append(layout.colors[v].value)
        lines.append(" ".join(cells))
    for col, row in sorted(layout.blue_higher):
        lines.append(f"swap c{col}r{row}")
    return "\n".join(lines) + "\n"


def parse_layout(text: str) -> Layout:
    """Inverse of render_layout."""
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines or not lines[0].startswith("layout "):
        raise ValueError("missing 'layout n=<n> k=<k>' header")
    fields = dict(
        part.split("=", 1) for part in lines[0].split()[1:] if "=" in part
    )
    try:
        n = int(fields["n"])
        k = int(fields["k"])
    except (KeyError, ValueError):
        raise ValueError(f"bad layout header: {lines[0]!r}") from None
    if k != n // 3:
        raise ValueError(f"header k={k} does not match n={n}")
    rows = rows_for(n)
    grid_lines = lines[1 : 1 + rows]
    if len(grid_lines) != rows:
        raise ValueError(f"expected {rows} grid rows, got {len(grid_lines)}")
    colors: dict[int, Color] = {}
    probe = Layout(n, (RED,) * n)
    for i, line in enumerate(grid_lines):
        row = rows - i
        cells = line.split()
        if len(cells) != 3:
            raise ValueError(f"grid row needs 3 cells: {line!r}")
        for col, cell in enumerate(cells):
            v = probe.vertex_at(col, row)
            if cell == ".":
                if v is not None:
                    raise ValueError(f"unexpected empty cell at column {col}, row {row}")
                continue
            if v is None:
                raise ValueError(f"cell for empty slot at column {col}, row {row}")
            if cell == "x":
                if row != 1:
                    raise ValueError("'x' cells belong to the bottom row only")
                colors[v] = RED
            elif cell in ("R", "B"):
                colors[v] = Color(cell)
            else:
                raise ValueError(f"bad cell {cell!r}")
    if set(colors) != set(range(n)):
        raise ValueError("grid does not cover every vertex")
    flags = set()
    for line in lines[1 + rows :]:
        parts = line.split()
        if len(parts) != 2 or parts[0] != "swap":
            raise ValueError(f"bad trailing line: {line!r}")
        spec = parts[1]
        if not spec.startswith("c") or "r" not in spec:
            raise ValueError(f"bad swap annotation: {line!r}")
        try:
            col = int(spec[1 : spec.index("r")])
            row = int(spec[spec.index("r") + 1 :])
        except ValueError:
            raise ValueError(f"bad swap annotation: {line!r}") from None
        flags.add((col, row))
    return Layout(n, tuple(colors[v] for v in range(n)), frozenset(flags))
