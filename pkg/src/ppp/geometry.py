"""Parallelogram polyominoes, their periodic (cylinder) versions and rotation.

A PP is stored as a list of column intervals ``[bottom..top]`` with the first
bottom normalised to level 1.  A PPP adds a marked height ``h`` in the first
column; gluing copies of the PPP side by side along the mark gives an infinite
periodic polyomino.  Everything geometric below is computed on that infinite
"lift" (see :class:`Strip`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    EndpointMismatch,
    InvalidRotation,
    InvariantViolation,
    NotAdmissible,
    NotInFirstColumn,
    ParseError,
    PathsCross,
    SpiralRow,
)


class Seam(Enum):
    TOP_ALIGNED = "top_aligned"
    ABOVE_TOP = "above_top"


class HeightRule(Enum):
    GEQ_MARK = "geq_mark"
    GT_MARK = "gt_mark"


class Degeneracy(Enum):
    RECT_TOP = "rect_top"
    FLAT_TOP = "flat_top"


_CONV_KEYS = {"seam": Seam, "height": HeightRule, "degeneracy": Degeneracy}


@dataclass(frozen=True)
class Conventions:
    """Switches resolving how the mark glues the last column to the first.

    The default is the combination under which the glued strip is always a
    valid infinite polyomino and rotation is well defined (see README).
    """

    seam: Seam = Seam.TOP_ALIGNED
    height: HeightRule = HeightRule.GT_MARK
    degeneracy: Degeneracy = Degeneracy.RECT_TOP

    def __str__(self) -> str:
        return (
            f"seam={self.seam.value},height={self.height.value},"
            f"degeneracy={self.degeneracy.value}"
        )

    @classmethod
    def parse(cls, text: str) -> "Conventions":
        """Parse ``seam=above_top,height=geq_mark,...``; missing keys keep defaults."""
        values = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, sep, val = item.partition("=")
            if not sep or key not in _CONV_KEYS:
                raise ParseError(f"bad conventions item {item!r}")
            try:
                values[key] = _CONV_KEYS[key](val.lower())
            except ValueError:
                raise ParseError(f"bad value {val!r} for {key}") from None
        return cls(**values)

    @classmethod
    def all_combinations(cls) -> list["Conventions"]:
        return [cls(s, h, d) for s in Seam for h in HeightRule for d in Degeneracy]


DEFAULT = Conventions()
LITERAL = Conventions(Seam.ABOVE_TOP, HeightRule.GEQ_MARK, Degeneracy.RECT_TOP)


class ColumnSpan(NamedTuple):
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return self.top - self.bottom + 1


@dataclass(frozen=True)
class PP:
    columns: tuple[ColumnSpan, ...]

    def __post_init__(self):
        cols = tuple(ColumnSpan(*c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise InvariantViolation("a PP needs at least one column")
        if cols[0].bottom != 1:
            raise InvariantViolation("first column must start at level 1")
        for c in cols:
            if c.bottom > c.top:
                raise InvariantViolation(f"empty column {c}")
        for a, b in zip(cols, cols[1:]):
            if b.bottom < a.bottom or b.top < a.top:
                raise InvariantViolation("bottoms and tops must weakly increase")
            if b.bottom > a.top:
                raise InvariantViolation("adjacent columns must share a level")

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def rows(self) -> int:
        return self.columns[-1].top


@dataclass(frozen=True)
class PPP:
    pp: PP
    mark: int

    def __post_init__(self):
        if self.mark < 1:
            raise InvariantViolation("mark must be >= 1")
        if self.mark > self.pp.columns[0].size:
            raise NotInFirstColumn(f"mark {self.mark} above the first column")
        if self.mark > self.pp.columns[-1].size:
            raise NotAdmissible(f"mark {self.mark} exceeds last column size")

    @property
    def columns(self) -> tuple[ColumnSpan, ...]:
        return self.pp.columns

    @property
    def width(self) -> int:
        return self.pp.width

    def __str__(self) -> str:
        return encode(self)


def make_pp(spans: Sequence[tuple[int, int]]) -> PP:
    return PP(tuple(ColumnSpan(b, t) for b, t in spans))


def make_ppp(pp: PP | Sequence[tuple[int, int]], h: int) -> PPP:
    if not isinstance(pp, PP):
        pp = make_pp(pp)
    return PPP(pp, h)


def pp_from_paths(upper: str, lower: str) -> PP:
    """Build a PP from its upper (north-west) and lower (south-east) N/E paths."""
    upper, lower = upper.upper(), lower.upper()
    if set(upper + lower) - {"N", "E"}:
        raise InvariantViolation("paths use only N and E steps")
    if (upper.count("N"), upper.count("E")) != (lower.count("N"), lower.count("E")):
        raise EndpointMismatch("paths end at different points")
    if not upper.count("E") or not upper.count("N"):
        raise PathsCross("degenerate paths")

    def walk(path):
        x = y = 0
        pts = [(0, 0)]
        edge_y = []
        for step in path:
            if step == "E":
                edge_y.append(y)
                x += 1
            else:
                y += 1
            pts.append((x, y))
        return pts, edge_y

    up_pts, tops = walk(upper)
    lo_pts, bottoms = walk(lower)
    if set(up_pts) & set(lo_pts) != {up_pts[0], up_pts[-1]}:
        raise PathsCross("paths meet strictly between their endpoints")
    spans = []
    for b, t in zip(bottoms, tops):
        if t <= b:
            raise PathsCross("upper path runs below the lower path")
        spans.append((b + 1, t))
    return make_pp(spans)


def pp_to_paths(pp: PP) -> tuple[str, str]:
    upper, lower = [], []
    y_up, y_lo = 0, 0
    for c in pp.columns:
        upper.append("N" * (c.top - y_up) + "E")
        y_up = c.top
        lower.append("N" * (c.bottom - 1 - y_lo) + "E")
        y_lo = c.bottom - 1
    lower.append("N" * (pp.rows - y_lo))
    return "".join(upper), "".join(lower)


def seam_shift(p: PPP, conv: Conventions = DEFAULT) -> int:
    """Vertical offset between consecutive copies of the PPP in the glued strip."""
    t_w = p.columns[-1].top
    if conv.seam is Seam.TOP_ALIGNED:
        return t_w - p.mark
    return t_w - p.mark + 1


def seam_links(p: PPP, conv: Conventions = DEFAULT) -> list[tuple[int, int]]:
    """Pairs (level in last column, level in first column) joined across the seam."""
    t_w, m, h = p.columns[-1].top, p.mark, p.mark
    if conv.seam is Seam.ABOVE_TOP:
        return [(t_w - j, m - 1 - j) for j in range(h - 1)]
    return [(t_w - j, m - j) for j in range(h)]


@dataclass(frozen=True)
class CylinderRow:
    chain: tuple[int, ...]

    @property
    def terminal(self) -> int:
        return self.chain[-1]


def cylinder_rows(p: PPP, conv: Conventions = DEFAULT) -> list[CylinderRow]:
    nxt = dict(seam_links(p, conv))
    targets = set(nxt.values())
    rows = []
    for start in range(p.pp.rows, 0, -1):
        if start in targets:
            continue
        chain = [start]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
            if chain[-1] == chain[-2] or len(chain) > p.pp.rows:
                raise SpiralRow(f"row through level {start} closes on itself")
        rows.append(CylinderRow(tuple(chain)))
    covered = sum(len(r.chain) for r in rows)
    if covered != p.pp.rows:
        raise SpiralRow("some rows close into cycles across the seam")
    return rows


class Stats(NamedTuple):
    width: int
    height: int
    semi_perimeter: int


def stats(p: PPP, conv: Conventions = DEFAULT) -> Stats:
    t_w = p.columns[-1].top
    if conv.height is HeightRule.GEQ_MARK:
        height = t_w - p.mark + 1
    else:
        height = t_w - p.mark
    return Stats(p.width, height, p.width + height)


def is_degenerated(p: PPP, conv: Conventions = DEFAULT) -> bool:
    cols = p.columns
    if conv.degeneracy is Degeneracy.FLAT_TOP:
        return p.mark == cols[-1].top
    return len(set(cols)) == 1 and p.mark == cols[0].size


# --- the infinite lift -------------------------------------------------------


@dataclass
class Strip:
    """One period of the glued strip, as two monotone maps.

    Levels are 0-based lift levels and columns are lift indices; column ``J``
    and row ``Y`` extend periodically by ``(width, shift)``.  ``tops[j]`` is the
    level of the top cell of column ``j``; ``ends[y]`` is the column holding
    the rightmost cell of row ``y``.  Labels ride along so that pruning and
    regrowth can be replayed by vertex identity.
    """

    tops: list[int]
    ends: list[int]
    col_ids: list = field(default_factory=list)
    row_ids: list = field(default_factory=list)

    @property
    def width(self) -> int:
        return len(self.tops)

    @property
    def shift(self) -> int:
        return len(self.ends)

    def top(self, J: int) -> int:
        a, j = divmod(J, self.width)
        return self.tops[j] + a * self.shift

    def end(self, Y: int) -> int:
        a, y = divmod(Y, self.shift)
        return self.ends[y] + a * self.width

    def first_column_topped_at_least(self, Y: int) -> int:
        w, s = self.width, self.shift
        return min(j + -((self.tops[j] - Y) // s) * w for j in range(w))

    def first_row_ending_at_least(self, J: int) -> int:
        w, s = self.width, self.shift
        return min(y + -((self.ends[y] - J) // w) * s for y in range(s))

    def bottom(self, J: int) -> int:
        return self.first_row_ending_at_least(J)

    def row_sons(self, Y: int) -> list[int]:
        """Lift columns whose top cell lies in row ``Y``, left to right."""
        J = self.first_column_topped_at_least(Y)
        out = []
        while self.top(J) == Y:
            out.append(J)
            J += 1
        return out

    def column_sons(self, J: int) -> list[int]:
        """Lift rows whose rightmost cell lies in column ``J``, bottom to top."""
        Y = self.first_row_ending_at_least(J)
        out = []
        while self.end(Y) == J:
            out.append(Y)
            Y += 1
        return out

    # edits: positions count sons from the biggest (rightmost / topmost)

    def insert_column(self, cid, father_row, position: int) -> None:
        w, s = self.width, self.shift
        Y = self.row_ids.index(father_row)
        sons = self.row_sons(Y)
        q = self.first_column_topped_at_least(Y) + len(sons) - position
        a, q0 = divmod(q, w)
        self.tops.insert(q0, Y - a * s)
        self.col_ids.insert(q0, cid)
        for y, e in enumerate(self.ends):
            ea, eb = divmod(e, w)
            self.ends[y] = ea * (w + 1) + eb + (eb >= q0)

    def insert_row(self, rid, father_column, position: int) -> None:
        w, s = self.width, self.shift
        J = self.col_ids.index(father_column)
        sons = self.column_sons(J)
        Y = self.first_row_ending_at_least(J) + len(sons) - position
        a, y0 = divmod(Y, s)
        self.ends.insert(y0, J - a * w)
        self.row_ids.insert(y0, rid)
        for j, t in enumerate(self.tops):
            ta, tb = divmod(t, s)
            self.tops[j] = ta * (s + 1) + tb + (tb >= y0)

    def delete_column(self, cid) -> None:
        w = self.width
        j0 = self.col_ids.index(cid)
        del self.tops[j0], self.col_ids[j0]
        for y, e in enumerate(self.ends):
            ea, eb = divmod(e, w)
            if eb == j0:
                raise InvariantViolation(f"column {cid} still ends a row")
            self.ends[y] = ea * (w - 1) + eb - (eb > j0)

    def delete_row(self, rid) -> None:
        s = self.shift
        y0 = self.row_ids.index(rid)
        del self.ends[y0], self.row_ids[y0]
        for j, t in enumerate(self.tops):
            ta, tb = divmod(t, s)
            if tb == y0:
                raise InvariantViolation(f"row {rid} still tops a column")
            self.tops[j] = ta * (s - 1) + tb - (tb > y0)

    def to_ppp(self, cut: int = 0, conv: Conventions = DEFAULT) -> PPP:
        """Read one period starting at column ``cut`` back as a PPP."""
        w = self.width
        base = self.bottom(cut)
        spans = [
            (self.bottom(J) - base + 1, self.top(J) - base + 1)
            for J in range(cut, cut + w)
        ]
        mark = self.top(cut - 1) - base + 1
        if conv.seam is Seam.ABOVE_TOP:
            mark += 1
        return make_ppp(spans, mark)


def strip_of(p: PPP, conv: Conventions = DEFAULT) -> Strip:
    """Lift of ``p``; column ``j`` is labelled ``('B', j+1)``, rows ``('W', level)``."""
    s = seam_shift(p, conv)
    if s <= 0:
        raise SpiralRow("copies are level with each other; rows close up")
    w = p.width
    bottoms = [c.bottom - 1 for c in p.columns]
    ends = []
    for y in range(s):
        ends.append(max(j + ((y - bottoms[j]) // s) * w for j in range(w)))
    from .forest import Vertex

    return Strip(
        tops=[c.top - 1 for c in p.columns],
        ends=ends,
        col_ids=[Vertex("B", j + 1) for j in range(w)],
        row_ids=[Vertex("W", y + 1) for y in range(s)],
    )


def lift_columns(p: PPP, conv: Conventions, start: int, stop: int) -> list[ColumnSpan]:
    """Columns ``start..stop-1`` of the glued strip in the PPP's own levels."""
    s, w = seam_shift(p, conv), p.width
    out = []
    for J in range(start, stop):
        a, j = divmod(J, w)
        c = p.columns[j]
        out.append(ColumnSpan(c.bottom + a * s, c.top + a * s))
    return out


def rotate(p: PPP, conv: Conventions = DEFAULT) -> PPP:
    """Move the first column to the end, re-marking at the old first column's top."""
    if p.width == 1:
        return p
    cols = lift_columns(p, conv, 0, p.width + 1)
    base = cols[1].bottom
    spans = [(c.bottom - base + 1, c.top - base + 1) for c in cols[1:]]
    mark = cols[0].top - base + 1
    if conv.seam is Seam.ABOVE_TOP:
        mark += 1
    try:
        return make_ppp(spans, mark)
    except InvariantViolation as exc:
        raise InvalidRotation(f"rotating {encode(p)}: {exc}") from exc


class Orbit(NamedTuple):
    representative: PPP
    size: int
    members: tuple[PPP, ...]


def orbit(p: PPP, conv: Conventions = DEFAULT) -> Orbit:
    members = [p]
    q = rotate(p, conv)
    while q != p:
        members.append(q)
        if len(members) > p.width:
            raise InvalidRotation(f"rotation of {encode(p)} does not close up")
        q = rotate(q, conv)
    rep = min(members, key=encode)
    return Orbit(rep, len(members), tuple(members))


def cells(p: PPP) -> Iterator[tuple[int, int]]:
    for x, c in enumerate(p.columns):
        for y in range(c.bottom, c.top + 1):
            yield x, y


def render_ascii(p: PPP) -> str:
    lines = []
    for y in range(p.pp.rows, 0, -1):
        row = []
        for x, c in enumerate(p.columns):
            if x == 0 and y == p.mark:
                row.append("@")
            elif c.bottom <= y <= c.top:
                row.append("#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines)


_ENC = re.compile(r"PPP1:(\d+\.\.\d+(?:,\d+\.\.\d+)*);m=(\d+)")


def encode(p: PPP) -> str:
    spans = ",".join(f"{c.bottom}..{c.top}" for c in p.columns)
    return f"PPP1:{spans};m={p.mark}"


def decode(text: str) -> PPP:
    match = _ENC.fullmatch(text.strip())
    if not match:
        raise ParseError(f"not a PPP1 encoding: {text!r}")
    spans = [tuple(map(int, s.split(".."))) for s in match.group(1).split(",")]
    return make_ppp(spans, int(match.group(2)))


def trunk(k: int, l: int, conv: Conventions = DEFAULT) -> PPP:
    """Staircase with columns of k+1 cells climbing one level per column.

    The mark is the one making the glued strip a perfect staircase: topmost
    cell under ABOVE_TOP, the cell just below it under TOP_ALIGNED.
    """
    spans = [(j, j + k) for j in range(1, l + 1)]
    mark = k + 1 if conv.seam is Seam.ABOVE_TOP else k
    return make_ppp(spans, mark)


def rectangle(height: int, width: int) -> PPP:
    """Rectangle marked at the top of its first column (the degenerated shape)."""
    return make_ppp([(1, height)] * width, height)
