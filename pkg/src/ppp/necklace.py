"""Ordered trees, 4-tuples, necklaces and marked sequences; the maps psi and psi^-1.

A 4-tuple describes one trunk column: its BLACK cycle vertex (the column) and
the WHITE cycle vertex that is its cycle-son (the row ending in it).  Each
vertex's sons split around its cycle-son into the bigger ones and the smaller
ones, giving trees ``t1, t2`` (black roots) and ``t3, t4`` (white roots).
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import forest as fo
from . import geometry as geo
from .errors import InvalidMark, ParseError

BLACK, WHITE = fo.BLACK, fo.WHITE


def _other(color: str) -> str:
    return WHITE if color == BLACK else BLACK


@dataclass(frozen=True)
class OrderedTree:
    children: tuple["OrderedTree", ...] = ()

    @property
    def size(self) -> int:
        """Number of non-root vertices."""
        return sum(1 + c.size for c in self.children)

    def colored_size(self, root: str) -> tuple[int, int]:
        """(non-root blacks, non-root whites) when the root has color ``root``."""
        blacks = whites = 0
        child = _other(root)
        for c in self.children:
            b, w = c.colored_size(child)
            blacks, whites = blacks + b, whites + w
            if child == BLACK:
                blacks += 1
            else:
                whites += 1
        return blacks, whites

    def encode(self) -> str:
        return "".join(f"({c.encode()})" for c in self.children)

    @classmethod
    def decode(cls, text: str) -> "OrderedTree":
        stack = [[]]
        for ch in text:
            if ch == "(":
                stack.append([])
            elif ch == ")":
                if len(stack) < 2:
                    raise ParseError(f"unbalanced tree {text!r}")
                kids = stack.pop()
                stack[-1].append(cls(tuple(kids)))
            else:
                raise ParseError(f"bad tree character {ch!r}")
        if len(stack) != 1:
            raise ParseError(f"unbalanced tree {text!r}")
        return cls(tuple(stack[0]))


LEAF = OrderedTree()
SLOT_COLORS = (BLACK, BLACK, WHITE, WHITE)


@dataclass(frozen=True)
class FourTuple:
    t1: OrderedTree = LEAF
    t2: OrderedTree = LEAF
    t3: OrderedTree = LEAF
    t4: OrderedTree = LEAF

    @property
    def trees(self) -> tuple[OrderedTree, ...]:
        return (self.t1, self.t2, self.t3, self.t4)

    def encode(self) -> str:
        return "(" + "|".join(t.encode() for t in self.trees) + ")"

    @classmethod
    def decode(cls, text: str) -> "FourTuple":
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError(f"not a 4-tuple: {text!r}")
        parts = text[1:-1].split("|")
        if len(parts) != 4:
            raise ParseError(f"4-tuple needs four trees: {text!r}")
        return cls(*(OrderedTree.decode(p) for p in parts))

    def __lt__(self, other: "FourTuple") -> bool:
        return self.encode() < other.encode()


def tuple_weight(ft: FourTuple) -> tuple[int, int]:
    blacks = whites = 1
    for tree, color in zip(ft.trees, SLOT_COLORS):
        b, w = tree.colored_size(color)
        blacks, whites = blacks + b, whites + w
    return blacks, whites


def black_addresses(ft: FourTuple) -> list[tuple[int, ...]]:
    """Addresses (slot, child path...) of every non-root BLACK vertex."""
    out = []

    def walk(tree, color, path):
        for i, c in enumerate(tree.children):
            here = path + (i,)
            if _other(color) == BLACK:
                out.append(here)
            walk(c, _other(color), here)

    for slot, (tree, color) in enumerate(zip(ft.trees, SLOT_COLORS)):
        walk(tree, color, (slot,))
    return out


@dataclass(frozen=True)
class Necklace:
    tuples: tuple[FourTuple, ...]

    def encode(self) -> str:
        return ";".join(t.encode() for t in self.tuples)

    @property
    def weight(self) -> tuple[int, int]:
        ws = [tuple_weight(t) for t in self.tuples]
        return sum(b for b, _ in ws), sum(w for _, w in ws)


def canonicalize(seq: Sequence[FourTuple]) -> Necklace:
    seq = tuple(seq)
    if not seq:
        raise ValueError("empty sequence")
    keys = [t.encode() for t in seq]
    best = min(range(len(seq)), key=lambda i: keys[i:] + keys[:i])
    return Necklace(seq[best:] + seq[:best])


ROOTS = None


@dataclass(frozen=True)
class MarkedSequence:
    """Sequence of 4-tuples; ``mark`` is ROOTS (None) or an address in ``seq[0]``."""

    seq: tuple[FourTuple, ...]
    mark: tuple[int, ...] | None = ROOTS

    def __post_init__(self):
        if not self.seq:
            raise InvalidMark("sequence must be nonempty")
        if self.mark is not None and tuple(self.mark) not in black_addresses(self.seq[0]):
            raise InvalidMark(f"{self.mark} is not a non-root black vertex of seq[0]")

    @property
    def weight(self) -> tuple[int, int]:
        ws = [tuple_weight(t) for t in self.seq]
        return sum(b for b, _ in ws), sum(w for _, w in ws)

    def encode(self) -> str:
        body = ";".join(t.encode() for t in self.seq)
        mark = "roots" if self.mark is None else ".".join(map(str, self.mark))
        return f"{body}!{mark}"

    @classmethod
    def decode(cls, text: str) -> "MarkedSequence":
        body, sep, mark = text.strip().rpartition("!")
        if not sep:
            raise ParseError("missing mark suffix")
        seq = tuple(FourTuple.decode(p) for p in body.split(";"))
        if mark == "roots":
            return cls(seq, ROOTS)
        if not re.fullmatch(r"\d+(\.\d+)*", mark):
            raise ParseError(f"bad mark {mark!r}")
        return cls(seq, tuple(int(x) for x in mark.split(".")))


# --- psi ---------------------------------------------------------------------


def _subtree(f: fo.OrderedCyclicForest, v) -> OrderedTree:
    return OrderedTree(tuple(_subtree(f, s) for s in f.sons[v]))


def _split(f, v, cycle_son):
    sons = f.sons[v]
    i = sons.index(cycle_son)
    big = OrderedTree(tuple(_subtree(f, s) for s in sons[:i]))
    small = OrderedTree(tuple(_subtree(f, s) for s in sons[i + 1:]))
    return big, small


def psi(p: geo.PPP, conv: geo.Conventions = geo.DEFAULT) -> tuple[int, MarkedSequence]:
    k = fo.prune_ppp(p, conv).k
    f = fo.phi(p, conv).forest
    on_cycle = fo.cycle_vertices(f)
    columns = [v for v in (fo.Vertex(BLACK, j) for j in range(1, p.width + 1)) if v in on_cycle]
    partner = {}
    for b in columns:
        partner[b] = next(s for s in f.sons[b] if s in on_cycle)
    tuples = []
    for b in columns:
        w = partner[b]
        cycle_son = next(s for s in f.sons[w] if s in on_cycle)
        t1, t2 = _split(f, b, w)
        t3, t4 = _split(f, w, cycle_son)
        tuples.append(FourTuple(t1, t2, t3, t4))

    mark_vertex = fo.Vertex(BLACK, 1)
    path = [mark_vertex]
    while path[-1] not in on_cycle:
        path.append(f.father[path[-1]])
    path.reverse()
    root = path[0]
    owner = root if root.color == BLACK else f.father[root]
    start = columns.index(owner)
    seq = tuple(tuples[start:] + tuples[:start])
    if len(path) == 1:
        return k, MarkedSequence(seq, ROOTS)
    root_sons = f.sons[root]
    pos = root_sons.index(path[1])
    cut = next(i for i, s in enumerate(root_sons) if s in on_cycle)
    base = 0 if root.color == BLACK else 2
    address = [base, pos] if pos < cut else [base + 1, pos - cut - 1]
    for a, b in zip(path[1:], path[2:]):
        address.append(f.sons[a].index(b))
    return k, MarkedSequence(seq, tuple(address))


def psi_strip(p: geo.PPP, conv: geo.Conventions = geo.DEFAULT) -> tuple[int, Necklace]:
    k, ms = psi(p, conv)
    return k, canonicalize(ms.seq)


def trunk_strip(k: int, l: int) -> geo.Strip:
    """Lift of the thickness-k staircase with l columns per period.

    Column ``i`` is ``('B', i)``; the row ending in it is ``('W', i)``.
    """
    return geo.Strip(
        tops=[j + k for j in range(l)],
        ends=list(range(l)),
        col_ids=[fo.Vertex(BLACK, i) for i in range(l)],
        row_ids=[fo.Vertex(WHITE, i) for i in range(l)],
    )


def psi_inverse(k: int, ms: MarkedSequence, conv: geo.Conventions = geo.DEFAULT) -> geo.PPP:
    if k < 1:
        raise ValueError("thickness must be >= 1")
    strip = trunk_strip(k, len(ms.seq))
    fresh = itertools.count(len(ms.seq))
    addresses = {}
    # (father, son position, subtree, address of the son)
    queue = deque()
    for i, ft in enumerate(ms.seq):
        for v, big, small, slot in (
            (fo.Vertex(BLACK, i), ft.t1, ft.t2, 0),
            (fo.Vertex(WHITE, i), ft.t3, ft.t4, 2),
        ):
            # final son list of v: big..., cycle-son, small...
            n_big = len(big.children)
            for pos, child in enumerate(big.children):
                queue.append((v, pos, child, (i, slot, pos)))
            for j, child in enumerate(small.children):
                queue.append((v, n_big + 1 + j, child, (i, slot + 1, j)))
    while queue:
        v, pos, tree, address = queue.popleft()
        u = fo.Vertex(_other(v.color), next(fresh))
        if u.color == BLACK:
            strip.insert_column(u, v, pos)
        else:
            strip.insert_row(u, v, pos)
        addresses[address] = u
        for j, child in enumerate(tree.children):
            queue.append((u, j, child, address + (j,)))

    marked = fo.Vertex(BLACK, 0)
    if ms.mark is not None:
        marked = addresses.get((0,) + tuple(ms.mark))
        if marked is None or marked.color != BLACK:
            raise InvalidMark(f"mark {ms.mark} does not name a black vertex")
    return strip.to_ppp(strip.col_ids.index(marked), conv)
