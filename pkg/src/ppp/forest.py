"""Ordered cyclic forests, the map from PPPs to them, pruning and thickness."""

from __future__ import annotations

import heapq
from functools import lru_cache
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from . import geometry as geo
from .errors import DegeneratedInput, TrunkShapeMismatch

BLACK, WHITE = "B", "W"
COLUMN, ROW = "COLUMN", "ROW"


class Vertex(NamedTuple):
    """A column role (BLACK) or a cylinder-row role (WHITE)."""

    color: str
    index: int

    def __str__(self) -> str:
        return f"{self.color}{self.index}"


@dataclass(frozen=True)
class OrderedCyclicForest:
    father: Mapping[Vertex, Vertex]
    sons: Mapping[Vertex, tuple[Vertex, ...]]

    @property
    def vertices(self) -> list[Vertex]:
        return sorted(self.father)

    def __len__(self) -> int:
        return len(self.father)

    @classmethod
    def from_sons(cls, sons: Mapping[Vertex, tuple]) -> "OrderedCyclicForest":
        father = {s: v for v, ss in sons.items() for s in ss}
        full = {v: tuple(sons.get(v, ())) for v in father}
        return cls(father, full)


@dataclass(frozen=True)
class MarkedForest:
    forest: OrderedCyclicForest
    mark: Vertex


class Removal(NamedTuple):
    leaf: Vertex
    father: Vertex
    position: int
    role: str


def forest_problems(f: OrderedCyclicForest) -> list[str]:
    """Every violated invariant of an ordered cyclic forest, as text."""
    problems = []
    verts = set(f.father)
    if set(f.sons) != verts:
        problems.append("sons and father have different vertex sets")
    for v, u in f.father.items():
        if u not in verts:
            problems.append(f"father of {v} is not a vertex")
        elif u.color == v.color:
            problems.append(f"{v} -> {u} does not flip color")
    for v in verts:
        listed = f.sons.get(v, ())
        fiber = {s for s in verts if f.father[s] == v}
        if len(set(listed)) != len(listed) or set(listed) != fiber:
            problems.append(f"son list of {v} is not the fiber of father")
    if problems:
        return problems
    # each component has as many edges as vertices, so one cycle per component
    comp = {v: v for v in verts}

    def find(v):
        while comp[v] != v:
            comp[v] = comp[comp[v]]
            v = comp[v]
        return v

    for v, u in f.father.items():
        comp[find(v)] = find(u)
    roots = {find(v) for v in verts}
    if len(cycles(f)) != len(roots):
        problems.append("a component does not contain exactly one cycle")
    return problems


def validate_forest(f: OrderedCyclicForest) -> bool:
    return not forest_problems(f)


def cycles(f: OrderedCyclicForest) -> list[tuple[Vertex, ...]]:
    """Cycles of the father map, each starting at its smallest vertex."""
    seen: set = set()
    found = []
    for start in f.vertices:
        path, index = [], {}
        v = start
        while v not in index and v not in seen:
            index[v] = len(path)
            path.append(v)
            v = f.father[v]
        if v in index:
            cyc = path[index[v]:]
            i = cyc.index(min(cyc))
            found.append(tuple(cyc[i:] + cyc[:i]))
        seen.update(path)
    return sorted(found)


def cycle_vertices(f: OrderedCyclicForest) -> set[Vertex]:
    return {v for c in cycles(f) for v in c}


def forest_of_strip(strip: geo.Strip) -> OrderedCyclicForest:
    w, s = strip.width, strip.shift
    father, sons = {}, {}
    for j, cid in enumerate(strip.col_ids):
        father[cid] = strip.row_ids[strip.tops[j] % s]
        sons[cid] = tuple(strip.row_ids[Y % s] for Y in reversed(strip.column_sons(j)))
    for y, rid in enumerate(strip.row_ids):
        father[rid] = strip.col_ids[strip.ends[y] % w]
        sons[rid] = tuple(strip.col_ids[J % w] for J in reversed(strip.row_sons(y)))
    return OrderedCyclicForest(father, sons)


def phi(p: geo.PPP, conv: geo.Conventions = geo.DEFAULT) -> MarkedForest:
    """Ordered cyclic forest of a non-degenerated PPP, marked at its first column."""
    if geo.is_degenerated(p, conv):
        raise DegeneratedInput(f"{geo.encode(p)} is degenerated")
    strip = geo.strip_of(p, conv)
    return MarkedForest(forest_of_strip(strip), Vertex(BLACK, 1))


def prune(mf: MarkedForest) -> tuple[OrderedCyclicForest, list[Removal]]:
    f = mf.forest
    sons = {v: list(ss) for v, ss in f.sons.items()}
    heap = [v for v, ss in sons.items() if not ss]
    heapq.heapify(heap)
    log = []
    while heap:
        leaf = heapq.heappop(heap)
        dad = f.father[leaf]
        pos = sons[dad].index(leaf)
        del sons[dad][pos]
        del sons[leaf]
        log.append(Removal(leaf, dad, pos, COLUMN if leaf.color == BLACK else ROW))
        if not sons[dad]:
            heapq.heappush(heap, dad)
    return OrderedCyclicForest.from_sons({v: tuple(ss) for v, ss in sons.items()}), log


def unprune(
    trunk_forest: OrderedCyclicForest, log: list[Removal], mark: Vertex
) -> MarkedForest:
    sons = {v: list(ss) for v, ss in trunk_forest.sons.items()}
    for leaf, dad, pos, _ in reversed(log):
        sons[dad].insert(pos, leaf)
        sons[leaf] = []
    return MarkedForest(
        OrderedCyclicForest.from_sons({v: tuple(ss) for v, ss in sons.items()}), mark
    )


class Trunk(NamedTuple):
    ppp: geo.PPP
    k: int
    l: int


def replay_on_strip(strip: geo.Strip, log: list[Removal]) -> None:
    for removal in log:
        if removal.role == COLUMN:
            strip.delete_column(removal.leaf)
        else:
            strip.delete_row(removal.leaf)


def trunk_parameters(p: geo.PPP, conv: geo.Conventions = geo.DEFAULT) -> tuple[int, int]:
    """(k, l) if ``p`` has the staircase trunk shape, else TrunkShapeMismatch."""
    cols = p.columns
    k, l = cols[0].size - 1, len(cols)
    if k >= 1 and p == geo.trunk(k, l, conv):
        return k, l
    raise TrunkShapeMismatch(f"{geo.encode(p)} is not a staircase trunk")


@lru_cache(maxsize=1 << 17)
def prune_ppp(p: geo.PPP, conv: geo.Conventions = geo.DEFAULT) -> Trunk:
    mf = phi(p, conv)
    _, log = prune(mf)
    strip = geo.strip_of(p, conv)
    replay_on_strip(strip, log)
    alive = set(strip.col_ids)
    first = next(Vertex(BLACK, j) for j in range(1, p.width + 1) if Vertex(BLACK, j) in alive)
    t = strip.to_ppp(strip.col_ids.index(first), conv)
    k, l = trunk_parameters(t, conv)
    return Trunk(t, k, l)


def intrinsic_thickness(p: geo.PPP, conv: geo.Conventions = geo.DEFAULT) -> int:
    return prune_ppp(p, conv).k


# --- text encodings ----------------------------------------------------------


def _encode_vertex(f, v, on_cycle, label, mark):
    head = f"{v}" if label else v.color
    if mark is not None and v == mark:
        head += "!"
    parts = ["*" if s in on_cycle else _encode_vertex(f, s, on_cycle, label, mark) for s in f.sons[v]]
    return head + (f"({' '.join(parts)})" if parts else "")


def encode_forest(
    f: OrderedCyclicForest, mark: Vertex | None = None, labels: bool = True
) -> str:
    """Deterministic text form; with ``labels=False`` it is an isomorphism invariant.

    Each component prints its cycle as ``(v1 v2 ...)*`` following the father
    map; every cycle vertex carries its parenthesised son list in which the
    son on the cycle is written ``*``.
    """
    on_cycle = cycle_vertices(f)
    comps = []
    for cyc in cycles(f):
        encs = [_encode_vertex(f, v, on_cycle, labels, mark) for v in cyc]
        if not labels:
            encs = min(encs[i:] + encs[:i] for i in range(len(encs)))
        comps.append("(" + " ".join(encs) + ")*")
    return " ".join(sorted(comps))


def isomorphic(f: OrderedCyclicForest, g: OrderedCyclicForest) -> bool:
    return encode_forest(f, labels=False) == encode_forest(g, labels=False)
