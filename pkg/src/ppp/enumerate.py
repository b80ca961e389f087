"""Brute-force generators and the calibration harness.

The generators never touch the series module; they are the independent
oracles the generating functions are compared with in :func:`calibrate`.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from . import forest as fo
from . import geometry as geo
from . import necklace as nk
from .errors import InvariantViolation, PPPError, SaturationNotReached

HEIGHT_CEILING = 96


def gen_pps(n: int) -> list[geo.PP]:
    """All PPs with width + number of rows = n."""
    out = []

    def extend(spans):
        b, t = spans[-1]
        w = len(spans)
        if w + t == n:
            out.append(geo.make_pp(spans))
            return
        for b2 in range(b, t + 1):
            for t2 in range(t, n - w):
                extend(spans + [(b2, t2)])

    for t1 in range(1, n):
        extend([(1, t1)])
    return out


def _ppps_with_first_top(first_top: int, max_sp: int, conv: geo.Conventions) -> Iterator[geo.PPP]:
    """Non-degenerated PPPs whose first column is [1..first_top], sp <= max_sp."""
    H = first_top
    # every convention has height >= t_w - mark >= t_w - H, and admissibility
    # forces the last bottom to be <= height + 1 <= max_sp - width + 1
    extra = 1 if conv.height is geo.HeightRule.GEQ_MARK else 0

    def extend(spans):
        yield spans
        b, t = spans[-1]
        w = len(spans) + 1
        for b2 in range(b, min(t, max_sp - w + 1) + 1):
            for t2 in range(max(t, b2), H + max_sp - w + 1):
                yield from extend(spans + [(b2, t2)])

    for spans in extend([(1, H)]):
        w = len(spans)
        b_w, t_w = spans[-1]
        lo = max(1, t_w + w + extra - max_sp)
        hi = min(H, t_w - b_w + 1)
        for m in range(lo, hi + 1):
            p = geo.make_ppp(spans, m)
            if not geo.is_degenerated(p, conv):
                yield p


def _saturating(
    max_sp: int, conv: geo.Conventions, keep: Callable[[geo.PPP], bool], patience: int = 2
) -> list[geo.PPP]:
    found = []
    empty = 0
    for H in range(1, HEIGHT_CEILING + 1):
        layer = [p for p in _ppps_with_first_top(H, max_sp, conv) if keep(p)]
        found.extend(layer)
        empty = 0 if layer else empty + 1
        if empty >= patience and H > max_sp:
            return sorted(found, key=_sort_key)
    raise SaturationNotReached(f"no saturation below first-column height {HEIGHT_CEILING}")


def _sort_key(p: geo.PPP):
    return (p.width + p.columns[-1].top, geo.encode(p))


def thickness_or_none(p: geo.PPP, conv: geo.Conventions) -> int | None:
    try:
        return fo.intrinsic_thickness(p, conv)
    except PPPError:
        return None


@lru_cache(maxsize=64)
def _gen_ppps_cached(max_sp: int, max_thickness: int, conv: geo.Conventions) -> tuple:
    def keep(p):
        k = fo.intrinsic_thickness(p, conv)
        return k <= max_thickness

    return tuple(_saturating(max_sp, conv, keep))


def gen_ppps(
    max_sp: int, max_thickness: int, conv: geo.Conventions = geo.DEFAULT
) -> list[geo.PPP]:
    """All non-degenerated PPPs with sp <= max_sp and thickness <= max_thickness.

    Column heights are not bounded by sp, so the first column's height is
    raised until two consecutive layers contribute nothing.
    """
    return list(_gen_ppps_cached(max_sp, max_thickness, conv))


def gen_bounded_ppps(max_size: int, max_width: int) -> Iterator[geo.PPP]:
    """Every PPP whose columns have size <= max_size and width <= max_width."""

    def extend(cols):
        yield cols
        if len(cols) == max_width:
            return
        b, t = cols[-1]
        for nb in range(b, t + 1):
            for nt in range(max(t, nb), nb + max_size):
                yield from extend(cols + [(nb, nt)])

    for size in range(1, max_size + 1):
        for cols in extend([(1, size)]):
            pp = geo.make_pp(cols)
            for h in range(1, size + 1):
                try:
                    yield geo.make_ppp(pp, h)
                except InvariantViolation:
                    pass


@dataclass
class CountTable:
    counts: Counter = field(default_factory=Counter)

    def add(self, width: int, height: int, thickness: int, n: int = 1) -> None:
        self.counts[width, height, thickness] += n

    def by_sp(self) -> dict[tuple[int, int], int]:
        """(sp, thickness) -> count."""
        out: Counter = Counter()
        for (w, h, k), c in self.counts.items():
            out[w + h, k] += c
        return dict(sorted(out.items()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["width", "height", "thickness", "count"])
        for key in sorted(self.counts):
            writer.writerow([*key, self.counts[key]])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [
            {"width": w, "height": h, "thickness": k, "count": c}
            for (w, h, k), c in sorted(self.counts.items())
        ]
        return json.dumps(rows)


def count_table(
    max_sp: int, max_thickness: int, conv: geo.Conventions = geo.DEFAULT
) -> CountTable:
    table = CountTable()
    for p in gen_ppps(max_sp, max_thickness, conv):
        st = geo.stats(p, conv)
        table.add(st.width, st.height, fo.intrinsic_thickness(p, conv))
    return table


def orbit_counts(
    max_sp: int, max_thickness: int, conv: geo.Conventions = geo.DEFAULT
) -> dict[tuple[int, int], int]:
    """(sp, thickness) -> number of rotation orbits (strips)."""
    return dict(sorted(_orbit_counts_of(gen_ppps(max_sp, max_thickness, conv), conv).items()))


# --- codomain objects --------------------------------------------------------


@lru_cache(maxsize=None)
def trees_of_size(n: int) -> tuple[nk.OrderedTree, ...]:
    """Ordered trees with exactly n non-root vertices."""
    if n == 0:
        return (nk.LEAF,)
    out = []
    # first subtree has i non-root vertices, rest of the root's forest n-1-i
    for i in range(n):
        for first in trees_of_size(i):
            for rest in trees_of_size(n - 1 - i):
                out.append(nk.OrderedTree((first,) + rest.children))
    return tuple(out)


def gen_trees(max_black: int, max_white: int, root: str = nk.BLACK) -> list[nk.OrderedTree]:
    """Ordered trees rooted at ``root`` with at most the given non-root colour counts."""
    out = []
    for n in range(max_black + max_white + 1):
        for t in trees_of_size(n):
            b, w = t.colored_size(root)
            if b <= max_black and w <= max_white:
                out.append(t)
    return out


@lru_cache(maxsize=None)
def tuples_of_weight(weight: int) -> tuple[nk.FourTuple, ...]:
    out = []
    for sizes in itertools.product(range(weight - 1), repeat=4):
        if sum(sizes) != weight - 2:
            continue
        for trees in itertools.product(*(trees_of_size(s) for s in sizes)):
            out.append(nk.FourTuple(*trees))
    return tuple(out)


def gen_4tuples(max_weight: int) -> list[nk.FourTuple]:
    return [t for w in range(2, max_weight + 1) for t in tuples_of_weight(w)]


def sequences_of_weight(weight: int) -> Iterator[tuple[nk.FourTuple, ...]]:
    if weight == 0:
        yield ()
        return
    for w in range(2, weight + 1):
        for head in tuples_of_weight(w):
            for rest in sequences_of_weight(weight - w):
                yield (head,) + rest


def gen_necklaces(max_weight: int) -> list[nk.Necklace]:
    found = set()
    for w in range(2, max_weight + 1):
        for seq in sequences_of_weight(w):
            found.add(nk.canonicalize(seq))
    return sorted(found, key=lambda n: (sum(n.weight), n.encode()))


def marked_tuples_of_weight(weight: int) -> Iterator[nk.MarkedSequence]:
    for t in tuples_of_weight(weight):
        yield nk.MarkedSequence((t,), nk.ROOTS)
        for addr in nk.black_addresses(t):
            yield nk.MarkedSequence((t,), addr)


def gen_marked(max_weight: int) -> list[nk.MarkedSequence]:
    """4-tuples with the two black roots or one non-root black vertex marked."""
    return [m for w in range(2, max_weight + 1) for m in marked_tuples_of_weight(w)]


def marked_sequences_of_weight(weight: int) -> Iterator[nk.MarkedSequence]:
    for w in range(2, weight + 1):
        for head in marked_tuples_of_weight(w):
            for rest in sequences_of_weight(weight - w):
                yield nk.MarkedSequence(head.seq + rest, head.mark)


def gen_marked_sequences(max_weight: int) -> Iterator[nk.MarkedSequence]:
    for w in range(2, max_weight + 1):
        yield from marked_sequences_of_weight(w)


def weight_counts(objects) -> Counter:
    """(blacks, whites) -> count, for tuples, necklaces or marked sequences."""
    out: Counter = Counter()
    for o in objects:
        out[o.weight if not isinstance(o, nk.FourTuple) else nk.tuple_weight(o)] += 1
    return out


# --- calibration -------------------------------------------------------------

PROPERTIES = (
    "trunk_shape",
    "forest_valid",
    "vertex_count_is_sp",
    "cycles_equal_even",
    "psi_roundtrip",
    "rotation",
    "p1_coefficients",
    "polya_orbits",
)


def _check_one(p: geo.PPP, conv: geo.Conventions) -> dict[str, str | None]:
    """Per-object properties; value is None on success, else a reason."""
    out: dict[str, str | None] = {}
    sp = geo.stats(p, conv).semi_perimeter
    try:
        f = fo.phi(p, conv).forest
        problems = fo.forest_problems(f)
        out["forest_valid"] = "; ".join(problems) or None
        out["vertex_count_is_sp"] = None if len(f) == sp else f"{len(f)} vertices, sp {sp}"
        sizes = {len(c) for c in fo.cycles(f)}
        ok = len(sizes) == 1 and sizes.pop() % 2 == 0
        out["cycles_equal_even"] = None if ok else "cycle sizes differ or are odd"
    except PPPError as exc:
        for key in ("forest_valid", "vertex_count_is_sp", "cycles_equal_even"):
            out[key] = f"{type(exc).__name__}: {exc}"
    try:
        k, ms = nk.psi(p, conv)
        back = nk.psi_inverse(k, ms, conv)
        out["psi_roundtrip"] = None if back == p else f"came back as {geo.encode(back)}"
    except PPPError as exc:
        out["psi_roundtrip"] = f"{type(exc).__name__}: {exc}"
    try:
        q = p
        for _ in range(p.width):
            q = geo.rotate(q, conv)
            if geo.stats(q, conv).semi_perimeter != sp:
                raise geo.InvalidRotation("rotation changed sp")
        out["rotation"] = None if q == p else "r^width is not the identity"
    except PPPError as exc:
        out["rotation"] = f"{type(exc).__name__}: {exc}"
    return out


def _first_mismatch(found: dict, expected: dict):
    for key in sorted(set(found) | set(expected)):
        if found.get(key, 0) != expected.get(key, 0):
            return {"cell": list(key), "expected": expected.get(key, 0), "found": found.get(key, 0)}
    return None


def calibrate_one(max_sp: int, max_thickness: int, conv: geo.Conventions) -> dict:
    from . import series

    broken: list[tuple[geo.PPP, str]] = []

    def keep(p):
        try:
            return fo.intrinsic_thickness(p, conv) <= max_thickness
        except PPPError as exc:
            broken.append((p, f"{type(exc).__name__}: {exc}"))
            return False

    population = _saturating(max_sp, conv, keep)
    results: dict[str, dict] = {}
    failures: dict[str, tuple] = {}
    if broken:
        p, why = min(broken, key=lambda pw: _sort_key(pw[0]))
        failures["trunk_shape"] = (p, why)
    for p in population:
        for prop, why in _check_one(p, conv).items():
            if why is not None and prop not in failures:
                failures[prop] = (p, why)

    table = CountTable()
    for p in population:
        st = geo.stats(p, conv)
        table.add(st.width, st.height, fo.intrinsic_thickness(p, conv))
    _, _, p1 = series.ppp_zpart(max_sp)
    expected = {
        (w, h, k): int(p1[w, h])
        for w in range(1, max_sp)
        for h in range(1, max_sp - w + 1)
        for k in range(1, max_thickness + 1)
    }
    expected = {key: v for key, v in expected.items() if v}
    p1_bad = _first_mismatch(dict(table.counts), expected)

    polya = series.polya_S(max_sp).integers()
    expected_orbits = {
        (sp, k): polya[sp]
        for sp in range(2, max_sp + 1)
        for k in range(1, max_thickness + 1)
        if polya[sp]
    }
    try:
        found_orbits = _orbit_counts_of(population, conv)
        orbit_bad = _first_mismatch(found_orbits, expected_orbits)
    except PPPError as exc:
        orbit_bad = {"error": f"{type(exc).__name__}: {exc}"}

    for prop in PROPERTIES:
        if prop == "p1_coefficients":
            results[prop] = {"pass": p1_bad is None, "counterexample": p1_bad}
        elif prop == "polya_orbits":
            results[prop] = {"pass": orbit_bad is None, "counterexample": orbit_bad}
        elif prop in failures:
            p, why = failures[prop]
            results[prop] = {"pass": False, "counterexample": {"ppp": geo.encode(p), "reason": why}}
        else:
            results[prop] = {"pass": True, "counterexample": None}
    return {
        "conventions": str(conv),
        "population": len(population),
        "properties": results,
        "passes_all": all(r["pass"] for r in results.values()),
        "coefficients_match": results["p1_coefficients"]["pass"] and results["polya_orbits"]["pass"],
    }


def _orbit_counts_of(population, conv) -> dict:
    seen = set()
    out: Counter = Counter()
    for p in population:
        if p in seen:
            continue
        seen.update(geo.orbit(p, conv).members)
        out[geo.stats(p, conv).semi_perimeter, fo.intrinsic_thickness(p, conv)] += 1
    return dict(out)


def calibrate(max_sp: int, max_thickness: int) -> dict:
    """Run the property battery under every convention combination."""
    if max_sp < 2 or max_thickness < 1:
        raise ValueError("need max_sp >= 2 and max_thickness >= 1")
    combos = [calibrate_one(max_sp, max_thickness, c) for c in geo.Conventions.all_combinations()]
    return {
        "max_sp": max_sp,
        "max_thickness": max_thickness,
        "combinations": combos,
        "passing_all": [c["conventions"] for c in combos if c["passes_all"]],
        "coefficients_match": [c["conventions"] for c in combos if c["coefficients_match"]],
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
