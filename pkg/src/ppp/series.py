"""Exact truncated power series and the generating-function pipelines.

Coefficients are :class:`fractions.Fraction`; integrality is asserted only
where a pipeline hands counts back to the caller.  Bivariate series are
truncated by total degree, the first variable counting black vertices
(columns, width) and the second white ones (rows, height).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadValuation, NonIntegralCoefficient, NonInvertible


@dataclass(frozen=True)
class Series1:
    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, coeffs: Sequence, order: int) -> "Series1":
        c = [Fraction(x) for x in coeffs[: order + 1]]
        c += [Fraction(0)] * (order + 1 - len(c))
        return cls(tuple(c))

    @classmethod
    def z(cls, order: int) -> "Series1":
        return cls.of([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def __add__(self, other):
        other = _lift1(other, self.order)
        return Series1(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Series1(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift1(other, self.order))

    def __rsub__(self, other):
        return _lift1(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series1(tuple(a * other for a in self.coeffs))
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return Series1(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Series1.of([1], self.order)
        for _ in range(e):
            out = out * self
        return out

    def valuation(self) -> int | None:
        return next((i for i, c in enumerate(self.coeffs) if c), None)

    def integers(self) -> list[int]:
        return [_as_int(c, f"z^{i}") for i, c in enumerate(self.coeffs)]


def _lift1(x, order):
    return x if isinstance(x, Series1) else Series1.of([x], order)


def _as_int(c: Fraction, where: str) -> int:
    if c.denominator != 1:
        raise NonIntegralCoefficient(f"coefficient {c} at {where}")
    return c.numerator


def ps_add(f, g):
    return f + g


def ps_mul(f, g):
    return f * g


def ps_inv(f: Series1) -> Series1:
    if f[0] == 0:
        raise NonInvertible("constant term is zero")
    n = f.order
    out = [Fraction(1) / f[0]]
    for k in range(1, n + 1):
        acc = sum((f[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
        out.append(-acc / f[0])
    return Series1(tuple(out))


def ps_neg_log1m(f: Series1) -> Series1:
    """-log(1 - f) = sum_{m>=1} f^m / m."""
    if f[0] != 0:
        raise BadValuation("-log(1-f) needs f(0) = 0")
    out = Series1.of([], f.order)
    power = Series1.of([1], f.order)
    for m in range(1, f.order + 1):
        power = power * f
        if power.valuation() is None:
            break
        out = out + power * Fraction(1, m)
    return out


def ps_subst_power(f: Series1, i: int) -> Series1:
    if i < 1:
        raise ValueError("substitution power must be >= 1")
    out = [Fraction(0)] * (f.order + 1)
    for n, c in enumerate(f.coeffs):
        if n * i > f.order:
            break
        out[n * i] = c
    return Series1(tuple(out))


def ps_z_dz(f: Series1) -> Series1:
    return Series1(tuple(n * c for n, c in enumerate(f.coeffs)))


@dataclass(frozen=True)
class Series2:
    """Bivariate series; ``coeffs[a][b]`` is the coefficient of x^a y^b, a+b <= order."""

    coeffs: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def zero(cls, order: int) -> "Series2":
        return cls(tuple((Fraction(0),) * (order + 1 - a) for a in range(order + 1)))

    @classmethod
    def monomial(cls, a: int, b: int, order: int, c=1) -> "Series2":
        rows = [list(r) for r in cls.zero(order).coeffs]
        if a + b <= order:
            rows[a][b] = Fraction(c)
        return cls(tuple(tuple(r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, ab: tuple[int, int]) -> Fraction:
        a, b = ab
        if a < 0 or b < 0 or a + b > self.order:
            return Fraction(0)
        return self.coeffs[a][b]

    def items(self):
        for a, row in enumerate(self.coeffs):
            for b, c in enumerate(row):
                yield (a, b), c

    def _lift(self, x):
        return x if isinstance(x, Series2) else Series2.monomial(0, 0, self.order, x)

    def __add__(self, other):
        other = self._lift(other)
        return Series2(
            tuple(tuple(p + q for p, q in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return Series2(tuple(tuple(-c for c in r) for r in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        n = self.order
        if isinstance(other, (int, Fraction)):
            return Series2(tuple(tuple(c * other for c in r) for r in self.coeffs))
        out = [[Fraction(0)] * (n + 1 - a) for a in range(n + 1)]
        terms = [(a, b, c) for (a, b), c in other.items() if c]
        for (a, b), c in self.items():
            if not c:
                continue
            for a2, b2, c2 in terms:
                if a + a2 + b + b2 <= n:
                    out[a + a2][b + b2] += c * c2
        return Series2(tuple(tuple(r) for r in out))

    __rmul__ = __mul__

    def swap(self) -> "Series2":
        return Series2(
            tuple(tuple(self[b, a] for b in range(self.order + 1 - a)) for a in range(self.order + 1))
        )

    def diagonal(self) -> Series1:
        n = self.order
        return Series1(tuple(sum((self[a, d - a] for a in range(d + 1)), Fraction(0)) for d in range(n + 1)))

    def black_z_dz(self) -> "Series2":
        return Series2(tuple(tuple(a * c for c in r) for a, r in enumerate(self.coeffs)))

    def integers(self) -> list[list[int]]:
        return [[_as_int(c, f"x^{a} y^{b}") for b, c in enumerate(r)] for a, r in enumerate(self.coeffs)]


def ps2_inv(f: Series2) -> Series2:
    c0 = f[0, 0]
    if c0 == 0:
        raise NonInvertible("constant term is zero")
    n = f.order
    g = {}
    for d in range(n + 1):
        for a in range(d + 1):
            b = d - a
            if d == 0:
                g[a, b] = 1 / c0
                continue
            acc = Fraction(0)
            for i in range(a + 1):
                for j in range(b + 1):
                    if (i, j) != (0, 0) and f[i, j]:
                        acc += f[i, j] * g[a - i, b - j]
            g[a, b] = -acc / c0
    return Series2(tuple(tuple(g[a, b] for b in range(n + 1 - a)) for a in range(n + 1)))


# --- pipelines ---------------------------------------------------------------


def catalan_A(order: int) -> Series1:
    """Ordered trees by non-root vertices: fixed point of A = 1/(1 - zA)."""
    z = Series1.z(order)
    a = Series1.of([1], order)
    for _ in range(order + 1):
        a = ps_inv(1 - z * a)
    return a


def bicolored(order: int) -> tuple[Series2, Series2]:
    """(black-rooted, white-rooted) ordered trees by non-root (blacks, whites)."""
    zb = Series2.monomial(1, 0, order)
    zw = Series2.monomial(0, 1, order)
    ab = aw = Series2.monomial(0, 0, order)
    for _ in range(order + 1):
        ab, aw = ps2_inv(1 - zw * aw), ps2_inv(1 - zb * ab)
    return ab, aw


def gf_G(order: int) -> Series1:
    a = catalan_A(order)
    return Series1.of([0, 0, 1], order) * a**4


def euler_phi(i: int) -> int:
    if i < 1:
        raise ValueError("phi needs i >= 1")
    if i == 1:
        return 1
    return sum(1 for k in range(1, i) if math.gcd(k, i) == 1)


def polya_S(order: int) -> Series1:
    """Necklaces of 4-tuples of ordered trees, z counting vertices."""
    g = gf_G(order)
    out = Series1.of([], order)
    for i in range(1, order // 2 + 1):
        out = out + ps_neg_log1m(ps_subst_power(g, i)) * Fraction(euler_phi(i), i)
    out.integers()
    return out


def ppp_zpart(order: int) -> tuple[Series2, Series2, Series2]:
    """(Q, M, P1): 4-tuples, marked 4-tuples, and marked sequences of 4-tuples."""
    ab, aw = bicolored(order)
    q = Series2.monomial(1, 1, order) * ab * ab * aw * aw
    m = q.black_z_dz()
    p1 = m * ps2_inv(1 - q)
    for s in (q, m, p1):
        s.integers()
    return q, m, p1


def dyck_area_sum(n: int) -> int:
    """Total area under all Dyck paths of semi-length n (trapezoid rule per step)."""
    if n < 1:
        raise ValueError("n >= 1")
    # paths[h] = (number of prefixes ending at height h, their summed doubled area)
    paths = {0: (1, 0)}
    for _ in range(2 * n):
        nxt: dict[int, tuple[int, int]] = {}
        for h, (cnt, area2) in paths.items():
            for h2 in (h + 1, h - 1):
                if h2 < 0:
                    continue
                c0, a0 = nxt.get(h2, (0, 0))
                nxt[h2] = (c0 + cnt, a0 + area2 + cnt * (h + h2))
        paths = nxt
    return paths[0][1] // 2


def to_json(series: Series1 | Series2, var: str) -> str:
    coeffs = series.integers()
    if isinstance(series, Series1):
        payload = [str(c) for c in coeffs]
    else:
        payload = [[str(c) for c in row] for row in coeffs]
    return json.dumps({"var": var, "order": series.order, "coeffs": payload})
