"""Finite metric tables, ultrametric checks, product ultrametrics and quotients.

All comparisons are exact when tables hold ints or Fractions, so the checks
here can serve as oracles for the r-adic module.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .scalar import as_rational

__all__ = [
    "InvarianceError",
    "FiniteMetric",
    "DecaySeq",
    "product_ultrametric",
    "is_ultrametric",
    "triangle_witness",
    "open_ball",
    "closed_ball",
    "quotient_metric",
    "discrete_metric",
]


class InvarianceError(ValueError):
    def __init__(self, x, y, h):
        super().__init__(f"metric not invariant: d({x}+{h}, {y}+{h}) != d({x}, {y})")
        self.witness = (x, y, h)


@dataclass(frozen=True)
class FiniteMetric:
    """A distance table on a finite list of labelled points."""

    points: tuple
    table: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        tab = tuple(tuple(row) for row in self.table)
        n = len(pts)
        if len(tab) != n or any(len(r) != n for r in tab):
            raise ValueError("table must be square with one row per point")
        for i in range(n):
            if tab[i][i] != 0:
                raise ValueError(f"nonzero diagonal at {pts[i]!r}")
            for j in range(i + 1, n):
                if tab[i][j] != tab[j][i]:
                    raise ValueError(f"asymmetric at ({pts[i]!r}, {pts[j]!r})")
                if not tab[i][j] > 0:
                    raise ValueError(f"distinct points {pts[i]!r}, {pts[j]!r} at distance {tab[i][j]}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "table", tab)

    @classmethod
    def from_function(cls, points, d: Callable) -> "FiniteMetric":
        pts = tuple(points)
        return cls(pts, [[d(x, y) for y in pts] for x in pts])

    def index(self, x) -> int:
        return self.points.index(x)

    def d(self, x, y):
        return self.table[self.index(x)][self.index(y)]

    def __len__(self):
        return len(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(p) for p in self.points])
        for p, row in zip(self.points, self.table):
            w.writerow([str(p)] + [str(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "FiniteMetric":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty CSV")
        header = rows[0][1:]
        table = []
        labels = []
        for r in rows[1:]:
            if not r:
                continue
            labels.append(r[0])
            table.append([_parse_number(v) for v in r[1:]])
        if labels != header:
            raise ValueError("row labels must match header")
        return cls(tuple(header), table)


def _parse_number(s: str):
    s = s.strip()
    try:
        return Fraction(s)
    except ValueError:
        return float(s)


@dataclass(frozen=True)
class DecaySeq:
    """Strictly decreasing positive rationals t_0 > t_1 > ... > t_L."""

    values: tuple

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        if not vals:
            raise ValueError("decay sequence must be nonempty")
        if vals[-1] <= 0:
            raise ValueError("decay values must be positive")
        if any(a <= b for a, b in zip(vals, vals[1:])):
            raise ValueError("decay values must be strictly decreasing")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @classmethod
    def reciprocal_products(cls, radices: Sequence[int]) -> "DecaySeq":
        """t_l = 1/R_l with R_l the partial products of `radices`."""
        vals = [Fraction(1)]
        r = 1
        for rj in radices:
            r *= rj
            vals.append(Fraction(1, r))
        return cls(tuple(vals))


def discrete_metric(points) -> FiniteMetric:
    return FiniteMetric.from_function(points, lambda x, y: 0 if x == y else 1)


def product_ultrametric(x: Sequence, y: Sequence, component_metrics: Sequence[Callable], t: DecaySeq):
    """max_j min(d_j(x_j, y_j), t_j) over the coordinates of two tuples.

    Coordinate j (zero-based) is capped by ``t[j]``.
    """
    if len(x) != len(y):
        raise ValueError("tuples of different length")
    if len(x) > len(t):
        raise ValueError(f"need {len(x)} decay values, have {len(t)}")
    if len(component_metrics) < len(x):
        raise ValueError("one metric per coordinate required")
    best = 0
    for j, (a, b) in enumerate(zip(x, y)):
        dj = component_metrics[j](a, b)
        best = max(best, min(dj, t[j]))
    return best


def is_ultrametric(m: FiniteMetric):
    """None when every ordered triple satisfies d(x,z) <= max(d(x,y), d(y,z)).

    Otherwise the first violating triple ``(x, y, z)`` in lexicographic order.
    """
    tab = m.table
    n = len(tab)
    for i in range(n):
        ri = tab[i]
        for j in range(n):
            dij = ri[j]
            rj = tab[j]
            for k in range(n):
                if ri[k] > max(dij, rj[k]):
                    return (m.points[i], m.points[j], m.points[k])
    return None


def triangle_witness(m: FiniteMetric):
    """None if the triangle inequality holds on all triples, else a violating triple."""
    tab = m.table
    n = len(tab)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if tab[i][k] > tab[i][j] + tab[j][k]:
                    return (m.points[i], m.points[j], m.points[k])
    return None


def open_ball(m: FiniteMetric, x, r) -> frozenset:
    i = m.index(x)
    return frozenset(p for p, d in zip(m.points, m.table[i]) if d < r)


def closed_ball(m: FiniteMetric, x, r) -> frozenset:
    i = m.index(x)
    return frozenset(p for p, d in zip(m.points, m.table[i]) if d <= r)


def quotient_metric(elements: Sequence, add: Callable, subgroup: Sequence, metric: FiniteMetric) -> FiniteMetric:
    """Metric on the cosets x + H of an abelian group.

    d'(aH, bH) = min over h1, h2 in H of d(a + h1, b + h2).  The metric must be
    invariant under translation by H; a violation raises InvarianceError with
    the offending ``(x, y, h)``.  Each coset is labelled by its first element
    in the order of `elements`.
    """
    elements = list(elements)
    pos = {x: i for i, x in enumerate(elements)}
    if tuple(metric.points) != tuple(elements):
        raise ValueError("metric points must be the group elements in order")
    H = list(dict.fromkeys(subgroup))
    tab = metric.table
    for h in H:
        if h not in pos:
            raise ValueError(f"subgroup element {h!r} not in the group")
        for x in elements:
            xh = pos[add(x, h)]
            for y in elements:
                if tab[xh][pos[add(y, h)]] != tab[pos[x]][pos[y]]:
                    raise InvarianceError(x, y, h)

    coset_of: dict = {}
    cosets: list[list] = []
    for x in elements:
        if x in coset_of:
            continue
        members = [add(x, h) for h in H]
        idx = len(cosets)
        for y in members:
            coset_of[y] = idx
        cosets.append(members)

    n = len(cosets)
    qt = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            d = min(tab[pos[u]][pos[v]] for u in cosets[a] for v in cosets[b])
            qt[a][b] = qt[b][a] = d
    q = FiniteMetric(tuple(c[0] for c in cosets), qt)
    bad = triangle_witness(q)
    if bad is not None:
        raise ArithmeticError(f"quotient violates the triangle inequality at {bad}")
    return q
