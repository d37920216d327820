"""Exhaustive minimum/maximum complexity over labelled graphs.

Every graph on ``n`` labelled vertices is an integer mask over the
``n(n-1)/2`` possible edges (bit ``e`` set iff edge ``e`` of
:func:`edge_index` is present). Measures are evaluated for all masks at
once with numpy; K and OC use subset-sum (zeta) transforms over the
connected edge sets, so the full ``n = 7`` table (2^21 graphs) stays cheap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from .errors import BudgetExceeded, DegenerateOrder, Infeasible, InputError
from .graph import Edge, Graph, build_graph
from .measures import measure_id

BOUNDS_CAP = 7
TIE_RTOL = 1e-12

# Measures with a vectorised column.
TABLE_MEASURES = ("b", "k", "oc", "ad", "ivd", "eg", "ea", "en", "sc2", "sc2n")


@lru_cache(maxsize=None)
def edge_index(n: int) -> Tuple[Edge, ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def graph_mask(g: Graph) -> int:
    pos = {e: k for k, e in enumerate(edge_index(g.n))}
    return sum(1 << pos[e] for e in g.edges)


def mask_graph(n: int, mask: int) -> Graph:
    idx = edge_index(n)
    return build_graph(n, [idx[k] for k in range(len(idx)) if mask >> k & 1])


@dataclass(frozen=True)
class ConstraintSet:
    n: int
    required: frozenset = frozenset()
    forbidden: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 1:
            raise InputError("constraint set needs n >= 1")
        norm = {}
        for name in ("required", "forbidden"):
            edges = set()
            for e in getattr(self, name):
                i, j = int(e[0]), int(e[1])
                if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                    raise InputError(f"{name} edge ({i}, {j}) invalid for n={self.n}")
                edges.add((min(i, j), max(i, j)))
            norm[name] = frozenset(edges)
        if norm["required"] & norm["forbidden"]:
            both = sorted(norm["required"] & norm["forbidden"])
            raise InputError(f"edges both required and forbidden: {both}")
        object.__setattr__(self, "required", norm["required"])
        object.__setattr__(self, "forbidden", norm["forbidden"])

    def masks(self) -> Tuple[int, int]:
        pos = {e: k for k, e in enumerate(edge_index(self.n))}
        req = sum(1 << pos[e] for e in self.required)
        forb = sum(1 << pos[e] for e in self.forbidden)
        return req, forb

    def admits(self, g: Graph) -> bool:
        return self.required <= g.edge_set and not (self.forbidden & g.edge_set)


def _popcount_table(bits: int) -> np.ndarray:
    t = np.zeros(1 << bits, dtype=np.int64)
    for k in range(1, 1 << bits):
        t[k] = t[k >> 1] + (k & 1)
    return t


class _Table:
    """Per-mask arrays for every labelled graph on ``n`` vertices."""

    def __init__(self, n: int):
        self.n = n
        self.edges = edge_index(n)
        ne = len(self.edges)
        self.size = 1 << ne
        masks = np.arange(self.size, dtype=np.int64)
        self.vtype = np.uint8 if n <= 8 else np.uint16
        self.pop = _popcount_table(n)
        adj = [np.zeros(self.size, dtype=self.vtype) for _ in range(n)]
        deg = [np.zeros(self.size, dtype=np.int64) for _ in range(n)]
        for k, (i, j) in enumerate(self.edges):
            bit = ((masks >> k) & 1).astype(self.vtype)
            adj[i] |= bit << j
            adj[j] |= bit << i
            deg[i] += bit
            deg[j] += bit
        self.adj = adj
        self.deg = deg
        full = (1 << n) - 1
        self.connected = self._closure(np.ones(self.size, dtype=self.vtype)) == full
        self._columns: Dict[str, np.ndarray] = {}

    def _step(self, reach):
        out = reach.copy()
        for v in range(self.n):
            out |= ((reach >> v) & 1) * self.adj[v]
        return out

    def _closure(self, reach):
        for _ in range(self.n - 1):
            reach = self._step(reach)
        return reach

    def distance_degree(self, s: int) -> np.ndarray:
        reach = np.full(self.size, 1 << s, dtype=self.vtype)
        total = np.zeros(self.size, dtype=np.int64)
        for _ in range(self.n - 1):
            total += self.n - self.pop[reach]
            reach = self._step(reach)
        return total

    def _zeta(self, f: np.ndarray) -> np.ndarray:
        f = f.copy()
        for k in range(len(self.edges)):
            view = f.reshape(-1, 2, 1 << k)
            view[:, 1, :] += view[:, 0, :]
        return f

    def _edge_sets(self):
        # For each mask read as an edge set: endpoints covered, and whether
        # those edges form one connected piece.
        verts = np.zeros(self.size, dtype=self.vtype)
        for v in range(self.n):
            verts |= (self.deg[v] > 0).astype(self.vtype) << v
        low = (verts & (~verts + 1)).astype(self.vtype)
        conn = (self._closure(low) == verts) & (verts != 0)
        return verts, conn.astype(np.int64)

    def column(self, mid: str) -> np.ndarray:
        if mid in self._columns:
            return self._columns[mid]
        n = self.n
        a_total = sum(self.deg)
        if mid == "eg":
            col = a_total.astype(np.float64)
        elif mid == "ea":
            col = a_total / n
        elif mid == "en":
            col = a_total / n**2
        elif mid == "sc2":
            col = sum(d * (d - 1) // 2 for d in self.deg).astype(np.float64)
        elif mid == "sc2n":
            if n < 3:
                raise DegenerateOrder("2SC_n needs n >= 3")
            col = self.column("sc2") / (0.5 * n * (n - 1) * (n - 2))
        elif mid == "ivd":
            logs = np.zeros(n + 1)
            logs[2:] = np.arange(2, n + 1) * np.log2(np.arange(2, n + 1))
            col = sum(logs[d] for d in self.deg)
        elif mid in ("b", "ad"):
            with np.errstate(divide="ignore", invalid="ignore"):
                dd = [self.distance_degree(s) for s in range(n)]
                self._columns["ad"] = a_total / sum(dd)
                self._columns["b"] = sum(d / x for d, x in zip(self.deg, dd))
            col = self._columns[mid]
        elif mid in ("k", "oc"):
            verts, conn = self._edge_sets()
            self._columns["k"] = (n + self._zeta(conn)).astype(np.float64)
            oc = a_total.copy()
            for v in range(n):
                touching = conn * ((verts >> v) & 1).astype(np.int64)
                oc += self.deg[v] * self._zeta(touching)
            self._columns["oc"] = oc.astype(np.float64)
            col = self._columns[mid]
        else:
            raise InputError(f"measure {mid!r} has no exhaustive table")
        self._columns[mid] = col
        return col


@lru_cache(maxsize=4)
def _table(n: int) -> _Table:
    return _Table(n)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise BudgetExceeded(f"exhaustive graph scan capped at n={cap}, got n={n}")
    if n < 2:
        raise InputError("exhaustive bounds need n >= 2")


def _table_measure(name: str) -> str:
    mid = measure_id(name)
    if mid not in TABLE_MEASURES:
        raise InputError(f"measure {name!r} not available for bounds")
    return mid


def measure_column(n: int, measure: str, cap: int = BOUNDS_CAP) -> np.ndarray:
    """Measure values for every mask on ``n`` vertices (garbage where disconnected)."""
    _check_cap(n, cap)
    return _table(n).column(_table_measure(measure))


def connected_masks(n: int, cap: int = BOUNDS_CAP) -> np.ndarray:
    _check_cap(n, cap)
    return _table(n).connected


def _lex_key(mask: int, ne: int) -> Tuple[int, ...]:
    return tuple(k for k in range(ne) if mask >> k & 1)


def _extreme(values: np.ndarray, ok: np.ndarray, n: int, which: str) -> Tuple[float, int]:
    cand = np.flatnonzero(ok)
    vals = values[cand]
    best = vals.min() if which == "min" else vals.max()
    tied = cand[np.abs(vals - best) <= TIE_RTOL * max(1.0, abs(best))]
    ne = n * (n - 1) // 2
    witness = min((int(m) for m in tied), key=lambda m: _lex_key(m, ne))
    return float(best), witness


@dataclass
class Limits:
    measure: str
    n: int
    min: float
    max: float
    min_witness: Graph
    max_witness: Graph


def mathematical_limits(n: int, measure: str, cap: int = BOUNDS_CAP) -> Limits:
    """Extremes of ``measure`` over all connected graphs on ``n`` labelled vertices.

    Witnesses are the lexicographically smallest edge lists among the
    (near-)tied extremal graphs.
    """
    col = measure_column(n, measure, cap)
    ok = connected_masks(n, cap)
    lo, lo_w = _extreme(col, ok, n, "min")
    hi, hi_w = _extreme(col, ok, n, "max")
    return Limits(_table_measure(measure), n, lo, hi, mask_graph(n, lo_w), mask_graph(n, hi_w))


@dataclass
class ExtremesResult:
    measure: str
    constraints: ConstraintSet
    math_min: float
    math_max: float
    constrained_min: float
    constrained_max: float
    admissible: int
    witnesses: Dict[str, Graph] = field(default_factory=dict)

    def sandwich_holds(self) -> bool:
        return self.math_min <= self.constrained_min <= self.constrained_max <= self.math_max

    def as_dict(self) -> dict:
        c = self.constraints
        return {
            "measure": self.measure,
            "n": c.n,
            "required": [list(e) for e in sorted(c.required)],
            "forbidden": [list(e) for e in sorted(c.forbidden)],
            "admissible_graphs": self.admissible,
            "math_min": self.math_min,
            "math_max": self.math_max,
            "constrained_min": self.constrained_min,
            "constrained_max": self.constrained_max,
            "witnesses": {k: [list(e) for e in g.edges] for k, g in self.witnesses.items()},
        }


def admissible_masks(c: ConstraintSet, cap: int = BOUNDS_CAP) -> np.ndarray:
    ok = connected_masks(c.n, cap)
    req, forb = c.masks()
    masks = np.arange(ok.size, dtype=np.int64)
    return ok & ((masks & req) == req) & ((masks & forb) == 0)


def constrained_extremes(c: ConstraintSet, measure: str, cap: int = BOUNDS_CAP) -> ExtremesResult:
    """Constrained and unconstrained extremes of ``measure`` with witnesses.

    Raises :class:`Infeasible` when no connected graph respects ``c``.
    """
    col = measure_column(c.n, measure, cap)
    ok = admissible_masks(c, cap)
    count = int(ok.sum())
    if count == 0:
        raise Infeasible(f"no connected graph on {c.n} vertices satisfies the constraints")
    limits = mathematical_limits(c.n, measure, cap)
    lo, lo_w = _extreme(col, ok, c.n, "min")
    hi, hi_w = _extreme(col, ok, c.n, "max")
    res = ExtremesResult(
        measure=limits.measure,
        constraints=c,
        math_min=limits.min,
        math_max=limits.max,
        constrained_min=lo,
        constrained_max=hi,
        admissible=count,
        witnesses={
            "math_min": limits.min_witness,
            "math_max": limits.max_witness,
            "constrained_min": mask_graph(c.n, lo_w),
            "constrained_max": mask_graph(c.n, hi_w),
        },
    )
    if not res.sandwich_holds():
        raise RuntimeError(f"constrained extremes escape the mathematical limits: {res.as_dict()}")
    return res
