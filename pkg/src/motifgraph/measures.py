"""Topological complexity measures.

The subgraph-based indices (K, OC) come from one recursive enumeration of
connected edge-subgraphs. Single vertices count as the 0-edge subgraphs.
"""
from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, DegenerateOrder, InputError
from .graph import Graph, distance_descriptors, require_connected, total_adjacency

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "MOTIFGRAPH_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def info_vertex_degree(g: Graph) -> float:
    """``sum_i a_i log2 a_i`` (positive sign, as the index is usually printed)."""
    require_connected(g)
    return math.fsum(a * math.log2(a) for a in g.degrees if a > 1)


def edge_complexities(g: Graph) -> Tuple[int, float, float]:
    a = total_adjacency(g)
    return a, a / g.n, a / g.n**2


def _two_edge_count(g: Graph) -> int:
    # A connected 2-edge subgraph is a pair of edges at a shared centre.
    return sum(a * (a - 1) // 2 for a in g.degrees)


def subgraph_count_2(g: Graph) -> Tuple[int, float]:
    """Platt-style count of 2-edge subgraphs and its complete-graph normalisation."""
    if g.n < 3:
        raise DegenerateOrder("2SC_n needs n >= 3")
    sc2 = _two_edge_count(g)
    return sc2, sc2 / (0.5 * g.n * (g.n - 1) * (g.n - 2))


@dataclass(frozen=True)
class SubgraphSpectrum:
    counts_by_edges: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts_by_edges)


@dataclass(frozen=True)
class OverallConnectivitySpectrum:
    oc_by_edges: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.oc_by_edges)


def _enumerate(g: Graph, budget: int) -> Tuple[List[int], List[int]]:
    # Each connected edge set is generated once, from its smallest edge index
    # (the anchor). Edges leave the extension list once they have been tried,
    # so no set is reached along two different branches.
    edges = g.edges
    deg = g.degrees
    incident: List[List[int]] = [[] for _ in range(g.n)]
    for idx, (i, j) in enumerate(edges):
        incident[i].append(idx)
        incident[j].append(idx)

    counts = [0] * (g.m + 1)
    oc = [0] * (g.m + 1)
    counts[0] = g.n
    oc[0] = sum(deg)
    produced = g.n
    if produced > budget:
        raise BudgetExceeded(f"more than {budget} subgraphs")

    def grow(k, verts, degsum, ext, anchor):
        nonlocal produced
        produced += 1
        if produced > budget:
            raise BudgetExceeded(f"more than {budget} subgraphs")
        counts[k] += 1
        oc[k] += degsum
        for pos, e in enumerate(ext):
            u, v = edges[e]
            rest = ext[pos + 1:]
            if not verts >> u & 1:
                new = u
            elif not verts >> v & 1:
                new = v
            else:
                grow(k + 1, verts, degsum, rest, anchor)
                continue
            fresh = []
            for f in incident[new]:
                if f > anchor:
                    a, b = edges[f]
                    other = b if a == new else a
                    if not verts >> other & 1:
                        fresh.append(f)
            grow(k + 1, verts | (1 << new), degsum + deg[new], rest + fresh, anchor)

    for anchor, (i, j) in enumerate(edges):
        ext = [f for f in incident[i] + incident[j] if f > anchor]
        grow(1, (1 << i) | (1 << j), deg[i] + deg[j], ext, anchor)

    return counts, oc


@lru_cache(maxsize=256)
def _spectra(g: Graph, budget: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    require_connected(g)
    counts, oc = _enumerate(g, budget)
    return tuple(counts), tuple(oc)


def total_subgraph_count(g: Graph, budget: Optional[int] = None) -> SubgraphSpectrum:
    """Count connected subgraphs of ``g`` by edge count.

    Raises :class:`BudgetExceeded` as soon as more than ``budget`` subgraphs
    have been produced; nothing is truncated silently.
    """
    counts, _ = _spectra(g, budget or default_budget())
    return SubgraphSpectrum(counts)


def overall_connectivity(g: Graph, budget: Optional[int] = None) -> OverallConnectivitySpectrum:
    """``^kOC``: parent-graph degree sums over all connected k-edge subgraphs."""
    _, oc = _spectra(g, budget or default_budget())
    return OverallConnectivitySpectrum(oc)


def ad_index(g: Graph) -> float:
    require_connected(g)
    dist = distance_descriptors(g)
    return (total_adjacency(g) / g.n) / dist.avg_vertex_distance


def b_index(g: Graph) -> Tuple[float, Tuple[float, ...]]:
    require_connected(g)
    dist = distance_descriptors(g)
    b = tuple(a / d for a, d in zip(g.degrees, dist.distance_degrees))
    return math.fsum(b), b


@dataclass(frozen=True)
class ComplexityReport:
    i_vd: float
    e_g: int
    e_a: float
    e_n: float
    sc2: int
    sc2_n: float
    k_total: int
    subgraph_spectrum: Tuple[int, ...]
    oc_total: int
    oc_spectrum: Tuple[int, ...]
    ad_index: float
    b_index: float
    b_values: Tuple[float, ...]

    def as_dict(self) -> dict:
        d = asdict(self)
        for key in ("subgraph_spectrum", "oc_spectrum", "b_values"):
            d[key] = list(d[key])
        return d


def complexity_report(g: Graph, budget: Optional[int] = None) -> ComplexityReport:
    require_connected(g)
    if g.n < 3:
        # 2SC_n is undefined below three vertices; keep the rest of the
        # report usable for K2 rather than refusing the whole graph.
        sc2, sc2_n = _two_edge_count(g), float("nan")
    else:
        sc2, sc2_n = subgraph_count_2(g)
    eg, ea, en = edge_complexities(g)
    spec = total_subgraph_count(g, budget)
    oc = overall_connectivity(g, budget)
    b, bi = b_index(g)
    return ComplexityReport(
        i_vd=info_vertex_degree(g),
        e_g=eg,
        e_a=ea,
        e_n=en,
        sc2=sc2,
        sc2_n=sc2_n,
        k_total=spec.total,
        subgraph_spectrum=spec.counts_by_edges,
        oc_total=oc.total,
        oc_spectrum=oc.oc_by_edges,
        ad_index=ad_index(g),
        b_index=b,
        b_values=bi,
    )


# Scalar measures addressable by id, used by measure_suite, bounds and the CLI.
MEASURES: Dict[str, Callable[[Graph], float]] = {
    "ivd": info_vertex_degree,
    "eg": lambda g: edge_complexities(g)[0],
    "ea": lambda g: edge_complexities(g)[1],
    "en": lambda g: edge_complexities(g)[2],
    "sc2": _two_edge_count,
    "sc2n": lambda g: subgraph_count_2(g)[1],
    "k": lambda g: total_subgraph_count(g).total,
    "oc": lambda g: overall_connectivity(g).total,
    "ad": ad_index,
    "b": lambda g: b_index(g)[0],
}

REPORT_FIELD = {
    "ivd": "i_vd",
    "eg": "e_g",
    "ea": "e_a",
    "en": "e_n",
    "sc2": "sc2",
    "sc2n": "sc2_n",
    "k": "k_total",
    "oc": "oc_total",
    "ad": "ad_index",
    "b": "b_index",
}

_ALIASES = {
    "i_vd": "ivd",
    "e_g": "eg",
    "e_a": "ea",
    "e_n": "en",
    "2sc": "sc2",
    "2sc_n": "sc2n",
    "sc2_n": "sc2n",
    "a/d": "ad",
    "a_d": "ad",
    "k_total": "k",
    "oc_total": "oc",
}


def measure_id(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in MEASURES:
        raise InputError(f"unknown measure {name!r}; choose from {', '.join(MEASURES)}")
    return key


def normalize_by_minimum(values: Sequence[float]) -> List[float]:
    lo = min(values)
    if lo == 0:
        raise DegenerateOrder("cannot normalise by a zero minimum")
    return [v / lo for v in values]


@dataclass
class SuiteResult:
    reports: List[ComplexityReport]
    normalized: Dict[str, List[float]]


def measure_suite(
    graphs: Sequence[Graph],
    normalize: Sequence[str] = ("ad", "b", "k", "oc"),
    budget: Optional[int] = None,
) -> SuiteResult:
    """Reports for every graph plus ``value / min`` columns for ``normalize``."""
    if not graphs:
        raise InputError("measure_suite needs at least one graph")
    reports = [complexity_report(g, budget) for g in graphs]
    normalized = {}
    for name in normalize:
        mid = measure_id(name)
        normalized[mid] = normalize_by_minimum([getattr(r, REPORT_FIELD[mid]) for r in reports])
    return SuiteResult(reports, normalized)
