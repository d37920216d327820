"""Motif partitions, quotient graphs and partition information content."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    BudgetExceeded,
    DegenerateOrder,
    InvalidBlockCount,
    InvalidPartition,
    PartitionMismatch,
)
from .graph import Graph, build_graph, require_connected

EXHAUSTIVE_CAP = 12
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Partition:
    """Set partition of ``0..n-1`` stored as a restricted growth string.

    ``assignment[v]`` is the block of vertex ``v``; block ids appear in
    first-use order starting at 0.
    """

    assignment: Tuple[int, ...]

    def __post_init__(self):
        nxt = 0
        for b in self.assignment:
            if b == nxt:
                nxt += 1
            elif not 0 <= b < nxt:
                raise InvalidPartition(f"{list(self.assignment)} is not a restricted growth string")
        if not self.assignment:
            raise InvalidPartition("partition of an empty set")

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Canonicalise arbitrary per-vertex labels into restricted growth form."""
        remap: Dict = {}
        return cls(tuple(remap.setdefault(x, len(remap)) for x in labels))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], n: Optional[int] = None) -> "Partition":
        total = sum(len(b) for b in blocks)
        n = total if n is None else n
        labels = [-1] * n
        for bi, block in enumerate(blocks):
            if not block:
                raise InvalidPartition("empty block")
            for v in block:
                if not 0 <= v < n:
                    raise InvalidPartition(f"vertex {v} outside 0..{n - 1}")
                if labels[v] != -1:
                    raise InvalidPartition(f"vertex {v} in two blocks")
                labels[v] = bi
        if -1 in labels:
            raise InvalidPartition(f"vertex {labels.index(-1)} not covered")
        return cls.from_labels(labels)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def n_blocks(self) -> int:
        return max(self.assignment) + 1

    def blocks(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.n_blocks)]
        for v, b in enumerate(self.assignment):
            out[b].append(v)
        return out

    def size_multiset(self) -> Tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks()), reverse=True))

    def rgs(self) -> str:
        if self.n_blocks <= len(_DIGITS):
            return "".join(_DIGITS[b] for b in self.assignment)
        return ".".join(map(str, self.assignment))

    def merge(self, a: int, b: int) -> "Partition":
        return Partition.from_labels([a if x == b else x for x in self.assignment])

    def __repr__(self) -> str:
        return f"Partition({self.blocks()})"


@dataclass(frozen=True)
class MotifStats:
    sizes: Tuple[int, ...]
    degree_sums: Tuple[int, ...]
    n_vertices: int
    n_edges: int


@dataclass(frozen=True)
class QuotientGraph:
    graph: Graph
    stats: MotifStats


def _check(g: Graph, p: Partition) -> None:
    if p.n != g.n:
        raise PartitionMismatch(f"partition covers {p.n} vertices, graph has {g.n}")


def motif_stats(g: Graph, p: Partition) -> MotifStats:
    _check(g, p)
    k = p.n_blocks
    sizes = [0] * k
    degs = [0] * k
    for v, b in enumerate(p.assignment):
        sizes[b] += 1
        degs[b] += g.degrees[v]
    return MotifStats(tuple(sizes), tuple(degs), g.n, g.m)


def quotient(g: Graph, p: Partition) -> QuotientGraph:
    """Motif-level graph: motifs adjacent iff some edge crosses between them."""
    stats = motif_stats(g, p)
    a = p.assignment
    crossing = {(a[i], a[j]) for i, j in g.edges if a[i] != a[j]}
    return QuotientGraph(build_graph(p.n_blocks, crossing, tolerant=True), stats)


def entropy_from_stats(sizes: Sequence[int], degree_sums: Sequence[int], n_vertices: int, n_edges: int) -> float:
    """Information content (bits) of a motif system from its per-motif counts."""
    weights = [(s / n_vertices) * (e / (2 * n_edges)) for s, e in zip(sizes, degree_sums)]
    total = math.fsum(weights)
    # fsum makes the value independent of block order.
    return -math.fsum(w / total * math.log2(w / total) for w in weights if w > 0) + 0.0


@dataclass(frozen=True)
class InfoResult:
    i_ve: float
    i_ve_full: float

    @property
    def normalized(self) -> float:
        return self.i_ve / self.i_ve_full


class InfoEvaluator:
    """Reusable evaluator of partition information content for one graph.

    Validates the graph once; :meth:`i_ve` is then cheap enough for
    exhaustive partition scans.
    """

    def __init__(self, g: Graph):
        require_connected(g)
        if g.m == 0:
            raise DegenerateOrder("information content needs at least one edge")
        self.g = g
        self.full = entropy_from_stats([1] * g.n, g.degrees, g.n, g.m)

    def stats(self, p: Partition) -> MotifStats:
        return motif_stats(self.g, p)

    def i_ve(self, p: Partition) -> float:
        s = motif_stats(self.g, p)
        return entropy_from_stats(s.sizes, s.degree_sums, s.n_vertices, s.n_edges)

    def __call__(self, p: Partition) -> InfoResult:
        return InfoResult(self.i_ve(p), self.full)


def info_content(g: Graph, p: Partition) -> InfoResult:
    _check(g, p)
    return InfoEvaluator(g)(p)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


def enumerate_partitions(n: int, n_blocks: Optional[int] = None, cap: int = EXHAUSTIVE_CAP) -> Iterator[Partition]:
    """All set partitions of ``0..n-1`` in lexicographic restricted-growth order.

    With ``n_blocks`` given, only partitions with exactly that many blocks.
    """
    if n > cap:
        raise BudgetExceeded(f"exhaustive partition enumeration capped at n={cap}, got n={n}")
    if n < 1:
        raise InvalidBlockCount("n must be positive")
    if n_blocks is not None and not 1 <= n_blocks <= n:
        return
    lo = n_blocks or 1
    hi = n_blocks or n
    a = [0] * n

    def rec(i, used):
        if i == n:
            if used >= lo:
                yield Partition(tuple(a))
            return
        # Prune when even all-new blocks cannot reach the lower bound.
        if used + (n - i) < lo:
            return
        for b in range(min(used + 1, hi)):
            a[i] = b
            yield from rec(i + 1, max(used, b + 1))

    a[0] = 0
    yield from rec(1, 1)


def sample_partitions(n: int, n_blocks: int, k: int, seed: int = 0) -> List[Partition]:
    """Draw ``k`` partitions uniformly among those with exactly ``n_blocks`` blocks.

    Vertices are placed in order; each choice is weighted by the exact number
    of completions, so every partition has probability ``1 / S(n, n_blocks)``.
    """
    if not 1 <= n_blocks <= n:
        raise InvalidBlockCount(f"block count {n_blocks} outside 1..{n}")
    rng = random.Random(seed)

    @lru_cache(maxsize=None)
    def completions(remaining, used):
        # Ways to place ``remaining`` vertices ending with exactly n_blocks blocks.
        if remaining == 0:
            return 1 if used == n_blocks else 0
        if used > n_blocks:
            return 0
        return used * completions(remaining - 1, used) + completions(remaining - 1, used + 1)

    out = []
    for _ in range(k):
        a = [0]
        used = 1
        for i in range(1, n):
            rem = n - i - 1
            stay = completions(rem, used)
            r = rng.randrange(used * stay + completions(rem, used + 1))
            if r < used * stay:
                a.append(r // stay)
            else:
                a.append(used)
                used += 1
        out.append(Partition(tuple(a)))
    return out


@dataclass(frozen=True)
class ScanPoint:
    n_blocks: int
    i_ve: float
    normalized: float
    partition: Partition


@dataclass
class ScanResult:
    points: List[ScanPoint]
    argmax: Dict[int, ScanPoint]
    argmin: Dict[int, ScanPoint]

    @property
    def bound_violations(self) -> List[ScanPoint]:
        # 0 <= I_ve <= I_ve(singletons) is observed, not proved; report breaches.
        return [p for p in self.points if p.normalized < 0 or p.normalized > 1 + 1e-12]


def scan(
    g: Graph,
    samples_per_nm: int = 100,
    seed: int = 0,
    exhaustive: bool = False,
    nm_range: Optional[Tuple[int, int]] = None,
) -> ScanResult:
    """Normalised information content across block counts.

    In sampled mode a block count whose partitions number no more than
    ``samples_per_nm`` is enumerated in full instead. Extremal witnesses per
    block count break ties by the smallest restricted growth string.
    """
    ev = InfoEvaluator(g)
    lo, hi = nm_range or (1, g.n)
    lo, hi = max(lo, 1), min(hi, g.n)
    rng = random.Random(seed)
    points: List[ScanPoint] = []
    argmax: Dict[int, ScanPoint] = {}
    argmin: Dict[int, ScanPoint] = {}
    for nm in range(lo, hi + 1):
        if exhaustive or stirling2(g.n, nm) <= samples_per_nm:
            parts = enumerate_partitions(g.n, nm)
        else:
            parts = sample_partitions(g.n, nm, samples_per_nm, rng.randrange(2**63))
        for p in parts:
            val = ev.i_ve(p)
            pt = ScanPoint(nm, val, val / ev.full, p)
            points.append(pt)
            best = argmax.get(nm)
            if best is None or val > best.i_ve or (val == best.i_ve and p.assignment < best.partition.assignment):
                argmax[nm] = pt
            worst = argmin.get(nm)
            if worst is None or val < worst.i_ve or (val == worst.i_ve and p.assignment < worst.partition.assignment):
                argmin[nm] = pt
    return ScanResult(points, argmax, argmin)


@dataclass(frozen=True)
class InfoGroup:
    i_ve: float
    partitions: Tuple[Partition, ...]

    @property
    def mixed_sizes(self) -> bool:
        """True when members hold different numbers of vertices per motif."""
        return len({p.size_multiset() for p in self.partitions}) > 1


def group_by_value(items, key, tol: float, relative: bool = True):
    """Chain sorted items into groups within ``tol`` of each group's first value."""
    ordered = sorted(items, key=key)
    groups: List[list] = []
    for it in ordered:
        v = key(it)
        if groups:
            rep = key(groups[-1][0])
            bound = tol * max(abs(rep), abs(v)) if relative else tol
            if abs(v - rep) <= bound:
                groups[-1].append(it)
                continue
        groups.append([it])
    return groups


def equal_info_partitions(g: Graph, n_blocks: int, tol: float = 1e-9) -> List[InfoGroup]:
    """Exhaustive partitions with ``n_blocks`` blocks grouped by equal information."""
    ev = InfoEvaluator(g)
    scored = [(ev.i_ve(p), p) for p in enumerate_partitions(g.n, n_blocks)]
    groups = group_by_value(scored, key=lambda t: t[0], tol=tol)
    return [InfoGroup(grp[0][0], tuple(p for _, p in grp)) for grp in groups]


@dataclass
class MergeSurvey:
    pairs: int
    strictly_decreasing: int
    violations: List[Tuple[Graph, Partition, Partition, float, float]]

    @property
    def fraction(self) -> float:
        return self.strictly_decreasing / self.pairs if self.pairs else 1.0


def merge_survey(graphs: Sequence[Graph]) -> MergeSurvey:
    """Check, for every single block merge, whether information strictly drops.

    ``violations`` lists ``(graph, finer, coarser, I_finer, I_coarser)`` for
    merges that leave the information unchanged or increase it.
    """
    pairs = 0
    down = 0
    violations = []
    for g in graphs:
        ev = InfoEvaluator(g)
        values = {p: ev.i_ve(p) for p in enumerate_partitions(g.n)}
        for p, v in values.items():
            k = p.n_blocks
            for a in range(k):
                for b in range(a + 1, k):
                    q = p.merge(a, b)
                    pairs += 1
                    if values[q] < v:
                        down += 1
                    else:
                        violations.append((g, p, q, v, values[q]))
    return MergeSurvey(pairs, down, violations)
