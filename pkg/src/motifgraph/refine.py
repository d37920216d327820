"""Motif disaggregation: single-block splits and their information increments."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import InvalidPartition, MalformedConstraint, SingletonBlock
from .graph import Graph
from .motifs import (
    InfoEvaluator,
    Partition,
    QuotientGraph,
    entropy_from_stats,
    group_by_value,
    motif_stats,
    quotient,
)

DELTA_TOL = 1e-6
ISO_CHECK_MAX = 12


@dataclass(frozen=True)
class RefinementCandidate:
    parent: Partition
    refined: Partition
    block: int
    new_blocks: Tuple[int, int]
    delta_i: float
    quotient: QuotientGraph = field(repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "parent": self.parent.blocks(),
            "block": self.block,
            "refined": self.refined.blocks(),
            "new_blocks": list(self.new_blocks),
            "delta_i": self.delta_i,
        }


def _split_block(p: Partition, block: int, part: Sequence[int]) -> Partition:
    # The vertices in ``part`` move to a fresh label; canonicalise afterwards.
    fresh = p.n_blocks
    moved = set(part)
    return Partition.from_labels([fresh if v in moved else b for v, b in enumerate(p.assignment)])


def _bipartitions(members: Sequence[int]):
    # The first member always stays, so each unordered split appears once.
    first, rest = members[0], members[1:]
    s = len(rest)
    for bits in range((1 << s) - 1):
        stay = [first] + [rest[k] for k in range(s) if bits >> k & 1]
        yield [v for v in members if v not in stay]


def enumerate_splits(g: Graph, p: Partition, motif: Optional[int] = None) -> List[RefinementCandidate]:
    """Every split of one block into two non-empty parts, with its increment.

    The increment only recomputes the split block's statistics; the other
    motifs keep their counts. Candidates are ordered by block, then by the
    refined restricted growth string.
    """
    InfoEvaluator(g)  # connectivity and edge checks
    stats = motif_stats(g, p)
    blocks = p.blocks()
    if motif is not None:
        if not 0 <= motif < len(blocks):
            raise InvalidPartition(f"block {motif} outside 0..{len(blocks) - 1}")
        if len(blocks[motif]) < 2:
            raise SingletonBlock(f"block {motif} has a single vertex")
        chosen = [motif]
    else:
        chosen = [b for b, members in enumerate(blocks) if len(members) >= 2]
        if not chosen:
            raise SingletonBlock("every block is a single vertex")

    base = entropy_from_stats(stats.sizes, stats.degree_sums, stats.n_vertices, stats.n_edges)
    out = []
    for b in chosen:
        members = blocks[b]
        found = []
        for part in _bipartitions(members):
            stay_deg = sum(g.degrees[v] for v in members if v not in part)
            move_deg = sum(g.degrees[v] for v in part)
            sizes = list(stats.sizes) + [len(part)]
            degs = list(stats.degree_sums) + [move_deg]
            sizes[b] -= len(part)
            degs[b] = stay_deg
            new_val = entropy_from_stats(sizes, degs, stats.n_vertices, stats.n_edges)
            refined = _split_block(p, b, part)
            new_ids = (refined.assignment[members[0]], refined.assignment[part[0]])
            found.append(
                RefinementCandidate(
                    parent=p,
                    refined=refined,
                    block=b,
                    new_blocks=tuple(sorted(new_ids)),
                    delta_i=new_val - base,
                    quotient=quotient(g, refined),
                )
            )
        found.sort(key=lambda c: c.refined.assignment)
        out.extend(found)
    return out


def _labels(q: QuotientGraph) -> List[Tuple[int, int, int]]:
    return [(s, e, d) for s, e, d in zip(q.stats.sizes, q.stats.degree_sums, q.graph.degrees)]


def quotients_isomorphic(a: QuotientGraph, b: QuotientGraph) -> bool:
    """Isomorphism of motif graphs that also preserves per-motif (size, degree sum)."""
    ga, gb = a.graph, b.graph
    if ga.n != gb.n or ga.m != gb.m:
        return False
    la, lb = _labels(a), _labels(b)
    if sorted(la) != sorted(lb):
        return False
    n = ga.n
    image = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in range(n):
            if used[w] or lb[w] != la[v]:
                continue
            if any(gb.has_edge(w, image[u]) != ga.has_edge(v, u) for u in range(v)):
                continue
            image[v] = w
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
        image[v] = -1
        return False

    return extend(0)


def _signature(c: RefinementCandidate):
    return (c.refined.size_multiset(), tuple(sorted(c.quotient.graph.degrees)))


def count_quotient_classes(cands: Sequence[RefinementCandidate]) -> int:
    """Number of structurally different refined motif graphs among ``cands``.

    Cheap invariants separate most candidates; a label-preserving
    isomorphism search settles the rest while motif graphs stay small.
    """
    reps: List[RefinementCandidate] = []
    for c in cands:
        for r in reps:
            if _signature(r) != _signature(c):
                continue
            if c.quotient.graph.n > ISO_CHECK_MAX or quotients_isomorphic(r.quotient, c.quotient):
                break
        else:
            reps.append(c)
    return len(reps)


@dataclass(frozen=True)
class ScenarioGroup:
    delta_i: float
    members: Tuple[RefinementCandidate, ...]
    quotient_classes: int

    @property
    def distinct(self) -> bool:
        """At least two members place different vertices in the new motifs."""
        return len({c.refined for c in self.members}) >= 2

    def as_dict(self) -> dict:
        return {
            "delta_i": self.delta_i,
            "distinct": self.distinct,
            "quotient_classes": self.quotient_classes,
            "members": [c.as_dict() for c in self.members],
        }


def group_candidates(cands: Sequence[RefinementCandidate], tol: float = DELTA_TOL) -> List[ScenarioGroup]:
    groups = group_by_value(cands, key=lambda c: c.delta_i, tol=tol, relative=False)
    return [ScenarioGroup(grp[0].delta_i, tuple(grp), count_quotient_classes(grp)) for grp in groups]


def candidates_for_increment(
    g: Graph,
    p: Partition,
    delta: float,
    tol: float = DELTA_TOL,
    motif: Optional[int] = None,
    group_tol: float = DELTA_TOL,
) -> List[ScenarioGroup]:
    """Splits whose increment lies within ``tol`` of ``delta``, grouped.

    An empty list means no split reaches the requested increment.
    """
    hits = [c for c in enumerate_splits(g, p, motif) if abs(c.delta_i - delta) <= tol]
    return group_candidates(hits, group_tol)


@dataclass(frozen=True)
class RefineConstraints:
    """Requirements on a refined motif graph.

    Motif ids refer to the refined partition's restricted growth labels.
    ``split_adjacent`` requires the two motifs produced by the split to
    share at least one edge.
    """

    adjacent: Tuple[Tuple[int, int], ...] = ()
    nonadjacent: Tuple[Tuple[int, int], ...] = ()
    block_min: Optional[int] = None
    block_max: Optional[int] = None
    split_adjacent: bool = False

    _KEYS = ("adjacent", "nonadjacent", "block_min", "block_max", "split_adjacent")

    @classmethod
    def from_dict(cls, spec: dict) -> "RefineConstraints":
        if not isinstance(spec, dict):
            raise MalformedConstraint("constraint spec must be a JSON object")
        unknown = set(spec) - set(cls._KEYS)
        if unknown:
            raise MalformedConstraint(f"unknown constraint keys: {sorted(unknown)}")
        pairs = {}
        for key in ("adjacent", "nonadjacent"):
            raw = spec.get(key, [])
            if not isinstance(raw, list):
                raise MalformedConstraint(f"{key} must be a list of pairs")
            out = []
            for pair in raw:
                if (
                    not isinstance(pair, list)
                    or len(pair) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in pair)
                    or pair[0] == pair[1]
                ):
                    raise MalformedConstraint(f"bad motif pair in {key}: {pair!r}")
                out.append((pair[0], pair[1]))
            pairs[key] = tuple(out)
        bounds = {}
        for key in ("block_min", "block_max"):
            val = spec.get(key)
            if val is not None and (not isinstance(val, int) or isinstance(val, bool) or val < 1):
                raise MalformedConstraint(f"{key} must be a positive integer")
            bounds[key] = val
        if bounds["block_min"] and bounds["block_max"] and bounds["block_min"] > bounds["block_max"]:
            raise MalformedConstraint("block_min exceeds block_max")
        split_adj = spec.get("split_adjacent", False)
        if not isinstance(split_adj, bool):
            raise MalformedConstraint("split_adjacent must be a boolean")
        return cls(pairs["adjacent"], pairs["nonadjacent"], bounds["block_min"], bounds["block_max"], split_adj)

    def accepts(self, c: RefinementCandidate) -> bool:
        q = c.quotient.graph
        for a, b in self.adjacent:
            if a >= q.n or b >= q.n or not q.has_edge(a, b):
                return False
        for a, b in self.nonadjacent:
            if a < q.n and b < q.n and q.has_edge(a, b):
                return False
        sizes = c.quotient.stats.sizes
        if self.block_min is not None and min(sizes) < self.block_min:
            return False
        if self.block_max is not None and max(sizes) > self.block_max:
            return False
        if self.split_adjacent and not q.has_edge(*c.new_blocks):
            return False
        return True


def filter_candidates(cands: Sequence[RefinementCandidate], constraints) -> List[RefinementCandidate]:
    """Keep candidates satisfying ``constraints`` (a dict or :class:`RefineConstraints`)."""
    if not isinstance(constraints, RefineConstraints):
        constraints = RefineConstraints.from_dict(constraints)
    return [c for c in cands if constraints.accepts(c)]
