import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motifgraph import (
    BudgetExceeded,
    DegenerateOrder,
    Disconnected,
    ad_index,
    b_index,
    build_graph,
    complete_graph,
    complexity_report,
    cycle_graph,
    edge_complexities,
    info_vertex_degree,
    measure_suite,
    overall_connectivity,
    path_graph,
    star_graph,
    subgraph_count_2,
    total_subgraph_count,
)
from motifgraph.graph import connectedness
from motifgraph.measures import default_budget, measure_id

from oracles import all_connected_graphs, brute_spectra, random_connected_graph

K3 = complete_graph(3)
P3 = path_graph(3)
K2 = path_graph(2)
K4_MINUS = build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])  # K4 without (0, 3)


def test_info_vertex_degree():
    assert info_vertex_degree(K3) == 6.0
    assert info_vertex_degree(P3) == 2.0
    for n in range(3, 9):
        assert info_vertex_degree(cycle_graph(n)) == 2 * n
    with pytest.raises(Disconnected):
        info_vertex_degree(build_graph(3, [(0, 1)]))


def test_edge_complexities():
    assert edge_complexities(K3) == (6, 2.0, pytest.approx(2 / 3, abs=1e-15))
    assert edge_complexities(P3) == (4, pytest.approx(4 / 3, abs=1e-15), pytest.approx(4 / 9, abs=1e-15))
    rng = random.Random(3)
    for _ in range(20):
        g = random_connected_graph(rng, rng.randrange(2, 9))
        assert edge_complexities(g)[2] == connectedness(g)[0]


def _brute_two_edge_subgraphs(g):
    return sum(1 for e, f in itertools.combinations(g.edges, 2) if set(e) & set(f))


def test_subgraph_count_2():
    assert subgraph_count_2(K3) == (3, 1.0)
    assert subgraph_count_2(P3) == (1, pytest.approx(1 / 3, abs=1e-15))
    for k in range(2, 8):
        assert subgraph_count_2(star_graph(k + 1))[0] == math.comb(k, 2)
    for g in (K3, P3, K4_MINUS, cycle_graph(6)):
        assert subgraph_count_2(g)[0] == _brute_two_edge_subgraphs(g)
    with pytest.raises(DegenerateOrder):
        subgraph_count_2(K2)


def test_total_subgraph_count_examples():
    assert total_subgraph_count(K3).counts_by_edges == (3, 3, 3, 1)
    assert total_subgraph_count(K3).total == 10
    assert total_subgraph_count(P3).counts_by_edges == (3, 2, 1)
    assert total_subgraph_count(K2).counts_by_edges == (2, 1)
    assert total_subgraph_count(K2).total == 3


def test_overall_connectivity_examples():
    assert overall_connectivity(P3).oc_by_edges == (4, 6, 4)
    assert overall_connectivity(P3).total == 14
    assert overall_connectivity(K3).oc_by_edges == (6, 12, 18, 6)
    assert overall_connectivity(K3).total == 42
    assert overall_connectivity(K2).oc_by_edges == (2, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_spectra_match_brute_force_exhaustive(n):
    for g in all_connected_graphs(n):
        counts, oc = brute_spectra(g)
        assert list(total_subgraph_count(g).counts_by_edges) == counts
        assert list(overall_connectivity(g).oc_by_edges) == oc


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32))
def test_spectrum_invariants(n, seed):
    g = random_connected_graph(random.Random(seed), n, max_edges=14)
    spec = total_subgraph_count(g).counts_by_edges
    oc = overall_connectivity(g).oc_by_edges
    assert spec[0] == g.n and spec[1] == g.m and len(spec) == g.m + 1 == len(oc)
    assert all(c >= 0 for c in spec)
    assert oc[0] == 2 * g.m
    if g.n >= 3:
        assert spec[2] == subgraph_count_2(g)[0]


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        total_subgraph_count(complete_graph(6), budget=50)
    # The cap is checked as subgraphs are produced; K3 produces exactly 10.
    assert total_subgraph_count(K3, budget=10).total == 10
    with pytest.raises(BudgetExceeded):
        total_subgraph_count(K3, budget=9)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("MOTIFGRAPH_BUDGET", "5")
    assert default_budget() == 5
    with pytest.raises(BudgetExceeded):
        total_subgraph_count(complete_graph(4))
    monkeypatch.delenv("MOTIFGRAPH_BUDGET")
    assert default_budget() == 10**8


def test_ad_index():
    for n in range(2, 8):
        assert ad_index(complete_graph(n)) == 1.0
    assert ad_index(P3) == 0.5


def test_b_index():
    for n in range(2, 8):
        assert b_index(complete_graph(n))[0] == n
    b, bi = b_index(P3)
    assert b == pytest.approx(5 / 3, abs=1e-15)
    assert bi == pytest.approx((1 / 3, 1.0, 1 / 3), abs=1e-15)
    b, bi = b_index(K4_MINUS)
    # degrees (2,3,3,2), distance degrees (4,3,3,4)
    assert bi == pytest.approx((0.5, 1.0, 1.0, 0.5), abs=1e-15)
    assert b == 3.0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_ad_extremes_exhaustive(n):
    vals = [(ad_index(g), g) for g in all_connected_graphs(n)]
    lo = min(v for v, _ in vals)
    hi = max(v for v, _ in vals)
    assert lo == pytest.approx(ad_index(path_graph(n)), abs=1e-15)
    assert hi == ad_index(complete_graph(n)) == 1.0
    # Every minimiser is a labelled path: a tree with maximum degree two.
    for v, g in vals:
        if v <= lo + 1e-12:
            assert g.m == n - 1 and max(g.degrees) <= 2


def test_measures_isomorphism_invariant():
    rng = random.Random(21)
    for _ in range(40):
        g = random_connected_graph(rng, rng.randrange(2, 8), max_edges=13)
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        for f in (lambda x: b_index(x)[0], ad_index, info_vertex_degree,
                  lambda x: total_subgraph_count(x).total, lambda x: overall_connectivity(x).total):
            assert f(g) == f(h)


def test_edge_addition_strictly_increases_b_and_k():
    rng = random.Random(8)
    checked = 0
    while checked < 150:
        n = rng.randrange(3, 9)
        g = random_connected_graph(rng, n, max_edges=12)
        missing = [e for e in itertools.combinations(range(n), 2) if not g.has_edge(*e)]
        if not missing:
            continue
        h = build_graph(n, list(g.edges) + [rng.choice(missing)])
        assert b_index(h)[0] > b_index(g)[0]
        assert total_subgraph_count(h).total > total_subgraph_count(g).total
        checked += 1


def test_complexity_report_k3():
    r = complexity_report(K3)
    assert (r.k_total, r.oc_total, r.b_index) == (10, 42, 3.0)
    assert r.e_g == 6 and r.e_a == 2.0 and r.e_n == r.e_g / 9
    assert r.b_index == sum(r.b_values)
    d = r.as_dict()
    assert d["subgraph_spectrum"] == [3, 3, 3, 1]


def test_complexity_report_k2_has_no_sc2n():
    r = complexity_report(K2)
    assert r.sc2 == 0 and math.isnan(r.sc2_n)


def test_measure_suite_normalization():
    res = measure_suite([K3, P3], normalize=["B"])
    assert res.normalized["b"] == [pytest.approx(1.8, abs=1e-15), 1.0]
    single = measure_suite([P3])
    assert all(col == [1.0] for col in single.normalized.values())
    twins = measure_suite([P3, P3.relabel([2, 0, 1])])
    rows = [{k: v for k, v in r.as_dict().items() if k != "b_values"} for r in twins.reports]
    assert rows[0] == rows[1]


def test_measure_id_aliases():
    assert measure_id("A/D") == "ad" and measure_id("I_vd") == "ivd" and measure_id("B") == "b"
    with pytest.raises(ValueError):
        measure_id("nonsense")
