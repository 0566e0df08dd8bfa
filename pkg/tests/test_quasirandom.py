"""Subset-deviation checks and graphon constancy metrics."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_cut_distance, brute_subset_deviation
from quasiforce import (
    Graph,
    StepGraphon,
    UnsupportedSizeError,
    complete_graph,
    constant_graphon,
    contrast_experiment,
    graph_quasirandomness,
    graphon_constancy,
    row_oscillation,
)
from quasiforce.sampling import gnp


def _count_inside(g, subset):
    inside = set(subset)
    return sum(1 for u, v in g.edges if u in inside and v in inside)


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 10_000), p=st.floats(0.0, 1.0))
def test_exact_matches_brute_enumeration(seed, p):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 10))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    g = Graph(n, tuple(e for e in pairs if rng.random() < 0.5))
    want, _ = brute_subset_deviation(g, p)
    rep = graph_quasirandomness(g, p, mode="exact")
    assert rep.exact
    assert rep.deviation == pytest.approx(want, abs=1e-12)
    assert rep.epsilon_star == rep.deviation
    # the witness really attains the reported deviation
    u = len(rep.witness)
    attained = abs(_count_inside(g, rep.witness) - p * u * (u - 1) / 2) / n**2
    assert attained == pytest.approx(rep.deviation, abs=1e-12)


def test_perfect_graph_has_empty_witness():
    # at p = 1 a complete graph deviates nowhere, and the tie breaks to ()
    rep = graph_quasirandomness(complete_graph(5).graph, 1.0, mode="exact")
    assert rep.deviation == 0.0
    assert rep.witness == ()


def test_exact_cap_enforced():
    g = Graph(25)
    with pytest.raises(UnsupportedSizeError):
        graph_quasirandomness(g, 0.5, mode="exact")
    rep = graph_quasirandomness(g, 0.5)  # auto falls back to the heuristic
    assert not rep.exact
    with pytest.raises(ValueError):
        graph_quasirandomness(g, 0.5, exact_max_n=27)


def test_heuristic_never_beats_exact():
    for seed in range(6):
        g = gnp(16, 0.4, seed)
        exact = graph_quasirandomness(g, 0.4, mode="exact")
        heur = graph_quasirandomness(g, 0.4, mode="heuristic", seed=seed)
        assert heur.deviation <= exact.deviation + 1e-12
        assert heur.epsilon_star >= heur.deviation


def test_heuristic_witness_attains_its_deviation():
    g = gnp(40, 0.5, 3)
    rep = graph_quasirandomness(g, 0.5, mode="heuristic")
    u = len(rep.witness)
    attained = abs(_count_inside(g, rep.witness) - 0.5 * u * (u - 1) / 2) / g.n**2
    assert attained == pytest.approx(rep.deviation, abs=1e-12)


def test_quasirandomness_validation():
    g = Graph(3, ((0, 1),))
    with pytest.raises(ValueError):
        graph_quasirandomness(g, 1.5)
    with pytest.raises(ValueError):
        graph_quasirandomness(Graph(0), 0.5)
    with pytest.raises(ValueError):
        graph_quasirandomness(g, 0.5, mode="magic")


# ---------------------------------------------------------------------------
# graphon constancy


def test_constancy_zero_on_constant():
    rep = graphon_constancy(constant_graphon(0.3, 4), 0.3)
    assert rep.linf == 0.0 and rep.l2 == 0.0 and rep.cut == 0.0
    assert rep.oscillation == 0.0


def test_constancy_cut_matches_brute():
    rng = np.random.default_rng(31)
    for _ in range(10):
        m = int(rng.integers(1, 5))
        vals = rng.random((m, m))
        w = rng.random(m) + 0.2
        g = StepGraphon(w / w.sum(), (vals + vals.T) / 2)
        p = float(rng.random())
        rep = graphon_constancy(g, p)
        want = brute_cut_distance(g.weights, g.values, p)
        assert rep.cut == pytest.approx(want, abs=1e-12)
        assert rep.cut <= rep.l2 + 1e-12
        assert rep.l2 <= rep.linf + 1e-12


def test_constancy_cut_none_beyond_cap():
    g = constant_graphon(0.5, 16)
    rep = graphon_constancy(g, 0.5)
    assert rep.cut is None


def test_row_oscillation():
    g = StepGraphon(
        np.array([0.5, 0.5]), np.array([[0.2, 0.9], [0.9, 0.9]])
    )
    spread, part = row_oscillation(g)
    assert spread == pytest.approx(0.7)
    assert part == 0
    assert graphon_constancy(g, 0.5).oscillation_part == 0


def test_witness_constancy_metrics():
    res = contrast_experiment(0.5)
    assert res.constancy.linf == pytest.approx(0.5, abs=1e-12)
    assert res.constancy.l2 == pytest.approx(0.3016136593425802, abs=1e-12)
