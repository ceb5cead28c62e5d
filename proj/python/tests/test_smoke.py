import math

import pytest

import aonpg


def test_core_decision_and_update():
    assert aonpg.decide_action(1.0, 5, 1.0) == aonpg.Action.Contribute
    assert aonpg.decide_action(0.5, 2, 1.5) == aonpg.Action.Defect
    assert aonpg.update_belief(1.0, 0.3, 4, 5) == 1.0
    assert aonpg.update_belief(0.0, 0.3, 0, 5) == 0.0
    assert aonpg.update_belief(0.5, 0.3, 2, 5) == pytest.approx(0.5)
    assert aonpg.contribute_probability(0.3, 5) == pytest.approx(0.3, abs=1e-15)
    with pytest.raises(ValueError):
        aonpg.update_belief(0.5, 1.5, 1, 3)


def test_circulant_metrics():
    g = aonpg.circulant(50, 4)
    metrics = aonpg.compute_metrics(g)
    assert g.n == 50
    assert g.edge_count == 100
    assert metrics.triangle_count == 50
    assert metrics.max_degree == 4
    assert metrics.mean_degree == 4.0
    assert aonpg.closed_neighborhood(g, 0) == [0, 1, 2, 48, 49]


def test_edge_list_round_trip():
    g = aonpg.Graph.from_edges(4, [(0, 1), (2, 1), (3, 0)])
    again = aonpg.Graph.from_edge_list(g.to_edge_list())
    assert again.edges() == [(0, 1), (0, 3), (1, 2)]


def test_connected_geometric_graph():
    g, attempts = aonpg.connected_random_geometric(50, 0.3, aonpg.Rng(7))
    assert attempts >= 1
    assert aonpg.is_connected(g)
    assert len(g.positions) == 50


def test_run_is_deterministic():
    g = aonpg.circulant(50, 2)
    cfg = aonpg.SimConfig(seed=11, max_rounds=100000, record_stride=100)
    a = aonpg.run(g, cfg)
    b = aonpg.run(g, cfg)
    assert a.converged == b.converged
    assert a.tau == b.tau
    assert a.final_beliefs == b.final_beliefs
    assert a.series["round"][0] == 0


def test_simulation_fixed_corner():
    sim = aonpg.Simulation(aonpg.circulant(10, 2), aonpg.SimConfig(seed=1),
                           [1.0] * 10)
    for _ in range(1000):
        sim.step()
    assert sim.beliefs == [1.0] * 10
    assert aonpg.check_convergence(sim.beliefs, 1e-4) == "contribute"


def test_batch_outcomes_independent_of_threads():
    cfg = aonpg.SimConfig(max_rounds=200000)
    one = aonpg.run_batch("rgg", r_g=0.3, n_runs=8, master_seed=3, config=cfg,
                          parallelism=1)
    two = aonpg.run_batch("rgg", r_g=0.3, n_runs=8, master_seed=3, config=cfg,
                          parallelism=2)
    assert one.runs_csv() == two.runs_csv()
    c, d, t = one.outcome_table()
    assert math.isclose(c + d + t, 1.0)
    assert len(one.taus()) == 8


def test_catastrophe_ratio_and_tail():
    taus = [1.0, 2.0, 5.0, 10.0, 100.0, 1000.0]
    p_max, p_sum, ratio = aonpg.catastrophe_ratio(taus, 50.0, 3)
    assert p_max <= p_sum
    assert ratio is None or 0.0 <= ratio <= 1.0
    grid = aonpg.log_grid(1000)
    tail = [p for _, p in aonpg.tail_probability([int(t) for t in taus], grid)]
    assert tail[0] == 1.0
    assert all(x >= y for x, y in zip(tail, tail[1:]))


def test_metastability_report():
    rounds = list(range(0, 20000, 100))
    totals = [25.0] * len(rounds)
    plateaus = aonpg.metastability_report(rounds, totals, 50.0, window=10)
    assert len(plateaus) == 1
    assert plateaus[0]["level"] == pytest.approx(25.0)
    assert plateaus[0]["length"] >= 19000
