import math
import pathlib

import numpy as np
import pytest

import dircheeger as dc

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


def cycle(n):
    return dc.DiGraph(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def test_graph_roundtrip():
    g = cycle(4)
    assert g.n == 4 and g.num_arcs == 4
    assert g.degrees() == [2.0] * 4
    assert dc.load(str(DATA / "c4.txt")).arcs == g.arcs


def test_exact_values_on_c4():
    g = cycle(4)
    assert dc.expansion(g, [0, 1]) == pytest.approx(0.25)
    assert dc.expansion(g, [0, 1], mode="vertex") == pytest.approx(0.5)
    best = dc.brute_force(g)
    assert best["value"] == pytest.approx(0.25)
    assert best["set"] == [0, 1]


def test_dag_has_infinite_ratio():
    dag = dc.load(str(DATA / "dag4.txt"))
    assert math.isinf(dc.asymmetric_ratio(dag))
    assert dc.brute_force(dag)["value"] == 0.0


def test_cycle_gap_bracket():
    n = 6
    b = dc.gap(cycle(n), mode="edge", tol=1e-6, max_iters=20000)
    target = (1 - math.cos(2 * math.pi / n)) / 2
    assert b["lambda_lo"] <= b["lambda_hi"] + 1e-12
    assert abs(b["lambda_lo"] - target) < 1e-3
    assert abs(b["lambda_hi"] - target) < 1e-3


def test_cut_is_seed_stable():
    g = dc.generate("random_strong", 7, seed=3)
    a = dc.cut(g, seed=11)
    b = dc.cut(g, seed=11, threads=2)
    assert a["cut"] == b["cut"]
    assert a["cut"]["value"] >= dc.brute_force(g)["value"] - 1e-12


def test_hypergraph_paths():
    h = dc.generate("tight_cycle_hypergraph", 6)
    assert isinstance(h, dc.Hypergraph)
    bracket = dc.hyper_gap(h)
    assert 0 < bracket["lambda_lo"] <= bracket["lambda_hi"] + 1e-9
    r = dc.hyper_cut(h)
    assert r["cut"]["value"] >= dc.brute_force(h)["value"] - 1e-12


def test_mixing_on_lazy_cycle():
    p = dc.random_walk(cycle(4))
    lazy = 0.5 * (np.eye(4) + p)
    pi = dc.stationary(lazy)
    assert np.allclose(pi, 0.25)
    spec = np.linalg.eigvalsh(dc.chung_laplacian(lazy, pi))
    assert spec[1] == pytest.approx(0.5)
    assert dc.mixing_time_tv(lazy, 0.25) >= 1
    assert math.isinf(dc.mixing_time_tv(p, 0.25))


def test_fastest_mixing_witness_is_stochastic():
    fm = dc.fastest_mixing(cycle(5))
    p = np.array(fm["P"])
    assert np.allclose(p.sum(axis=1), 1.0)
    assert fm["residual"] <= 1e-10


def test_errors_carry_their_kind():
    with pytest.raises(dc.Error, match="unknown-family|unknown"):
        dc.generate("no_such_family", 4)
    with pytest.raises(ValueError):
        dc.expansion(cycle(4), [])


def test_selftest_subset():
    (outcome,) = dc.selftest(only=[1])
    assert outcome["id"] == 1 and outcome["passed"]
