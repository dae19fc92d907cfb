import json
import math

import pytest

import dichroma


def directed_cycle(n):
    return dichroma.Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def bidirected_complete(n):
    return dichroma.Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def test_digraph_basics_and_edge_list_round_trip():
    d = directed_cycle(5)
    assert d.order == 5
    assert d.arc_count == 5
    assert d.has_arc(4, 0)
    assert dichroma.Digraph.from_edge_list(d.to_edge_list()) == d
    assert "digraph" in d.to_dot()
    assert dichroma.girth(d) == 5
    assert dichroma.digirth(d) == 5
    assert dichroma.digirth(dichroma.Digraph(3, [(0, 1), (1, 2)])) is None


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        dichroma.Digraph(2, [(0, 0)])
    with pytest.raises(dichroma.InputError):
        dichroma.sample(10, 0.7, 1)


def test_solvers():
    chi = dichroma.chromatic_number(bidirected_complete(4))
    assert chi["status"] == "decided"
    assert chi["lower"] == chi["upper"] == 4
    alpha = dichroma.max_acyclic_set(directed_cycle(6))
    assert alpha["lower"] == 5
    assert dichroma.is_acyclic_induced(directed_cycle(6), alpha["witness"])
    fvs = dichroma.min_fvs(directed_cycle(6))
    assert fvs["upper"] == 1
    assert dichroma.two_colorable_fast(directed_cycle(3))
    assert not dichroma.two_colorable_fast(bidirected_complete(4))


def test_budget_exhaustion_is_reported():
    d = dichroma.sample(40, 0.3, 99)
    r = dichroma.chromatic_number(d, node_limit=5)
    assert r["status"] == "undecided"
    assert r["lower"] <= r["upper"]


def test_sampling_is_seeded():
    a = dichroma.sample(50, 0.1, 7)
    assert a == dichroma.sample(50, 0.1, 7)
    assert dichroma.p_theorem1(16, 3000) == pytest.approx(16 / (4 * math.e * 3000))
    assert dichroma.p_theorem2(3, 500) == pytest.approx(0.018)


def test_bounds():
    r = dichroma.evaluate_bound("mas_bound", n=1000, p=0.1)
    assert r["theoretical"] == pytest.approx(242.2162722286828, rel=1e-12)
    cap = dichroma.evaluate_bound("short_cycle_total_bound", delta=16, g=5)
    assert cap["theoretical"] == 320
    with pytest.raises(ValueError):
        dichroma.evaluate_bound("nope")


def test_pipeline_certificate_round_trip():
    cert = dichroma.theorem1_pipeline(6, 4, 200, seed=3)
    assert cert["verified_girth_ok"] and cert["verified_maxdeg_ok"]
    ok, problems = dichroma.validate_certificate(cert)
    assert ok, problems
    cert["chi_lower"] += 1
    ok, problems = dichroma.validate_certificate(cert)
    assert not ok and problems


def test_audit_and_erdos_posa():
    audit = dichroma.theorem2_audit(bidirected_complete(4), 3, 1.0, subset_budget=10)
    assert audit["status"] == "counterexample"
    dec = dichroma.decompose(directed_cycle(7), 2)
    assert dec["kind"] == "fvs"
    w = dichroma.short_cycle_witness(bidirected_complete(4))
    assert w["status"] == "ok"
    assert w["cycle"]["length"] == 2
    with pytest.raises(ValueError):
        dichroma.short_cycle_witness(directed_cycle(5))


def test_experiment_run_and_verify(tmp_path):
    config = {
        "experiment": "E7",
        "trials": 20,
        "master_seed": 5,
        "params": {"mode": "random", "n": 5, "arc_probability": 0.4},
        "output_path": str(tmp_path / "e7"),
    }
    summary = dichroma.run_experiment(config)
    assert summary["all_hard_passed"]
    assert json.loads((tmp_path / "e7" / "summary.json").read_text()) == summary
    passed, detail, trial = dichroma.verify_report(tmp_path / "e7")
    assert passed, detail
    assert trial is None
