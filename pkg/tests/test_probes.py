import json

import pytest

from minkplane.plane import Plane
from minkplane.probes import (
    CSV_COLUMNS,
    PROBE_IDS,
    PROBES,
    ProbeConfig,
    battery_csv,
    probe,
    reevaluate_witness,
    run_battery,
    sub_rng,
)


def test_config_validation():
    with pytest.raises(ValueError):
        ProbeConfig("lp:2", "T99", 10, 1)
    with pytest.raises(ValueError):
        ProbeConfig("lp:2", "L1", 0, 1)
    with pytest.raises(ValueError):
        ProbeConfig("lp:2", "L1", 10, -1)
    with pytest.raises(ValueError):
        ProbeConfig("lp:2", "L1", 10, 2 ** 64)


def test_sub_seeds_are_independent_of_order():
    a = sub_rng(5, 3, 7).uniform()
    sub_rng(5, 3, 6).uniform()
    assert sub_rng(5, 3, 7).uniform() == a
    assert sub_rng(5, 4, 7).uniform() != a


def test_sub_seed_golden():
    # frozen draw: guards the documented derivation SeedSequence([seed, probe, sample])
    assert sub_rng(1, 0, 0).uniform() == pytest.approx(0.5118216247002567, abs=0)


@pytest.mark.parametrize("pid", PROBE_IDS)
def test_euclidean_small(pid):
    rep = probe(Plane("lp:2"), ProbeConfig("lp:2", pid, 20, 3))
    d = rep.to_dict()
    assert d["failures"] == 0
    assert d["defects"]["max"] <= 1e-6
    assert d["defects"]["max"] >= d["defects"]["p95"] >= 0


@pytest.mark.parametrize("pid", PROBE_IDS)
def test_witness_reproduces(pid):
    pl = Plane("lp:4")
    d = probe(pl, ProbeConfig("lp:4", pid, 10, 11), timing=False).to_dict()
    d = json.loads(json.dumps(d))
    assert abs(reevaluate_witness(pl, d) - d["defects"]["max"]) <= 1e-12


@pytest.mark.parametrize("pid", PROBE_IDS)
def test_hypothesis_rechecked(pid):
    pl = Plane("lp:inf")
    pr = PROBES[pid]
    payload = pr.construct(pl, sub_rng(2, PROBE_IDS.index(pid), 0))
    assert pr.check(pl, payload, 1e-9)


def test_failed_recheck_counted(monkeypatch):
    pr = PROBES["L2"]
    monkeypatch.setitem(PROBES, "L2", pr.__class__(pr.id, pr.construct, lambda *a: False, pr.measure))
    rep = probe(Plane("lp:2"), ProbeConfig("lp:2", "L2", 5, 1))
    assert rep.failures == 5 and rep.dmax is None and rep.witness is None


def test_construction_errors_counted(monkeypatch):
    from minkplane.numerics import ConstructionError

    def boom(plane, rng):
        raise ConstructionError("construction failed: test")

    pr = PROBES["T32"]
    monkeypatch.setitem(PROBES, "T32", pr.__class__(pr.id, boom, pr.check, pr.measure))
    rep = probe(Plane("lp:2"), ProbeConfig("lp:2", "T32", 3, 1))
    assert rep.failures == 3


def test_report_schema():
    d = probe(Plane("lp:2"), ProbeConfig("lp:2", "L1", 3, 1)).to_dict()
    assert list(d) == ["version", "norm", "id", "samples", "seed", "tol", "defects", "failures",
                       "witness", "runtime_ms"]
    assert list(d["defects"]) == ["max", "mean", "p95"]


def test_battery_order_and_csv():
    reps = run_battery(Plane("lp:inf"), 3, 9, timing=False)
    assert [r.config.id for r in reps] == list(PROBE_IDS)
    lines = battery_csv(reps).splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 14


def test_battery_matches_single_probes():
    pl = Plane("lp:4")
    reps = run_battery(pl, 4, 21, timing=False)
    for r in reps:
        single = probe(pl, ProbeConfig(str(pl.spec), r.config.id, 4, 21), timing=False)
        assert json.dumps(single.to_dict()) == json.dumps(r.to_dict())
