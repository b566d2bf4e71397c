"""The arity-3 probe report: field completeness and the flag logic."""

import random

import pytest

from pqstab.graphs import from_spec, random_graph
from pqstab.probe import DEFAULT_ORACLE_LIMIT, probe_to_json, run_probe

REPORT_FIELDS = {"n", "mode", "stabilization", "certificate", "aut", "system", "flag"}


@pytest.fixture(scope="module")
def petersen_report():
    return run_probe(from_spec("petersen"))


def test_report_is_complete(petersen_report):
    rep = petersen_report
    assert set(rep) == REPORT_FIELDS
    assert rep["n"] == 10 and rep["mode"] == "count"
    assert rep["stabilization"]["class_counts"] == [7, 8, 8]
    assert rep["stabilization"]["final_class_sizes"] == [60] * 4 + [120] * 4
    assert rep["certificate"]["verdicts"]["strongly_regular"]["holds"]
    assert rep["aut"] == {"status": "computed", "order": 120, "reason": None}


def test_petersen_system_block(petersen_report):
    system = petersen_report["system"]
    assert system == {
        "variables": 90,
        "equations": 712,
        "source": "all",
        "rank": 88,
        "solution_space_dim": 2,
        "constants_solve": True,
        "pair_classes": 2,
        "distinct_class_solution": True,
        "distinct_class_solution_note": None,
    }
    assert system["rank"] <= min(system["equations"], system["variables"])


def test_flag_stays_down_for_symmetric_graph(petersen_report):
    assert petersen_report["flag"] == {
        "raised": False,
        "reason": "automorphism group is nontrivial (order 120)",
    }


def test_flag_reason_for_trivial_partition():
    rep = run_probe(from_spec("complete:5"))
    assert rep["stabilization"]["final_classes"] == 1
    assert rep["aut"]["order"] == 120
    assert not rep["flag"]["raised"]
    assert "trivial (single class or discrete)" in rep["flag"]["reason"]


def test_oracle_limit_respected():
    rep = run_probe(from_spec("petersen"), oracle_limit=5)
    assert rep["aut"] == {
        "status": "not computed",
        "order": None,
        "reason": "n=10 exceeds oracle limit 5",
    }
    assert not rep["flag"]["raised"]
    assert rep["flag"]["reason"] == "automorphism count unavailable; cannot evaluate"
    assert DEFAULT_ORACLE_LIMIT == 20


def test_distinct_solution_declined_above_class_cap():
    # a random graph this size stabilizes to singletons, so the projected
    # pair partition has far more classes than the search cap
    g = random_graph(14, 0.5, random.Random(3))
    rep = run_probe(g)
    assert rep["aut"]["order"] == 1
    assert rep["system"]["distinct_class_solution"] is None
    assert rep["system"]["distinct_class_solution_note"] == (
        "not evaluated: too many pair classes"
    )


def test_probe_rejects_tiny_graphs():
    with pytest.raises(ValueError, match="n >= 4"):
        run_probe(from_spec("path:3"))


def test_mode_and_source_passthrough():
    rep = run_probe(from_spec("petersen"), mode="set", pair_source="orbit-reduced")
    assert rep["mode"] == "set"
    assert rep["stabilization"]["mode"] == "set"
    assert rep["system"]["source"] == "orbit-reduced"
    # the stabilized classes coincide with the orbits, leaving no equations
    assert rep["system"]["equations"] == 0


def test_json_is_deterministic():
    a = probe_to_json(run_probe(from_spec("petersen")))
    b = probe_to_json(run_probe(from_spec("petersen")))
    assert a == b
    assert ": " not in a  # compact separators
