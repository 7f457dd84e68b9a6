import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spirallog.config import Tolerances, load_tolerances
from spirallog.report import BoundReport, build_report, failed_report

finite = st.floats(-10, 10, allow_nan=False)


@given(st.lists(st.tuples(finite, finite), max_size=12))
def test_pass_and_attained_invariants(pairs):
    rows = [(i + 1, v, b) for i, (v, b) in enumerate(pairs)]
    rep = build_report("demo", 0.5, rows)
    assert rep.passed == all(b - v >= -1e-7 for _, v, b in rows)
    if rep.attained:
        assert rep.passed
    if rows:
        assert rep.worst_margin == min(b - v for _, v, b in rows)


def test_attainment_and_labels():
    rep = build_report("demo", 0.5, [(1, 0.25, 0.25, None, "gamma_n"), (2, 0.1, 0.2, 0.9)])
    assert rep.attained and rep.attained_indices() == [1]
    assert rep.per_index[0].label == "gamma_n" and rep.per_index[1].r == 0.9


def test_failing_report_is_never_attained():
    rep = build_report("demo", 1.0, [(1, 0.5, 0.5), (2, 1.0, 0.5)])
    assert not rep.passed and not rep.attained


def test_empty_report_passes_with_infinite_margin():
    rep = build_report("demo", None, [])
    assert rep.passed and rep.worst_margin == math.inf


def test_dict_roundtrip_through_json():
    rep = build_report("demo", 0.3, [(1, 0.1, 0.2, 0.5, "x")], witness="w", notes={"terms": 3})
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["pass"] is True and "passed" not in d
    assert BoundReport.from_dict(d) == rep


def test_failed_report():
    rep = failed_report("demo", 0.5, "boom", "w")
    assert not rep.passed and rep.notes["error"] == "boom" and rep.worst_margin == -math.inf


def test_tolerance_override(monkeypatch):
    monkeypatch.setenv("SPIRALLOG_TOLERANCE", "1e-5")
    assert load_tolerances().pass_tol == 1e-5
    monkeypatch.setenv("SPIRALLOG_TOLERANCE", "-1")
    with pytest.raises(ValueError):
        load_tolerances()
    monkeypatch.delenv("SPIRALLOG_TOLERANCE")
    assert load_tolerances() == Tolerances()
    # the grid order keeps the r = 0.95 tail far below the pass tolerance
    assert 0.95 ** (Tolerances().grid_order + 1) / 0.05 < 1e-9
