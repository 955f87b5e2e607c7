from __future__ import annotations

import json

import pytest

from z2z4steg.exceptions import ParameterError
from z2z4steg.simulate import SimReport, simulate


def test_single_trial_is_deterministic():
    a = simulate("z2z4", 3, 1, seed=42)
    b = simulate("z2z4", 3, 1, seed=42)
    assert a == b and a.to_json() == b.to_json()


def test_chunking_does_not_depend_on_workers():
    a = simulate("kp", 2, 2500, seed=3, level=2)
    b = simulate("kp", 2, 2500, seed=3, level=2, workers=2)
    assert a == b


def test_seeds_differ():
    assert simulate("f5", 3, 500, seed=1).D_hat != simulate("f5", 3, 500, seed=2).D_hat


@pytest.mark.parametrize(
    "scheme,m,kw",
    [("f5", 3, {}), ("z2z4", 3, {}), ("z2z4", 4, {"delta": 2}), ("kp", 3, {"level": 2}), ("z2z4-product", 3, {})],
)
def test_bound_holds_on_small_runs(scheme, m, kw):
    r = simulate(scheme, m, 2000, seed=5, **kw)
    assert r.verdict == "pass"
    assert r.D_hat <= r.bound_D + 3 * r.stderr_D


def test_report_fields():
    r = simulate("kp", 3, 300, seed=9, level=2)
    data = json.loads(r.to_json())
    assert data["E"] == pytest.approx(24 / 49)
    assert data["bound_D"] == pytest.approx(0.1473214, abs=1e-7)
    assert data["params"] == {"m": 3, "B": 8, "level": 2, "optimize": True}
    assert data["verdict"] in ("pass", "fail")


def test_verdict_follows_inequality():
    assert SimReport("x", {}, 10, 0, 0.30, 1.0, 0.01, 0.25, 0).verdict == "fail"
    assert SimReport("x", {}, 10, 0, 0.27, 1.0, 0.01, 0.25, 0).verdict == "pass"


def test_extreme_events_counted_at_bitdepth_two():
    # with B = 2 half of all symbols are extreme
    r = simulate("z2z4", 3, 500, seed=1, B=2)
    assert r.extreme_events > 0


@pytest.mark.parametrize(
    "args", [("lsb", 3, 10, 0), ("z2z4", 3, 0, 0), ("z2z4", 3, 10, 0, {"B": 7}), ("z2z4-product", 3, 10, 0, {"level": 3})]
)
def test_rejects(args):
    kw = args[4] if len(args) > 4 else {}
    with pytest.raises(ParameterError):
        simulate(*args[:4], **kw)
