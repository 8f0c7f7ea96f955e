import json
import math
import os
from pathlib import Path

import pytest

import minsurf

DATA = Path(os.environ.get("MINSURF_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_exceptional_values():
    assert minsurf.exceptional_values("z^2", ["0"]) == ["(0+0i)", "inf"]
    assert minsurf.exceptional_values("z", ["0", "1"]) == ["(0+0i)", "(1+0i)", "inf"]


def test_completeness_matches_count():
    # omega_hat = 1/((z-1)(z-2)(z-3)), p = 4 boundary points
    w = "1/((z-1)*(z-2)*(z-3))"
    assert minsurf.is_complete([("z", 1), ("z", 1)], w, ["1", "2", "3"])
    assert not minsurf.is_complete([("z", 1)], w, ["1", "2", "3"])


def test_phis_are_conformal():
    phi = minsurf.phis("z", "-z", "1/z^2")
    assert minsurf.check_conformality(phi)
    phi[3] = "1"
    assert not minsurf.check_conformality(phi)


def test_lagrangian_curvature():
    lam2, k, _ = minsurf.lagrangian_curvature("z", "z^2/2", 0.0, 0j)
    assert lam2 == 1.0
    assert k == -2.0
    # F = (z, z^3/3) at z = 1: squared form -1, printed form -1/2
    _, k, printed = minsurf.lagrangian_curvature("z", "z^3/3", 0.0, 1 + 0j)
    assert k == pytest.approx(-1.0)
    assert printed == pytest.approx(-0.5)


def test_min_modulus():
    assert minsurf.min_modulus_on_unit_circle(["1", "1"]) == pytest.approx(math.sqrt(7) / 2, abs=1e-9)
    with pytest.raises(minsurf.MinsurfError):
        minsurf.min_modulus_on_unit_circle(["1"])


def test_lift_equivalence():
    assert all(minsurf.lift_equivalence(a, b) for a in range(2, 21) for b in range(2, 21))


def test_run_reports():
    out = minsurf.run("gen-example", p=5, m=[1, 2])
    assert out["exit_code"] == 0
    assert out["report"]["schema_version"] == minsurf.SCHEMA_VERSION
    assert out["report"]["verdict"] == "equality"

    out = minsurf.run("nonorientable", (DATA / "moebius.json").read_text())
    assert out["exit_code"] == 0
    assert out["report"]["k_used"] == 5
    assert "moebius.obj" in out["files"]


def test_run_falsify_csv_is_deterministic():
    a = minsurf.run("falsify", {"n": 15}, seed=2, format="csv")
    b = minsurf.run("falsify", json.dumps({"n": 15}), seed=2, format="csv")
    assert a["stdout"] == b["stdout"]
    assert a["stdout"].startswith("seed,p,m,q,lhs,complete,applicable,holds,verdict")


def test_usage_errors():
    with pytest.raises(ValueError):
        minsurf.run("verify-main", "{not json")
    with pytest.raises(minsurf.UsageError):
        minsurf.run("nosuch")
    with pytest.raises(minsurf.MinsurfError):
        minsurf.exceptional_values("z+", [])
