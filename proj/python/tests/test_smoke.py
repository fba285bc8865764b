import math

import pytest

import nabla_kit as nk


def lagrange(points, values):
    total = 0.0
    for i, (yi, fi) in enumerate(zip(points, values)):
        den = 1.0
        for j, yj in enumerate(points):
            if j != i:
                den *= yi - yj
        total += fi / den
    return total


def test_divided_difference_matches_lagrange_form():
    pts = [0.0, 0.4, 1.1, 1.5, 2.3]
    vals = [math.exp(-y) for y in pts]
    assert nk.divided_difference(pts, vals) == pytest.approx(lagrange(pts, vals), rel=1e-10)


def test_duplicate_points_raise_value_error():
    with pytest.raises(ValueError):
        nk.divided_difference([0.0, 0.0], [1.0, 2.0])
    with pytest.raises(nk.ContractViolation):
        nk.seq_identity([1.0, 1.0], [1.0, 2.0], 3)


def test_seq_identity_hand_example():
    r = nk.seq_identity([1, 1, 1], [3, 2, 3], 1)
    assert r["lhs"] == 8.0
    assert r["rhs"] == pytest.approx(8.0)
    assert [b["label"] for b in r["blocks"]] == ["boundary", "remainder"]
    assert sum(b["value"] for b in r["blocks"]) == pytest.approx(8.0)


def test_certify_mixed_difference_matrix():
    cert = nk.certify_double_sum([[1, -1], [-1, 1]], [0, 1], [0, 1], 1, 1)
    assert cert["verdict"] == "certified"
    bad = nk.certify_double_sum([[1, 0], [0, 1]], [0, 1], [0, 1], 1, 1)
    assert bad["verdict"] == "refuted"


def test_rodrigues_weight_values():
    # M = 1: (-1)^2 P_2(x) = (3x^2 - 1) / 2
    xs = [-1.0, 0.0, 0.5, 1.0]
    got = nk.rodrigues_weight(1, xs)
    assert got == pytest.approx([(3 * x * x - 1) / 2 for x in xs], abs=1e-14)


def test_psd_check():
    assert nk.psd_check([[2, -1], [-1, 2]])["psd"]
    assert not nk.psd_check([[1, 2], [2, 1]])["psd"]


def test_run_power_mean():
    r = nk.run("mean", kind="power", kernel={"constant": 1}, rect=[1, 2, 1, 2], p=1, q=2)
    assert r["exit_status"] == 0
    assert r["result"]["value"] == pytest.approx(225 / 196, abs=1e-12)


def test_run_reports_input_errors():
    r = nk.run("identity", kind="seq", weights=[1, 1], sequence=[1], order=1)
    assert r["exit_status"] == 2
    assert "error" in r
    assert "certify" in nk.commands()
