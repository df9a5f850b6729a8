import math

import pytest

import geocluster as gc

SQUARE = [[0, 0], [1, 0], [0, 1], [1, 1]]


def test_meb_triangle():
    center, radius = gc.meb([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])
    assert radius == pytest.approx(1 / math.sqrt(3))
    assert len(center) == 2


def test_balance_constant():
    assert [gc.c_d(d) for d in (1, 2, 3)] == [3, 10, 65]


def test_separator_contract():
    pts = [[x, y] for x in range(5) for y in range(4)]
    r = gc.voronoi_separator(pts, 0)
    x1 = [pts[i] for i in r["x1"]]
    x2 = [pts[i] for i in r["x2"]]
    assert len(x1) <= 18 and len(x2) <= 18
    assert gc.crossing_check(r["z"], x1, x2)


def test_ksupplier_and_baselines():
    clients = [[0, 0], [10, 0]]
    facilities = [[0, 1], [10, 1]]
    r = gc.solve_ksupplier(clients, facilities, 2, epsilon=0.1)
    assert r["cost"] <= 1.1
    assert r["probes"] <= 6
    assert gc.hs_3approx(clients, facilities, 2)["cost"] == pytest.approx(1.0)
    cost, centers = gc.brute_ksupplier(clients, facilities, 1)
    assert cost == pytest.approx(math.sqrt(101))


def test_kcenter_unit_square():
    assert gc.solve_kcenter(SQUARE, 2, epsilon=0.1)["cost"] <= 0.55
    assert gc.brute_kcenter_continuous(SQUARE, 2)[0] == pytest.approx(0.5)
    assert gc.gonzalez_2approx(SQUARE, 2, 0)["cost"] == pytest.approx(1.0)


def test_nukc():
    line = [[0], [4], [10]]
    s = gc.solve_nukc_general(line, [], [3, 1], [1, 1])
    assert s["dilation"] <= 8 / 3 + 1e-9
    pts = [[0, 0], [1, 0], [5, 0], [6, 0]]
    e = gc.solve_nukc_euclidean(pts, [1.0], [2], epsilon=0.25)
    opt = gc.brute_nukc_euclidean(pts, [1.0], [2])
    assert opt["dilation"] == pytest.approx(0.5)
    assert e["dilation"] <= 1.25 * opt["dilation"] + 1e-9


def test_gadget_and_projection():
    clients, facilities = gc.vc_gadget(3, [(1, 2), (2, 3), (1, 3)], 1)
    assert gc.brute_ksupplier(clients, facilities, 1)[0] == pytest.approx(math.sqrt(3))
    assert gc.brute_ksupplier(clients, facilities, 2)[0] == pytest.approx(1.0)
    basis = [[1.0 if i == j else 0.0 for j in range(8)] for i in range(8)]
    r = gc.jl_project(basis, 400, seed=1)
    assert r["accepted"]
    assert 0.9 <= r["min_ratio"] <= r["max_ratio"] <= 1.1


def test_cli_round_trip(tmp_path):
    path = tmp_path / "square.txt"
    path.write_text("KSUPPLIER 2 2\nCLIENTS 4\n0 0\n1 0\n0 1\n1 1\nFACILITIES SAME\n")
    code, out, err = gc.run_cli(["solve", "--problem", "kcenter", "--input", str(path)])
    assert code == 0, err
    sol = tmp_path / "square.sol"
    sol.write_text(out)
    code, out, err = gc.run_cli(["verify", "--input", str(path), "--solution", str(sol),
                                 "--problem", "kcenter"])
    assert code == 0, err
    code, _, _ = gc.run_cli(["solve", "--bogus"])
    assert code == 1


def test_errors_become_exceptions():
    with pytest.raises(ValueError):
        gc.solve_ksupplier([[0, 0]], [[0, 1]], 2)
