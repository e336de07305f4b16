from __future__ import annotations

import json

import pytest

from pcss_codes import bounds, cli
from pcss_codes.fixtures import GALLAGER


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def body(text):
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


def test_construct_steane(capsys):
    rc, out, _ = run(capsys, "construct", "--code", "hamming7", "--hash", "steane-hash")
    assert rc == 0
    assert out.startswith("# config {")
    assert body(out) == ["Z4Z5Z6Z7", "Z2Z3Z6Z7", "Z1Z3Z5Z7", "X4X5X6X7", "X1X2X5X6", "X2X3X6X7"]


def test_construct_from_field_matches_named_hash(capsys):
    _, a, _ = run(capsys, "construct", "--field", "4:11001", "--a", "zeta^-2", "--m", "1")
    _, b, _ = run(capsys, "construct", "--hash", "steane-hash")
    assert body(a) == body(b)


def test_construct_json(capsys):
    rc, out, _ = run(capsys, "construct", "--hash", "zeta-hash", "--format", "json")
    data = json.loads(out)
    assert rc == 0 and data["config"]["seed"] == 0
    assert data["code"]["x_stabs"] == ["1000011", "0100101", "0010110"]


def test_distance_zeta(capsys):
    rc, out, _ = run(capsys, "distance", "--hash", "zeta-hash")
    data = json.loads(out)
    assert rc == 0
    assert data["d_z"] == 1 and data["z_witness"] == "Z4"
    assert data["d_x"] == 3 and data["d"] == 1


def test_random_hash_is_seeded(capsys):
    outs = [run(capsys, "construct", "--random-hash", "--seed", str(s), "--format", "json")[1] for s in (7, 7, 8)]
    a, b, c = (json.loads(o)["code"] for o in outs)
    assert a == b
    assert json.loads(outs[0])["config"]["seed"] == 7
    assert (a["a"], a["b"]) != (c["a"], c["b"]) or a == c


def test_curve_csv(capsys, tmp_path):
    path = tmp_path / "c.csv"
    rc, _, _ = run(capsys, "curve", "--params", "gallager-paper", "--grid", "0.05:0.25:5", "-o", str(path))
    assert rc == 0
    text = path.read_text()
    assert text.splitlines()[0].startswith("# config")
    pts = bounds.read_curve_csv(text)
    assert [p.r_q for p in pts] == pytest.approx([0.05, 0.1, 0.15, 0.2, 0.25])
    assert pts[0].eta == pytest.approx(bounds.eta(GALLAGER.epsilon, 0))


def test_bounds_point(capsys):
    rc, out, _ = run(capsys, "bounds", "--params", "gallager-paper", "--m", "1984")
    data = json.loads(out)
    assert rc == 0
    assert data["eta"] == pytest.approx(0.3548, abs=1e-4)
    assert data["log2_epsilon_prime_exact"] > data["log2_epsilon_prime_asymptotic"]


def test_simulate_exhaustive(capsys):
    rc, out, _ = run(capsys, "simulate", "--hash", "steane-hash", "--channel", "depolarizing:0.01", "--exhaustive")
    data = json.loads(out)
    assert rc == 0
    assert data["report"]["p_fail"] == pytest.approx(1.5782e-3, rel=1e-3)
    assert data["config"]["channel"] == "depolarizing:0.01"


def test_simulate_mc_seed_echo(capsys):
    args = ["simulate", "--hash", "steane-hash", "--trials", "20000", "--seed", "11"]
    a = json.loads(run(capsys, *args)[1])
    b = json.loads(run(capsys, *args, "--threads", "2")[1])
    assert a["config"]["seed"] == 11 and a["report"]["seed"] == 11
    assert a["report"] == b["report"]


def test_epsilon_exact(capsys):
    rc, out, _ = run(capsys, "epsilon", "--code", "hamming7", "--q", "0.01", "--exact")
    data = json.loads(out)
    q = 0.01
    expect = 1 - (1 - q) ** 7 - 7 * q * (1 - q) ** 6
    assert rc == 0 and data["stats"]["epsilon"] == pytest.approx(expect, rel=1e-12)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["distance", "--code", "ldpc96", "--random-hash", "--m", "2"], 3),
        (["simulate", "--code", "ldpc96", "--random-hash", "--m", "2", "--exhaustive"], 3),
        (["construct", "--hash", "nope"], 2),
        (["construct", "--field", "5", "--m", "1"], 2),
        (["simulate", "--hash", "steane-hash", "--channel", "depolarizing:2"], 2),
        (["construct", "--generator", "/nonexistent/G.txt"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    rc, out, err = run(capsys, *argv)
    assert rc == code
    assert err.startswith("error:")
