"""One test per acceptance criterion; the summary hook in conftest prints PASS/FAIL per criterion."""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from pcss_codes import bounds, gf2, pcss, sim
from pcss_codes.channel import (
    PauliChannelIID,
    SingleQubitPauli,
    depolarizing,
    hashing_bound,
    mutual_info_XE,
)
from pcss_codes.classical import LinearCode, coset_leader_table, epsilon_exact
from pcss_codes.entropy import smooth_renyi_iid
from pcss_codes.fixtures import GALLAGER, hamming7, steane_hash, zeta_hash
from pcss_codes.gf2k import FieldSpec, sample_hash, two_universality_max_collision

STEANE_PRINTED = {"Z4Z5Z6Z7", "Z2Z3Z6Z7", "Z1Z2Z5Z6", "X4X5X6X7", "X2X3X6X7", "X1X2X5X6"}
ZETA_PRINTED = {"Z4Z5Z6Z7", "Z2Z3Z6Z7", "Z1Z2Z5Z6", "X1X6X7", "X2X5X7", "X3X5X6"}


def test_criterion_1():
    """Steane reproduction: the six generators, as printed, for a = zeta^-2."""
    t0 = time.perf_counter()
    code = pcss.construct(hamming7(), steane_hash())
    got = set(pcss.stabilizer_strings(code))
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    assert got == STEANE_PRINTED, f"emitted {sorted(got)}; differs by {sorted(got ^ STEANE_PRINTED)}"


def test_criterion_2():
    """Defective code for a = zeta: printed generators and a weight-1 Z logical on qubit 4."""
    t0 = time.perf_counter()
    code = pcss.construct(hamming7(), zeta_hash())
    got = set(pcss.stabilizer_strings(code))
    dist = pcss.distance(code)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    assert dist.d_z == 1
    assert pcss.pauli_string("Z", dist.z_witness) == "Z4"
    assert got == ZETA_PRINTED, f"emitted {sorted(got)}; differs by {sorted(got ^ ZETA_PRINTED)}"


def test_criterion_3():
    ch = depolarizing(0.114)
    assert abs(hashing_bound(ch) - 0.3074) <= 1e-4
    assert abs(mutual_info_XE(ch) - 0.3046) <= 1e-4


def test_criterion_4():
    t0 = time.perf_counter()
    grid = np.linspace(0.005, 0.25, 200)
    pts = bounds.rate_curve(depolarizing(0.114), GALLAGER.n, GALLAGER.k, GALLAGER.epsilon, grid, mode="asymptotic")
    kn = bounds.knee(pts)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    flat = [p.eta for p in pts if p.r_q <= 0.15]
    assert flat and all(abs(e - 0.3548) <= 2e-4 for e in flat)
    assert kn is not None and 0.17 <= kn <= 0.21


def _random_code(rng, n, k):
    while True:
        G = rng.integers(0, 2, (n, k), dtype=np.uint8)
        if gf2.rank(G) == k:
            return LinearCode.from_generator(G)


def test_criterion_5():
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    for _ in range(1000):
        n = int(rng.integers(2, 17))
        k = int(rng.integers(1, n))
        m = int(rng.integers(1, k + 1))
        code = _random_code(rng, n, k)
        q = pcss.construct(code, sample_hash(FieldSpec.default(k), m, rng))
        assert not gf2.matmul(code.H, q.cprime_gen).any()
        assert not gf2.matmul(q.z_stabs, q.x_stabs.T).any()
        reps = q.coset_reps
        assert len(reps) == 1 << m and all(r is not None for r in reps)
        labels = gf2.Span.from_matrix_columns(q.cprime_gen)
        assert len({labels.reduce(gf2.pack_int(r)) for r in reps}) == 1 << m
    assert time.perf_counter() - t0 < 30.0


def test_criterion_6():
    t0 = time.perf_counter()
    for k in range(1, 7):
        spec = FieldSpec.default(k)
        for m in range(1, k + 1):
            assert two_universality_max_collision(spec, m) <= 2.0**-m + 1e-15
    assert time.perf_counter() - t0 < 60.0


def test_criterion_7():
    from pcss_codes.channel import density_matrix_oracle

    t0 = time.perf_counter()
    channels = [depolarizing(0.114), SingleQubitPauli.from_probs(0.7, 0.15, 0.05, 0.1)]
    codes = [
        LinearCode.from_generator(np.array([[1], [1]])),
        LinearCode.from_generator(np.array([[1], [0]])),
    ]
    for single in channels:
        for code in codes:
            out = density_matrix_oracle(PauliChannelIID(single, code.n), code)
            assert abs(out["H2_XE_omega"] - ((code.n - code.k) + out["H2_YE_sigma"])) <= 1e-9
            assert out["H0_E_omega"] >= out["H0_E_sigma"] - 1e-12
    assert time.perf_counter() - t0 < 10.0


def _steane_mc(workers):
    code = pcss.construct(hamming7(), steane_hash())
    return sim.logical_error_mc(code, PauliChannelIID(depolarizing(0.01), 7), 1_000_000, seed=1, workers=workers)


def test_criterion_8():
    t0 = time.perf_counter()
    code = pcss.construct(hamming7(), steane_hash())
    ex = {p: sim.logical_error_exhaustive(code, PauliChannelIID(depolarizing(p), 7)) for p in (1e-3, 1e-2)}
    mc = _steane_mc(1)
    assert abs(mc.p_fail - ex[1e-2].p_fail) <= 3 * mc.sigma

    slope = math.log(ex[1e-2].p_fail / ex[1e-3].p_fail) / math.log(10.0)
    assert abs(slope - 2.0) <= 0.1

    single = depolarizing(0.01)
    eps = epsilon_exact(code.code, coset_leader_table(code.code), single.flip_prob).epsilon
    inp = bounds.BoundInputs(code.n, code.k, code.m, eps, single)
    res = bounds.eta_for(inp, "exact")
    assert sim.compare_to_eta(ex[1e-2], res, inp).holds
    assert 2 * ex[1e-2].p_fail <= res.eta
    assert time.perf_counter() - t0 < 120.0


def test_criterion_9():
    t0 = time.perf_counter()
    per_symbol = smooth_renyi_iid([0.89, 0.11], 1000, math.inf, 0.01)
    assert time.perf_counter() - t0 < 10.0
    assert abs(per_symbol - 0.49993) <= 0.05, f"(1/n) H_inf^delta = {per_symbol:.5f} at n = 1000"


def test_criterion_10():
    reps = [_steane_mc(w).to_json() for w in (1, 2, 8)]
    assert reps[0] == reps[1] == reps[2]
