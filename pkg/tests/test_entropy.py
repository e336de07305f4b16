from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from pcss_codes.entropy import binary_entropy, renyi_entropy, smooth_renyi, smooth_renyi_iid

INF = math.inf


def random_dists(count, seed=0, max_len=10):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        p = rng.random(int(rng.integers(1, max_len + 1))) ** 3
        if rng.random() < 0.3:
            p[rng.integers(0, p.size)] = 0
        if p.sum() == 0:
            p[0] = 1
        yield p / p.sum()


def test_uniform_all_orders():
    p = np.full(8, 1 / 8)
    for a in (0, 0.5, 1, 2, 7, INF):
        assert renyi_entropy(p, a) == pytest.approx(3.0, abs=1e-12)


def test_zero_atoms_excluded_from_support():
    assert renyi_entropy([0.5, 0.5, 0.0], 0) == 1.0


def test_renyi_nonincreasing_in_alpha():
    for p in random_dists(100):
        vals = [renyi_entropy(p, a) for a in (0, 0.5, 1, 2, INF)]
        assert all(x >= y - 1e-12 for x, y in zip(vals, vals[1:]))


def test_renyi_invalid():
    with pytest.raises(ValueError):
        renyi_entropy([0.5, 0.6], 1)
    with pytest.raises(ValueError):
        renyi_entropy([1.2, -0.2], 1)
    with pytest.raises(ValueError):
        renyi_entropy([1.0], -1)


def test_smooth_at_zero_eps_is_plain():
    for p in random_dists(50, seed=1):
        for a in (0, INF):
            assert smooth_renyi(p, a, 0.0) == renyi_entropy(p, a)


def l1(p, q):
    return float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def brute_h0(p, eps):
    """Best support size over normalized states within the trace ball: try every kept subset."""
    best = math.inf
    idx = np.flatnonzero(p > 0)
    for r in range(1, idx.size + 1):
        for keep in itertools.combinations(idx, r):
            dropped = p.sum() - p[list(keep)].sum()
            # renormalizing onto `keep` costs exactly 2 * dropped in l1
            if 2 * dropped <= eps + 1e-12:
                best = min(best, math.log2(r))
    return best


def test_smooth_h0_subset_oracle():
    assert smooth_renyi([0.9, 0.05, 0.05], 0, 0.2) == pytest.approx(brute_h0(np.array([0.9, 0.05, 0.05]), 0.2))
    assert smooth_renyi([0.9, 0.05, 0.05], 0, 0.2) == 0.0
    for p in random_dists(60, seed=2, max_len=12):
        for eps in (0.01, 0.1, 0.3):
            assert smooth_renyi(p, 0, eps) == pytest.approx(brute_h0(p, eps), abs=1e-12)


def test_smooth_hinf_is_feasible_and_nondecreasing():
    for p in random_dists(40, seed=3):
        prev = -1.0
        for eps in (0, 0.01, 0.05, 0.1, 0.3, 0.8):
            h = smooth_renyi(p, INF, eps)
            assert h >= prev - 1e-12
            prev = h
            # build the capped distribution and check it lies in the ball
            lam = 2.0 ** -h
            q = np.minimum(p, lam)
            spare = 1 - q.sum()
            room = lam - q
            q = q + room * (spare / room.sum() if room.sum() > 0 else 0)
            assert q.max() <= lam + 1e-12 and abs(q.sum() - 1) < 1e-9
            assert l1(p, q) <= eps + 1e-9


def test_smooth_hinf_optimal_on_two_atoms():
    # grid search over all normalized q within the ball
    p = np.array([0.8, 0.2])
    eps = 0.3
    best = min(max(t, 1 - t) for t in np.linspace(0, 1, 200001) if l1(p, [t, 1 - t]) <= eps)
    assert smooth_renyi(p, INF, eps) == pytest.approx(-math.log2(best), abs=1e-4)


def test_iid_n1_matches_single():
    for p in random_dists(30, seed=4, max_len=5):
        for a in (0, INF):
            for eps in (0.0, 0.05, 0.2):
                assert smooth_renyi_iid(p, 1, a, eps) == pytest.approx(smooth_renyi(p, a, eps), abs=1e-12)


def test_iid_matches_explicit_product():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = rng.random(3)
        p /= p.sum()
        n = int(rng.integers(2, 6))
        prod = p
        for _ in range(n - 1):
            prod = np.outer(prod, p).ravel()
        for a in (0, INF):
            for eps in (0.02, 0.1):
                assert smooth_renyi_iid(p, n, a, eps) == pytest.approx(smooth_renyi(prod, a, eps) / n, abs=1e-9)


def test_iid_convergence_trend():
    h = binary_entropy(0.11)
    vals = [smooth_renyi_iid([0.89, 0.11], n, INF, 0.01) for n in (100, 300, 1000, 3000, 10000)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert all(v < h for v in vals)
    vals0 = [smooth_renyi_iid([0.89, 0.11], n, 0, 0.01) for n in (100, 300, 1000, 3000, 10000)]
    assert all(a > b for a, b in zip(vals0, vals0[1:]))
    assert all(v > h for v in vals0)


def test_iid_within_tolerance_at_larger_n():
    h = binary_entropy(0.11)
    assert abs(smooth_renyi_iid([0.89, 0.11], 3000, INF, 0.01) - h) <= 0.05
    assert abs(smooth_renyi_iid([0.89, 0.11], 20000, INF, 0.01) - h) <= 0.02


def test_binary_entropy_value():
    assert binary_entropy(0.11) == pytest.approx(0.499916, abs=1e-6)
    assert binary_entropy(0.0) == 0.0 and binary_entropy(0.5) == 1.0
