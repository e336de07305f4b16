from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.stats import chisquare

from pcss_codes import fixtures
from pcss_codes.channel import (
    ChannelEntropies,
    PauliChannelIID,
    SingleQubitPauli,
    density_matrix_oracle,
    depolarizing,
    h0_E,
    h2_XE,
    hashing_bound,
    identity_channel,
    joint_probabilities,
    mutual_info_XB,
    mutual_info_XE,
    sample_error,
    sample_errors,
)
from pcss_codes.classical import LinearCode
from pcss_codes.errors import InstanceTooLarge

CHANNELS = [
    identity_channel(),
    depolarizing(0.1),
    depolarizing(0.114),
    SingleQubitPauli.from_probs(0.6, 0.2, 0.15, 0.05),
    SingleQubitPauli.from_probs(0.7, 0.0, 0.0, 0.3),
]


def test_depolarizing():
    assert depolarizing(0.0).pI == 1.0
    ch = depolarizing(0.114)
    assert ch.flip_prob == pytest.approx(0.076, abs=1e-15)
    assert ch.vector().sum() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        depolarizing(1.2)


def test_invalid_channel():
    with pytest.raises(ValueError):
        SingleQubitPauli.from_probs(0.5, 0.5, 0.5, 0.0)


def test_identity_information():
    ch = identity_channel()
    assert mutual_info_XB(ch) == 1.0 and mutual_info_XE(ch) == 0.0 and hashing_bound(ch) == 1.0


def test_depolarizing_constants():
    ch = depolarizing(0.114)
    assert round(hashing_bound(ch), 4) == 0.3074
    assert round(mutual_info_XE(ch), 4) == 0.3046


def test_full_dephasing():
    ch = SingleQubitPauli.from_probs(0.0, 0.0, 0.0, 1.0)
    assert mutual_info_XB(ch) == 1.0 and hashing_bound(ch) == pytest.approx(1.0)
    ch = SingleQubitPauli.from_probs(0.5, 0.0, 0.0, 0.5)
    assert mutual_info_XB(ch) == 1.0 and hashing_bound(ch) == pytest.approx(0.0)


def test_hashing_identity_random():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        p = rng.dirichlet(np.ones(4))
        ch = SingleQubitPauli.from_probs(*p)
        assert hashing_bound(ch) == pytest.approx(mutual_info_XB(ch) - mutual_info_XE(ch), abs=1e-9)
        assert 0 <= mutual_info_XB(ch) <= 1


def test_h2_h0_closed_forms():
    ch = PauliChannelIID(identity_channel(), 5)
    assert h2_XE(ch) == 5 and h0_E(ch) == 0
    for n in (1, 3, 10):
        assert h0_E(PauliChannelIID(depolarizing(0.2), n)) == 2 * n


def rep2():
    return LinearCode(np.array([[1], [1]]), np.array([[1, 1]]))


def rep1():
    return LinearCode(np.array([[1]]), np.zeros((0, 1), np.uint8))


@pytest.mark.parametrize("single", CHANNELS)
@pytest.mark.parametrize("n", [1, 2])
def test_closed_forms_match_oracle(single, n):
    ch = PauliChannelIID(single, n)
    code = rep2() if n == 2 else rep1()
    o = density_matrix_oracle(ch, code)
    assert o["H2_XE_omega"] == pytest.approx(h2_XE(ch), abs=1e-9)
    assert o["H0_E_omega"] == pytest.approx(h0_E(ch), abs=1e-9)
    # omega^E is diagonal with the Pauli probabilities on its diagonal
    assert o["H_E_omega"] == pytest.approx(n * (1 - hashing_bound(single)), abs=1e-9)


def test_oracle_identities_n3():
    ch = PauliChannelIID(SingleQubitPauli.from_probs(0.7, 0.1, 0.05, 0.15), 3)
    code = fixtures.repetition3()
    o = density_matrix_oracle(ch, code)
    assert o["H2_XE_omega"] - o["H2_YE_sigma"] == pytest.approx(3 - 1, abs=1e-9)
    assert o["H0_E_omega"] >= o["H0_E_sigma"] - 1e-12
    assert o["H2_XE_omega"] == pytest.approx(h2_XE(ch), abs=1e-9)


def test_oracle_identity_channel():
    ch = PauliChannelIID(identity_channel(), 2)
    assert density_matrix_oracle(ch, rep2())["H2_XE_omega"] == pytest.approx(2, abs=1e-12)


def test_oracle_guard():
    with pytest.raises(InstanceTooLarge):
        density_matrix_oracle(PauliChannelIID(depolarizing(0.1), 4), fixtures.repetition3())


def test_joint_probabilities_bit_order():
    s = SingleQubitPauli.from_probs(0.5, 0.3, 0.0, 0.2)
    P = joint_probabilities(s, 2)
    # u = 0b01: X on qubit 0 only
    assert P[0b01, 0] == pytest.approx(0.3 * 0.5)
    assert P[0, 0b10] == pytest.approx(0.5 * 0.2)
    assert P.sum() == pytest.approx(1.0)


def test_sampling_frequencies():
    s = SingleQubitPauli.from_probs(0.55, 0.2, 0.1, 0.15)
    ch = PauliChannelIID(s, 10)
    U, V = sample_errors(ch, np.random.default_rng(9), 100_000)
    idx = (2 * U + V).ravel()
    counts = np.bincount(idx, minlength=4)
    expect = s.vector() * idx.size
    assert chisquare(counts, expect).pvalue > 1e-3
    sigma = np.sqrt(expect * (1 - s.vector()))
    assert (np.abs(counts - expect) <= 4 * sigma).all()


def test_sampling_identity_and_determinism():
    ch = PauliChannelIID(identity_channel(), 6)
    e = sample_error(ch, 3)
    assert not e.u.any() and not e.v.any()
    ch = PauliChannelIID(depolarizing(0.3), 6)
    a = sample_errors(ch, np.random.default_rng(1), 50)
    b = sample_errors(ch, np.random.default_rng(1), 50)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_channel_json_round_trip():
    ch = PauliChannelIID(SingleQubitPauli.from_probs(0.6, 0.2, 0.15, 0.05), 4)
    back = PauliChannelIID.from_json(ch.to_json())
    assert np.allclose(back.single.p, ch.single.p) and back.n == 4
    ent = ChannelEntropies.of(ch)
    assert ent.hashing_C == pytest.approx(ent.i_XB - ent.i_XE, abs=1e-9)
    assert math.isfinite(ent.to_json()["h2_XE"])
