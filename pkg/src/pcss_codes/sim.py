"""Pauli-frame decoding of P-CSS codes and logical failure rates.

The bit-flip part ``u`` is corrected with ``X^{u_hat(e)}`` where ``e = H u``;
the phase part ``v`` with ``Z^{v_hat(i)}`` where ``i = (GF)^T v``. The frame
fails on the X side if ``u + u_hat`` is not in ``C'`` and on the Z side if
``v + v_hat`` is not in ``C^perp``. Neither test looks at the encoded
message, so failure rates do not depend on which codeword was sent.

A Pauli logical error moves the state by trace distance at most 2, hence
the comparison ``2 p_fail <= eta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .bounds import BoundInputs, EtaResult
from .channel import PauliChannelIID, PauliError, joint_probabilities, sample_errors
from .classical import InverseSyndrome, LeaderTable, syndromes_of
from .errors import InstanceTooLarge
from .gf2k import FieldSpec, sample_hash
from .montecarlo import binomial_sigma, run_blocks, wilson_interval
from .pcss import PcssCode, construct

MAX_EXHAUSTIVE_N = 10


@dataclass
class DecodeOutcome:
    syndrome_e: np.ndarray
    syndrome_i: np.ndarray
    residual_u: np.ndarray
    residual_v: np.ndarray
    logical_x_fail: bool
    logical_z_fail: bool


@dataclass
class LogicalErrorReport:
    p_fail: float
    p_x_fail: float
    p_z_fail: float
    method: str
    trials: int | None = None
    seed: int | None = None
    ci: tuple[float, float] | None = None
    sigma: float | None = None
    counts: dict | None = None
    eta_reference: float | None = None
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "ci"}
        out["ci"] = list(self.ci) if self.ci is not None else None
        return out


def build_bit_decoder(pcss: PcssCode) -> InverseSyndrome:
    return LeaderTable(pcss.z_stabs)


def build_phase_decoder(pcss: PcssCode) -> LeaderTable:
    """Minimal-weight ``v_hat(i)`` with ``(GF)^T v_hat = i``, ties lexicographic."""
    return LeaderTable(pcss.x_stabs)


def _decoders(pcss, decoders):
    if decoders is None:
        return build_bit_decoder(pcss), build_phase_decoder(pcss)
    return decoders


def _provenance(pcss: PcssCode, ch: PauliChannelIID) -> dict:
    return {"n": pcss.n, "k": pcss.k, "m": pcss.m, "channel": ch.single.to_json()}


def x_failures(pcss: PcssCode, U: np.ndarray, bit_dec: InverseSyndrome) -> np.ndarray:
    """Rows of ``U`` whose corrected residual leaves ``C'``."""
    u_hat, _ = bit_dec.decode_batch(syndromes_of(pcss.z_stabs, U))
    return syndromes_of(pcss.cprime_checks, U ^ u_hat).any(axis=1)


def z_failures(pcss: PcssCode, V: np.ndarray, phase_dec: InverseSyndrome) -> np.ndarray:
    """Rows of ``V`` whose corrected residual leaves ``C^perp``."""
    v_hat, _ = phase_dec.decode_batch(syndromes_of(pcss.x_stabs, V))
    return syndromes_of(pcss.code.G.T, V ^ v_hat).any(axis=1)


def decode_pauli(
    pcss: PcssCode,
    err: PauliError,
    bit_dec: InverseSyndrome | None = None,
    phase_dec: InverseSyndrome | None = None,
) -> DecodeOutcome:
    if err.n != pcss.n:
        raise ValueError(f"error acts on {err.n} qubits, code has n={pcss.n}")
    bit_dec = bit_dec or build_bit_decoder(pcss)
    phase_dec = phase_dec or build_phase_decoder(pcss)
    e = gf2.matvec(pcss.z_stabs, err.u)
    i = gf2.matvec(pcss.x_stabs, err.v)
    ru = err.u ^ bit_dec(e)
    rv = err.v ^ phase_dec(i)
    return DecodeOutcome(
        syndrome_e=e,
        syndrome_i=i,
        residual_u=ru,
        residual_v=rv,
        logical_x_fail=bool(gf2.matvec(pcss.cprime_checks, ru).any()),
        logical_z_fail=bool(gf2.matvec(pcss.code.G.T, rv).any()),
    )


def logical_error_exhaustive(pcss: PcssCode, ch: PauliChannelIID, decoders=None) -> LogicalErrorReport:
    """Exact failure probabilities by summing ``p(u, v)`` over all ``4^n`` Pauli errors."""
    n = pcss.n
    if ch.n != n:
        raise ValueError("channel and code sizes differ")
    if n > MAX_EXHAUSTIVE_N:
        raise InstanceTooLarge(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_N}")
    bit_dec, phase_dec = _decoders(pcss, decoders)
    x = np.arange(1 << n, dtype=np.int64)
    vecs = ((x[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    xf = x_failures(pcss, vecs, bit_dec)
    zf = z_failures(pcss, vecs, phase_dec)
    P = joint_probabilities(ch.single, n)  # P[u, v]
    p_x = float(P[xf].sum())
    p_z = float(P[:, zf].sum())
    p_any = float(P[np.logical_or.outer(xf, zf)].sum())
    return LogicalErrorReport(p_any, p_x, p_z, "exhaustive", provenance=_provenance(pcss, ch))


def logical_error_mc(
    pcss: PcssCode,
    ch: PauliChannelIID,
    trials: int,
    seed: int = 0,
    decoders=None,
    workers: int | None = None,
) -> LogicalErrorReport:
    """Monte Carlo estimate with a Wilson 95% interval on ``p_fail``."""
    if ch.n != pcss.n:
        raise ValueError("channel and code sizes differ")
    bit_dec, phase_dec = _decoders(pcss, decoders)

    def work(rng, size):
        U, V = sample_errors(ch, rng, size)
        xf = x_failures(pcss, U, bit_dec)
        zf = z_failures(pcss, V, phase_dec)
        return np.array([xf.sum(), zf.sum(), (xf | zf).sum()])

    nx, nz, nany = (int(c) for c in run_blocks(trials, seed, work, workers))
    p = nany / trials
    return LogicalErrorReport(
        p_fail=p,
        p_x_fail=nx / trials,
        p_z_fail=nz / trials,
        method="monte-carlo",
        trials=trials,
        seed=seed,
        ci=wilson_interval(nany, trials),
        sigma=binomial_sigma(p, trials),
        counts={"x": nx, "z": nz, "any": nany},
        provenance=_provenance(pcss, ch),
    )


def logical_error_family(code, ch: PauliChannelIID, spec: FieldSpec, m: int, samples: int, seed: int = 0) -> dict:
    """Exhaustive ``p_fail`` averaged over ``samples`` random hashes from the field family."""
    rng = np.random.default_rng(seed)
    vals = []
    for _ in range(samples):
        h = sample_hash(spec, m, rng)
        vals.append(logical_error_exhaustive(construct(code, h), ch).p_fail)
    vals = np.array(vals)
    return {"mean": float(vals.mean()), "min": float(vals.min()), "max": float(vals.max()), "samples": samples, "seed": seed}


@dataclass
class Verdict:
    holds: bool
    lhs: float  # 2 p_fail
    rhs: float  # eta
    slack: float
    margin: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def compare_to_eta(report: LogicalErrorReport, bound: EtaResult, inputs: BoundInputs | None = None) -> Verdict:
    """Check ``2 p_fail <= eta`` (plus twice the CI half-width for sampled reports).

    Raises:
        ValueError: if ``inputs`` describe a different code or channel than ``report``.
    """
    if inputs is not None and report.provenance:
        prov = report.provenance
        same = (prov["n"], prov["k"], prov["m"]) == (inputs.n, inputs.k, inputs.m) and np.allclose(
            list(prov["channel"].values()), list(inputs.channel.to_json().values()), atol=1e-12
        )
        if not same:
            raise ValueError(f"bound inputs do not match the simulated code/channel: {prov}")
    slack = 0.0 if report.ci is None else 2 * max(report.ci[1] - report.p_fail, 0.0)
    lhs = 2 * report.p_fail
    report.eta_reference = bound.eta
    margin = bound.eta + slack - lhs
    return Verdict(margin >= 0, lhs, bound.eta, slack, margin)
