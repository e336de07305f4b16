"""i.i.d. Pauli channels: sampling, mutual informations and entropy closed forms.

A single-qubit channel applies ``X^u Z^v`` with probability ``p[u, v]``:
``(0,0) = I``, ``(1,0) = X``, ``(0,1) = Z``, ``(1,1) = Y``.

Entropies refer to the state obtained by sending a uniformly random
computational basis string ``x`` through the channel and keeping a
purifying environment ``E``. Per qubit, conditioned on ``x`` the
environment holds ``sum_u |a_{x,u}><a_{x,u}|`` with orthogonal
``a_{x,u} = sum_v sqrt(p_uv) (-1)^{x v} |u v>`` of norm ``p_u``, so the
``XE`` spectrum is ``p_u / 2`` (each twice) and averaging over ``x``
removes every off-diagonal term of ``E``, leaving ``diag(p_uv)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import gf2
from .classical import LinearCode
from .entropy import binary_entropy, renyi_entropy, smooth_renyi_iid
from .errors import InstanceTooLarge

PROB_TOL = 1e-12
MAX_ORACLE_N = 3


@dataclass(frozen=True, eq=False)
class SingleQubitPauli:
    p: np.ndarray  # 2 x 2, indexed [u, v]

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).reshape(2, 2)
        if np.any(p < -PROB_TOL) or abs(p.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"Pauli probabilities must be nonnegative and sum to 1, got {p.ravel()}")
        object.__setattr__(self, "p", np.clip(p, 0.0, None))

    @classmethod
    def from_probs(cls, pI: float, pX: float, pY: float, pZ: float) -> SingleQubitPauli:
        return cls(np.array([[pI, pZ], [pX, pY]]))

    @property
    def pI(self) -> float:
        return float(self.p[0, 0])

    @property
    def pX(self) -> float:
        return float(self.p[1, 0])

    @property
    def pY(self) -> float:
        return float(self.p[1, 1])

    @property
    def pZ(self) -> float:
        return float(self.p[0, 1])

    @property
    def flip_prob(self) -> float:
        """Bit-flip marginal ``pX + pY``."""
        return self.pX + self.pY

    @property
    def phase_prob(self) -> float:
        """Phase-flip marginal ``pZ + pY``."""
        return self.pZ + self.pY

    def vector(self) -> np.ndarray:
        """Probabilities in the order ``2u + v``: I, Z, X, Y."""
        return self.p.ravel().copy()

    def to_json(self) -> dict:
        return {"pI": self.pI, "pX": self.pX, "pY": self.pY, "pZ": self.pZ}


def depolarizing(p: float) -> SingleQubitPauli:
    if not 0.0 <= p <= 1.0:
        raise ValueError("depolarizing probability must lie in [0, 1]")
    return SingleQubitPauli.from_probs(1.0 - p, p / 3, p / 3, p / 3)


def identity_channel() -> SingleQubitPauli:
    return SingleQubitPauli.from_probs(1.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class PauliChannelIID:
    single: SingleQubitPauli
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def to_json(self) -> dict:
        return {**self.single.to_json(), "n": self.n}

    @classmethod
    def from_json(cls, data: dict | str) -> PauliChannelIID:
        if isinstance(data, str):
            data = json.loads(data)
        s = SingleQubitPauli.from_probs(data["pI"], data["pX"], data["pY"], data["pZ"])
        return cls(s, int(data["n"]))


@dataclass(frozen=True, eq=False)
class PauliError:
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u, v = gf2.as_bits(self.u), gf2.as_bits(self.v)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("u and v must be bit vectors of equal length")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return self.u.size


def sample_errors(ch: PauliChannelIID, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """``size`` i.i.d. errors as ``(U, V)`` arrays of shape ``(size, n)``."""
    cdf = np.cumsum(ch.single.vector())
    cdf[-1] = 1.0
    idx = np.searchsorted(cdf, rng.random((size, ch.n)), side="right")
    idx = np.minimum(idx, 3).astype(np.uint8)
    return idx >> 1, idx & 1


def sample_error(ch: PauliChannelIID, rng: np.random.Generator | int | None = None) -> PauliError:
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    U, V = sample_errors(ch, rng, 1)
    return PauliError(U[0], V[0])


# ---------------------------------------------------------------------------
# information quantities (bits per qubit unless stated)


def _single(ch) -> SingleQubitPauli:
    return ch.single if isinstance(ch, PauliChannelIID) else ch


def mutual_info_XB(ch) -> float:
    """``1 - h(pX + pY)``: capacity of the induced binary symmetric channel."""
    return 1.0 - binary_entropy(_single(ch).flip_prob)


def hashing_bound(ch) -> float:
    """``1 - H(p)``."""
    return 1.0 - renyi_entropy(_single(ch).vector(), 1)


def mutual_info_XE(ch) -> float:
    """``H(p) - h(pX + pY)``, equal to ``I(X;B) - C``."""
    s = _single(ch)
    return renyi_entropy(s.vector(), 1) - binary_entropy(s.flip_prob)


def h2_XE(ch: PauliChannelIID) -> float:
    """Collision entropy of ``XE`` for ``n`` qubits: ``n - n log2(q^2 + (1-q)^2)``."""
    q = ch.single.flip_prob
    return ch.n - ch.n * math.log2(q * q + (1 - q) ** 2)


def h0_E(ch: PauliChannelIID) -> float:
    """Max-entropy of ``E``: ``n log2 |supp p|``."""
    return ch.n * math.log2(np.count_nonzero(ch.single.vector()))


def xe_spectrum(single: SingleQubitPauli) -> np.ndarray:
    """Per-qubit ``XE`` eigenvalues, zeros included (dimension 2 x 4)."""
    q = single.flip_prob
    return np.array([(1 - q) / 2, q / 2, (1 - q) / 2, q / 2, 0, 0, 0, 0])


def e_spectrum(single: SingleQubitPauli) -> np.ndarray:
    return single.vector()


def hinf_XE_smooth(ch: PauliChannelIID, delta: float) -> float:
    return ch.n * smooth_renyi_iid(xe_spectrum(ch.single), ch.n, math.inf, delta)


def h0_E_smooth(ch: PauliChannelIID, delta: float) -> float:
    return ch.n * smooth_renyi_iid(e_spectrum(ch.single), ch.n, 0, delta)


@dataclass
class ChannelEntropies:
    n: int
    h2_XE: float
    h0_E: float
    i_XB: float
    i_XE: float
    hashing_C: float

    @classmethod
    def of(cls, ch: PauliChannelIID) -> ChannelEntropies:
        return cls(ch.n, h2_XE(ch), h0_E(ch), mutual_info_XB(ch), mutual_info_XE(ch), hashing_bound(ch))

    def to_json(self) -> dict:
        return dict(self.__dict__)


# ---------------------------------------------------------------------------
# explicit density matrices for tiny n


def joint_probabilities(single: SingleQubitPauli, n: int) -> np.ndarray:
    """``p[u, v]`` for ``n`` qubits, ``u`` and ``v`` as integers (bit ``i`` = qubit ``i``)."""
    out = np.ones((1, 1))
    for _ in range(n):
        # new qubit becomes the most significant bit of u and of v
        out = np.einsum("ab,cd->cadb", out, single.p).reshape(out.shape[0] * 2, out.shape[1] * 2)
    return out


def _env_state(p: np.ndarray, x: int, n: int) -> np.ndarray:
    """``phi_x^E`` as a ``4^n`` density matrix over basis ``|u, v>``, index ``u 2^n + v``."""
    size = 1 << n
    rho = np.zeros((size * size, size * size))
    signs = np.array([(-1) ** bin(x & v).count("1") for v in range(size)], dtype=float)
    for u in range(size):
        a = np.zeros(size * size)
        a[u * size : (u + 1) * size] = np.sqrt(p[u]) * signs
        rho += np.outer(a, a)
    return rho


def _h2(rho: np.ndarray) -> float:
    return -math.log2(float(np.trace(rho @ rho)))


def _h0(rho: np.ndarray) -> float:
    ev = np.linalg.eigvalsh(rho)
    return math.log2(int(np.count_nonzero(ev > 1e-10 * ev.max())))


def density_matrix_oracle(ch: PauliChannelIID, code: LinearCode) -> dict:
    """Explicit-matrix entropies of ``omega`` (uniform ``x``) and ``sigma`` (``x = G y``).

    Returns:
        dict with ``H2_XE_omega``, ``H2_YE_sigma``, ``H0_E_omega``, ``H0_E_sigma``.
    """
    n = ch.n
    if n > MAX_ORACLE_N:
        raise InstanceTooLarge(f"density-matrix oracle is limited to n <= {MAX_ORACLE_N}")
    if code.n != n:
        raise ValueError("code length must match the channel")
    p = joint_probabilities(ch.single, n)
    envs = [_env_state(p, x, n) for x in range(1 << n)]

    def classical_quantum(states, weight):
        blocks = [weight * s for s in states]
        dim = blocks[0].shape[0]
        out = np.zeros((dim * len(blocks), dim * len(blocks)))
        for i, b in enumerate(blocks):
            out[i * dim : (i + 1) * dim, i * dim : (i + 1) * dim] = b
        return out

    k = code.k
    ys = [gf2.pack_int(gf2.matvec(code.G, gf2.unpack_int(y, k))) for y in range(1 << k)]
    omega_xe = classical_quantum(envs, 2.0**-n)
    sigma_ye = classical_quantum([envs[x] for x in ys], 2.0**-k)
    omega_e = sum(envs) * 2.0**-n
    sigma_e = sum(envs[x] for x in ys) * 2.0**-k
    return {
        "H2_XE_omega": _h2(omega_xe),
        "H2_YE_sigma": _h2(sigma_ye),
        "H0_E_omega": _h0(omega_e),
        "H0_E_sigma": _h0(sigma_e),
        "H0_XE_omega": _h0(omega_xe),
        "H_E_omega": renyi_entropy(np.clip(np.linalg.eigvalsh(omega_e), 0, None) / np.trace(omega_e), 1),
    }
