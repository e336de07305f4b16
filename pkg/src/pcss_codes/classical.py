"""Classical binary linear codes, syndrome decoders and bit-flip error statistics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import gf2
from .errors import InstanceTooLarge
from .montecarlo import binomial_sigma, run_blocks, wilson_interval

MAX_TABLE_CHECKS = 26
MAX_EXACT_N = 20


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An ``[n, k]`` code with generator ``G`` (``n x k``) and parity check ``H`` (``(n-k) x n``)."""

    G: np.ndarray
    H: np.ndarray
    name: str = ""

    def __post_init__(self):
        G = gf2.as_bits(self.G)
        H = gf2.as_bits(self.H)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "H", H)
        n, k = G.shape
        if H.shape != (n - k, n):
            raise ValueError(f"H has shape {H.shape}, expected {(n - k, n)}")
        if gf2.rank(G) != k:
            raise ValueError("generator matrix is rank deficient")
        if gf2.rank(H) != n - k:
            raise ValueError("parity-check matrix is rank deficient")
        if gf2.matmul(H, G).any():
            raise ValueError("H @ G != 0")

    @property
    def n(self) -> int:
        return self.G.shape[0]

    @property
    def k(self) -> int:
        return self.G.shape[1]

    @property
    def r(self) -> int:
        return self.n - self.k

    @classmethod
    def from_generator(cls, G, name: str = "") -> LinearCode:
        G = gf2.as_bits(G)
        if gf2.rank(G) != G.shape[1]:
            raise ValueError("generator matrix is rank deficient")
        return cls(G, gf2.column_space_checks(G), name)

    @classmethod
    def from_parity(cls, H, name: str = "") -> LinearCode:
        H = gf2.as_bits(H)
        if gf2.rank(H) != H.shape[0]:
            raise ValueError("parity-check matrix is rank deficient")
        return cls(gf2.null_space_basis(H), H, name)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "G": gf2.row_strings(self.G), "H": gf2.row_strings(self.H)}


def syndrome(code: LinearCode, u) -> np.ndarray:
    u = gf2.as_bits(u)
    if u.shape != (code.n,):
        raise ValueError(f"error vector must have length {code.n}")
    return gf2.matvec(code.H, u)


def syndrome_index(s: np.ndarray) -> np.ndarray:
    """Integer label of each syndrome row (bit ``j`` = entry ``j``)."""
    s = np.atleast_2d(s)
    weights = np.left_shift(np.int64(1), np.arange(s.shape[1], dtype=np.int64))
    return s.astype(np.int64) @ weights


def syndromes_of(check: np.ndarray, errors: np.ndarray) -> np.ndarray:
    """Row-wise ``check @ e`` for a batch of error rows."""
    if check.shape[0] == 0:
        return np.zeros((errors.shape[0], 0), dtype=np.uint8)
    prod = errors.astype(np.float32) @ check.T.astype(np.float32)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


# ---------------------------------------------------------------------------
# inverse-syndrome maps


class InverseSyndrome:
    """Maps a syndrome to a correction ``u_hat`` with ``check @ u_hat == syndrome``."""

    check: np.ndarray

    @property
    def n(self) -> int:
        return self.check.shape[1]

    def decode_batch(self, syndromes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def decode(self, s) -> tuple[np.ndarray, bool]:
        s = gf2.as_bits(s)
        u, ok = self.decode_batch(s[None, :])
        return u[0], bool(ok[0])

    def __call__(self, s) -> np.ndarray:
        return self.decode(s)[0]


class LeaderTable(InverseSyndrome):
    """Minimum-weight coset leaders, ties broken lexicographically.

    Built by sweeping error weights upward; within a weight the vectors are
    generated in lexicographic order so the first hit per syndrome wins.
    """

    def __init__(self, check):
        check = gf2.as_bits(check)
        r, n = check.shape
        if r > MAX_TABLE_CHECKS:
            raise InstanceTooLarge(f"table of 2^{r} syndromes exceeds the 2^{MAX_TABLE_CHECKS} guard")
        if gf2.rank(check) != r:
            raise ValueError("check matrix must have full row rank")
        if (1 << r) * max(1, -(-n // 8)) > (1 << 30):
            raise InstanceTooLarge("leader table would exceed 1 GiB")
        self.check = check
        self._packed = self._build(check)

    @staticmethod
    def _build(check: np.ndarray) -> np.ndarray:
        r, n = check.shape
        size = 1 << r
        col_syn = syndrome_index(check.T.copy()) if r else np.zeros(n, dtype=np.int64)
        leaders = np.full(size, -1, dtype=np.int64)  # index into found list
        found: list[np.ndarray] = [np.zeros(n, dtype=np.uint8)]
        leaders[0] = 0
        filled = 1
        for w in range(1, n + 1):
            if filled == size:
                break
            combos = _lex_ordered_supports(n, w)
            while filled < size:
                chunk = np.fromiter(
                    itertools.chain.from_iterable(itertools.islice(combos, 1 << 16)), dtype=np.int64
                )
                if chunk.size == 0:
                    break
                chunk = chunk.reshape(-1, w)
                syn = np.bitwise_xor.reduce(col_syn[chunk], axis=1)
                uniq, first = np.unique(syn, return_index=True)
                new = leaders[uniq] < 0
                for s, idx in zip(uniq[new], first[new]):
                    v = np.zeros(n, dtype=np.uint8)
                    v[chunk[idx]] = 1
                    leaders[s] = len(found)
                    found.append(v)
                filled += int(new.sum())
        if filled != size:
            raise AssertionError("some syndromes are unreachable")
        table = np.stack(found)[leaders]
        return np.packbits(table, axis=1)

    def leader(self, index: int) -> np.ndarray:
        return np.unpackbits(self._packed[index], count=self.n)

    def decode_batch(self, syndromes):
        syndromes = np.atleast_2d(gf2.as_bits(syndromes))
        idx = syndrome_index(syndromes)
        u = np.unpackbits(self._packed[idx], axis=1, count=self.n)
        return u, np.ones(len(idx), dtype=bool)

    def all_leaders(self) -> np.ndarray:
        return np.unpackbits(self._packed, axis=1, count=self.n)


def _colex(n: int, w: int):
    """``w``-subsets of ``range(n)`` as ascending tuples, largest element varying slowest."""
    if w == 0:
        yield ()
        return
    for top in range(w - 1, n):
        for rest in _colex(top, w - 1):
            yield rest + (top,)


def _lex_ordered_supports(n: int, w: int):
    """Supports of weight-``w`` vectors in increasing lexicographic order of the vector."""
    last = n - 1
    for c in _colex(n, w):
        yield tuple(last - j for j in c)


def coset_leader_table(code: LinearCode) -> LeaderTable:
    return LeaderTable(code.H)


def _phi(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 1e-15, 40.0)
    return -np.log(np.tanh(x / 2.0))


class BPDecoder(InverseSyndrome):
    """Syndrome-domain sum-product decoder on the Tanner graph of ``check``.

    Flooding schedule with early stop once the hard decision reproduces the
    syndrome. Check updates run in the ``phi(x) = -log tanh(x/2)`` domain;
    a syndrome bit of 1 flips the sign of the outgoing check messages.
    """

    def __init__(self, check, flip_prob: float, max_iters: int = 100):
        if not 0.0 < flip_prob < 0.5:
            raise ValueError("BP needs 0 < flip_prob < 1/2")
        self.check = gf2.as_bits(check)
        self.flip_prob = flip_prob
        self.max_iters = max_iters
        m, n = self.check.shape
        self._ce, self._ve = np.nonzero(self.check)
        ones = np.ones(len(self._ce))
        edges = np.arange(len(self._ce))
        self._check_sum = sp.csr_matrix((ones, (edges, self._ce)), shape=(len(edges), m))
        self._var_sum = sp.csr_matrix((ones, (edges, self._ve)), shape=(len(edges), n))
        self._prior = float(np.log((1.0 - flip_prob) / flip_prob))

    def decode_batch(self, syndromes):
        syndromes = np.atleast_2d(gf2.as_bits(syndromes))
        B = syndromes.shape[0]
        n = self.n
        u_hat = np.zeros((B, n), dtype=np.uint8)
        converged = np.ones(B, dtype=bool)
        active = np.flatnonzero(syndromes.any(axis=1))
        if active.size == 0 or self._ce.size == 0:
            converged[active] = False
            return u_hat, converged
        converged[active] = False

        S = syndromes[active]
        flip = 1.0 - 2.0 * S[:, self._ce]
        v2c = np.full((len(active), len(self._ce)), self._prior)
        hard = np.zeros((len(active), n), dtype=np.uint8)
        for _ in range(self.max_iters):
            mag = _phi(np.abs(v2c))
            neg = (v2c < 0).astype(np.float64)
            mag_tot = np.asarray(mag @ self._check_sum)
            neg_tot = np.asarray(neg @ self._check_sum)
            ext_mag = _phi(mag_tot[:, self._ce] - mag)
            ext_neg = (neg_tot[:, self._ce] - neg) % 2
            c2v = (1.0 - 2.0 * ext_neg) * flip * ext_mag
            posterior = self._prior + np.asarray(c2v @ self._var_sum)
            hard = (posterior < 0).astype(np.uint8)
            done = (syndromes_of(self.check, hard) == S).all(axis=1)
            if done.any():
                u_hat[active[done]] = hard[done]
                converged[active[done]] = True
                keep = ~done
                active, S, flip, hard = active[keep], S[keep], flip[keep], hard[keep]
                posterior, c2v = posterior[keep], c2v[keep]
                if active.size == 0:
                    break
            v2c = posterior[:, self._ve] - c2v
        u_hat[active] = hard
        return u_hat, converged


def bp_decode(code: LinearCode, flip_prob: float, observed_syndrome, max_iters: int = 100):
    """Decode one syndrome with BP; returns ``(u_hat, converged)``."""
    return BPDecoder(code.H, flip_prob, max_iters).decode(observed_syndrome)


# ---------------------------------------------------------------------------
# bit-flip error statistics


@dataclass
class BitflipStats:
    """Probability of misidentifying the bit-flip error.

    ``epsilon`` counts detected failures (decoder did not converge) and
    undetected ones (converged to the wrong error) unless the estimate was
    requested as undetected-only.
    """

    epsilon: float
    method: str
    flip_prob: float
    undetected_only: bool = False
    p_e: np.ndarray | None = None
    epsilon_e: np.ndarray | None = None
    ci: tuple[float, float] | None = None
    sigma: float | None = None
    detected: float | int = 0
    undetected: float | int = 0
    trials: int | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "epsilon": self.epsilon,
            "method": self.method,
            "flip_prob": self.flip_prob,
            "undetected_only": self.undetected_only,
            "detected": self.detected,
            "undetected": self.undetected,
            "ci": list(self.ci) if self.ci else None,
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.p_e is not None:
            r = int(np.log2(len(self.p_e)))
            out["per_syndrome"] = {
                format(i, f"0{r}b")[::-1] if r else "": [float(p), float(e)]
                for i, (p, e) in enumerate(zip(self.p_e, self.epsilon_e))
            }
        return out


def _all_vectors(n: int) -> np.ndarray:
    """Rows are all ``2**n`` vectors; row index ``x`` has bit ``i`` of ``x`` at column ``i``."""
    x = np.arange(1 << n, dtype=np.int64)
    return ((x[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def epsilon_exact(
    code: LinearCode, inv: InverseSyndrome, flip_prob: float, undetected_only: bool = False
) -> BitflipStats:
    """Exact ``p_e``, ``eps(e)`` and ``eps`` on the i.i.d. bit-flip channel by enumerating all errors."""
    n = code.n
    if n > MAX_EXACT_N:
        raise InstanceTooLarge(f"exact enumeration needs n <= {MAX_EXACT_N}")
    if not 0.0 <= flip_prob <= 1.0:
        raise ValueError("flip_prob must lie in [0, 1]")
    errors = _all_vectors(n)
    w = errors.sum(axis=1)
    p_u = flip_prob**w * (1.0 - flip_prob) ** (n - w)
    syn_idx = syndrome_index(syndromes_of(code.H, errors)) if code.r else np.zeros(len(w), np.int64)
    size = 1 << code.r
    p_e = np.bincount(syn_idx, weights=p_u, minlength=size)

    all_syn = _all_vectors(code.r)
    u_hat, conv = inv.decode_batch(all_syn)
    hat_idx = u_hat.astype(np.int64) @ (np.int64(1) << np.arange(n, dtype=np.int64))
    p_hat = p_u[hat_idx]
    # a leader whose own syndrome differs from e never occurs under e
    matches = (syndromes_of(code.H, u_hat) == all_syn).all(axis=1) if code.r else np.ones(size, bool)
    p_hat = np.where(matches & conv, p_hat, 0.0)

    detected = float(p_e[~conv].sum())
    undetected = float((p_e[conv] - p_hat[conv]).sum())
    if undetected_only:
        eps_e = np.where(conv, p_e - p_hat, 0.0)
    else:
        eps_e = p_e - p_hat
    epsilon = float(eps_e.sum())
    with np.errstate(invalid="ignore", divide="ignore"):
        eps_cond = np.where(p_e > 0, eps_e / p_e, 0.0)
    return BitflipStats(
        epsilon=max(0.0, epsilon),
        method="exact",
        flip_prob=flip_prob,
        undetected_only=undetected_only,
        p_e=p_e,
        epsilon_e=eps_cond,
        detected=detected,
        undetected=max(0.0, undetected),
    )


def epsilon_monte_carlo(
    code: LinearCode,
    decoder: InverseSyndrome,
    flip_prob: float,
    trials: int,
    seed: int = 0,
    workers: int | None = None,
    undetected_only: bool = False,
) -> BitflipStats:
    """Sampled estimate of ``eps`` with a Wilson 95% interval."""
    if not 0.0 <= flip_prob <= 1.0:
        raise ValueError("flip_prob must lie in [0, 1]")
    n = code.n

    def work(rng, size):
        errors = (rng.random((size, n)) < flip_prob).astype(np.uint8)
        syn = syndromes_of(code.H, errors)
        u_hat, conv = decoder.decode_batch(syn)
        wrong = (u_hat != errors).any(axis=1)
        return np.array([np.count_nonzero(~conv), np.count_nonzero(conv & wrong)])

    detected, undetected = (int(x) for x in run_blocks(trials, seed, work, workers))
    failures = undetected if undetected_only else detected + undetected
    p = failures / trials
    return BitflipStats(
        epsilon=p,
        method="monte-carlo",
        flip_prob=flip_prob,
        undetected_only=undetected_only,
        ci=wilson_interval(failures, trials),
        sigma=binomial_sigma(p, trials),
        detected=detected,
        undetected=undetected,
        trials=trials,
        seed=seed,
    )
