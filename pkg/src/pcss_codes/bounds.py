"""Error bounds for entanglement transmission with P-CSS codes.

All ``epsilon'``-type quantities are assembled as ``log2`` exponents and only
turned into numbers when ``eta`` is formed; ``2^-905`` simply becomes 0.
A value ``epsilon' > 1`` is returned as is (``eta`` is then vacuous).
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .channel import PauliChannelIID, SingleQubitPauli, h0_E, h0_E_smooth, h2_XE, hashing_bound, hinf_XE_smooth, mutual_info_XE

MODES = ("exact", "asymptotic", "smooth")
CSV_HEADER = ["r_q", "eta", "epsilon_prime", "mode"]


@dataclass(frozen=True)
class BoundInputs:
    n: int
    k: int
    m: int
    epsilon: float
    channel: SingleQubitPauli
    delta: float | None = None

    def __post_init__(self):
        if not 0 <= self.m <= self.k <= self.n:
            raise ValueError(f"need 0 <= m <= k <= n, got m={self.m} k={self.k} n={self.n}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        if self.delta is not None and self.delta < 0:
            raise ValueError("delta must be >= 0")

    @property
    def iid(self) -> PauliChannelIID:
        return PauliChannelIID(self.channel, self.n)

    def with_m(self, m: int) -> BoundInputs:
        return BoundInputs(self.n, self.k, m, self.epsilon, self.channel, self.delta)


@dataclass
class EtaResult:
    epsilon: float
    epsilon_prime: float
    log2_epsilon_prime: float
    eta: float
    mode: str

    def to_json(self) -> dict:
        return dict(self.__dict__)


def log2_epsilon_prime_exact(inp: BoundInputs) -> float:
    """``-(H2(XE) - H0(E) + k - n - m) / 2`` from the closed-form entropies."""
    ch = inp.iid
    return -0.5 * (h2_XE(ch) - h0_E(ch) + inp.k - inp.n - inp.m)


def log2_epsilon_prime_asymptotic(inp: BoundInputs) -> float:
    """``-(k - m - n I(X;E)) / 2``: the large-``n`` estimate."""
    return -0.5 * (inp.k - inp.m - inp.n * mutual_info_XE(inp.channel))


def log2_epsilon_one_core(inp: BoundInputs) -> float:
    """Exponent of ``epsilon_1`` with ``delta``-smooth min- and max-entropies."""
    if inp.delta is None:
        raise ValueError("smooth mode needs delta")
    ch = inp.iid
    return -0.5 * (hinf_XE_smooth(ch, inp.delta) - h0_E_smooth(ch, inp.delta) + inp.k - inp.n - inp.m)


def _exp2(x: float) -> float:
    with np.errstate(over="ignore"):
        return float(np.exp2(np.float64(x)))


def epsilon_prime_exact(inp: BoundInputs) -> float:
    return _exp2(log2_epsilon_prime_exact(inp))


def epsilon_prime_asymptotic(inp: BoundInputs) -> float:
    return _exp2(log2_epsilon_prime_asymptotic(inp))


def epsilon_one_smooth(inp: BoundInputs) -> float:
    """``2^core + 2 delta``."""
    return _exp2(log2_epsilon_one_core(inp)) + 2 * inp.delta


def eta(epsilon: float, epsilon_prime: float) -> float:
    """``2 sqrt(2 eps' + 4 sqrt(2 eps)) + 2 sqrt(2 eps)``."""
    if epsilon < 0 or epsilon_prime < 0:
        raise ValueError("epsilon and epsilon' must be nonnegative")
    r = math.sqrt(2 * epsilon)
    return 2 * math.sqrt(2 * epsilon_prime + 4 * r) + 2 * r


def eta_for(inp: BoundInputs, mode: str = "asymptotic") -> EtaResult:
    if mode == "exact":
        lg = log2_epsilon_prime_exact(inp)
        ep = _exp2(lg)
    elif mode == "asymptotic":
        lg = log2_epsilon_prime_asymptotic(inp)
        ep = _exp2(lg)
    elif mode == "smooth":
        ep = epsilon_one_smooth(inp)
        lg = math.log2(ep) if ep > 0 else -math.inf
    else:
        raise ValueError(f"mode must be one of {MODES}")
    return EtaResult(inp.epsilon, ep, lg, eta(inp.epsilon, ep), mode)


# ---------------------------------------------------------------------------
# rate curve


@dataclass
class CurvePoint:
    r_q: float
    m: int
    eta: float
    epsilon_prime: float
    mode: str


def m_for_rate(r_q: float, n: int) -> int:
    """Nearest integer to ``r_q n`` (halves round up)."""
    return int(math.floor(r_q * n + 0.5))


def rate_curve(
    channel: SingleQubitPauli,
    n: int,
    k: int,
    epsilon: float,
    rq_grid: Iterable[float],
    mode: str = "asymptotic",
    delta: float | None = None,
) -> list[CurvePoint]:
    """``eta`` as a function of the quantum rate ``R_Q = m / n``.

    Raises:
        ValueError: if a rate is not in ``(0, k/n]``.
    """
    base = BoundInputs(n, k, 0, epsilon, channel, delta)
    out = []
    for r in rq_grid:
        r = float(r)
        if not 0 < r <= k / n + 1e-12:
            raise ValueError(f"rate {r} outside (0, k/n = {k / n}]")
        m = min(m_for_rate(r, n), k)
        res = eta_for(base.with_m(m), mode)
        out.append(CurvePoint(r, m, res.eta, res.epsilon_prime, mode))
    return out


def plateau(epsilon: float) -> float:
    """Curve height as ``epsilon' -> 0``."""
    return eta(epsilon, 0.0)


def knee(points: Sequence[CurvePoint], tol: float = 2e-4) -> float | None:
    """First rate at which the curve rises more than ``tol`` above its plateau."""
    if not points:
        return None
    base = min(p.eta for p in points)
    for p in points:
        if p.eta - base > tol:
            return p.r_q
    return None


def curve_csv(points: Sequence[CurvePoint], config: dict | None = None) -> str:
    buf = io.StringIO()
    if config is not None:
        buf.write("# config " + " ".join(f"{k}={v}" for k, v in config.items()) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in points:
        w.writerow([f"{p.r_q:.6g}", repr(p.eta), repr(p.epsilon_prime), p.mode])
    return buf.getvalue()


def read_curve_csv(text: str) -> list[CurvePoint]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    rows = list(csv.DictReader(lines))
    return [CurvePoint(float(r["r_q"]), -1, float(r["eta"]), float(r["epsilon_prime"]), r["mode"]) for r in rows]


def hashing_rate_gap(channel: SingleQubitPauli, delta_cap: float) -> float:
    """Achievable rate ``C - Delta``."""
    C = hashing_bound(channel)
    if delta_cap < 0:
        raise ValueError("Delta must be >= 0")
    if delta_cap > C:
        raise ValueError(f"Delta={delta_cap} exceeds the hashing bound C={C}")
    return C - delta_cap
