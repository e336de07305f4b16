"""Rényi and smooth Rényi entropies of classical distributions, in bits.

Smoothing is over the trace-norm ball ``||p - q||_1 <= eps``. For a
diagonal state the optimal smoothers are classical:

* ``H_0^eps`` drops the smallest atoms while the dropped mass stays ``<= eps/2``.
* ``H_inf^eps`` caps the largest atoms at a level ``lam`` so that the removed
  excess is ``eps/2``; that mass is spread under the cap, so ``lam`` never goes
  below ``1/N`` for an ``N``-letter alphabet.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln, logsumexp
from scipy.stats import entropy as shannon

from .errors import InstanceTooLarge

TOL = 1e-9
MAX_TYPE_CLASSES = 4_000_000
_LN2 = math.log(2.0)


def check_distribution(dist) -> np.ndarray:
    p = np.asarray(dist, dtype=float).ravel()
    if p.size == 0 or np.any(p < -TOL) or not np.isfinite(p).all():
        raise ValueError("distribution entries must be finite and nonnegative")
    if abs(p.sum() - 1.0) > TOL:
        raise ValueError(f"distribution sums to {p.sum()!r}, not 1")
    return np.clip(p, 0.0, None)


def renyi_entropy(dist, alpha: float) -> float:
    """``H_alpha(p) = log2(sum p^alpha) / (1 - alpha)`` with the usual limits at 0, 1 and inf."""
    p = check_distribution(dist)
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    p = p[p > 0]
    if alpha == 0:
        return math.log2(p.size)
    if alpha == 1:
        return float(shannon(p, base=2))
    if math.isinf(alpha):
        return -math.log2(p.max())
    return float(np.log2(np.sum(p**alpha)) / (1.0 - alpha))


def binary_entropy(q: float) -> float:
    if q <= 0.0 or q >= 1.0:
        return 0.0
    return float(-q * math.log2(q) - (1 - q) * math.log2(1 - q))


def smooth_renyi(dist, alpha: float, eps: float) -> float:
    """Smooth min-/max-entropy of a single classical distribution.

    Args:
        dist: probability vector (zero entries count toward the alphabet size).
        alpha: ``0`` or ``inf``.
        eps: trace-norm smoothing radius, ``>= 0``.
    """
    p = check_distribution(dist)
    _check_eps(alpha, eps)
    if eps == 0:
        return renyi_entropy(p, alpha)
    if alpha == 0:
        q = np.sort(p[p > 0])
        dropped = int(np.searchsorted(np.cumsum(q), eps / 2 * (1 + 1e-12), side="right"))
        return math.log2(max(q.size - dropped, 1))
    return -_cap_level_log2(np.sort(p)[::-1], np.ones(p.size), eps / 2, math.log2(p.size))


def _check_eps(alpha: float, eps: float) -> None:
    if alpha != 0 and not math.isinf(alpha):
        raise ValueError("smoothing is defined here for alpha in {0, inf}")
    if eps < 0:
        raise ValueError("eps must be >= 0")


def _cap_level_log2(values, counts, budget, log2_dim, log_values=None, log_counts=None) -> float:
    """``log2`` of the cap level for atoms sorted by decreasing value.

    ``values[j]`` is the probability of each of the ``counts[j]`` atoms in
    class ``j``. Log-domain arrays may be passed for classes whose values
    underflow.
    """
    if log_values is None:
        with np.errstate(divide="ignore"):
            log_values = np.log2(values)
            log_counts = np.log2(counts)
    mass = np.exp2(log_values + log_counts)
    cum_mass = np.cumsum(mass)
    cum_logcount = np.logaddexp.accumulate(log_counts * _LN2) / _LN2
    floor = -log2_dim
    for j in range(len(mass)):
        excess = cum_mass[j] - budget
        if excess <= 0:
            continue
        lam = math.log2(excess) - cum_logcount[j]
        if j + 1 == len(mass) or lam >= log_values[j + 1]:
            return max(lam, floor)
    return floor


def smooth_renyi_iid(single, n: int, alpha: float, eps: float) -> float:
    """Per-symbol smooth entropy ``H_alpha^eps(p^{x n}) / n`` of an i.i.d. product.

    Atoms of the product are grouped by type class, so the cost is the
    number of compositions of ``n`` into the distinct nonzero values of
    ``single`` rather than the size of the product alphabet. Zero letters
    only enlarge the alphabet.

    Raises:
        InstanceTooLarge: if there are more than ``MAX_TYPE_CLASSES`` classes.
    """
    p = check_distribution(single)
    _check_eps(alpha, eps)
    if n < 1:
        raise ValueError("n must be >= 1")
    if eps == 0:
        return renyi_entropy(p, alpha)
    vals, mult = np.unique(p[p > 0], return_counts=True)
    comps = _compositions(n, len(vals))
    # log2 of a single atom and of the number of atoms in each class
    la = comps @ np.log2(vals)
    lc = (gammaln(n + 1) - gammaln(comps + 1).sum(axis=1)) / _LN2 + comps @ np.log2(mult)
    budget = eps / 2
    if alpha == 0:
        order = np.argsort(la, kind="stable")
        return _smooth_max_classes(la[order], lc[order], budget) / n
    order = np.argsort(-la, kind="stable")
    log2_dim = n * math.log2(p.size)
    return -_cap_level_log2(None, None, budget, log2_dim, la[order], lc[order]) / n


def _smooth_max_classes(la: np.ndarray, lc: np.ndarray, budget: float) -> float:
    """``log2`` of the support left after dropping smallest atoms of total mass ``<= budget``."""
    mass = np.exp2(la + lc)
    cum = np.cumsum(mass)
    whole = int(np.searchsorted(cum, budget * (1 + 1e-12), side="right"))
    if whole == len(la):
        return 0.0
    left = budget - (cum[whole - 1] if whole else 0.0)
    # partially drop atoms of the boundary class
    b = whole
    if lc[b] < 52:
        count = round(2.0 ** lc[b])
        dropped = min(math.floor(left * 2.0 ** -la[b] * (1 + 1e-12)), count - 1) if left > 0 else 0
        rest = math.log2(count - dropped)
    else:
        frac = min(left / mass[b], 1.0) if mass[b] > 0 else 0.0
        rest = lc[b] + math.log2(max(1.0 - frac, 2.0 ** -lc[b]))
    terms = np.concatenate([[rest], lc[b + 1 :]])
    return float(logsumexp(terms * _LN2) / _LN2)


def _compositions(n: int, r: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``r`` summing to ``n``."""
    total = math.comb(n + r - 1, r - 1)
    if total > MAX_TYPE_CLASSES:
        raise InstanceTooLarge(f"{total} type classes exceed the limit of {MAX_TYPE_CLASSES}")
    if r == 1:
        return np.array([[n]], dtype=np.int64)
    out = []
    for first in range(n + 1):
        rest = _compositions(n - first, r - 1)
        out.append(np.concatenate([np.full((len(rest), 1), first, dtype=np.int64), rest], axis=1))
    return np.concatenate(out)
