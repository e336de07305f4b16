"""P-CSS codes: a classical code plus an affine hash gives a CSS code.

For ``f(y) = A y + s0`` with ``F`` spanning ``ker A``, the codewords are
uniform superpositions over ``C_s(f) = {G F t + x_s}``. The stabilizers
are the rows of ``H`` (Z type) and the rows of ``(G F)^T`` (X type);
``H (G F) = 0`` holds automatically because ``H G = 0``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import gf2
from .classical import LinearCode
from .errors import InstanceTooLarge
from .gf2k import HashRealization

MAX_DISTANCE_N = 24
# span enumeration is used when it touches at most this many vectors
_SPAN_ENUM_LIMIT = 1 << 20


@dataclass(frozen=True, eq=False)
class PcssCode:
    code: LinearCode
    hash: HashRealization
    F: np.ndarray
    cprime_gen: np.ndarray
    z_stabs: np.ndarray
    x_stabs: np.ndarray

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def m(self) -> int:
        return self.hash.m

    @cached_property
    def coset_reps(self) -> list[np.ndarray]:
        """``x_s`` for ``s = 0 .. 2^m - 1`` (bit ``j`` of the index is ``s_j``).

        Each is the minimal-weight member of its coset of C' in C; the coset
        is labelled by the ``s`` that ``f`` assigns to its preimages.
        """
        reps = gf2.coset_representatives(self.cprime_gen, self.code.G)
        out: list[np.ndarray | None] = [None] * (1 << self.m)
        for x in reps:
            y = _solve(self.code.G, x)
            s = gf2.matvec(self.hash.A, y) ^ self.hash.s0
            out[gf2.pack_int(s)] = x
        return out  # type: ignore[return-value]

    @cached_property
    def cprime_checks(self) -> np.ndarray:
        """Rows spanning ``C'^perp``; ``x in C'`` iff ``cprime_checks @ x == 0``."""
        return gf2.column_space_checks(self.cprime_gen)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "G": gf2.row_strings(self.code.G),
            "H": gf2.row_strings(self.code.H),
            "F": gf2.row_strings(self.F),
            "z_stabs": gf2.row_strings(self.z_stabs),
            "x_stabs": gf2.row_strings(self.x_stabs),
            "A": gf2.row_strings(self.hash.A),
            "s0": gf2.bitstring(self.hash.s0),
        }
        if self.hash.provenance is not None:
            p = self.hash.provenance
            out.update(modulus=str(p.spec), a=p.a, b=p.b)
        return out


def _solve(G: np.ndarray, x: np.ndarray) -> np.ndarray:
    """The unique ``y`` with ``G y = x`` for full-column-rank ``G``."""
    n, k = G.shape
    aug = np.concatenate([G, x[:, None]], axis=1)
    reduced, pivots, _ = gf2.rref(aug)
    if k in pivots:
        raise ValueError("vector is not in the column space")
    y = np.zeros(k, dtype=np.uint8)
    for i, p in enumerate(pivots):
        y[p] = reduced[i, k]
    return y


def construct(code: LinearCode, hash: HashRealization) -> PcssCode:
    """Build the P-CSS code of ``code`` and ``hash``.

    Raises:
        ValueError: if the hash input length differs from ``code.k``.
    """
    if hash.k != code.k:
        raise ValueError(f"hash acts on {hash.k} bits but the code has k={code.k}")
    F = hash.kernel_basis()
    cprime = gf2.matmul(code.G, F)
    return PcssCode(
        code=code,
        hash=hash,
        F=F,
        cprime_gen=cprime,
        z_stabs=code.H.copy(),
        x_stabs=cprime.T.copy(),
    )


# ---------------------------------------------------------------------------
# verification


@dataclass
class CssReport:
    ok: bool
    checks: dict[str, bool]
    witness: str | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "witness": self.witness}


def verify_css(pcss: PcssCode) -> CssReport:
    """Re-check the structural invariants of a (possibly hand-edited) code."""
    checks: dict[str, bool] = {}
    witness = None
    k, m = pcss.k, pcss.m

    comm = gf2.matmul(pcss.z_stabs, pcss.x_stabs.T)
    checks["stabilizers_commute"] = not comm.any()
    if comm.any():
        i, j = map(int, np.argwhere(comm)[0])
        witness = f"Z row {i + 1} ({pauli_string('Z', pcss.z_stabs[i])}) anticommutes with X row {j + 1} ({pauli_string('X', pcss.x_stabs[j])})"

    hgf = gf2.matmul(pcss.code.H, pcss.cprime_gen)
    checks["H_GF_zero"] = not hgf.any()
    checks["rank_F"] = gf2.rank(pcss.F) == k - m
    checks["rank_GF"] = gf2.rank(pcss.cprime_gen) == k - m
    checks["x_stabs_match_GF"] = np.array_equal(pcss.x_stabs, pcss.cprime_gen.T)
    if not checks["x_stabs_match_GF"] and witness is None:
        bad = np.flatnonzero((pcss.x_stabs != pcss.cprime_gen.T).any(axis=1))
        witness = f"X row {int(bad[0]) + 1} differs from (GF)^T"
    checks["z_stabs_match_H"] = np.array_equal(pcss.z_stabs, pcss.code.H)

    try:
        reps = pcss.coset_reps
    except InstanceTooLarge:
        reps = None
    if reps is not None:
        labels = gf2.Span.from_matrix_columns(pcss.cprime_gen)
        in_code = all(r is not None and not gf2.matvec(pcss.code.H, r).any() for r in reps)
        distinct = in_code and len({labels.reduce(gf2.pack_int(r)) for r in reps}) == len(reps)
        checks["coset_count"] = len(reps) == 1 << m and all(r is not None for r in reps)
        checks["cosets_distinct"] = bool(distinct)
    return CssReport(ok=all(checks.values()), checks=checks, witness=witness)


def codeword_support(pcss: PcssCode, s) -> np.ndarray:
    """Rows are the ``2^(k-m)`` strings ``G F t + x_s`` in quantum codeword ``s``."""
    s = gf2.as_bits(s)
    if s.shape != (pcss.m,):
        raise ValueError(f"s must have length m={pcss.m}")
    x_s = pcss.coset_reps[gf2.pack_int(s)]
    t = _all_vectors(pcss.k - pcss.m)
    if t.shape[1] == 0:
        return x_s[None, :].copy()
    span = (t.astype(np.int64) @ pcss.cprime_gen.T.astype(np.int64)) & 1
    return (span.astype(np.uint8) ^ x_s[None, :]).astype(np.uint8)


def _all_vectors(n: int) -> np.ndarray:
    x = np.arange(1 << n, dtype=np.int64)
    return ((x[:, None] >> np.arange(n)) & 1).astype(np.uint8)


# ---------------------------------------------------------------------------
# distance


@dataclass
class DistanceReport:
    d_x: int
    d_z: int
    x_witness: np.ndarray
    z_witness: np.ndarray

    @property
    def d(self) -> int:
        return min(self.d_x, self.d_z)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "d_x": self.d_x,
            "d_z": self.d_z,
            "x_witness": pauli_string("X", self.x_witness),
            "z_witness": pauli_string("Z", self.z_witness),
        }


def distance(pcss: PcssCode) -> DistanceReport:
    """Exact ``d_x = min wt(C \\ C')`` and ``d_z = min wt(C'^perp \\ C^perp)``.

    Raises:
        InstanceTooLarge: for ``n > 24``.
        ValueError: if the code encodes no qubits (``m = 0``).
    """
    n = pcss.n
    if n > MAX_DISTANCE_N:
        raise InstanceTooLarge(f"distance search is limited to n <= {MAX_DISTANCE_N}")
    if pcss.m == 0:
        raise ValueError("the code encodes no logical qubits; distance is undefined")
    # bit-flip logicals: in C, outside C'
    d_x, wx = _min_weight_outside(
        big_basis=pcss.code.G, big_checks=pcss.code.H, small_checks=pcss.cprime_checks, n=n
    )
    # phase-flip logicals: in C'^perp, outside C^perp = rowspace(H)
    d_z, wz = _min_weight_outside(
        big_basis=gf2.null_space_basis(pcss.x_stabs),
        big_checks=pcss.x_stabs,
        small_checks=pcss.code.G.T.copy(),
        n=n,
    )
    return DistanceReport(d_x, d_z, wx, wz)


def _violations(xs: np.ndarray, checks: np.ndarray) -> np.ndarray:
    """True where a packed vector fails at least one parity check."""
    bad = np.zeros(len(xs), dtype=bool)
    for row in gf2.pack_uint64(checks) if len(checks) else []:
        bad |= gf2.parity(xs & row).astype(bool)
    return bad


def _pick(xs: np.ndarray, n: int) -> tuple[int, np.ndarray]:
    w = np.bitwise_count(xs)
    best = w.min()
    cands = xs[w == best]
    keys = gf2.lex_keys_packed(cands, n)
    return int(best), gf2.unpack_uint64(cands[np.argmin(keys)][None], n)[0]


def _min_weight_outside(big_basis, big_checks, small_checks, n):
    dim = big_basis.shape[1]
    if (1 << dim) <= _SPAN_ENUM_LIMIT:
        xs = gf2.Span.from_matrix_columns(big_basis).elements()
        xs = xs[_violations(xs, small_checks)]
        return _pick(xs, n)
    positions = list(range(n - 1, -1, -1))
    for w in range(1, n + 1):
        combos = np.array(list(itertools.combinations(positions, w)), dtype=np.uint64)
        xs = np.bitwise_or.reduce(np.uint64(1) << combos, axis=1)
        xs = xs[~_violations(xs, big_checks)]
        xs = xs[_violations(xs, small_checks)]
        if len(xs):
            return _pick(xs, n)
    raise AssertionError("no logical operator found")


# ---------------------------------------------------------------------------
# stabilizer text


def pauli_string(kind: str, row) -> str:
    support = np.flatnonzero(gf2.as_bits(row))
    if support.size == 0:
        return "I"
    return "".join(f"{kind}{i + 1}" for i in support)


def stabilizer_strings(pcss: PcssCode, canonical: bool = False) -> list[str]:
    """Z generators (rows of ``H``) followed by X generators (rows of ``(GF)^T``), 1-indexed."""
    z, x = pcss.z_stabs, pcss.x_stabs
    if canonical:
        z = _canonical_rows(z)
        x = _canonical_rows(x)
    return [pauli_string("Z", r) for r in z] + [pauli_string("X", r) for r in x]


def _canonical_rows(m: np.ndarray) -> np.ndarray:
    reduced, _, r = gf2.rref(m)
    return reduced[:r]


def parse_stabilizer(text: str, n: int) -> tuple[str, np.ndarray]:
    """Inverse of :func:`pauli_string` for single-type operators like ``Z4Z5Z6Z7``."""
    terms = re.findall(r"([XZ])_?(\d+)", text.replace(" ", ""))
    if not terms or "".join(f"{a}{b}" for a, b in terms) != re.sub(r"[_\s]", "", text):
        raise ValueError(f"cannot parse stabilizer {text!r}")
    kinds = {a for a, _ in terms}
    if len(kinds) != 1:
        raise ValueError("mixed X/Z operators are not CSS generators")
    row = np.zeros(n, dtype=np.uint8)
    for _, idx in terms:
        i = int(idx)
        if not 1 <= i <= n:
            raise ValueError(f"qubit index {i} out of range 1..{n}")
        row[i - 1] ^= 1
    return kinds.pop(), row
