"""GF(2^k) arithmetic and the affine hash family ``h_{a,b}(y) = tau(a*y + b)``.

Field elements are ints whose bit ``i`` is the coefficient of ``zeta**i``
(``zeta`` is the class of the indeterminate), which is also the
vector/polynomial bijection used to turn ``h_{a,b}`` into a matrix. The
projection ``tau`` keeps the low-degree coefficients ``zeta**0 ..
zeta**(m-1)``.

With the default GF(16) modulus ``x^4 + x + 1`` and this bit order, the
kernel bases built by :meth:`HashRealization.kernel_basis` for
``a = zeta**-2`` and ``a = zeta`` come out column-for-column as the
``F`` matrices of the standard [[7,1]] worked examples.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from sympy import factorint

from . import gf2
from .errors import InstanceTooLarge

MAX_EXHAUSTIVE_K = 8
MAX_DEFAULT_K = 64


# ---------------------------------------------------------------------------
# polynomials over GF(2) packed into ints


def _poly_mulmod(a: int, b: int, mod: int, k: int) -> int:
    out = 0
    top = 1 << k
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return out


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


def is_irreducible(modulus: int) -> bool:
    """Ben-Or test: no factor of degree <= k/2."""
    k = modulus.bit_length() - 1
    if k < 1:
        return False
    x = 0b10
    xp = x
    for _ in range(k // 2):
        xp = _poly_mulmod(xp, xp, modulus, k) if k > 1 else _poly_mod(xp * xp, modulus)
        if _poly_gcd(modulus, xp ^ x) != 1:
            return False
    return True


def is_primitive(modulus: int) -> bool:
    k = modulus.bit_length() - 1
    if not is_irreducible(modulus):
        return False
    order = (1 << k) - 1
    if k == 1:
        return True
    zeta = 0b10
    for p in _prime_factors(order):
        if _pow(zeta, order // p, modulus, k) == 1:
            return False
    return True


def _pow(a: int, e: int, mod: int, k: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = _poly_mulmod(out, a, mod, k)
        a = _poly_mulmod(a, a, mod, k)
        e >>= 1
    return out


@lru_cache(maxsize=None)
def default_modulus(k: int) -> int:
    """Smallest (as an integer) primitive polynomial of degree ``k``."""
    if not 1 <= k <= MAX_DEFAULT_K:
        raise ValueError(f"default modulus is defined for 1 <= k <= {MAX_DEFAULT_K}; pass one explicitly")
    for cand in range((1 << k) | 1, 1 << (k + 1), 2):
        if is_primitive(cand):
            return cand
    raise AssertionError("unreachable: primitive polynomials exist for every degree")


# ---------------------------------------------------------------------------
# field


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^k) as GF(2)[x] modulo an irreducible ``modulus`` (bit i = coeff of x^i)."""

    k: int
    modulus: int

    def __post_init__(self):
        if self.modulus.bit_length() - 1 != self.k:
            raise ValueError(f"modulus has degree {self.modulus.bit_length() - 1}, expected {self.k}")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus_bits()} is not irreducible")

    @classmethod
    def default(cls, k: int) -> FieldSpec:
        return cls(k, default_modulus(k))

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``"k:bits"`` (coefficients low degree first), ``"k4"`` or ``"4"``."""
        text = text.strip()
        if ":" in text:
            k_text, bits = text.split(":", 1)
            k = int(k_text)
            if len(bits) != k + 1 or set(bits) - {"0", "1"}:
                raise ValueError(f"modulus bits must be {k + 1} characters of 0/1")
            return cls(k, int(bits[::-1], 2))
        m = re.fullmatch(r"k?(\d+)", text)
        if not m:
            raise ValueError(f"cannot parse field spec {text!r}")
        return cls.default(int(m.group(1)))

    def __str__(self) -> str:
        return f"{self.k}:{self.modulus_bits()}"

    def modulus_bits(self) -> str:
        return format(self.modulus, f"0{self.k + 1}b")[::-1]

    @cached_property
    def primitive(self) -> bool:
        """Whether ``zeta`` generates the multiplicative group."""
        return is_primitive(self.modulus)

    @property
    def order(self) -> int:
        return 1 << self.k

    @property
    def zeta(self) -> int:
        return 0b10 if self.k > 1 else 1

    def check(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise ValueError(f"{x} is not an element of GF(2^{self.k})")
        return x

    def power(self, x: int, e: int) -> int:
        """``x**e``; negative exponents go through the group order ``2^k - 1``."""
        self.check(x)
        if e < 0:
            if x == 0:
                raise ZeroDivisionError("zero has no inverse")
            e %= self.order - 1
        return _pow(x, e, self.modulus, self.k)

    def inverse(self, x: int) -> int:
        if self.check(x) == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.power(x, self.order - 2)

    def to_bits(self, x: int) -> np.ndarray:
        return gf2.unpack_int(self.check(x), self.k)

    def from_bits(self, bits) -> int:
        bits = gf2.as_bits(bits)
        if bits.shape != (self.k,):
            raise ValueError(f"expected {self.k} bits")
        return gf2.pack_int(bits)

    def parse_element(self, text: str) -> int:
        """Parse ``zeta``, ``zeta^-2``, ``z^3``, a decimal int or ``0b...``."""
        t = text.strip().replace(" ", "").lower()
        m = re.fullmatch(r"(?:zeta|z)(?:\^\(?(-?\d+)\)?)?", t)
        if m:
            return self.power(self.zeta, int(m.group(1) or 1))
        return self.check(int(t, 0))


def field_mul(spec: FieldSpec, x: int, y: int) -> int:
    return _poly_mulmod(spec.check(x), spec.check(y), spec.modulus, spec.k)


def mul_matrix(spec: FieldSpec, a: int) -> np.ndarray:
    """``k x k`` matrix ``M_a`` with ``M_a @ bits(y) == bits(a*y)``."""
    if spec.check(a) == 0:
        raise ValueError("multiplier a must be nonzero")
    cols = [spec.to_bits(field_mul(spec, a, 1 << j)) for j in range(spec.k)]
    return np.stack(cols, axis=1)


def hash_matrix(spec: FieldSpec, a: int, m: int) -> np.ndarray:
    """Linear part of ``tau o pi_{a,b}``: the first ``m`` rows of ``M_a``."""
    if not 1 <= m <= spec.k:
        raise ValueError(f"m must satisfy 1 <= m <= k={spec.k}, got {m}")
    return mul_matrix(spec, a)[:m].copy()


# ---------------------------------------------------------------------------
# hash realizations


@dataclass(frozen=True)
class HashProvenance:
    spec: FieldSpec
    a: int
    b: int


@dataclass(frozen=True, eq=False)
class HashRealization:
    """One affine map ``f(y) = A y + s0`` from ``Z_2^k`` to ``Z_2^m``."""

    A: np.ndarray
    s0: np.ndarray
    provenance: HashProvenance | None = field(default=None)

    def __post_init__(self):
        A = gf2.as_bits(self.A)
        s0 = gf2.as_bits(self.s0)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "s0", s0)
        if A.ndim != 2 or s0.shape != (A.shape[0],):
            raise ValueError("A must be m x k and s0 of length m")
        if A.shape[0] > A.shape[1]:
            raise ValueError(f"m={A.shape[0]} exceeds k={A.shape[1]}")
        if gf2.rank(A) != A.shape[0]:
            raise ValueError("hash matrix A must have full row rank")

    @classmethod
    def from_field(cls, spec: FieldSpec, a: int, b: int, m: int) -> HashRealization:
        spec.check(b)
        return cls(hash_matrix(spec, a, m), spec.to_bits(b)[:m], HashProvenance(spec, a, b))

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def k(self) -> int:
        return self.A.shape[1]

    def kernel_basis(self) -> np.ndarray:
        """``k x (k-m)`` matrix whose columns span ``ker A``.

        For a field-born realization the columns are ``a^{-1} zeta^j`` for
        ``j = m..k-1``: ``a`` times any of them lands on a pure high-degree
        monomial, which ``tau`` sends to zero. Otherwise the RREF null-space
        basis is used.
        """
        if self.provenance is None:
            return gf2.null_space_basis(self.A)
        p = self.provenance
        return mul_matrix(p.spec, p.spec.inverse(p.a))[:, self.m :].copy()

    def with_offset(self, s0) -> HashRealization:
        return HashRealization(self.A, s0, None if self.provenance is None else self.provenance)

    def to_json(self) -> dict:
        out = {"m": self.m, "A": gf2.row_strings(self.A), "s0": gf2.bitstring(self.s0)}
        if self.provenance is not None:
            p = self.provenance
            out.update(a=p.a, b=p.b, modulus=str(p.spec))
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> HashRealization:
        if isinstance(data, str):
            data = json.loads(data)
        A = gf2.from_row_strings(data["A"])
        s0 = gf2.from_row_strings([data["s0"]])[0] if data["s0"] else np.zeros(0, np.uint8)
        prov = None
        if "a" in data:
            spec = FieldSpec.parse(data["modulus"])
            prov = HashProvenance(spec, int(data["a"]), int(data.get("b", 0)))
            if not np.array_equal(hash_matrix(spec, prov.a, A.shape[0]), A):
                raise ValueError("A does not match the recorded (a, modulus)")
        return cls(A, s0, prov)


def eval_hash(h: HashRealization, y) -> np.ndarray:
    y = gf2.as_bits(y)
    if y.shape != (h.k,):
        raise ValueError(f"expected input of length {h.k}, got {y.shape}")
    return gf2.matvec(h.A, y) ^ h.s0


def sample_hash(spec: FieldSpec, m: int, seed=None) -> HashRealization:
    """Draw ``(a, b)`` uniformly with ``a != 0``; reproducible for a fixed seed."""
    rng = np.random.default_rng(seed)
    a = 0
    while a == 0:
        a = _random_element(spec, rng)
    b = _random_element(spec, rng)
    return HashRealization.from_field(spec, a, b, m)


def _random_element(spec: FieldSpec, rng: np.random.Generator) -> int:
    bits = rng.integers(0, 2, size=spec.k)
    return gf2.pack_int(bits)


def multiplication_table(spec: FieldSpec) -> np.ndarray:
    """``table[a, y] = a*y`` for every pair of elements (small fields only)."""
    q = spec.order
    table = np.zeros((q, q), dtype=np.int64)
    y = np.arange(q, dtype=np.int64)
    # a*y is linear in a: build row for zeta^i, then xor-combine
    basis_rows = np.array([[field_mul(spec, 1 << i, int(v)) for v in y] for i in range(spec.k)])
    for a in range(1, q):
        row = np.zeros(q, dtype=np.int64)
        for i in range(spec.k):
            if (a >> i) & 1:
                row ^= basis_rows[i]
        table[a] = row
    return table


def two_universality_max_collision(spec: FieldSpec, m: int) -> float:
    """Worst-case collision probability of ``h_{a,b}`` over distinct input pairs.

    Every function of the family (all ``a != 0`` and all ``b``) is evaluated
    on every input and collisions are counted pair by pair.
    """
    if spec.k > MAX_EXHAUSTIVE_K:
        raise InstanceTooLarge(f"exhaustive check needs k <= {MAX_EXHAUSTIVE_K}")
    if not 1 <= m <= spec.k:
        raise ValueError(f"m must satisfy 1 <= m <= k={spec.k}")
    q = spec.order
    table = multiplication_table(spec)[1:]  # rows: a = 1..q-1
    mask = (1 << m) - 1
    counts = np.zeros((q, q), dtype=np.int64)
    for b in range(q):
        out = (table ^ b) & mask  # (q-1, q): h_{a,b}(y)
        counts += (out[:, :, None] == out[:, None, :]).sum(axis=0)
    np.fill_diagonal(counts, 0)
    n_functions = (q - 1) * q
    return float(counts.max() / n_functions)
