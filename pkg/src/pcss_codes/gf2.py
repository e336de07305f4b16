"""Dense linear algebra over GF(2).

Matrices and vectors are plain ``numpy.uint8`` arrays holding 0/1 entries;
vectors are column vectors in the math (``x = G @ y`` with ``G`` of shape
``n x k``). Elimination packs each row into a Python ``int`` (bit ``j`` is
column ``j``) so XOR row operations touch whole words at a time; products
pack rows/columns into ``uint64`` words and count parities with
``np.bitwise_count``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .errors import InstanceTooLarge

# Largest span enumerated by coset_representatives (number of vectors).
MAX_SPAN_ENUMERATION = 1 << 22


def as_bits(a) -> np.ndarray:
    """Coerce array-like input to a uint8 0/1 array (entries taken mod 2)."""
    arr = np.asarray(a)
    if arr.dtype == np.uint8 and (arr.size == 0 or arr.max() <= 1):
        return arr
    return (np.asarray(arr, dtype=np.int64) % 2).astype(np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def unit_vector(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.uint8)
    v[i] = 1
    return v


# ---------------------------------------------------------------------------
# packing helpers


def pack_int(v) -> int:
    """Pack a bit vector into an int, bit ``i`` holding entry ``i``."""
    out = 0
    for i in np.flatnonzero(as_bits(v)):
        out |= 1 << int(i)
    return out


def unpack_int(x: int, n: int) -> np.ndarray:
    return np.array([(x >> i) & 1 for i in range(n)], dtype=np.uint8)


def pack_rows(m) -> list[int]:
    return [pack_int(row) for row in as_bits(m)]


def unpack_rows(rows: Sequence[int], ncols: int) -> np.ndarray:
    if not rows:
        return zeros(0, ncols)
    return np.stack([unpack_int(r, ncols) for r in rows])


def pack_words(m) -> np.ndarray:
    """Pack the rows of a 2-D bit array into ``uint64`` words (little-endian bits)."""
    m = as_bits(m)
    rows, cols = m.shape
    nwords = max(1, -(-cols // 64))
    padded = np.zeros((rows, nwords * 64), dtype=np.uint8)
    padded[:, :cols] = m
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").reshape(rows, nwords)


def pack_uint64(m) -> np.ndarray:
    """Pack rows of at most 64 columns into one ``uint64`` each."""
    m = as_bits(np.atleast_2d(m))
    if m.shape[1] > 64:
        raise ValueError("pack_uint64 needs at most 64 columns")
    return pack_words(m)[:, 0].copy()


def unpack_uint64(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.uint64)
    as_bytes = words.view(np.uint8).reshape(-1, 8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :n]


def parity(words: np.ndarray) -> np.ndarray:
    """Parity of the popcount of each ``uint64`` word."""
    return (np.bitwise_count(words) & 1).astype(np.uint8)


# ---------------------------------------------------------------------------
# core operations


def matmul(a, b) -> np.ndarray:
    """Matrix product over GF(2).

    Raises:
        ValueError: if ``a.cols != b.rows``.
    """
    a = as_bits(a)
    b = as_bits(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("matmul expects 2-D arrays; use matvec for vectors")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")
    rows, cols = a.shape[0], b.shape[1]
    if rows == 0 or cols == 0 or a.shape[1] == 0:
        return zeros(rows, cols)
    wa = pack_words(a)
    wb = pack_words(b.T)
    out = np.empty((rows, cols), dtype=np.uint8)
    # keep the (chunk, cols, words) intermediate bounded
    chunk = max(1, (1 << 22) // max(1, cols * wa.shape[1]))
    for start in range(0, rows, chunk):
        block = wa[start : start + chunk, None, :] & wb[None, :, :]
        out[start : start + chunk] = (np.bitwise_count(block).sum(axis=2) & 1).astype(np.uint8)
    return out


def matvec(a, v) -> np.ndarray:
    """``a @ v`` over GF(2) for a vector ``v``."""
    v = as_bits(v)
    if v.ndim != 1:
        raise ValueError("matvec expects a 1-D vector")
    return matmul(a, v[:, None])[:, 0]


def rref(m) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form.

    Returns:
        ``(reduced, pivot_cols, rank)``; ``reduced`` has the same shape as
        the input, with the zero rows at the bottom.
    """
    m = as_bits(m)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    nrows, ncols = m.shape
    rows = pack_rows(m)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        sel = next((i for i in range(r, nrows) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return unpack_rows(rows, ncols).reshape(nrows, ncols), pivots, len(pivots)


def rank(m) -> int:
    m = as_bits(m)
    return Span.from_vectors(pack_rows(m)).dim if m.size else 0


def null_space_basis(m) -> np.ndarray:
    """Basis of ``{x : m x = 0}`` as the columns of a ``cols x nullity`` matrix."""
    m = as_bits(m)
    ncols = m.shape[1]
    reduced, pivots, _ = rref(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((ncols, len(free)), dtype=np.uint8)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, p in enumerate(pivots):
            if reduced[i, f]:
                basis[p, j] = 1
    return basis


def column_space_checks(basis) -> np.ndarray:
    """Rows spanning the orthogonal complement of the column space of ``basis``.

    A vector ``x`` lies in the column space iff ``checks @ x == 0``.
    """
    basis = as_bits(basis)
    return null_space_basis(basis.T).T.copy()


def in_span(basis, v) -> bool:
    """True iff ``v`` lies in the column space of ``basis``."""
    basis = as_bits(basis)
    v = as_bits(v)
    if basis.ndim != 2 or v.ndim != 1 or basis.shape[0] != v.shape[0]:
        raise ValueError(f"dimension mismatch: basis {basis.shape}, vector {v.shape}")
    return Span.from_matrix_columns(basis).contains(pack_int(v))


def hamming_weight(v) -> int:
    return int(np.count_nonzero(as_bits(v)))


def lex_key(x: int, n: int) -> int:
    """Sort key giving lexicographic order of ``(v_0, ..., v_{n-1})`` for packed ``x``."""
    return int(format(x, f"0{n}b")[::-1], 2) if n else 0


class Span:
    """Echelon basis of a GF(2) subspace held as packed ints.

    ``reduce`` maps every vector to a canonical residue that depends only on
    its coset modulo the span, so it doubles as a coset label.
    """

    def __init__(self) -> None:
        self._rows: dict[int, int] = {}  # pivot bit -> basis vector

    @classmethod
    def from_vectors(cls, vectors: Iterable[int]) -> Span:
        span = cls()
        for v in vectors:
            span.add(v)
        return span

    @classmethod
    def from_matrix_columns(cls, m) -> Span:
        return cls.from_vectors(pack_rows(as_bits(m).T))

    @property
    def dim(self) -> int:
        return len(self._rows)

    def basis(self) -> list[int]:
        return [self._rows[p] for p in sorted(self._rows)]

    def reduce(self, v: int) -> int:
        # pivots are leading (highest) bits, so reduce from the top down
        for p in sorted(self._rows, reverse=True):
            if (v >> p) & 1:
                v ^= self._rows[p]
        return v

    def add(self, v: int) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        v = self.reduce(v)
        if v == 0:
            return False
        p = v.bit_length() - 1
        # keep the basis fully reduced so reduce() is order independent
        for q, row in list(self._rows.items()):
            if (row >> p) & 1:
                self._rows[q] = row ^ v
        self._rows[p] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def elements(self) -> np.ndarray:
        """All ``2**dim`` members as packed ``uint64`` (requires width <= 64)."""
        if self.dim and max(self._rows) >= 64:
            raise ValueError("elements() needs vectors of width <= 64")
        if (1 << self.dim) > MAX_SPAN_ENUMERATION * 8:
            raise InstanceTooLarge(f"span of dimension {self.dim} is too large to enumerate")
        out = np.zeros(1, dtype=np.uint64)
        for b in self.basis():
            out = np.concatenate([out, out ^ np.uint64(b)])
        return out


def coset_representatives(sub, full) -> list[np.ndarray]:
    """One minimal-weight representative per coset of ``span(sub)`` in ``span(full)``.

    Ties in weight are broken by lexicographic order of the vector. The
    zero vector represents the zero coset and comes first; the rest are
    ordered by (weight, lexicographic).

    Raises:
        ValueError: if the column space of ``sub`` is not inside that of ``full``.
    """
    sub = as_bits(sub)
    full = as_bits(full)
    if sub.shape[0] != full.shape[0]:
        raise ValueError("sub and full must have the same number of rows")
    n = full.shape[0]
    sub_span = Span.from_matrix_columns(sub)
    full_span = Span.from_matrix_columns(full)
    for v in sub_span.basis():
        if not full_span.contains(v):
            raise ValueError("column space of sub is not contained in column space of full")
    count = 1 << (full_span.dim - sub_span.dim)
    if (1 << full_span.dim) > MAX_SPAN_ENUMERATION:
        raise InstanceTooLarge(f"enumerating 2^{full_span.dim} vectors exceeds the size guard")

    if n <= 64:
        xs = full_span.elements()
        labels = reduce_packed(sub_span, xs)
        keys = lex_keys_packed(xs, n)
        order = np.lexsort((keys, np.bitwise_count(xs), labels))
        labels_sorted = labels[order]
        first = np.ones(len(order), dtype=bool)
        first[1:] = labels_sorted[1:] != labels_sorted[:-1]
        chosen = xs[order[first]]
        assert len(chosen) == count
        chosen = chosen[np.lexsort((lex_keys_packed(chosen, n), np.bitwise_count(chosen)))]
        return list(unpack_uint64(chosen, n))

    best: dict[int, tuple[int, int, int]] = {}
    for x in _iter_span(full_span):
        label = sub_span.reduce(x)
        key = (x.bit_count(), lex_key(x, n), x)
        if label not in best or key < best[label]:
            best[label] = key
    assert len(best) == count
    reps = sorted(best.values())
    return [unpack_int(x, n) for _, _, x in reps]


def reduce_packed(span: Span, xs: np.ndarray) -> np.ndarray:
    """Vectorized :meth:`Span.reduce` over packed ``uint64`` vectors."""
    out = xs.copy()
    for p in sorted(span._rows, reverse=True):
        hit = ((out >> np.uint64(p)) & np.uint64(1)).astype(bool)
        out[hit] ^= np.uint64(span._rows[p])
    return out


def lex_keys_packed(xs: np.ndarray, n: int) -> np.ndarray:
    """Vectorized :func:`lex_key` (bit reversal within width ``n``)."""
    out = np.zeros_like(xs)
    for i in range(n):
        bit = (xs >> np.uint64(i)) & np.uint64(1)
        out |= bit << np.uint64(n - 1 - i)
    return out


def _iter_span(span: Span):
    basis = span.basis()
    for mask in range(1 << len(basis)):
        x = 0
        j = 0
        while mask:
            if mask & 1:
                x ^= basis[j]
            mask >>= 1
            j += 1
        yield x


# ---------------------------------------------------------------------------
# text formats


def read_matrix(text: str) -> np.ndarray:
    """Parse the plain-text matrix format: ``"rows cols"`` then one 0/1 string per row."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        rows, cols = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad matrix header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    out = np.zeros((rows, cols), dtype=np.uint8)
    for i, line in enumerate(body):
        if len(line) != cols or set(line) - {"0", "1"}:
            raise ValueError(f"row {i + 1} is not a {cols}-character 0/1 string")
        out[i] = [c == "1" for c in line]
    return out


def write_matrix(m) -> str:
    m = as_bits(m)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines += row_strings(m)
    return "\n".join(lines) + "\n"


def row_strings(m) -> list[str]:
    return ["".join("1" if x else "0" for x in row) for row in as_bits(m)]


def from_row_strings(rows: Sequence[str], cols: int | None = None) -> np.ndarray:
    if not rows:
        return zeros(0, cols or 0)
    width = len(rows[0])
    if any(len(r) != width or set(r) - {"0", "1"} for r in rows):
        raise ValueError("rows must be equal-length 0/1 strings")
    return np.array([[c == "1" for c in r] for r in rows], dtype=np.uint8)


def bitstring(v) -> str:
    return "".join("1" if x else "0" for x in as_bits(v))
