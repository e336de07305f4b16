"""MacKay ``alist`` sparse-matrix format (1-based indices)."""

from __future__ import annotations

import numpy as np

from . import gf2


def load_alist(text: str) -> np.ndarray:
    """Parse an alist description into a dense ``M x N`` parity-check matrix.

    Zero entries in the index lists are padding and are skipped. Raises
    ``ValueError`` if counts, weights or indices are inconsistent.
    """
    try:
        tokens = [int(t) for t in text.split()]
    except ValueError as exc:
        raise ValueError("alist must contain only integers") from exc
    pos = 0

    def take(count: int) -> list[int]:
        nonlocal pos
        if pos + count > len(tokens):
            raise ValueError("alist ended early")
        out = tokens[pos : pos + count]
        pos += count
        return out

    n, m = take(2)
    max_col, max_row = take(2)
    col_w = take(n)
    row_w = take(m)
    if max(col_w, default=0) > max_col or max(row_w, default=0) > max_row:
        raise ValueError("declared maximum weights are smaller than listed weights")
    if sum(col_w) != sum(row_w):
        raise ValueError("column and row weights disagree on the number of ones")

    # the padded form carries max_col entries per column; the compact form
    # carries exactly col_w[j]. Decide by how many tokens remain.
    remaining = len(tokens) - pos
    if remaining == n * max_col + m * max_row:
        padded = True
    elif remaining == 2 * sum(col_w):
        padded = False
    else:
        raise ValueError(f"alist index section has {remaining} entries; counts do not match")

    H = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        idx = [i for i in take(max_col if padded else col_w[j]) if i != 0]
        if len(idx) != col_w[j]:
            raise ValueError(f"column {j + 1}: expected {col_w[j]} indices, found {len(idx)}")
        for i in idx:
            if not 1 <= i <= m:
                raise ValueError(f"column {j + 1}: row index {i} out of range")
            if H[i - 1, j]:
                raise ValueError(f"column {j + 1}: repeated row index {i}")
            H[i - 1, j] = 1
    for i in range(m):
        idx = [j for j in take(max_row if padded else row_w[i]) if j != 0]
        if len(idx) != row_w[i]:
            raise ValueError(f"row {i + 1}: expected {row_w[i]} indices, found {len(idx)}")
        if sorted(idx) != [j + 1 for j in np.flatnonzero(H[i])]:
            raise ValueError(f"row {i + 1}: index list disagrees with the column lists")
    return H


def save_alist(H) -> str:
    """Serialize ``H`` in the padded alist form."""
    H = gf2.as_bits(H)
    m, n = H.shape
    cols = [np.flatnonzero(H[:, j]) + 1 for j in range(n)]
    rows = [np.flatnonzero(H[i]) + 1 for i in range(m)]
    max_col = max((len(c) for c in cols), default=0)
    max_row = max((len(r) for r in rows), default=0)

    def line(idx, width):
        vals = list(idx) + [0] * (width - len(idx))
        return " ".join(str(int(v)) for v in vals)

    out = [f"{n} {m}", f"{max_col} {max_row}"]
    out.append(" ".join(str(len(c)) for c in cols))
    out.append(" ".join(str(len(r)) for r in rows))
    out += [line(c, max_col) for c in cols]
    out += [line(r, max_row) for r in rows]
    return "\n".join(out) + "\n"
