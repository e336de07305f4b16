"""Regenerate the shipped n=96 (3,6)-regular LDPC parity-check matrix.

Configuration-model sockets are shuffled with a fixed seed; seeds are tried
in order until the matrix has no repeated edges and full row rank.

    python scripts/make_ldpc96.py > src/pcss_codes/data/ldpc96.alist
"""

from __future__ import annotations

import sys

import numpy as np

from pcss_codes import gf2
from pcss_codes.alist import save_alist

N, COL_W, ROW_W = 96, 3, 6


def regular_ldpc(n: int, wc: int, wr: int, seed: int) -> np.ndarray | None:
    m = n * wc // wr
    rng = np.random.default_rng(seed)
    sockets = np.repeat(np.arange(m), wr)
    rng.shuffle(sockets)
    H = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        rows = sockets[j * wc : (j + 1) * wc]
        if len(set(rows.tolist())) < wc:
            return None
        H[rows, j] = 1
    return H


def main() -> None:
    seed = 0
    while True:
        H = regular_ldpc(N, COL_W, ROW_W, seed)
        if H is not None and gf2.rank(H) == H.shape[0]:
            break
        seed += 1
    print(f"seed {seed}", file=sys.stderr)
    sys.stdout.write(save_alist(H))


if __name__ == "__main__":
    main()
