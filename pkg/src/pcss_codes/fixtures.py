"""Named codes, hashes and parameter sets used by the CLI and the tests."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import gf2
from .alist import load_alist
from .classical import LinearCode
from .gf2k import FieldSpec, HashRealization

HAMMING_GT = ["1000011", "0100101", "0010110", "0001111"]
HAMMING_H = ["0001111", "0110011", "1010101"]


def hamming7() -> LinearCode:
    """The ``[7,4,3]`` Hamming code with ``G`` and ``H`` exactly as printed."""
    return LinearCode(gf2.from_row_strings(HAMMING_GT).T.copy(), gf2.from_row_strings(HAMMING_H), "hamming7")


def repetition3() -> LinearCode:
    H = np.array([[1, 1, 0], [1, 0, 1]], dtype=np.uint8)
    return LinearCode(np.ones((3, 1), dtype=np.uint8), H, "repetition3")


def ldpc96() -> LinearCode:
    """A fixed ``n = 96`` (3,6)-regular LDPC code (see ``scripts/make_ldpc96.py``)."""
    text = resources.files("pcss_codes").joinpath("data/ldpc96.alist").read_text()
    return LinearCode.from_parity(load_alist(text), "ldpc96")


CODES = {"hamming7": hamming7, "repetition3": repetition3, "ldpc96": ldpc96}


def steane_hash() -> HashRealization:
    """GF(16), ``a = zeta^-2``, ``b = 0``, ``m = 1``; with :func:`hamming7` gives the Steane code."""
    spec = FieldSpec.default(4)
    return HashRealization.from_field(spec, spec.power(spec.zeta, -2), 0, 1)


def zeta_hash() -> HashRealization:
    """GF(16), ``a = zeta``, ``b = 0``, ``m = 1``; gives a ``[[7,1]]`` code of distance 1."""
    spec = FieldSpec.default(4)
    return HashRealization.from_field(spec, spec.zeta, 0, 1)


HASHES = {"steane-hash": steane_hash, "zeta-hash": zeta_hash}


@dataclass(frozen=True)
class GallagerParams:
    """The large LDPC experiment: block length, dimension, classical block error, channel."""

    n: int = 19839
    k: int = 9839
    epsilon: float = 2.62e-5
    depolarizing: float = 0.114


GALLAGER = GallagerParams()
PARAMS = {"gallager-paper": GALLAGER}


def load_code(name: str) -> LinearCode:
    try:
        return CODES[name]()
    except KeyError:
        raise ValueError(f"unknown code {name!r}; choose from {sorted(CODES)}") from None
