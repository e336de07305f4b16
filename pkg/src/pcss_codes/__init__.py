"""CSS quantum codes built from a classical linear code and an affine two-universal hash."""

from .classical import BPDecoder, LeaderTable, LinearCode
from .errors import InstanceTooLarge
from .gf2k import FieldSpec, HashRealization, sample_hash
from .pcss import PcssCode, construct, distance, stabilizer_strings, verify_css

__all__ = [
    "BPDecoder",
    "FieldSpec",
    "HashRealization",
    "InstanceTooLarge",
    "LeaderTable",
    "LinearCode",
    "PcssCode",
    "construct",
    "distance",
    "sample_hash",
    "stabilizer_strings",
    "verify_css",
]
