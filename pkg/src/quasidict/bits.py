"""Low-level 64-bit helpers: popcount, avalanche mixing, bit packing.

Everything here exists in two flavours: a numpy path operating on uint64
arrays (the hot path) and a plain-int path for scalar use. numpy scalar
uint64 arithmetic emits overflow warnings, so scalars go through Python
ints masked to 64 bits instead.
"""

from __future__ import annotations

import numpy as np

U64 = np.uint64
MASK64 = (1 << 64) - 1

# splitmix64 finalizer constants; also written into index headers so a file
# can be rejected if it was produced with different mixing.
MIX_MULT_1 = 0xBF58476D1CE4E5B9
MIX_MULT_2 = 0x94D049BB133111EB

# increment of the seed stream used to derive per-level hash seeds
SEED_STREAM_INCREMENT = 0x9E3779B97F4A7C15

DEFAULT_SEED = 0xA24BAED4963EE407

_HAS_BITWISE_COUNT = hasattr(np, "bitwise_count")
if not _HAS_BITWISE_COUNT:  # numpy < 2.0
    _POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


def popcount64(words: np.ndarray) -> np.ndarray:
    """Per-element popcount of a uint64 array, as uint8."""
    if _HAS_BITWISE_COUNT:
        return np.bitwise_count(words)
    w = words
    return (
        _POP16[(w & U64(0xFFFF)).astype(np.int64)]
        + _POP16[((w >> U64(16)) & U64(0xFFFF)).astype(np.int64)]
        + _POP16[((w >> U64(32)) & U64(0xFFFF)).astype(np.int64)]
        + _POP16[(w >> U64(48)).astype(np.int64)]
    )


def mix64(x: np.ndarray) -> np.ndarray:
    """Xor-shift-multiply avalanche over a uint64 array (splitmix64 finalizer)."""
    x = x ^ (x >> U64(30))
    x = x * U64(MIX_MULT_1)
    x = x ^ (x >> U64(27))
    x = x * U64(MIX_MULT_2)
    x = x ^ (x >> U64(31))
    return x


def mix64_int(x: int) -> int:
    """Scalar twin of :func:`mix64`, exact on Python ints."""
    x &= MASK64
    x ^= x >> 30
    x = (x * MIX_MULT_1) & MASK64
    x ^= x >> 27
    x = (x * MIX_MULT_2) & MASK64
    x ^= x >> 31
    return x


def derive_seed(master_seed: int, index: int) -> int:
    """Deterministic seed stream: distinct 64-bit seed per (master, index)."""
    return mix64_int(master_seed + (index + 1) * SEED_STREAM_INCREMENT)


def pack_bool_to_words(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array into uint64 words, bit i at word[i >> 6] bit (i & 63)."""
    raw = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    pad = (-len(raw)) % 8
    if pad:
        raw = np.concatenate([raw, np.zeros(pad, np.uint8)])
    return np.frombuffer(raw.tobytes(), dtype="<u8").copy()


def words_to_bool(words: np.ndarray, n_bits: int) -> np.ndarray:
    """Inverse of :func:`pack_bool_to_words` (used by oracles and tests)."""
    as_bytes = np.frombuffer(np.ascontiguousarray(words).tobytes(), dtype=np.uint8)
    return np.unpackbits(as_bytes, bitorder="little")[:n_bits].astype(bool)
