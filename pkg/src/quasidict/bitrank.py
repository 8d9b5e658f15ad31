"""Packed bit vector with constant-time rank-of-ones.

The vector stores one cumulative popcount sample per 512-bit block
(12.5% overhead) plus a trailing total, so ``rank1(i)`` costs one sample
read, at most seven word popcounts and one masked popcount. A batched
``rank1_array`` answers many positions at once with the same arithmetic
vectorized over numpy arrays.
"""

from __future__ import annotations

import struct

import numpy as np

from .bits import U64, pack_bool_to_words, popcount64

BLOCK_BITS = 512
WORDS_PER_BLOCK = BLOCK_BITS // 64

_RANK_CHUNK = 1 << 17


class RankBitVector:
    """Immutable bit array of length ``n_bits`` answering rank1 queries."""

    __slots__ = ("words", "n_bits", "samples", "_wmat", "n_ones")

    def __init__(self, words: np.ndarray, n_bits: int):
        words = np.ascontiguousarray(words, dtype=np.uint64)
        n_words = (n_bits + 63) // 64
        if len(words) != n_words:
            raise ValueError(f"expected {n_words} words for {n_bits} bits, got {len(words)}")
        if n_bits & 63:
            # bits above n_bits must stay zero or ranks drift
            words = words.copy()
            words[-1] &= (U64(1) << U64(n_bits & 63)) - U64(1)
        self.words = words
        self.n_bits = n_bits
        n_blocks = (n_words + WORDS_PER_BLOCK - 1) // WORDS_PER_BLOCK
        padded = np.zeros(n_blocks * WORDS_PER_BLOCK, dtype=np.uint64)
        padded[:n_words] = words
        self._wmat = padded.reshape(n_blocks, WORDS_PER_BLOCK)
        per_word = popcount64(padded).astype(np.int64)
        block_totals = per_word.reshape(n_blocks, WORDS_PER_BLOCK).sum(axis=1)
        self.samples = np.concatenate([[0], np.cumsum(block_totals)]).astype(np.int64)
        self.n_ones = int(self.samples[-1])

    @classmethod
    def build(cls, bits) -> "RankBitVector":
        """Build from a 0/1 (or bool) array."""
        bits = np.asarray(bits)
        return cls(pack_bool_to_words(bits), len(bits))

    def __len__(self) -> int:
        return self.n_bits

    def get(self, i: int) -> int:
        """Bit at position ``i``."""
        if not 0 <= i < self.n_bits:
            raise ValueError(f"bit index {i} out of range [0, {self.n_bits})")
        return int((self.words[i >> 6] >> U64(i & 63)) & U64(1))

    def get_array(self, pos: np.ndarray) -> np.ndarray:
        """Bits at positions ``pos`` (each in [0, n_bits)), as a bool array."""
        p = pos.astype(np.uint64, copy=False)
        w = self.words[(p >> U64(6)).astype(np.int64)]
        return ((w >> (p & U64(63))) & U64(1)).astype(bool)

    def rank1(self, i: int) -> int:
        """Number of set bits in positions [0, i); requires 0 <= i <= n_bits."""
        if not 0 <= i <= self.n_bits:
            raise ValueError(f"rank position {i} out of range [0, {self.n_bits}]")
        if i == self.n_bits:
            return self.n_ones
        block = i >> 9
        word = i >> 6
        r = int(self.samples[block])
        for w in range(block * WORDS_PER_BLOCK, word):
            r += int(self.words[w]).bit_count()
        partial = int(self.words[word]) & ((1 << (i & 63)) - 1)
        return r + partial.bit_count()

    def rank1_array(self, pos: np.ndarray) -> np.ndarray:
        """Vectorized rank1 for positions in [0, n_bits)."""
        out = np.empty(len(pos), dtype=np.int64)
        for s in range(0, len(pos), _RANK_CHUNK):
            out[s : s + _RANK_CHUNK] = self._rank_chunk(pos[s : s + _RANK_CHUNK])
        return out

    def _rank_chunk(self, pos: np.ndarray) -> np.ndarray:
        p = pos.astype(np.int64, copy=False)
        blk = p >> 9
        W = self._wmat[blk]
        counts = popcount64(W).astype(np.int32)
        within = (p >> 6) & 7
        csum = np.cumsum(counts, axis=1, dtype=np.int32)
        before = np.take_along_axis(csum, np.maximum(within - 1, 0)[:, None], axis=1)[:, 0]
        before = np.where(within > 0, before, 0)
        target = np.take_along_axis(W, within[:, None], axis=1)[:, 0]
        mask = (U64(1) << (p.astype(np.uint64) & U64(63))) - U64(1)
        partial = popcount64(target & mask).astype(np.int32)
        return self.samples[blk] + before + partial

    def size_in_bits(self) -> int:
        """Serialized footprint: packed words plus one rank sample per block."""
        return (len(self.words) + len(self.samples) - 1) * 64

    def serialize(self) -> bytes:
        """Little-endian: bit count, packed words, one rank sample per block.

        The trailing cumulative total is rebuilt on load, not stored.
        """
        return (
            struct.pack("<Q", self.n_bits)
            + self.words.astype("<u8").tobytes()
            + self.samples[:-1].astype("<u8").tobytes()
        )

    @classmethod
    def deserialize(cls, buf: bytes, offset: int = 0) -> tuple["RankBitVector", int]:
        (n_bits,) = struct.unpack_from("<Q", buf, offset)
        offset += 8
        n_words = (n_bits + 63) // 64
        n_samples = (n_words + WORDS_PER_BLOCK - 1) // WORDS_PER_BLOCK
        words = np.frombuffer(buf, dtype="<u8", count=n_words, offset=offset)
        offset += 8 * n_words
        # samples are recomputed by the constructor; skip over them
        offset += 8 * n_samples
        return cls(words, n_bits), offset
