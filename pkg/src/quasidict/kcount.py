"""Solid-k-mer extraction: canonical k-mer counting with a threshold.

A k-mer is solid when its canonical form occurs at least t times across
the read set (both strands pooled). Counting is exact; the stored counts
saturate at 255, which is applied only after the >= t filter so the
solidity decision never saturates away (t <= 255 is enforced).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .kmer import MAX_K, scan_kmers
from .seqio import ReadRecord

_MAGIC = b"SKMT"

COUNT_CAP = 255


@dataclass
class SolidKmerTable:
    """Distinct canonical codes sorted ascending, with capped counts."""

    codes: np.ndarray  # uint64, sorted
    counts: np.ndarray  # uint8, min(true count, 255)
    k: int
    t: int

    def __len__(self) -> int:
        return len(self.codes)

    def dump(self, path: str) -> None:
        """On-disk form: magic, k, t, entry count, then (code, count) pairs."""
        with open(path, "wb") as fh:
            fh.write(struct.pack("<4sIIQ", _MAGIC, self.k, self.t, len(self.codes)))
            fh.write(self.codes.astype("<u8").tobytes())
            fh.write(self.counts.astype(np.uint8).tobytes())

    @classmethod
    def load(cls, path: str) -> "SolidKmerTable":
        with open(path, "rb") as fh:
            buf = fh.read()
        magic, k, t, n = struct.unpack_from("<4sIIQ", buf, 0)
        if magic != _MAGIC:
            raise ValueError("not a solid k-mer table file")
        offset = struct.calcsize("<4sIIQ")
        codes = np.frombuffer(buf, dtype="<u8", count=n, offset=offset).copy()
        counts = np.frombuffer(buf, dtype=np.uint8, count=n, offset=offset + 8 * n).copy()
        return cls(codes, counts, k, t)


def count_solid(reads: Iterable[ReadRecord], k: int, t: int) -> SolidKmerTable:
    """Count canonical k-mers over a read stream and keep those seen >= t times."""
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}], got {k}")
    if not 1 <= t <= COUNT_CAP:
        raise ValueError(f"solidity threshold must be in [1, {COUNT_CAP}], got {t}")
    chunks = []
    for read in reads:
        _, codes = scan_kmers(read.seq, k)
        if len(codes):
            chunks.append(codes)
    if not chunks:
        return SolidKmerTable(np.empty(0, np.uint64), np.empty(0, np.uint8), k, t)
    all_codes = np.concatenate(chunks)
    uniq, counts = np.unique(all_codes, return_counts=True)
    keep = counts >= t
    capped = np.minimum(counts[keep], COUNT_CAP).astype(np.uint8)
    return SolidKmerTable(uniq[keep], capped, k, t)
