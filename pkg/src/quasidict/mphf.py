"""Minimal perfect hash function over a static set of 64-bit keys.

Cascade-of-bitmaps construction: level l hashes its surviving keys into
``gamma * n_l`` slots; slots hit exactly once are frozen into a rank-enabled
bitmap and their keys are done, colliding keys fall through to the next
level. Keys still unresolved after 64 levels land in an exact fallback map.
A key's dense index is the number of frozen slots before its own, which one
rank query per level answers in constant time.

Lookups restricted to the construction keys are a bijection onto
[0, N-1]; foreign keys return an arbitrary index or NOT_FOUND.
"""

from __future__ import annotations

import struct

import numpy as np

from .bitrank import RankBitVector
from .bits import DEFAULT_SEED, MASK64, U64, derive_seed, mix64, mix64_int

NOT_FOUND = -1
MAX_LEVELS = 64

# below this many survivors a cascade level costs more serialized bytes than
# exact (key, index) fallback pairs, so stop cascading early
FALLBACK_CUTOFF = 4

_MAGIC = b"MPHF"
_VERSION = 1


class DuplicateKeyError(ValueError):
    """Construction input contained the same key twice."""

    def __init__(self, key: int):
        self.key = int(key)
        super().__init__(f"duplicate key in input: {self.key:#018x}")


def _level_size(gamma: float, n: int) -> int:
    return max(1, int(np.ceil(gamma * n)))


class Mphf:
    """Minimal perfect hash for a fixed key set; immutable once constructed."""

    def __init__(self, levels, seeds, offsets, fallback_keys, n_keys, gamma, seed):
        self.levels: list[RankBitVector] = levels
        self.seeds: list[int] = seeds
        self.offsets: list[int] = offsets  # dense-index base per level
        self.fallback_keys: np.ndarray = fallback_keys  # sorted uint64
        self.fallback_base: int = offsets[-1] if offsets else 0
        self.n_keys = n_keys
        self.gamma = gamma
        self.seed = seed

    @classmethod
    def construct(cls, keys, gamma: float = 2.0, seed: int = DEFAULT_SEED) -> "Mphf":
        """Build over distinct keys. O(N) expected work, deterministic per seed."""
        if gamma < 1.0:
            raise ValueError(f"gamma must be >= 1.0, got {gamma}")
        keys = np.ascontiguousarray(keys, dtype=np.uint64)
        if keys.ndim != 1:
            raise ValueError("keys must be one-dimensional")
        n = len(keys)
        if n > 1:
            ordered = np.sort(keys)
            dup = np.nonzero(ordered[1:] == ordered[:-1])[0]
            if len(dup):
                raise DuplicateKeyError(int(ordered[dup[0]]))

        levels: list[RankBitVector] = []
        seeds: list[int] = []
        remaining = keys
        for level in range(MAX_LEVELS):
            if remaining.size <= FALLBACK_CUTOFF:
                break
            size = _level_size(gamma, remaining.size)
            level_seed = derive_seed(seed, level)
            pos = (mix64(remaining ^ U64(level_seed)) % U64(size)).astype(np.int64)
            hits = np.bincount(pos, minlength=size)
            alone = hits == 1
            levels.append(RankBitVector.build(alone))
            seeds.append(level_seed)
            remaining = remaining[~alone[pos]]

        offsets = []
        base = 0
        for bv in levels:
            offsets.append(base)
            base += bv.n_ones
        offsets.append(base)

        out = cls(levels, seeds, offsets, np.sort(remaining), n, float(gamma), seed)
        if gamma == 2.0 and n >= 10_000:
            bpk = out.bits_per_key()
            if bpk > 4.0:
                raise RuntimeError(f"size budget exceeded: {bpk:.3f} bits/key at gamma=2")
        return out

    def lookup(self, key: int) -> int:
        """Dense index of ``key``, or NOT_FOUND (-1)."""
        k = int(key) & MASK64
        for bv, level_seed, off in zip(self.levels, self.seeds, self.offsets):
            pos = mix64_int(k ^ level_seed) % bv.n_bits
            if bv.get(pos):
                return off + bv.rank1(pos)
        if len(self.fallback_keys):
            loc = int(np.searchsorted(self.fallback_keys, U64(k)))
            if loc < len(self.fallback_keys) and int(self.fallback_keys[loc]) == k:
                return self.fallback_base + loc
        return NOT_FOUND

    def lookup_array(self, keys: np.ndarray) -> np.ndarray:
        """Vectorized lookup; int64 array of dense indices, -1 where NOT_FOUND."""
        keys = np.ascontiguousarray(keys, dtype=np.uint64)
        out = np.full(len(keys), NOT_FOUND, dtype=np.int64)
        alive = np.arange(len(keys), dtype=np.int64)
        cur = keys
        for bv, level_seed, off in zip(self.levels, self.seeds, self.offsets):
            if alive.size == 0:
                break
            pos = (mix64(cur ^ U64(level_seed)) % U64(bv.n_bits)).astype(np.int64)
            hit = bv.get_array(pos)
            if hit.any():
                out[alive[hit]] = off + bv.rank1_array(pos[hit])
                miss = ~hit
                alive = alive[miss]
                cur = cur[miss]
        if alive.size and len(self.fallback_keys):
            loc = np.searchsorted(self.fallback_keys, cur)
            inside = loc < len(self.fallback_keys)
            safe = np.minimum(loc, len(self.fallback_keys) - 1)
            match = inside & (self.fallback_keys[safe] == cur)
            out[alive[match]] = self.fallback_base + loc[match]
        return out

    def bits_per_key(self) -> float:
        """Serialized size in bits divided by the number of keys."""
        return len(self.serialize()) * 8 / max(self.n_keys, 1)

    def serialize(self) -> bytes:
        head = struct.pack(
            "<4sIQdQI",
            _MAGIC,
            _VERSION,
            self.n_keys,
            self.gamma,
            self.seed,
            len(self.levels),
        )
        parts = [head]
        parts.extend(bv.serialize() for bv in self.levels)
        parts.append(struct.pack("<Q", len(self.fallback_keys)))
        if len(self.fallback_keys):
            idx = np.arange(
                self.fallback_base,
                self.fallback_base + len(self.fallback_keys),
                dtype=np.uint64,
            )
            pairs = np.empty(2 * len(self.fallback_keys), dtype="<u8")
            pairs[0::2] = self.fallback_keys
            pairs[1::2] = idx
            parts.append(pairs.tobytes())
        return b"".join(parts)

    @classmethod
    def deserialize(cls, buf: bytes, offset: int = 0) -> tuple["Mphf", int]:
        magic, version, n_keys, gamma, seed, n_levels = struct.unpack_from(
            "<4sIQdQI", buf, offset
        )
        if magic != _MAGIC:
            raise ValueError("not a serialized perfect-hash structure")
        if version != _VERSION:
            raise ValueError(f"unsupported version {version}")
        offset += struct.calcsize("<4sIQdQI")
        levels = []
        for _ in range(n_levels):
            bv, offset = RankBitVector.deserialize(buf, offset)
            levels.append(bv)
        (n_fallback,) = struct.unpack_from("<Q", buf, offset)
        offset += 8
        pairs = np.frombuffer(buf, dtype="<u8", count=2 * n_fallback, offset=offset)
        offset += 16 * n_fallback
        fallback_keys = pairs[0::2].copy()
        seeds = [derive_seed(seed, level) for level in range(n_levels)]
        offsets = []
        base = 0
        for bv in levels:
            offsets.append(base)
            base += bv.n_ones
        offsets.append(base)
        return cls(levels, seeds, offsets, fallback_keys, n_keys, gamma, seed), offset
