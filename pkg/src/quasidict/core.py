"""The quasi-dictionary: perfect hash + packed f-bit fingerprints + values.

``create`` builds a minimal perfect hash over the N keys and stores an
f-bit fingerprint of each key at its dense slot. ``query`` recomputes the
fingerprint and compares: indexed keys always come back with their index,
foreign keys slip through only when the perfect hash hands them a slot AND
the stored fingerprint collides, so the false-positive probability is
about 2**-f. There are no false negatives.

When f equals twice the k-mer length the "fingerprint" is the raw 2k-bit
key code itself, which is injective over k-mer codes: the structure is
then exact (zero false positives) while still far smaller than a hash
table. The fingerprint array packs entries contiguously, N*f bits total,
entries straddling word boundaries where they must.
"""

from __future__ import annotations

import struct

import numpy as np

from .bits import (
    DEFAULT_SEED,
    MASK64,
    MIX_MULT_1,
    MIX_MULT_2,
    U64,
    mix64,
    mix64_int,
)
from .mphf import NOT_FOUND, Mphf

_MAGIC = b"QDIC"
_VERSION = 1

# domain tag separating the fingerprint hash from every level hash
_FINGERPRINT_TAG = 0x27D4EB2F165667C5

_PACK_CHUNK = 1 << 19  # entries per packing chunk; 2**19 * f bits is word-aligned


def _check_f(f: int) -> None:
    if not 1 <= f <= 64:
        raise ValueError(f"fingerprint width must be in [1, 64], got {f}")


def _fp_mask(f: int) -> int:
    return MASK64 if f == 64 else (1 << f) - 1


def _fp_seed(seed: int) -> int:
    return mix64_int(seed ^ _FINGERPRINT_TAG)


def fingerprint(key: int, f: int, k: int = 31, seed: int = DEFAULT_SEED) -> int:
    """f-bit fingerprint of a key.

    Mixed through a xor-shift-multiply avalanche and masked to f bits;
    except at f == 2k, where the raw key code is returned so that distinct
    k-mers can never share a fingerprint.
    """
    _check_f(f)
    key = int(key) & MASK64
    if f == 2 * k:
        return key & _fp_mask(f)
    return mix64_int(key ^ _fp_seed(seed)) & _fp_mask(f)


def fingerprint_array(keys: np.ndarray, f: int, k: int = 31, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Vectorized :func:`fingerprint` over a uint64 key array."""
    _check_f(f)
    keys = np.ascontiguousarray(keys, dtype=np.uint64)
    if f == 2 * k:
        return keys & U64(_fp_mask(f))
    return mix64(keys ^ U64(_fp_seed(seed))) & U64(_fp_mask(f))


def _pack_entries(values: np.ndarray, f: int) -> np.ndarray:
    """Pack f-bit entries contiguously into uint64 words (N*f bits total)."""
    n = len(values)
    n_words = (n * f + 63) // 64
    if n == 0:
        return np.zeros(0, dtype=np.uint64)
    shifts = np.arange(f, dtype=np.uint64)
    packed = []
    for s in range(0, n, _PACK_CHUNK):
        chunk = values[s : s + _PACK_CHUNK]
        bits = ((chunk[:, None] >> shifts) & U64(1)).astype(np.uint8)
        packed.append(np.packbits(bits.ravel(), bitorder="little"))
    raw = np.concatenate(packed)
    out = np.zeros(n_words * 8, dtype=np.uint8)
    out[: len(raw)] = raw
    return np.frombuffer(out.tobytes(), dtype="<u8").copy()


class QuasiDictionary:
    """Membership-checked index over a static key set; immutable after create."""

    def __init__(self, mphf: Mphf, fg_words: np.ndarray, n_keys: int, f: int, k: int, seed: int):
        self.mphf = mphf
        self.n_keys = n_keys
        self.f = f
        self.k = k
        self.seed = seed
        self.fg_words = np.ascontiguousarray(fg_words, dtype=np.uint64)
        # one zero guard word so straddling reads never index out of range
        self._fg_padded = np.concatenate([self.fg_words, np.zeros(1, np.uint64)])

    @classmethod
    def create(
        cls,
        keys,
        f: int = 12,
        gamma: float = 2.0,
        k: int = 31,
        seed: int = DEFAULT_SEED,
    ) -> "QuasiDictionary":
        """Index a set of distinct key codes; the set must be fully known up front."""
        _check_f(f)
        keys = np.ascontiguousarray(keys, dtype=np.uint64)
        mphf = Mphf.construct(keys, gamma=gamma, seed=seed)
        slots = mphf.lookup_array(keys)
        by_slot = np.empty(len(keys), dtype=np.uint64)
        by_slot[slots] = fingerprint_array(keys, f, k, seed)
        return cls(mphf, _pack_entries(by_slot, f), len(keys), f, k, seed)

    def _stored_fingerprints(self, idx: np.ndarray) -> np.ndarray:
        bitpos = idx.astype(np.uint64) * U64(self.f)
        wi = (bitpos >> U64(6)).astype(np.int64)
        off = bitpos & U64(63)
        lo = self._fg_padded[wi] >> off
        hi = (self._fg_padded[wi + 1] << U64(1)) << (U64(63) - off)
        return (lo | hi) & U64(_fp_mask(self.f))

    def query(self, key: int) -> int:
        """Dense index for an indexed key; -1 for (most) everything else."""
        idx = self.mphf.lookup(key)
        if idx == NOT_FOUND:
            return NOT_FOUND
        stored = int(self._stored_fingerprints(np.array([idx], dtype=np.int64))[0])
        if stored == fingerprint(key, self.f, self.k, self.seed):
            return idx
        return NOT_FOUND

    def query_array(self, keys: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`query`; int64 indices with -1 where rejected."""
        keys = np.ascontiguousarray(keys, dtype=np.uint64)
        idx = self.mphf.lookup_array(keys)
        found = idx >= 0
        if found.any():
            cand = idx[found]
            stored = self._stored_fingerprints(cand)
            expected = fingerprint_array(keys[found], self.f, self.k, self.seed)
            cand[stored != expected] = NOT_FOUND
            idx[found] = cand
        return idx

    def fingerprint_bits(self) -> int:
        """Exact payload of the fingerprint array: N*f bits."""
        return self.n_keys * self.f

    def bits_per_key(self) -> float:
        """Serialized structure size in bits divided by N."""
        return len(self.serialize()) * 8 / max(self.n_keys, 1)

    def serialize(self) -> bytes:
        mphf_blob = self.mphf.serialize()
        head = struct.pack(
            "<4sIQIIQQQQ",
            _MAGIC,
            _VERSION,
            self.n_keys,
            self.f,
            self.k,
            MIX_MULT_1,
            MIX_MULT_2,
            self.seed,
            len(mphf_blob),
        )
        return head + mphf_blob + self.fg_words.astype("<u8").tobytes()

    def save(self, path: str) -> None:
        """Write the index file (header + perfect hash + fingerprint words)."""
        with open(path, "wb") as fh:
            fh.write(self.serialize())

    @classmethod
    def load(cls, path: str) -> "QuasiDictionary":
        with open(path, "rb") as fh:
            return cls.deserialize(fh.read())

    @classmethod
    def deserialize(cls, buf: bytes) -> "QuasiDictionary":
        fmt = "<4sIQIIQQQQ"
        magic, version, n_keys, f, k, m1, m2, seed, mphf_len = struct.unpack_from(fmt, buf, 0)
        if magic != _MAGIC:
            raise ValueError("not a quasi-dictionary index file")
        if version != _VERSION:
            raise ValueError(f"unsupported index version {version}")
        if (m1, m2) != (MIX_MULT_1, MIX_MULT_2):
            raise ValueError("index built with different mixer constants")
        offset = struct.calcsize(fmt)
        mphf, offset = Mphf.deserialize(buf, offset)
        n_words = (n_keys * f + 63) // 64
        fg = np.frombuffer(buf, dtype="<u8", count=n_words, offset=offset)
        return cls(mphf, fg, n_keys, f, k, seed)


class ValueStore:
    """N fixed-width value slots addressed by dense index."""

    def __init__(self, n: int, dtype=np.uint8):
        self.slots = np.zeros(n, dtype=dtype)

    def __len__(self) -> int:
        return len(self.slots)

    def _check(self, index: int) -> None:
        if not 0 <= index < len(self.slots):
            raise IndexError(f"slot {index} out of range [0, {len(self.slots)})")

    def get(self, index: int):
        self._check(index)
        return self.slots[index].item()

    def set(self, index: int, value) -> None:
        self._check(index)
        self.slots[index] = value
