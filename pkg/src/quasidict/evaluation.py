"""Spot-based long-read simulation and recall/precision scoring.

``simulate`` plants non-overlapping spots on a random genome and emits
noisy reads of each spot (random strand; substitutions, insertions and
deletions in equal thirds at a configurable per-base rate). Reads from
the same spot are fully overlapping by construction, so ground truth is
simply every intra-spot read pair and no third-party mapper is needed.

``score`` compares a predicted set of unordered read-id pairs against
the ground truth: recall is the fraction of truth pairs recovered,
precision the fraction of predictions that are real, and the F-measure
their harmonic mean.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

_BASES = "ACGT"
_COMPLEMENT = str.maketrans("ACGT", "TGCA")

ERROR_KINDS = ("sub", "ins", "del")


@dataclass
class SimConfig:
    genome_length: int
    n_spots: int
    read_length: int = 2000
    reads_per_spot: int = 50
    error_rate: float = 0.12
    spot_min_gap: int = 500
    rng_seed: int = 1

    def validate(self) -> None:
        if not 0.0 <= self.error_rate < 0.5:
            raise ValueError(f"error rate must be in [0, 0.5), got {self.error_rate}")
        if self.n_spots < 1 or self.reads_per_spot < 1 or self.read_length < 1:
            raise ValueError("spots, reads per spot and read length must be positive")
        if self.n_spots * (self.read_length + self.spot_min_gap) > self.genome_length:
            raise ValueError(
                f"cannot place {self.n_spots} spots of {self.read_length} bases "
                f"with gaps >= {self.spot_min_gap} on a {self.genome_length}-base genome"
            )


@dataclass
class GroundTruth:
    """Unordered read-id couples drawn from the same spot; stored with a < b."""

    pairs: set = field(default_factory=set)

    def __len__(self) -> int:
        return len(self.pairs)


def normalize_pairs(pairs: Iterable[tuple[int, int]]) -> set:
    """Orient each couple as (min, max); rejects self-pairs."""
    out = set()
    for a, b in pairs:
        if a == b:
            raise ValueError(f"self-pair ({a}, {b}) is not a valid couple")
        out.add((a, b) if a < b else (b, a))
    return out


def _random_genome(rng: np.random.Generator, length: int) -> str:
    lut = np.frombuffer(b"ACGT", dtype=np.uint8)
    return lut[rng.integers(0, 4, size=length)].tobytes().decode("ascii")


def _revcomp_str(seq: str) -> str:
    return seq.translate(_COMPLEMENT)[::-1]


def apply_errors(
    seq: str,
    rate: float,
    rng: np.random.Generator,
    kinds: tuple[str, ...] = ERROR_KINDS,
) -> str:
    """Per-base i.i.d. errors: each base errs with probability ``rate``,
    the error kind drawn uniformly from ``kinds``.

    Substitution replaces the base with one of the three others, insertion
    adds a random base before the current one, deletion drops it.
    """
    if rate <= 0.0:
        return seq
    n = len(seq)
    err = np.nonzero(rng.random(n) < rate)[0]
    if len(err) == 0:
        return seq
    kind = rng.integers(0, len(kinds), size=len(err))
    sub_off = rng.integers(1, 4, size=len(err))  # shift to one of the 3 other bases
    ins_base = rng.integers(0, 4, size=len(err))
    out = []
    prev = 0
    for where, which, off, ins in zip(err, kind, sub_off, ins_base):
        out.append(seq[prev:where])
        action = kinds[which]
        base = seq[where]
        if action == "sub":
            out.append(_BASES[(_BASES.index(base) + off) % 4])
        elif action == "ins":
            out.append(_BASES[ins])
            out.append(base)
        # deletion emits nothing
        prev = where + 1
    out.append(seq[prev:])
    return "".join(out)


def simulate(cfg: SimConfig, reads_path: str, truth_path: str | None = None) -> GroundTruth:
    """Write the simulated FASTA (and optionally the truth file); fully
    deterministic under cfg.rng_seed, spot by spot."""
    cfg.validate()
    rng = np.random.default_rng([cfg.rng_seed, 0])
    genome = _random_genome(rng, cfg.genome_length)

    span = cfg.read_length + cfg.spot_min_gap
    slack = cfg.genome_length - cfg.n_spots * cfg.read_length - (cfg.n_spots - 1) * cfg.spot_min_gap
    jitter = np.sort(rng.integers(0, slack + 1, size=cfg.n_spots))
    spot_starts = [int(jitter[s]) + s * span for s in range(cfg.n_spots)]

    truth = GroundTruth()
    with open(reads_path, "w") as fa:
        for s, start in enumerate(spot_starts):
            template = genome[start : start + cfg.read_length]
            spot_rng = np.random.default_rng([cfg.rng_seed, 1, s])
            ids = []
            for j in range(cfg.reads_per_spot):
                rid = s * cfg.reads_per_spot + j
                ids.append(rid)
                source = template if spot_rng.random() < 0.5 else _revcomp_str(template)
                seq = apply_errors(source, cfg.error_rate, spot_rng)
                fa.write(f">sim_{s}_{j} spot={s} start={start}\n{seq}\n")
            truth.pairs.update(combinations(ids, 2))
    if truth_path is not None:
        write_truth(truth, truth_path)
    return truth


def write_truth(truth: GroundTruth, path: str) -> None:
    with open(path, "w") as fh:
        for a, b in sorted(truth.pairs):
            fh.write(f"{a}\t{b}\n")


def load_truth(path: str) -> GroundTruth:
    pairs = set()
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                a, b = line.split("\t")
                pairs.add((int(a), int(b)))
    return GroundTruth(normalize_pairs(pairs))


def pairs_from_linker_output(path: str) -> set:
    """Adapter: linker text output -> deduplicated unordered id pairs
    (scores and window starts dropped)."""
    pairs = set()
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            qid_text, _, rest = line.partition(":")
            qid = int(qid_text)
            for item in rest.split():
                tid = int(item.split("-", 1)[0])
                if tid != qid:
                    pairs.add((qid, tid) if qid < tid else (tid, qid))
    return pairs


def score(predicted: Iterable[tuple[int, int]], truth: GroundTruth) -> tuple[float, float, float]:
    """(recall, precision, F-measure) of predicted couples against truth.

    An empty prediction set scores precision 1.0 (vacuous) and recall 0.0;
    an empty truth set is a configuration error.
    """
    truth_pairs = truth.pairs if isinstance(truth, GroundTruth) else set(truth)
    if not truth_pairs:
        raise ValueError("ground truth is empty; nothing to score against")
    pred = normalize_pairs(predicted)
    correct = len(pred & truth_pairs)
    recall = correct / len(truth_pairs)
    precision = correct / len(pred) if pred else 1.0
    f_measure = 0.0 if recall + precision == 0 else 2 * precision * recall / (precision + recall)
    return recall, precision, f_measure
