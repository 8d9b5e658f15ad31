"""Streaming FASTA/FASTQ reader assigning dense integer read identifiers.

Format is sniffed from the first byte: '>' for FASTA (multi-line
sequences allowed), '@' for FASTQ (strict 4-line records, qualities
discarded). Records stream in file order with ids 0, 1, 2, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class ParseError(ValueError):
    """Malformed read file; carries the offending line number (1-based)."""

    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {reason}")


@dataclass
class ReadRecord:
    """One read: rank in its file, header word, and nucleotide string."""

    id: int
    header: str
    seq: str


def _header_word(line: str) -> str:
    return line[1:].split(None, 1)[0] if len(line) > 1 else ""


def open_reads(path: str) -> Iterator[ReadRecord]:
    """Stream records from a FASTA or FASTQ file, constant memory per record."""
    with open(path, "r") as fh:
        first = fh.read(1)
        if first == "":
            return
        fh.seek(0)
        if first == ">":
            yield from _read_fasta(path, fh)
        elif first == "@":
            yield from _read_fastq(path, fh)
        else:
            raise ParseError(path, 1, f"unrecognized first byte {first!r}; expected '>' or '@'")


def _read_fasta(path: str, fh) -> Iterator[ReadRecord]:
    rid = 0
    header = None
    header_line = 0
    chunks: list[str] = []
    for lineno, line in enumerate(fh, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if line.startswith(">"):
            if header is not None:
                seq = "".join(chunks)
                if not seq:
                    raise ParseError(path, header_line, "record has empty sequence")
                yield ReadRecord(rid, header, seq)
                rid += 1
            header = _header_word(line)
            header_line = lineno
            chunks = []
        else:
            if header is None:
                raise ParseError(path, lineno, "sequence data before first '>' header")
            if line:
                chunks.append(line)
    if header is not None:
        seq = "".join(chunks)
        if not seq:
            raise ParseError(path, header_line, "record has empty sequence")
        yield ReadRecord(rid, header, seq)


def _read_fastq(path: str, fh) -> Iterator[ReadRecord]:
    rid = 0
    lineno = 0
    while True:
        head = fh.readline()
        if head == "":
            return
        lineno += 1
        head = head.rstrip("\n").rstrip("\r")
        if not head.startswith("@"):
            raise ParseError(path, lineno, "expected '@' header line")
        seq = fh.readline()
        plus = fh.readline()
        qual = fh.readline()
        if qual == "":
            raise ParseError(path, lineno, "truncated record (need 4 lines)")
        seq = seq.rstrip("\n").rstrip("\r")
        plus = plus.rstrip("\n").rstrip("\r")
        qual = qual.rstrip("\n").rstrip("\r")
        if not seq:
            raise ParseError(path, lineno + 1, "record has empty sequence")
        if not plus.startswith("+"):
            raise ParseError(path, lineno + 2, "expected '+' separator line")
        if len(qual) != len(seq):
            raise ParseError(path, lineno + 3, "quality length differs from sequence length")
        yield ReadRecord(rid, _header_word(head), seq)
        rid += 1
        lineno += 3


def open_file_of_files(path: str) -> list[str]:
    """Paths listed one per line; blank lines ignored, order preserved."""
    out = []
    with open(path, "r") as fh:
        for line in fh:
            entry = line.strip()
            if entry:
                out.append(entry)
    return out
