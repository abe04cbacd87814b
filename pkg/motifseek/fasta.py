"""FASTA and TSV input/output."""

import os
from dataclasses import dataclass

import numpy as np
from Bio import SeqIO
from Bio.Seq import Seq
from Bio.SeqIO import FastaIO
from Bio.SeqRecord import SeqRecord

from motifseek.errors import FastaParseError
from motifseek.genmodel import DNA, Alphabet, PlantedSequence
from motifseek.results import RecoveryResult

LINE_WIDTH = 70
TRUTH_HEADER = ("seq_id", "lb", "rb", "mutated_positions")
BOUNDARY_HEADER = ("seq_id", "left", "right")


@dataclass
class FastaRecord:
    id: str
    seq: np.ndarray


def _check_leading_header(handle, path: str) -> None:
    for lineno, raw in enumerate(handle, 1):
        line = raw.strip()
        if not line:
            continue
        if not line.startswith(">"):
            raise FastaParseError("sequence data before the first header", path, lineno)
        return


def read_fasta(path: str, alphabet: Alphabet = DNA) -> list[FastaRecord]:
    """Parse a FASTA file; any line wrapping is accepted, case is ignored."""
    records: list[FastaRecord] = []
    with open(path) as handle:
        _check_leading_header(handle, path)
        handle.seek(0)
        try:
            parsed = list(SeqIO.parse(handle, "fasta"))
        except ValueError as e:
            raise FastaParseError(str(e), path) from e
    for entry in parsed:
        if not entry.id:
            raise FastaParseError("header without an identifier", path)
        text = "".join(str(entry.seq).split())
        if not text:
            raise FastaParseError("record has no sequence", path, record_id=entry.id)
        bad = alphabet.first_invalid(text)
        if bad is not None:
            raise FastaParseError(
                f"symbol {text[bad]!r} not in alphabet '{alphabet.symbols}'",
                path,
                record_id=entry.id,
                offset=bad + 1,
            )
        records.append(FastaRecord(entry.id, alphabet.encode(text)))
    if not records:
        raise FastaParseError("no records found", path)
    return records


def write_fasta(
    records: list[FastaRecord],
    path: str,
    alphabet: Alphabet = DNA,
    width: int = LINE_WIDTH,
) -> None:
    entries = [
        SeqRecord(Seq(alphabet.decode(r.seq)), id=r.id, description="") for r in records
    ]
    with open(path, "w") as handle:
        FastaIO.FastaWriter(handle, wrap=width).write_file(entries)


def write_truth(planted: list[PlantedSequence], ids: list[str], path: str) -> None:
    """Ground-truth TSV: 1-based inclusive boundaries and mutated positions."""
    with open(path, "w") as f:
        f.write("\t".join(TRUTH_HEADER) + "\n")
        for seq_id, p in zip(ids, planted):
            mutated = ",".join(str(i) for i in sorted(p.mutated))
            f.write(f"{seq_id}\t{p.lb}\t{p.rb}\t{mutated}\n")


def read_truth(path: str) -> dict[str, tuple[int, int, frozenset[int]]]:
    truth = {}
    with open(path) as f:
        header = f.readline().rstrip("\n").split("\t")
        if tuple(header) != TRUTH_HEADER:
            raise FastaParseError("unexpected ground-truth header", path, 1)
        for lineno, line in enumerate(f, 2):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 4:
                raise FastaParseError("expected four columns", path, lineno)
            mutated = frozenset(int(x) for x in parts[3].split(",") if x)
            truth[parts[0]] = (int(parts[1]), int(parts[2]), mutated)
    return truth


def write_outputs(
    result: RecoveryResult,
    z2_ids: list[str],
    out_dir: str,
    alphabet: Alphabet = DNA,
) -> tuple[str, str]:
    """consensus.fasta plus boundaries.tsv (one row per Z2 sequence)."""
    os.makedirs(out_dir, exist_ok=True)
    consensus_path = os.path.join(out_dir, "consensus.fasta")
    boundaries_path = os.path.join(out_dir, "boundaries.tsv")
    write_fasta([FastaRecord("consensus", result.consensus)], consensus_path, alphabet)
    with open(boundaries_path, "w") as f:
        f.write("\t".join(BOUNDARY_HEADER) + "\n")
        regions = result.regions or [None] * len(z2_ids)
        for seq_id, region in zip(z2_ids, regions):
            if region is None:
                f.write(f"{seq_id}\tEMPTY\n")
            else:
                f.write(f"{seq_id}\t{region[0]}\t{region[1]}\n")
    return consensus_path, boundaries_path
