"""Sequence CSV format: one row per element.

The first line is a format marker, ``# format=iq`` or ``# format=phase``.
An ``iq`` file then carries two columns ``re,im`` (doubles); a ``phase``
file carries a single column ``phase`` (radians, unit modulus implied).
A column-name row after the marker is accepted and skipped.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .afcore import Sequence

__all__ = ["read_sequence_csv", "write_sequence_csv"]

_FORMATS = ("iq", "phase")


def write_sequence_csv(path, seq: Sequence, fmt: str = "iq") -> None:
    if fmt not in _FORMATS:
        raise ValueError(f"fmt must be one of {_FORMATS}")
    with Path(path).open("w", newline="") as fh:
        fh.write(f"# format={fmt}\n")
        writer = csv.writer(fh)
        if fmt == "iq":
            writer.writerow(["re", "im"])
            for z in seq.entries:
                writer.writerow([repr(float(z.real)), repr(float(z.imag))])
        else:
            writer.writerow(["phase"])
            for z in seq.entries:
                writer.writerow([repr(float(np.angle(z)))])


def read_sequence_csv(path) -> Sequence:
    with Path(path).open(newline="") as fh:
        header = fh.readline().strip()
        if not header.startswith("# format="):
            raise ValueError(f"{path}: missing '# format=iq|phase' header line")
        fmt = header.split("=", 1)[1].strip()
        if fmt not in _FORMATS:
            raise ValueError(f"{path}: unknown format {fmt!r}")
        rows = [r for r in csv.reader(fh) if r]
    if rows and not _is_numeric_row(rows[0]):
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    if fmt == "iq":
        if any(len(r) != 2 for r in rows):
            raise ValueError(f"{path}: iq rows must have exactly two columns re,im")
        data = np.array([[float(r[0]), float(r[1])] for r in rows])
        return Sequence(data[:, 0] + 1j * data[:, 1])
    if any(len(r) != 1 for r in rows):
        raise ValueError(f"{path}: phase rows must have a single column")
    return Sequence.from_phases([float(r[0]) for r in rows])


def _is_numeric_row(row) -> bool:
    try:
        for cell in row:
            float(cell)
    except ValueError:
        return False
    return True
