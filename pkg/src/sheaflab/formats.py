"""CSV readers for per-edge and per-face data.

Numbers are parsed as exact ``Fraction`` values (decimals or ``p/q``); the
constructors convert them to floats when working over the reals.
"""

from __future__ import annotations

import csv
from fractions import Fraction

from .complex import Simplex


def _rows(path):
    with open(path, newline="") as fh:
        for k, row in enumerate(csv.reader(fh)):
            row = [c.strip() for c in row if c.strip()]
            if not row or row[0].startswith("#"):
                continue
            yield k, row


def _numeric_rows(path, width: int):
    for k, row in _rows(path):
        try:
            vals = [Fraction(c) for c in row]
        except ValueError:
            if k == 0:
                continue
            raise ValueError(f"{path}: non-numeric row {k + 1}: {row}") from None
        if len(vals) != width:
            raise ValueError(f"{path}: row {k + 1} should have {width} fields, got {len(vals)}")
        yield k, vals


def _int(x: Fraction, path, k) -> int:
    if x.denominator != 1:
        raise ValueError(f"{path}: row {k + 1}: vertex index {x} is not an integer")
    return int(x)


def read_edge_weights_csv(path) -> dict[Simplex, Fraction]:
    """Rows ``i, j, w``."""
    out = {}
    for k, (i, j, w) in _numeric_rows(path, 3):
        out[tuple(sorted((_int(i, path, k), _int(j, path, k))))] = w
    return out


def read_face_vectors_csv(path) -> dict[Simplex, list[Fraction]]:
    """Rows ``i, j, k, vx, vy, vz``."""
    out = {}
    for k, row in _numeric_rows(path, 6):
        f = tuple(sorted(_int(v, path, k) for v in row[:3]))
        out[f] = list(row[3:])
    return out


def write_edge_weights_csv(path, weights) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        for (i, j) in sorted(weights):
            wr.writerow([i, j, weights[(i, j)]])
