"""Plain-text image exports for similarity matrices and alignments.

PGM (P2) keeps the outputs deterministic and diffable; anything fancier is
left to external plotting tools fed from the CSV exports.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

# grayscale legend for alignment strips
_TRUE_POSITIVE = 255
_FALSE_POSITIVE = 170
_FALSE_NEGATIVE = 85
_TRUE_NEGATIVE = 0


def write_pgm(values: np.ndarray, path: str | Path, maxval: int = 255) -> None:
    """Write a matrix scaled to [0, maxval] as an ASCII PGM image."""
    values = np.asarray(values, dtype=float)
    low, high = values.min(), values.max()
    if high > low:
        scaled = (values - low) / (high - low) * maxval
    else:
        scaled = np.zeros_like(values)
    pixels = np.rint(scaled).astype(int)
    _write_p2(pixels, path, maxval)


def write_alignment_pgm(M: np.ndarray, gold: np.ndarray, path: str | Path) -> None:
    """Visualise TP (white), FP, FN, and TN (black) cells of an alignment."""
    M = np.asarray(M)
    G = np.asarray(gold)
    if M.shape != G.shape:
        raise ValueError("alignment and gold shapes differ")
    pixels = np.full(M.shape, _TRUE_NEGATIVE, dtype=int)
    pixels[(M == 1) & (G == 1)] = _TRUE_POSITIVE
    pixels[(M == 1) & (G == 0)] = _FALSE_POSITIVE
    pixels[(M == 0) & (G == 1)] = _FALSE_NEGATIVE
    _write_p2(pixels, path, 255)


def _write_p2(pixels: np.ndarray, path: str | Path, maxval: int) -> None:
    lines = ["P2", f"{pixels.shape[1]} {pixels.shape[0]}", str(maxval)]
    for row in pixels:
        lines.append(" ".join(str(int(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
