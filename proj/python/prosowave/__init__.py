"""Unsupervised prosodic prominence and boundary annotation.

Continuous wavelet analysis of composite prosodic signals (f0, energy,
duration), lines of maximum/minimum amplitude across scales, and per-word
continuous and binary prominence/boundary values.
"""

from ._core import (
    ExtremumPoint,
    LomaLine,
    Scalogram,
    ScaleGrid,
    WordProsody,
    annotate,
    binarize_kmeans,
    binarize_threshold,
    combine,
    cwt,
    duration_derivative,
    duration_signal,
    fill_f0,
    fill_gain,
    fit_c,
    generate_corpus,
    maxima_lines,
    metrics,
    mexican_hat,
    mexican_hat_center_frequency,
    minima_lines,
    normalize,
    raw_baseline,
    reconstruct,
    word_scale,
    __version__,
)

__all__ = [
    "ExtremumPoint",
    "LomaLine",
    "Scalogram",
    "ScaleGrid",
    "WordProsody",
    "annotate",
    "binarize_kmeans",
    "binarize_threshold",
    "combine",
    "cwt",
    "duration_derivative",
    "duration_signal",
    "fill_f0",
    "fill_gain",
    "fit_c",
    "generate_corpus",
    "maxima_lines",
    "metrics",
    "mexican_hat",
    "mexican_hat_center_frequency",
    "minima_lines",
    "normalize",
    "raw_baseline",
    "reconstruct",
    "word_scale",
    "__version__",
]
