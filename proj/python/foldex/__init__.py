"""Fold detection on membrane polylines."""

from ._core import (
    Fold,
    FoldexError,
    FoldReport,
    Interval,
    IntervalKind,
    Polyline,
    SampledSignal,
    __version__,
    default_sample_count,
    detect_folds,
    estimate_delta,
    generate_bulge,
    generate_comb,
    maximal_subsets,
    minimal_subsets,
    orientation_samples,
    self_intersections,
    smooth_lowpass,
    smoothing_factor_for_wavelength,
)

__all__ = [
    "Fold",
    "FoldexError",
    "FoldReport",
    "Interval",
    "IntervalKind",
    "Polyline",
    "SampledSignal",
    "__version__",
    "default_sample_count",
    "detect_folds",
    "estimate_delta",
    "generate_bulge",
    "generate_comb",
    "maximal_subsets",
    "minimal_subsets",
    "orientation_samples",
    "self_intersections",
    "smooth_lowpass",
    "smoothing_factor_for_wavelength",
]
