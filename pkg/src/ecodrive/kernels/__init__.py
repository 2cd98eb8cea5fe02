"""Numeric kernels with a compiled core and a pure-Python fallback.

The compiled extension (ecodrive.kernels._core, built from _core.pyx) is
preferred when importable; otherwise the pure implementations take over with
identical semantics. Set ECODRIVE_PURE_KERNELS=1 to force the fallback, e.g.
for benchmarking or debugging.
"""

import os

from ecodrive.kernels import _pure

if os.environ.get("ECODRIVE_PURE_KERNELS"):
    _impl = _pure
else:
    try:
        from ecodrive.kernels import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

IMPLEMENTATION: str = _impl.IMPLEMENTATION

sigmoid = _impl.sigmoid
population_variance = _impl.population_variance
percentile = _impl.percentile
histogram_mean_weight = _impl.histogram_mean_weight
braking_event_peaks = _impl.braking_event_peaks
event_runs_at_or_above = _impl.event_runs_at_or_above
shift_up_indices = _impl.shift_up_indices
high_rpm_unshifted_seconds = _impl.high_rpm_unshifted_seconds
lateral_accels = _impl.lateral_accels

__all__ = [
    "IMPLEMENTATION",
    "sigmoid",
    "population_variance",
    "percentile",
    "histogram_mean_weight",
    "braking_event_peaks",
    "event_runs_at_or_above",
    "shift_up_indices",
    "high_rpm_unshifted_seconds",
    "lateral_accels",
]
