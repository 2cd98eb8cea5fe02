"""Eco-driving trip scoring: window features, parameter scores, Trip Ecoscore."""

from ecodrive.scoring.config import HistogramSpec, ScoringConfig, SigmoidParams
from ecodrive.scoring.features import WindowFeatures, extract_windows
from ecodrive.scoring.score import (
    DEFAULT_RESAMPLE_PERIOD_MS,
    PARAMETER_NAMES,
    TripScore,
    WindowScore,
    aggressiveness_rpm,
    braking_intensity_agg,
    heartbeat_factor,
    score_trip,
    sigmoid,
    trip_ecoscore_value,
    weighted_histogram_score,
    window_aggressiveness,
    window_ecoscore,
)

__all__ = [
    "HistogramSpec",
    "ScoringConfig",
    "SigmoidParams",
    "WindowFeatures",
    "extract_windows",
    "DEFAULT_RESAMPLE_PERIOD_MS",
    "PARAMETER_NAMES",
    "TripScore",
    "WindowScore",
    "aggressiveness_rpm",
    "braking_intensity_agg",
    "heartbeat_factor",
    "score_trip",
    "sigmoid",
    "trip_ecoscore_value",
    "weighted_histogram_score",
    "window_aggressiveness",
    "window_ecoscore",
]
