"""Window and trip scoring.

Eco-score combines five window parameters (shift-up, braking, acceleration,
RPM, cruising); aggressiveness combines RPM variance, braking intensity,
lateral acceleration and throttle variance. Elevated mean heart rate
amplifies the penalties of both. The Trip Ecoscore is the weighted
combination of the trip means, mapped to an integer in [0, 100].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from ecodrive import kernels
from ecodrive.errors import BadBinSpec, TripTooShort
from ecodrive.model import TripRecord, resample_uniform
from ecodrive.scoring.config import ScoringConfig, SigmoidParams
from ecodrive.scoring.features import WindowFeatures, extract_windows

DEFAULT_RESAMPLE_PERIOD_MS = 1000

PARAMETER_NAMES = ("shift_up", "braking", "acceleration", "rpm", "cruising")


def sigmoid(x: float, p: SigmoidParams) -> float:
    """Decreasing sigmoid a2 + a1 / (a4 + e^(a3 (x - x0)))."""
    return kernels.sigmoid(x, p.a1, p.a2, p.a3, p.a4, p.x0)


def weighted_histogram_score(
    intensities: Iterable[float],
    edges: Sequence[float],
    weights: Sequence[float],
) -> float:
    """Mean bin weight of the event intensities; 0.0 for no events."""
    edges = list(edges)
    weights = list(weights)
    if len(weights) != len(edges) + 1:
        raise BadBinSpec(f"need len(edges)+1 weights, got {len(weights)}")
    for a, b in zip(edges, edges[1:]):
        if b <= a:
            raise BadBinSpec("edges must be strictly increasing")
    return kernels.histogram_mean_weight(list(intensities), edges, weights)


def clamp01(value: float) -> float:
    return 0.0 if value < 0.0 else 1.0 if value > 1.0 else value


def aggressiveness_rpm(f: WindowFeatures, cfg: ScoringConfig) -> float:
    """RPM-fluctuation aggressiveness: variance over mu, clamped to [0, 1]."""
    return clamp01(f.rpm_variance / cfg.mu)


def braking_intensity_agg(f: WindowFeatures) -> float:
    """Share of abrupt events among all braking events; 0 when there were none."""
    total = f.abrupt_brakes + f.smooth_brakes
    if total == 0:
        return 0.0
    return f.abrupt_brakes / total


def heartbeat_factor(hr_mean_bpm: float, cfg: ScoringConfig) -> float:
    """Normalized elevation of mean heart rate above rest, in [0, 1].

    0 when there is no wearable reading (hr_mean == 0), so scores are
    identical with and without a resting-rate wearable.
    """
    if hr_mean_bpm <= 0.0:
        return 0.0
    return clamp01((hr_mean_bpm - cfg.hr_rest_bpm) / (cfg.hr_max_bpm - cfg.hr_rest_bpm))


def window_aggressiveness(f: WindowFeatures, cfg: ScoringConfig) -> float:
    """Mean of the four penalty terms, amplified by the heartbeat factor."""
    lateral_term = 1.0 - sigmoid(f.lateral_accel_p95_mps2, cfg.sigmoid_lateral)
    throttle_term = clamp01(f.throttle_variance / cfg.mu_throttle)
    raw = (aggressiveness_rpm(f, cfg) + braking_intensity_agg(f)
           + lateral_term + throttle_term) / 4.0
    h = heartbeat_factor(f.hr_mean_bpm, cfg)
    return clamp01(raw * (1.0 + h))


def window_ecoscore(
    f: WindowFeatures, cfg: ScoringConfig
) -> tuple[dict[str, float], float]:
    """The five parameter scores plus the combined, heartbeat-adjusted eco score."""
    params = {
        "shift_up": sigmoid(f.high_rpm_unshifted_s, cfg.sigmoid_shift_up),
        "braking": 1.0 - weighted_histogram_score(
            f.brake_peak_decels_mps2, cfg.hist_braking.edges, cfg.hist_braking.weights),
        "acceleration": sigmoid(f.accel_p95_mps2, cfg.sigmoid_acceleration),
        "rpm": sigmoid(f.rpm_mean, cfg.sigmoid_rpm),
        "cruising": (sigmoid(f.speed_variance, cfg.sigmoid_cruising)
                     if f.cruising else 0.5),
    }
    weights = cfg.combo_weights()
    eco_raw = sum(w * params[name] for w, name in zip(weights, PARAMETER_NAMES))
    h = heartbeat_factor(f.hr_mean_bpm, cfg)
    eco = 1.0 - clamp01((1.0 - eco_raw) * (1.0 + h))
    return params, eco


@dataclass(frozen=True, slots=True)
class WindowScore:
    window_index: int
    parameters: dict[str, float]   # the five eco-score parameters, each in [0, 1]
    eco: float
    aggressiveness: float
    features: WindowFeatures


@dataclass(frozen=True, slots=True)
class TripScore:
    trip_id: str
    driver_id: str
    windows: tuple[WindowScore, ...]
    eco_mean: float
    agg_mean: float
    trip_ecoscore: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "trip_id": self.trip_id,
            "driver_id": self.driver_id,
            "trip_ecoscore": self.trip_ecoscore,
            "eco_mean": self.eco_mean,
            "agg_mean": self.agg_mean,
            "windows": [
                {
                    "window_index": w.window_index,
                    "scores": dict(w.parameters),
                    "eco": w.eco,
                    "aggressiveness": w.aggressiveness,
                    "features": _features_dict(w.features),
                }
                for w in self.windows
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TripScore":
        windows = tuple(
            WindowScore(
                window_index=w["window_index"],
                parameters=dict(w["scores"]),
                eco=w["eco"],
                aggressiveness=w["aggressiveness"],
                features=_features_from_dict(w["window_index"], w["features"]),
            )
            for w in data["windows"]
        )
        return cls(
            trip_id=data["trip_id"],
            driver_id=data["driver_id"],
            windows=windows,
            eco_mean=data["eco_mean"],
            agg_mean=data["agg_mean"],
            trip_ecoscore=data["trip_ecoscore"],
        )


def _features_dict(f: WindowFeatures) -> dict[str, Any]:
    return {
        "duration_s": f.duration_s,
        "sample_count": f.sample_count,
        "speed_mean_kmh": f.speed_mean_kmh,
        "speed_variance": f.speed_variance,
        "rpm_mean": f.rpm_mean,
        "rpm_variance": f.rpm_variance,
        "throttle_variance": f.throttle_variance,
        "accel_p95_mps2": f.accel_p95_mps2,
        "lateral_accel_p95_mps2": f.lateral_accel_p95_mps2,
        "abrupt_brakes": f.abrupt_brakes,
        "smooth_brakes": f.smooth_brakes,
        "brake_peak_decels_mps2": list(f.brake_peak_decels_mps2),
        "brake_durations_s": list(f.brake_durations_s),
        "shift_up_events": f.shift_up_events,
        "high_rpm_unshifted_s": f.high_rpm_unshifted_s,
        "event_rate_per_min": f.event_rate_per_min,
        "hr_mean_bpm": f.hr_mean_bpm,
        "cruising": f.cruising,
    }


def _features_from_dict(index: int, d: dict[str, Any]) -> WindowFeatures:
    return WindowFeatures(
        window_index=index,
        duration_s=d["duration_s"],
        sample_count=d["sample_count"],
        speed_mean_kmh=d["speed_mean_kmh"],
        speed_variance=d["speed_variance"],
        rpm_mean=d["rpm_mean"],
        rpm_variance=d["rpm_variance"],
        throttle_variance=d["throttle_variance"],
        accel_p95_mps2=d["accel_p95_mps2"],
        lateral_accel_p95_mps2=d["lateral_accel_p95_mps2"],
        abrupt_brakes=d["abrupt_brakes"],
        smooth_brakes=d["smooth_brakes"],
        brake_peak_decels_mps2=tuple(d["brake_peak_decels_mps2"]),
        brake_durations_s=tuple(d["brake_durations_s"]),
        shift_up_events=d["shift_up_events"],
        high_rpm_unshifted_s=d["high_rpm_unshifted_s"],
        event_rate_per_min=d["event_rate_per_min"],
        hr_mean_bpm=d["hr_mean_bpm"],
        cruising=d["cruising"],
    )


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def trip_ecoscore_value(eco_mean: float, agg_mean: float, cfg: ScoringConfig) -> int:
    """clamp(round(100 * (w_e*eco_mean - w_a*agg_mean)), 0, 100), half-up rounding."""
    raw = 100.0 * (cfg.weight_eco * eco_mean - cfg.weight_agg * agg_mean)
    return min(max(_round_half_up(raw), 0), 100)


def score_windows(features: Sequence[WindowFeatures], cfg: ScoringConfig) -> list[WindowScore]:
    scored: list[WindowScore] = []
    for f in features:
        params, eco = window_ecoscore(f, cfg)
        agg = window_aggressiveness(f, cfg)
        scored.append(WindowScore(f.window_index, params, eco, agg, f))
    return scored


def score_trip(
    trip: TripRecord,
    cfg: ScoringConfig | None = None,
    resample_period_ms: int = DEFAULT_RESAMPLE_PERIOD_MS,
) -> TripScore:
    """Resample, window, and score a trip. Pure: same inputs, same TripScore."""
    if cfg is None:
        cfg = ScoringConfig()
    if len(trip.samples) < 2:
        raise TripTooShort("need at least 2 samples")
    uniform = resample_uniform(trip, resample_period_ms)
    features = extract_windows(uniform, cfg)
    windows = score_windows(features, cfg)
    eco_mean = sum(w.eco for w in windows) / len(windows)
    agg_mean = sum(w.aggressiveness for w in windows) / len(windows)
    return TripScore(
        trip_id=trip.trip_id,
        driver_id=trip.driver_id,
        windows=tuple(windows),
        eco_mean=eco_mean,
        agg_mean=agg_mean,
        trip_ecoscore=trip_ecoscore_value(eco_mean, agg_mean, cfg),
    )
