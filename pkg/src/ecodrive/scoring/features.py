"""Per-window feature extraction over a uniformly resampled trip.

The trip is cut into consecutive non-overlapping windows of window_s seconds;
the final partial window is kept only if it covers at least half a window.
All numeric inner loops run in ecodrive.kernels (compiled when available).
"""

from __future__ import annotations

from dataclasses import dataclass

from ecodrive import kernels
from ecodrive.errors import NotUniformlySampled, TripTooShort
from ecodrive.model import TripRecord
from ecodrive.scoring.config import ScoringConfig

KMH_TO_MPS = 1.0 / 3.6

# shift-up detection: the RPM drop must complete within this many seconds
SHIFT_DROP_WINDOW_S = 1.0
# a high-RPM step is excused if a shift-up completes within this lookahead
HIGH_RPM_LOOKAHEAD_S = 3.0
# cruising: sustained speed above this with a std-dev at or below the cap
CRUISING_MIN_SPEED_KMH = 30.0
CRUISING_MAX_STD_KMH = 3.0


@dataclass(frozen=True, slots=True)
class WindowFeatures:
    """Derived statistics of one scoring window."""

    window_index: int
    duration_s: float
    sample_count: int
    speed_mean_kmh: float
    speed_variance: float          # (km/h)^2, population
    rpm_mean: float
    rpm_variance: float            # RPM^2, population
    throttle_variance: float       # %^2, population
    accel_p95_mps2: float          # 95th percentile of positive step accelerations
    lateral_accel_p95_mps2: float
    abrupt_brakes: int             # B_a
    smooth_brakes: int             # B_s
    brake_peak_decels_mps2: tuple[float, ...]
    brake_durations_s: tuple[float, ...]
    shift_up_events: int
    high_rpm_unshifted_s: float
    event_rate_per_min: float      # braking + acceleration events per minute
    hr_mean_bpm: float             # mean of nonzero readings; 0 = no wearable
    cruising: bool


def _mean(values: list[float]) -> float:
    return sum(values) / len(values) if values else 0.0


def _window_features(
    index: int,
    duration_s: float,
    dt_s: float,
    speed_kmh: list[float],
    rpm: list[float],
    throttle: list[float],
    brake: list[int],
    lat: list[float],
    lon: list[float],
    hr: list[float],
    cfg: ScoringConfig,
) -> WindowFeatures:
    n = len(speed_kmh)
    speed_mps = [v * KMH_TO_MPS for v in speed_kmh]
    accels = [(speed_mps[i + 1] - speed_mps[i]) / dt_s for i in range(n - 1)]

    speed_mean = _mean(speed_kmh)
    speed_var = kernels.population_variance(speed_kmh)
    rpm_mean = _mean(rpm)
    rpm_var = kernels.population_variance(rpm)
    throttle_var = kernels.population_variance(throttle)

    positive_accels = [a for a in accels if a > 0.0]
    accel_p95 = kernels.percentile(positive_accels, 95.0)
    lateral = kernels.lateral_accels(lat, lon, speed_mps, dt_s)
    lateral_p95 = kernels.percentile(lateral, 95.0)

    peaks, durations = kernels.braking_event_peaks(speed_mps, brake, dt_s)
    abrupt = sum(1 for p in peaks if p >= cfg.abrupt_brake_decel_mps2)
    smooth = len(peaks) - abrupt

    horizon = max(1, round(SHIFT_DROP_WINDOW_S / dt_s))
    shifts = kernels.shift_up_indices(rpm, speed_mps, dt_s, cfg.shift_rpm_drop, horizon)
    lookahead = max(1, round(HIGH_RPM_LOOKAHEAD_S / dt_s))
    high_rpm_s = kernels.high_rpm_unshifted_seconds(
        rpm, speed_mps, dt_s, cfg.sigmoid_rpm.x0, shifts, lookahead)

    accel_events = kernels.event_runs_at_or_above(accels, cfg.accel_event_mps2)
    events = len(peaks) + accel_events
    event_rate = events * 60.0 / duration_s if duration_s > 0 else 0.0

    hr_present = [v for v in hr if v > 0.0]
    hr_mean = _mean(hr_present)

    cruising = (speed_mean >= CRUISING_MIN_SPEED_KMH
                and speed_var ** 0.5 <= CRUISING_MAX_STD_KMH)

    return WindowFeatures(
        window_index=index,
        duration_s=duration_s,
        sample_count=n,
        speed_mean_kmh=speed_mean,
        speed_variance=speed_var,
        rpm_mean=rpm_mean,
        rpm_variance=rpm_var,
        throttle_variance=throttle_var,
        accel_p95_mps2=accel_p95,
        lateral_accel_p95_mps2=lateral_p95,
        abrupt_brakes=abrupt,
        smooth_brakes=smooth,
        brake_peak_decels_mps2=tuple(peaks),
        brake_durations_s=tuple(durations),
        shift_up_events=len(shifts),
        high_rpm_unshifted_s=high_rpm_s,
        event_rate_per_min=event_rate,
        hr_mean_bpm=hr_mean,
        cruising=cruising,
    )


def extract_windows(trip: TripRecord, cfg: ScoringConfig) -> tuple[WindowFeatures, ...]:
    """Cut a uniformly sampled trip into windows and compute their features.

    Raises TripTooShort when the trip spans less than one window and
    NotUniformlySampled when inter-sample spacing varies.
    """
    samples = trip.samples
    if len(samples) < 2:
        raise TripTooShort("need at least 2 samples")
    period = samples[1].timestamp_ms - samples[0].timestamp_ms
    for a, b in zip(samples, samples[1:]):
        if b.timestamp_ms - a.timestamp_ms != period:
            raise NotUniformlySampled(
                f"spacing {b.timestamp_ms - a.timestamp_ms} ms != {period} ms")
    dt_s = period / 1000.0
    duration_s = trip.duration_ms / 1000.0
    if duration_s < cfg.window_s:
        raise TripTooShort(
            f"trip spans {duration_s:.1f} s, below the {cfg.window_s:.0f} s window")

    per_window = max(2, round(cfg.window_s / dt_s))
    speed = [s.speed_kmh for s in samples]
    rpm = [s.rpm for s in samples]
    throttle = [s.throttle_pct for s in samples]
    brake = [s.brake for s in samples]
    lat = [s.lat for s in samples]
    lon = [s.lon for s in samples]
    hr = [s.hr_bpm for s in samples]

    out: list[WindowFeatures] = []
    n = len(samples)
    start = 0
    index = 0
    while start < n:
        end = min(start + per_window, n)
        length = end - start
        if end == n:
            # final (possibly partial) window: covers only up to the last sample
            window_duration = (length - 1) * dt_s
            if window_duration < cfg.window_s / 2.0:
                break
        else:
            window_duration = per_window * dt_s
        if length >= 2:
            out.append(_window_features(
                index, window_duration, dt_s,
                speed[start:end], rpm[start:end], throttle[start:end],
                brake[start:end], lat[start:end], lon[start:end], hr[start:end],
                cfg,
            ))
            index += 1
        start = end
    return tuple(out)
