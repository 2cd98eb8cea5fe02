"""Synthetic trip generator.

Produces kinematically consistent trips over segment-list routes for three
driving styles. Used as demo data and as the independent oracle for the
score-ordering properties: a Smooth and an Aggressive trip over the same
route and seed must rank correctly under the scorer.

Speed integrates a bounded acceleration command (noise enters through that
command, never the recorded speed directly), so |dv/dt| never exceeds the
profile's limits. Trips start at the first segment's target speed: a trip is
a recording of a vehicle already in motion.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from ecodrive.errors import EmptyRoute, MalformedRoute
from ecodrive.model import TelemetrySample, TripRecord

EARTH_R_M = 6371000.0
ORIGIN_LAT = 45.0
ORIGIN_LON = 7.0

IDLE_RPM = 800.0
MIN_SPEED_MPS = 1.0          # vehicles in this simulator never fully stop
MAX_TRIP_S = 3600
NOISE_FRACTION = 0.02        # accel-command noise, fraction of the accel limit
HR_WINDOW_S = 10.0


class Style(Enum):
    SMOOTH = "smooth"
    AGGRESSIVE = "aggressive"
    MIXED = "mixed"


@dataclass(frozen=True, slots=True)
class RouteSegment:
    length_m: float
    speed_limit_kmh: float
    curvature_inv_m: float


@dataclass(frozen=True, slots=True)
class DriverProfile:
    style: Style
    target_speed_kmh: float      # cap on cruising speed, before segment limits
    accel_mps2: float
    brake_decel_mps2: float
    rpm_per_kmh: float           # fixed-gear RPM slope
    shift_rpm: float             # upshift when RPM reaches this
    post_shift_rpm: float        # RPM right after an upshift
    lateral_comfort_mps2: float  # tolerated lateral acceleration in curves
    speeding_factor: float       # multiplier on segment speed limits
    slowdown_interval_s: float   # 0 disables spontaneous slowdowns
    hr_base_bpm: float
    hr_stress_gain: float
    seed: int


def smooth_profile(seed: int) -> DriverProfile:
    return DriverProfile(
        style=Style.SMOOTH, target_speed_kmh=90.0,
        accel_mps2=1.5, brake_decel_mps2=1.8,
        rpm_per_kmh=35.0, shift_rpm=2600.0, post_shift_rpm=1600.0,
        lateral_comfort_mps2=1.5, speeding_factor=1.0, slowdown_interval_s=0.0,
        hr_base_bpm=57.0, hr_stress_gain=8.0, seed=seed,
    )


def aggressive_profile(seed: int) -> DriverProfile:
    return DriverProfile(
        style=Style.AGGRESSIVE, target_speed_kmh=130.0,
        accel_mps2=3.2, brake_decel_mps2=4.8,
        rpm_per_kmh=42.0, shift_rpm=3800.0, post_shift_rpm=2600.0,
        lateral_comfort_mps2=3.5, speeding_factor=1.15, slowdown_interval_s=25.0,
        hr_base_bpm=88.0, hr_stress_gain=25.0, seed=seed,
    )


def mixed_profile(seed: int) -> DriverProfile:
    return DriverProfile(
        style=Style.MIXED, target_speed_kmh=105.0,
        accel_mps2=2.2, brake_decel_mps2=3.2,
        rpm_per_kmh=38.0, shift_rpm=3100.0, post_shift_rpm=2100.0,
        lateral_comfort_mps2=2.4, speeding_factor=1.05, slowdown_interval_s=60.0,
        hr_base_bpm=72.0, hr_stress_gain=15.0, seed=seed,
    )


PROFILE_FACTORIES = {
    Style.SMOOTH: smooth_profile,
    Style.AGGRESSIVE: aggressive_profile,
    Style.MIXED: mixed_profile,
}


def default_urban_route() -> list[RouteSegment]:
    """~3 km of urban driving with speed-limit changes and curves."""
    return [
        RouteSegment(500.0, 50.0, 0.0),
        RouteSegment(250.0, 30.0, 0.012),
        RouteSegment(550.0, 50.0, 0.0),
        RouteSegment(200.0, 30.0, 0.016),
        RouteSegment(650.0, 60.0, 0.002),
        RouteSegment(300.0, 30.0, 0.010),
        RouteSegment(550.0, 50.0, 0.0),
    ]


def parse_route_text(text: str) -> list[RouteSegment]:
    """One segment per line: `length_m,speed_limit_kmh,curvature_inv_m`."""
    segments: list[RouteSegment] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split(",")
        if len(cols) != 3:
            raise MalformedRoute(lineno, f"expected 3 columns, got {len(cols)}")
        try:
            length, limit, curvature = (float(c) for c in cols)
        except ValueError as exc:
            raise MalformedRoute(lineno, f"unparsable number ({exc})") from exc
        if length <= 0 or limit <= 0 or curvature < 0:
            raise MalformedRoute(lineno, "length/limit must be positive, curvature >= 0")
        segments.append(RouteSegment(length, limit, curvature))
    if not segments:
        raise EmptyRoute("route has no segments")
    return segments


def load_route(path: str | Path) -> list[RouteSegment]:
    return parse_route_text(Path(path).read_text(encoding="utf-8"))


def route_text(route: list[RouteSegment]) -> str:
    lines = [f"{s.length_m},{s.speed_limit_kmh},{s.curvature_inv_m}" for s in route]
    return "\n".join(lines) + "\n"


def _segment_at(route: list[RouteSegment], s: float) -> RouteSegment:
    pos = 0.0
    for seg in route:
        pos += seg.length_m
        if s < pos:
            return seg
    return route[-1]


def _segment_poses(route: list[RouteSegment]) -> list[tuple[float, float, float]]:
    """Start pose (east_m, north_m, heading_rad) of every segment."""
    poses = []
    x = y = h = 0.0
    for seg in route:
        poses.append((x, y, h))
        if seg.curvature_inv_m > 0.0:
            k = seg.curvature_inv_m
            dh = k * seg.length_m
            x += (math.cos(h) - math.cos(h + dh)) / k
            y += (math.sin(h + dh) - math.sin(h)) / k
            h += dh
        else:
            x += seg.length_m * math.sin(h)
            y += seg.length_m * math.cos(h)
    return poses


def _position_at(
    route: list[RouteSegment], poses: list[tuple[float, float, float]], s: float
) -> tuple[float, float]:
    """East/north offsets at arc position s. Pure function of s, so two trips
    at the same position report the same coordinates regardless of how they
    got there."""
    start = 0.0
    for seg, (x, y, h) in zip(route, poses):
        if s <= start + seg.length_m or seg is route[-1]:
            u = min(max(s - start, 0.0), seg.length_m)
            if seg.curvature_inv_m > 0.0:
                k = seg.curvature_inv_m
                return (x + (math.cos(h) - math.cos(h + k * u)) / k,
                        y + (math.sin(h + k * u) - math.sin(h)) / k)
            return (x + u * math.sin(h), y + u * math.cos(h))
        start += seg.length_m
    return poses[-1][0], poses[-1][1]


def _target_speed_mps(profile: DriverProfile, seg: RouteSegment) -> float:
    v = min(seg.speed_limit_kmh * profile.speeding_factor, profile.target_speed_kmh) / 3.6
    if seg.curvature_inv_m > 0.0:
        v = min(v, math.sqrt(profile.lateral_comfort_mps2 / seg.curvature_inv_m))
    return max(v, MIN_SPEED_MPS)


def generate_trip(
    profile: DriverProfile,
    route: list[RouteSegment],
    period_ms: int = 1000,
    trip_id: str | None = None,
    driver_id: str | None = None,
) -> TripRecord:
    """Simulate one trip along the route. Deterministic per (profile, route, seed)."""
    if not route:
        raise EmptyRoute("route has no segments")
    if period_ms <= 0:
        raise ValueError("period_ms must be positive")

    rng = random.Random(profile.seed)
    dt = period_ms / 1000.0
    total_len = sum(seg.length_m for seg in route)
    poses = _segment_poses(route)

    # drivetrain state
    ratio = profile.rpm_per_kmh
    # driver state
    s = 0.0
    v = _target_speed_mps(profile, route[0])
    slowdown_until_s = -1.0
    slowdown_target = v
    next_slowdown_s = (profile.slowdown_interval_s
                       + rng.uniform(0.0, profile.slowdown_interval_s)
                       if profile.slowdown_interval_s > 0 else math.inf)
    recent_accels: list[float] = []

    samples: list[TelemetrySample] = []
    noise_amp = NOISE_FRACTION * profile.accel_mps2
    t_s = 0.0
    step = 0
    while True:
        seg = _segment_at(route, min(s, total_len - 0.001))
        target = _target_speed_mps(profile, seg)

        if t_s >= next_slowdown_s and slowdown_until_s < t_s:
            # spontaneous traffic-style slowdown (aggressive/mixed styles)
            slowdown_target = max(MIN_SPEED_MPS, target * rng.uniform(0.3, 0.6))
            slowdown_until_s = t_s + rng.uniform(3.0, 6.0)
            next_slowdown_s = t_s + profile.slowdown_interval_s * rng.uniform(1.0, 1.8)
        if t_s <= slowdown_until_s:
            target = min(target, slowdown_target)

        err = target - v
        if err > 0.15:
            a_cmd = min(profile.accel_mps2, err / dt)
        elif err < -0.15:
            a_cmd = max(-profile.brake_decel_mps2, err / dt)
        else:
            a_cmd = 0.0
        a_cmd += rng.gauss(0.0, noise_amp)
        a_cmd = min(max(a_cmd, -profile.brake_decel_mps2), profile.accel_mps2)
        braking = a_cmd < -0.35

        v_next = max(MIN_SPEED_MPS, v + a_cmd * dt)

        # drivetrain: sawtooth shifts keep RPM between post_shift and shift_rpm
        v_kmh = v * 3.6
        rpm = IDLE_RPM + ratio * v_kmh
        if rpm >= profile.shift_rpm and v_kmh > 1.0:
            ratio = (profile.post_shift_rpm - IDLE_RPM) / v_kmh
            rpm = IDLE_RPM + ratio * v_kmh
        elif rpm < profile.post_shift_rpm * 0.7 and ratio < profile.rpm_per_kmh:
            ratio = min(profile.rpm_per_kmh, (profile.post_shift_rpm - IDLE_RPM) / max(v_kmh, 1.0))
            rpm = IDLE_RPM + ratio * v_kmh

        # pedal tracks the accel command around a cruise baseline; lifted on braking
        if a_cmd < -0.2:
            throttle = 0.0
        else:
            throttle = 16.0 + 84.0 * a_cmd / profile.accel_mps2
        throttle = min(100.0, max(0.0, throttle * (1.0 + rng.gauss(0.0, NOISE_FRACTION))))

        recent_accels.append(abs(a_cmd))
        max_keep = max(1, int(HR_WINDOW_S / dt))
        if len(recent_accels) > max_keep:
            recent_accels.pop(0)
        stress = sum(recent_accels) / len(recent_accels)
        hr = profile.hr_base_bpm + profile.hr_stress_gain * stress

        x, y = _position_at(route, poses, min(s, total_len))
        lat = ORIGIN_LAT + (y / EARTH_R_M) * (180.0 / math.pi)
        lon = ORIGIN_LON + (x / (EARTH_R_M * math.cos(math.radians(ORIGIN_LAT)))) * (180.0 / math.pi)
        # emit at CSV precision so a trip is a fixed point of the codec
        samples.append(TelemetrySample(
            timestamp_ms=step * period_ms,
            lat=round(lat, 6), lon=round(lon, 6),
            speed_kmh=round(v_kmh, 6),
            rpm=round(rpm, 6),
            throttle_pct=round(throttle, 6),
            brake=1 if braking else 0,
            hr_bpm=round(hr, 6),
        ))

        if s >= total_len or t_s >= MAX_TRIP_S:
            break

        # integrate motion; land exactly on the route end so paired trips
        # share their final coordinate
        if v * dt >= total_len - s:
            s = total_len
        else:
            s += v * dt
        v = v_next
        t_s += dt
        step += 1

    tid = trip_id or f"{profile.style.value}-{profile.seed}"
    did = driver_id or f"driver-{profile.style.value}"
    return TripRecord(tid, did, tuple(samples))


def generate_paired(
    route: list[RouteSegment], seed: int, period_ms: int = 1000
) -> tuple[TripRecord, TripRecord]:
    """(smooth, aggressive) trips over the identical route and seed."""
    smooth = generate_trip(smooth_profile(seed), route, period_ms,
                           trip_id=f"smooth-{seed}", driver_id="driver-smooth")
    aggressive = generate_trip(aggressive_profile(seed), route, period_ms,
                               trip_id=f"aggressive-{seed}", driver_id="driver-aggressive")
    return smooth, aggressive
