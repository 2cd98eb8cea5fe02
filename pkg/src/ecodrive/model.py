"""Trip data model and the per-trip CSV codec.

A trip is an ordered sequence of multi-channel samples (vehicle + wearable +
GPS) keyed by a millisecond timestamp. Samples and trips are immutable values;
every operation here is a pure function, so they are safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from ecodrive.errors import (
    InvariantViolation,
    MalformedHeader,
    MalformedRow,
    OutOfOrderTimestamp,
    TooFewSamples,
)

CSV_HEADER = "timestamp_ms,lat,lon,speed_kmh,rpm,throttle_pct,brake,hr_bpm"

#: hr_bpm value meaning "no wearable reading for this sample"
HR_MISSING = 0.0


@dataclass(frozen=True, slots=True)
class TelemetrySample:
    """One timestamped reading across all channels.

    brake is a binary pedal flag (0 released / 1 pressed); hr_bpm == 0 encodes
    a missing wearable reading.
    """

    timestamp_ms: int
    lat: float
    lon: float
    speed_kmh: float
    rpm: float
    throttle_pct: float
    brake: int
    hr_bpm: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise InvariantViolation("lat", f"{self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise InvariantViolation("lon", f"{self.lon} outside [-180, 180]")
        if self.speed_kmh < 0:
            raise InvariantViolation("speed_kmh", f"{self.speed_kmh} is negative")
        if self.rpm < 0:
            raise InvariantViolation("rpm", f"{self.rpm} is negative")
        if not 0.0 <= self.throttle_pct <= 100.0:
            raise InvariantViolation("throttle_pct", f"{self.throttle_pct} outside [0, 100]")
        if self.brake not in (0, 1):
            raise InvariantViolation("brake", f"{self.brake} not in {{0, 1}}")
        if self.hr_bpm < 0:
            raise InvariantViolation("hr_bpm", f"{self.hr_bpm} is negative")


@dataclass(frozen=True, slots=True)
class TripRecord:
    """An ordered, strictly-ascending-timestamp sequence of samples."""

    trip_id: str
    driver_id: str
    samples: tuple[TelemetrySample, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.samples, self.samples[1:]):
            if b.timestamp_ms <= a.timestamp_ms:
                raise OutOfOrderTimestamp()

    @property
    def duration_ms(self) -> int:
        if len(self.samples) < 2:
            return 0
        return self.samples[-1].timestamp_ms - self.samples[0].timestamp_ms


def _fmt(value: float) -> str:
    """Serialize a real with up to 6 decimal places, keeping at least one."""
    text = f"{value:.6f}".rstrip("0")
    if text.endswith("."):
        text += "0"
    return text


def encode_trip_csv(trip: TripRecord) -> bytes:
    """Encode a trip to the canonical UTF-8 CSV (LF line endings)."""
    lines = [CSV_HEADER]
    for s in trip.samples:
        lines.append(
            f"{s.timestamp_ms},{_fmt(s.lat)},{_fmt(s.lon)},{_fmt(s.speed_kmh)},"
            f"{_fmt(s.rpm)},{_fmt(s.throttle_pct)},{s.brake},{_fmt(s.hr_bpm)}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def decode_trip_csv(data: bytes, trip_id: str, driver_id: str) -> TripRecord:
    """Decode and validate a trip CSV.

    Raises MalformedHeader, MalformedRow, OutOfOrderTimestamp or
    InvariantViolation; parse errors carry the 1-based line number.
    """
    text = data.decode("utf-8")
    lines = text.splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise MalformedHeader(f"expected header {CSV_HEADER!r}")

    samples: list[TelemetrySample] = []
    prev_ts: int | None = None
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cols = line.split(",")
        if len(cols) != 8:
            raise MalformedRow(lineno, f"expected 8 columns, got {len(cols)}")
        try:
            ts = int(cols[0])
            lat, lon, speed, rpm, throttle = (float(c) for c in cols[1:6])
            brake_raw = float(cols[6])
            hr = float(cols[7])
        except ValueError as exc:
            raise MalformedRow(lineno, f"unparsable number ({exc})") from exc
        if brake_raw not in (0.0, 1.0):
            raise InvariantViolation("brake", f"{cols[6]} not in {{0, 1}}", line=lineno)
        if prev_ts is not None and ts <= prev_ts:
            raise OutOfOrderTimestamp(lineno)
        prev_ts = ts
        try:
            samples.append(
                TelemetrySample(ts, lat, lon, speed, rpm, throttle, int(brake_raw), hr)
            )
        except InvariantViolation as exc:
            raise InvariantViolation(exc.field, str(exc).split(": ", 1)[-1], line=lineno) from exc
    return TripRecord(trip_id, driver_id, tuple(samples))


def _lerp(a: float, b: float, frac: float) -> float:
    # Clamp to the endpoint interval so float error cannot push an in-range
    # channel (throttle, lat/lon) outside its bounds.
    value = a + (b - a) * frac
    lo, hi = (a, b) if a <= b else (b, a)
    return min(max(value, lo), hi)


def resample_uniform(trip: TripRecord, period_ms: int) -> TripRecord:
    """Resample onto a uniform grid from the first timestamp, step period_ms.

    Continuous channels (speed, rpm, throttle, hr, lat, lon) are linearly
    interpolated; brake is held at the value of the latest sample at or before
    each grid point. The grid ends at the largest multiple of period_ms at or
    before the last timestamp.
    """
    if period_ms <= 0:
        raise ValueError("period_ms must be positive")
    if len(trip.samples) < 2:
        raise TooFewSamples("resampling needs at least 2 samples")

    samples = trip.samples
    t0 = samples[0].timestamp_ms
    t_end = samples[-1].timestamp_ms
    steps = (t_end - t0) // period_ms

    out: list[TelemetrySample] = []
    seg = 0  # index of the segment [samples[seg], samples[seg+1]] containing t
    for k in range(steps + 1):
        t = t0 + k * period_ms
        while seg < len(samples) - 2 and samples[seg + 1].timestamp_ms <= t:
            seg += 1
        a, b = samples[seg], samples[seg + 1]
        span = b.timestamp_ms - a.timestamp_ms
        frac = (t - a.timestamp_ms) / span
        # zero-order hold: latest sample at or before t
        brake = b.brake if b.timestamp_ms <= t else a.brake
        out.append(
            TelemetrySample(
                timestamp_ms=t,
                lat=_lerp(a.lat, b.lat, frac),
                lon=_lerp(a.lon, b.lon, frac),
                speed_kmh=_lerp(a.speed_kmh, b.speed_kmh, frac),
                rpm=_lerp(a.rpm, b.rpm, frac),
                throttle_pct=_lerp(a.throttle_pct, b.throttle_pct, frac),
                brake=brake,
                hr_bpm=_lerp(a.hr_bpm, b.hr_bpm, frac),
            )
        )
    return TripRecord(trip.trip_id, trip.driver_id, tuple(out))
