import pytest

from ecodrive.model import TelemetrySample, TripRecord


def build_trip(
    speeds_kmh,
    rpms=None,
    brakes=None,
    throttles=None,
    hrs=None,
    lats=None,
    lons=None,
    period_ms=1000,
    trip_id="test-trip",
    driver_id="test-driver",
):
    """Uniform-grid trip from channel lists; unspecified channels are flat."""
    n = len(speeds_kmh)
    rpms = rpms if rpms is not None else [1800.0] * n
    brakes = brakes if brakes is not None else [0] * n
    throttles = throttles if throttles is not None else [20.0] * n
    hrs = hrs if hrs is not None else [0.0] * n
    lats = lats if lats is not None else [45.0] * n
    lons = lons if lons is not None else [7.0] * n
    samples = tuple(
        TelemetrySample(
            timestamp_ms=i * period_ms,
            lat=lats[i],
            lon=lons[i],
            speed_kmh=speeds_kmh[i],
            rpm=rpms[i],
            throttle_pct=throttles[i],
            brake=brakes[i],
            hr_bpm=hrs[i],
        )
        for i in range(n)
    )
    return TripRecord(trip_id, driver_id, samples)


@pytest.fixture
def trip_builder():
    return build_trip
