"""Time the compiled kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeats N]

Both implementations are imported directly, so a single process measures the
pair side by side. The end-to-end row scores one simulated trip through
whichever implementation the package selected at import time.
"""

from __future__ import annotations

import argparse
import random
import time

from ecodrive import kernels
from ecodrive.kernels import _pure
from ecodrive.scoring import ScoringConfig, score_trip
from ecodrive.tripgen import default_urban_route, generate_trip, mixed_profile

try:
    from ecodrive.kernels import _core
except ImportError:
    _core = None


def _best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _workloads():
    rng = random.Random(1)
    values = [rng.uniform(800.0, 6000.0) for _ in range(30000)]
    speeds = [max(1.0, 15.0 + 8.0 * rng.gauss(0, 1)) for _ in range(30000)]
    brake = [1 if rng.random() < 0.1 else 0 for _ in range(30000)]
    lat = [45.0 + i * 1e-6 for i in range(30000)]
    lon = [7.0 + (i % 700) * 1e-6 for i in range(30000)]
    rpm = [1500.0 + (i % 40) * 60.0 for i in range(30000)]
    xs = [rng.uniform(0.0, 8000.0) for _ in range(30000)]

    def batch_sigmoid(mod):
        return lambda: [mod.sigmoid(x, 1.0, 0.0, 0.004, 1.0, 2500.0) for x in xs]

    return [
        ("sigmoid x30000", batch_sigmoid),
        ("population_variance 30000", lambda mod: lambda: mod.population_variance(values)),
        ("percentile p95 30000", lambda mod: lambda: mod.percentile(values, 95.0)),
        ("histogram 30000 events", lambda mod: lambda: mod.histogram_mean_weight(
            values, [2000.0, 4000.0], [1.0, 0.5, 0.1])),
        ("braking_event_peaks 30000", lambda mod: lambda: mod.braking_event_peaks(
            speeds, brake, 1.0)),
        ("shift_up_indices 30000", lambda mod: lambda: mod.shift_up_indices(
            rpm, speeds, 1.0, 500.0, 3)),
        ("lateral_accels 30000", lambda mod: lambda: mod.lateral_accels(
            lat, lon, speeds, 1.0)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="best-of-N timing (default 5)")
    args = parser.parse_args()

    print(f"selected implementation: {kernels.IMPLEMENTATION}")
    if _core is None:
        print("compiled core not importable; timing the pure fallback only")

    rows = []
    for name, make in _workloads():
        pure_s = _best_of(make(_pure), args.repeats)
        if _core is not None:
            core_s = _best_of(make(_core), args.repeats)
            rows.append((name, pure_s, core_s, pure_s / core_s))
        else:
            rows.append((name, pure_s, None, None))

    trip = generate_trip(mixed_profile(seed=3), default_urban_route(),
                         period_ms=100)
    cfg = ScoringConfig()
    rows.append(("score_trip (selected impl)",
                 _best_of(lambda: score_trip(trip, cfg), args.repeats),
                 None, None))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'pure ms':>9}  {'core ms':>9}  {'speedup':>7}"
    print(header)
    print("-" * len(header))
    for name, pure_s, core_s, ratio in rows:
        core_txt = f"{core_s * 1000:9.3f}" if core_s is not None else "        -"
        ratio_txt = f"{ratio:6.1f}x" if ratio is not None else "      -"
        print(f"{name:<{width}}  {pure_s * 1000:9.3f}  {core_txt}  {ratio_txt}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
