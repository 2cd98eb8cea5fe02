"""Pure-Python kernel implementations.

These are the reference semantics for the numeric inner loops of scoring.
ecodrive.kernels._core is the compiled twin; both must agree bit-for-bit on
the same inputs (enforced by the parity tests). Keep the two files in sync.
"""

from __future__ import annotations

import math

IMPLEMENTATION = "pure"

_EXP_MAX = 709.0  # exp() overflows just above this; saturate instead of faulting


def sigmoid(x: float, a1: float, a2: float, a3: float, a4: float, x0: float) -> float:
    """a2 + a1 / (a4 + e^(a3 * (x - x0))), saturating instead of overflowing."""
    z = a3 * (x - x0)
    if z > _EXP_MAX:
        z = _EXP_MAX
    return a2 + a1 / (a4 + math.exp(z))


def population_variance(values: list) -> float:
    """Two-pass population variance; 0.0 for fewer than one element."""
    n = len(values)
    if n == 0:
        return 0.0
    mean = 0.0
    for v in values:
        mean += v
    mean /= n
    acc = 0.0
    for v in values:
        d = v - mean
        acc += d * d
    return acc / n


def percentile(values: list, q: float) -> float:
    """q-th percentile with linear interpolation between order statistics."""
    n = len(values)
    if n == 0:
        return 0.0
    s = sorted(values)
    if n == 1:
        return s[0]
    h = (n - 1) * q / 100.0
    lo = int(h)
    if lo >= n - 1:
        return s[n - 1]
    frac = h - lo
    return s[lo] + frac * (s[lo + 1] - s[lo])


def histogram_mean_weight(values: list, edges: list, weights: list) -> float:
    """Mean bin weight of the values; bin i spans [edges[i-1], edges[i]).

    Values below edges[0] land in bin 0, values at or above the last edge in
    the last bin. Returns 0.0 for empty input. Edges are assumed valid
    (validated by the caller).
    """
    n = len(values)
    if n == 0:
        return 0.0
    n_edges = len(edges)
    total = 0.0
    for v in values:
        b = 0
        while b < n_edges and v >= edges[b]:
            b += 1
        total += weights[b]
    return total / n


def braking_event_peaks(speed_mps: list, brake: list, dt_s: float) -> tuple:
    """Detect braking events; return ([peak decel m/s^2 ...], [duration s ...]).

    A step i (sample i -> i+1) is braking iff brake[i] == 1, or, when the
    brake channel is all zero, iff speed is strictly decreasing over the step.
    Events are maximal runs of braking steps; an event's peak is the largest
    deceleration over its steps (at least 0) and its duration is the run
    length times dt_s.
    """
    n = len(speed_mps)
    if n < 2:
        return [], []
    any_brake = False
    for f in brake:
        if f != 0:
            any_brake = True
            break

    peaks: list = []
    durations: list = []
    in_event = False
    peak = 0.0
    steps = 0
    for i in range(n - 1):
        if any_brake:
            active = brake[i] != 0
        else:
            active = speed_mps[i + 1] < speed_mps[i]
        if active:
            decel = (speed_mps[i] - speed_mps[i + 1]) / dt_s
            if decel < 0.0:
                decel = 0.0
            if in_event:
                if decel > peak:
                    peak = decel
                steps += 1
            else:
                in_event = True
                peak = decel
                steps = 1
        elif in_event:
            peaks.append(peak)
            durations.append(steps * dt_s)
            in_event = False
    if in_event:
        peaks.append(peak)
        durations.append(steps * dt_s)
    return peaks, durations


def event_runs_at_or_above(accel_mps2: list, threshold: float) -> int:
    """Count maximal runs of steps whose acceleration is >= threshold."""
    count = 0
    in_run = False
    for a in accel_mps2:
        if a >= threshold:
            if not in_run:
                count += 1
                in_run = True
        else:
            in_run = False
    return count


def shift_up_indices(
    rpm: list, speed_mps: list, dt_s: float, rpm_drop: float, horizon_steps: int
) -> list:
    """Indices (of the drop's end sample) of detected gear shift-up events.

    A shift-up is an RPM drop >= rpm_drop from sample i to some sample i+k
    (1 <= k <= horizon_steps, i.e. within ~1 s) with speed non-decreasing over
    the same interval. The scan resumes after the drop's end so one physical
    shift is counted once.
    """
    n = len(rpm)
    out: list = []
    i = 0
    while i < n - 1:
        found = -1
        kmax = horizon_steps
        if i + kmax > n - 1:
            kmax = n - 1 - i
        for k in range(1, kmax + 1):
            if rpm[i] - rpm[i + k] >= rpm_drop and speed_mps[i + k] >= speed_mps[i]:
                found = i + k
                break
        if found >= 0:
            out.append(found)
            i = found
        else:
            i += 1
    return out


def high_rpm_unshifted_seconds(
    rpm: list,
    speed_mps: list,
    dt_s: float,
    rpm_threshold: float,
    shift_indices: list,
    lookahead_steps: int,
) -> float:
    """Seconds spent above rpm_threshold at non-decreasing speed with no
    shift-up completing within the following lookahead_steps steps."""
    n = len(rpm)
    total = 0.0
    for i in range(n - 1):
        if rpm[i] <= rpm_threshold:
            continue
        if speed_mps[i + 1] < speed_mps[i]:
            continue
        excused = False
        for j in shift_indices:
            if i < j <= i + lookahead_steps:
                excused = True
                break
        if not excused:
            total += dt_s
    return total


_EARTH_R_M = 6371000.0
_DEG = math.pi / 180.0
_MIN_STEP_M = 0.05  # below this displacement a heading is noise; reuse the previous one


def lateral_accels(lat: list, lon: list, speed_mps: list, dt_s: float) -> list:
    """Lateral acceleration magnitudes |dheading/dt| * speed from GPS points.

    Headings come from consecutive GPS displacements on a local flat-earth
    approximation; the value at step i couples the heading change between
    steps i-1 and i with the speed at sample i. Near-stationary displacements
    keep the previous heading.
    """
    n = len(lat)
    if n < 3:
        return []
    headings: list = []
    have_prev = False
    prev_heading = 0.0
    for i in range(n - 1):
        dn = (lat[i + 1] - lat[i]) * _DEG * _EARTH_R_M
        de = (lon[i + 1] - lon[i]) * _DEG * _EARTH_R_M * math.cos(lat[i] * _DEG)
        if math.sqrt(dn * dn + de * de) < _MIN_STEP_M:
            headings.append(prev_heading if have_prev else 0.0)
            continue
        h = math.atan2(de, dn)
        headings.append(h)
        prev_heading = h
        have_prev = True

    out: list = []
    for i in range(1, n - 1):
        dh = headings[i] - headings[i - 1]
        while dh > math.pi:
            dh -= 2.0 * math.pi
        while dh < -math.pi:
            dh += 2.0 * math.pi
        out.append(abs(dh / dt_s) * speed_mps[i])
    return out
