# cython: language_level=3, boundscheck=False, cdivision=False
"""Compiled kernel implementations.

Mirror of ecodrive/kernels/_pure.py with typed inner loops. The two files
must stay semantically identical statement-for-statement: the parity tests
require bit-identical results, which is why the build disables FP contraction.
"""

from libc.math cimport atan2, cos, exp, fabs, sqrt, M_PI

IMPLEMENTATION = "compiled"

cdef double _EXP_MAX = 709.0


def sigmoid(double x, double a1, double a2, double a3, double a4, double x0):
    """a2 + a1 / (a4 + e^(a3 * (x - x0))), saturating instead of overflowing."""
    cdef double z = a3 * (x - x0)
    if z > _EXP_MAX:
        z = _EXP_MAX
    return a2 + a1 / (a4 + exp(z))


def population_variance(list values):
    """Two-pass population variance; 0.0 for fewer than one element."""
    cdef Py_ssize_t n = len(values)
    if n == 0:
        return 0.0
    cdef double mean = 0.0
    cdef double acc = 0.0
    cdef double v, d
    cdef Py_ssize_t i
    for i in range(n):
        mean += <double> values[i]
    mean /= n
    for i in range(n):
        v = <double> values[i]
        d = v - mean
        acc += d * d
    return acc / n


def percentile(list values, double q):
    """q-th percentile with linear interpolation between order statistics."""
    cdef Py_ssize_t n = len(values)
    if n == 0:
        return 0.0
    s = sorted(values)
    if n == 1:
        return <double> s[0]
    cdef double h = (n - 1) * q / 100.0
    cdef Py_ssize_t lo = <Py_ssize_t> h
    if lo >= n - 1:
        return <double> s[n - 1]
    cdef double frac = h - lo
    cdef double slo = <double> s[lo]
    cdef double shi = <double> s[lo + 1]
    return slo + frac * (shi - slo)


def histogram_mean_weight(list values, list edges, list weights):
    """Mean bin weight of the values; bin i spans [edges[i-1], edges[i])."""
    cdef Py_ssize_t n = len(values)
    if n == 0:
        return 0.0
    cdef Py_ssize_t n_edges = len(edges)
    cdef double total = 0.0
    cdef double v
    cdef Py_ssize_t i, b
    for i in range(n):
        v = <double> values[i]
        b = 0
        while b < n_edges and v >= <double> edges[b]:
            b += 1
        total += <double> weights[b]
    return total / n


def braking_event_peaks(list speed_mps, list brake, double dt_s):
    """Detect braking events; return ([peak decel m/s^2 ...], [duration s ...])."""
    cdef Py_ssize_t n = len(speed_mps)
    if n < 2:
        return [], []
    cdef bint any_brake = False
    cdef Py_ssize_t i
    for i in range(len(brake)):
        if <long> brake[i] != 0:
            any_brake = True
            break

    peaks = []
    durations = []
    cdef bint in_event = False
    cdef bint active
    cdef double peak = 0.0
    cdef double decel
    cdef Py_ssize_t steps = 0
    for i in range(n - 1):
        if any_brake:
            active = <long> brake[i] != 0
        else:
            active = <double> speed_mps[i + 1] < <double> speed_mps[i]
        if active:
            decel = (<double> speed_mps[i] - <double> speed_mps[i + 1]) / dt_s
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


def event_runs_at_or_above(list accel_mps2, double threshold):
    """Count maximal runs of steps whose acceleration is >= threshold."""
    cdef long count = 0
    cdef bint in_run = False
    cdef double a
    cdef Py_ssize_t i
    for i in range(len(accel_mps2)):
        a = <double> accel_mps2[i]
        if a >= threshold:
            if not in_run:
                count += 1
                in_run = True
        else:
            in_run = False
    return count


def shift_up_indices(list rpm, list speed_mps, double dt_s, double rpm_drop,
                     long horizon_steps):
    """Indices (of the drop's end sample) of detected gear shift-up events."""
    cdef Py_ssize_t n = len(rpm)
    out = []
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t found, kmax, k
    while i < n - 1:
        found = -1
        kmax = horizon_steps
        if i + kmax > n - 1:
            kmax = n - 1 - i
        for k in range(1, kmax + 1):
            if (<double> rpm[i] - <double> rpm[i + k] >= rpm_drop
                    and <double> speed_mps[i + k] >= <double> speed_mps[i]):
                found = i + k
                break
        if found >= 0:
            out.append(found)
            i = found
        else:
            i += 1
    return out


def high_rpm_unshifted_seconds(list rpm, list speed_mps, double dt_s,
                               double rpm_threshold, list shift_indices,
                               long lookahead_steps):
    """Seconds spent above rpm_threshold at non-decreasing speed with no
    shift-up completing within the following lookahead_steps steps."""
    cdef Py_ssize_t n = len(rpm)
    cdef double total = 0.0
    cdef bint excused
    cdef Py_ssize_t i, jx
    cdef long j
    for i in range(n - 1):
        if <double> rpm[i] <= rpm_threshold:
            continue
        if <double> speed_mps[i + 1] < <double> speed_mps[i]:
            continue
        excused = False
        for jx in range(len(shift_indices)):
            j = <long> shift_indices[jx]
            if i < j <= i + lookahead_steps:
                excused = True
                break
        if not excused:
            total += dt_s
    return total


cdef double _EARTH_R_M = 6371000.0
cdef double _DEG = M_PI / 180.0
cdef double _MIN_STEP_M = 0.05


def lateral_accels(list lat, list lon, list speed_mps, double dt_s):
    """Lateral acceleration magnitudes |dheading/dt| * speed from GPS points."""
    cdef Py_ssize_t n = len(lat)
    if n < 3:
        return []
    headings = []
    cdef bint have_prev = False
    cdef double prev_heading = 0.0
    cdef double dn, de, h, dh
    cdef Py_ssize_t i
    for i in range(n - 1):
        dn = (<double> lat[i + 1] - <double> lat[i]) * _DEG * _EARTH_R_M
        de = (<double> lon[i + 1] - <double> lon[i]) * _DEG * _EARTH_R_M * cos(<double> lat[i] * _DEG)
        if sqrt(dn * dn + de * de) < _MIN_STEP_M:
            headings.append(prev_heading if have_prev else 0.0)
            continue
        h = atan2(de, dn)
        headings.append(h)
        prev_heading = h
        have_prev = True

    out = []
    for i in range(1, n - 1):
        dh = <double> headings[i] - <double> headings[i - 1]
        while dh > M_PI:
            dh -= 2.0 * M_PI
        while dh < -M_PI:
            dh += 2.0 * M_PI
        out.append(fabs(dh / dt_s) * <double> speed_mps[i])
    return out
