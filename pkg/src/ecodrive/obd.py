"""OBD-II mode-01 response frame decoding.

Covers the four channels the scoring pipeline consumes (speed, RPM, throttle)
plus coolant temperature as a representative extra vehicle channel. Input is
assumed to be pre-extracted response frames (mode byte 0x41); transport
layering (ISO-TP / CAN) is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ecodrive.errors import NotAResponseFrame, UnknownPid, WrongPayloadLength

RESPONSE_MODE = 0x41


class Channel(Enum):
    SPEED = "speed"            # km/h
    RPM = "rpm"                # revolutions per minute
    THROTTLE = "throttle"      # percent
    COOLANT_TEMP = "coolant_temp"  # degrees C


#: PID -> (channel, payload byte count)
PID_TABLE: dict[int, tuple[Channel, int]] = {
    0x0D: (Channel.SPEED, 1),
    0x0C: (Channel.RPM, 2),
    0x11: (Channel.THROTTLE, 1),
    0x05: (Channel.COOLANT_TEMP, 1),
}


@dataclass(frozen=True, slots=True)
class ObdFrame:
    mode: int
    pid: int
    payload: bytes


@dataclass(frozen=True, slots=True)
class ChannelReading:
    channel: Channel
    value: float


def decode_frame(raw: bytes) -> ChannelReading:
    """Decode one mode-01 response frame into a physical-unit reading.

    Raises NotAResponseFrame, UnknownPid or WrongPayloadLength.
    """
    if len(raw) < 2:
        raise WrongPayloadLength(f"frame needs at least mode+pid bytes, got {len(raw)}")
    mode, pid, payload = raw[0], raw[1], raw[2:]
    if mode != RESPONSE_MODE:
        raise NotAResponseFrame(f"mode 0x{mode:02X} is not a mode-01 response (0x41)")
    if pid not in PID_TABLE:
        raise UnknownPid(f"PID 0x{pid:02X} not supported")
    channel, expected = PID_TABLE[pid]
    if len(payload) != expected:
        raise WrongPayloadLength(
            f"PID 0x{pid:02X} expects {expected} payload byte(s), got {len(payload)}"
        )
    if pid == 0x0D:
        value = float(payload[0])  # A km/h
    elif pid == 0x0C:
        value = (256 * payload[0] + payload[1]) / 4.0
    elif pid == 0x11:
        value = payload[0] * 100.0 / 255.0
    else:  # 0x05
        value = float(payload[0] - 40)
    return ChannelReading(channel, value)


@dataclass(frozen=True, slots=True)
class HexLogLineError:
    line: int
    message: str


@dataclass(frozen=True, slots=True)
class HexLogResult:
    """Readings for decodable lines plus errors for the rest, both in input order."""

    readings: tuple[tuple[int, ChannelReading], ...]
    errors: tuple[HexLogLineError, ...]


def decode_hex_log(text: str) -> HexLogResult:
    """Replay a line-oriented hex dump: `timestamp_ms <space-separated hex bytes>`.

    Blank lines are skipped. Undecodable lines are reported with their line
    number, never silently dropped.
    """
    readings: list[tuple[int, ChannelReading]] = []
    errors: list[HexLogLineError] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        try:
            ts = int(parts[0])
        except ValueError:
            errors.append(HexLogLineError(lineno, f"bad timestamp {parts[0]!r}"))
            continue
        if len(parts) < 2:
            errors.append(HexLogLineError(lineno, "no frame bytes after timestamp"))
            continue
        try:
            raw = bytes(int(p, 16) for p in parts[1:])
        except ValueError:
            errors.append(HexLogLineError(lineno, "bad hex byte"))
            continue
        try:
            readings.append((ts, decode_frame(raw)))
        except Exception as exc:
            errors.append(HexLogLineError(lineno, str(exc)))
    return HexLogResult(tuple(readings), tuple(errors))
