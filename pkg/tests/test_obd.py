"""OBD-II frame decoding and hex-log replay."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ecodrive.errors import NotAResponseFrame, UnknownPid, WrongPayloadLength
from ecodrive.obd import Channel, decode_frame, decode_hex_log


def frame(pid, *payload):
    return bytes([0x41, pid, *payload])


class TestDecodeFrame:
    @pytest.mark.parametrize(
        "raw,channel,value",
        [
            (frame(0x0D, 0x00), Channel.SPEED, 0.0),
            (frame(0x0D, 0x40), Channel.SPEED, 64.0),
            (frame(0x0D, 0xFF), Channel.SPEED, 255.0),
            (frame(0x0C, 0x00, 0x00), Channel.RPM, 0.0),
            (frame(0x0C, 0x0F, 0xA0), Channel.RPM, 1000.0),
            (frame(0x0C, 0xFF, 0xFF), Channel.RPM, 16383.75),
            (frame(0x11, 0x00), Channel.THROTTLE, 0.0),
            (frame(0x11, 0xFF), Channel.THROTTLE, 100.0),
            (frame(0x05, 0x00), Channel.COOLANT_TEMP, -40.0),
            (frame(0x05, 0xFF), Channel.COOLANT_TEMP, 215.0),
        ],
    )
    def test_known_frames(self, raw, channel, value):
        reading = decode_frame(raw)
        assert reading.channel is channel
        assert reading.value == value

    def test_throttle_midscale(self):
        assert decode_frame(frame(0x11, 0x80)).value == pytest.approx(
            0x80 * 100.0 / 255.0
        )

    def test_too_short_frame(self):
        with pytest.raises(WrongPayloadLength):
            decode_frame(b"\x41")
        with pytest.raises(WrongPayloadLength):
            decode_frame(b"")

    def test_request_mode_rejected(self):
        with pytest.raises(NotAResponseFrame):
            decode_frame(bytes([0x01, 0x0D, 0x40]))

    def test_unknown_pid(self):
        with pytest.raises(UnknownPid):
            decode_frame(frame(0x99, 0x01))

    @pytest.mark.parametrize(
        "raw",
        [frame(0x0D), frame(0x0D, 1, 2), frame(0x0C, 1), frame(0x0C, 1, 2, 3)],
    )
    def test_wrong_payload_length(self, raw):
        with pytest.raises(WrongPayloadLength):
            decode_frame(raw)

    @given(st.integers(0, 255))
    def test_speed_formula_is_identity_over_byte(self, a):
        assert decode_frame(frame(0x0D, a)).value == float(a)

    @given(st.integers(0, 255), st.integers(0, 255))
    def test_rpm_formula(self, a, b):
        assert decode_frame(frame(0x0C, a, b)).value == (256 * a + b) / 4.0

    @given(st.integers(0, 255))
    def test_readings_stay_in_physical_range(self, a):
        assert 0.0 <= decode_frame(frame(0x11, a)).value <= 100.0
        assert -40.0 <= decode_frame(frame(0x05, a)).value <= 215.0

    def test_deterministic(self):
        raw = frame(0x0C, 0x1A, 0xF8)
        assert decode_frame(raw) == decode_frame(raw)


class TestDecodeHexLog:
    def test_empty_input(self):
        result = decode_hex_log("")
        assert result.readings == () and result.errors == ()

    def test_three_valid_lines_in_order(self):
        text = "100 41 0D 40\n200 41 0C 0F A0\n300 41 05 5A\n"
        result = decode_hex_log(text)
        assert [ts for ts, _ in result.readings] == [100, 200, 300]
        assert [r.channel for _, r in result.readings] == [
            Channel.SPEED, Channel.RPM, Channel.COOLANT_TEMP,
        ]
        assert result.readings[2][1].value == 0x5A - 40
        assert result.errors == ()

    def test_lowercase_hex_accepted(self):
        result = decode_hex_log("100 41 0c 0f a0\n")
        assert result.readings[0][1].value == 1000.0

    def test_blank_lines_skipped(self):
        result = decode_hex_log("\n100 41 0D 40\n\n\n200 41 0D 20\n")
        assert len(result.readings) == 2 and not result.errors

    def test_mixed_valid_and_invalid_lines(self):
        text = (
            "100 41 0D 40\n"      # ok: 64 km/h
            "oops 41 0D 40\n"     # bad timestamp
            "300 41 0D zz\n"      # bad hex byte
            "400 41 99 01\n"      # unknown pid
            "500 41 0C 00 64\n"   # ok: 25 rpm
        )
        result = decode_hex_log(text)
        assert [ts for ts, _ in result.readings] == [100, 500]
        assert result.readings[1][1].value == 25.0
        assert sorted(e.line for e in result.errors) == [2, 3, 4]
        for err in result.errors:
            assert err.message
