"""Shared exception hierarchy.

Every domain error raised by this package derives from EcodriveError so the
CLI and the HTTP service can map failures to exit codes / status codes in one
place. Parsing errors carry the 1-based input line number where available.
"""


class EcodriveError(Exception):
    """Base class for all ecodrive domain errors."""


class ConfigError(EcodriveError):
    """A config file or parameter set violates its invariants."""


# --- trip CSV / telemetry model ---------------------------------------------

class MalformedHeader(EcodriveError):
    """CSV header line does not match the canonical trip header."""


class MalformedRow(EcodriveError):
    """CSV row has the wrong column count or an unparsable number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class OutOfOrderTimestamp(EcodriveError):
    """Timestamps are not strictly ascending."""

    def __init__(self, line: int | None = None, message: str = "timestamps must be strictly ascending"):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class InvariantViolation(EcodriveError):
    """A field value is outside its declared range."""

    def __init__(self, field: str, message: str, line: int | None = None):
        prefix = "" if line is None else f"line {line}: "
        super().__init__(f"{prefix}{field}: {message}")
        self.field = field
        self.line = line


class TooFewSamples(EcodriveError):
    """Operation needs more samples than the trip contains."""


# --- OBD decoding ------------------------------------------------------------

class ObdError(EcodriveError):
    """Base class for OBD frame decode errors."""


class NotAResponseFrame(ObdError):
    """Frame mode byte is not a mode-01 response (0x41)."""


class UnknownPid(ObdError):
    """PID is outside the supported set."""


class WrongPayloadLength(ObdError):
    """Payload length does not match the PID's defined length."""


# --- scoring ------------------------------------------------------------------

class BadBinSpec(ConfigError):
    """Histogram edges not strictly increasing or weight count mismatch."""


class TripTooShort(EcodriveError):
    """Trip is too short to score (needs >= 2 samples and >= one window)."""


class NotUniformlySampled(EcodriveError):
    """Scoring input must be on a uniform time grid."""


# --- trip generation -----------------------------------------------------------

class EmptyRoute(EcodriveError):
    """Route has no segments."""


class MalformedRoute(EcodriveError):
    """Route file line cannot be parsed."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# --- gamification ----------------------------------------------------------------

class GamificationError(EcodriveError):
    """Base class for gamification transition errors."""


class DuplicateTrip(GamificationError):
    """Trip id already present in the profile's history."""


class UnknownDriver(GamificationError):
    """Score does not belong to this profile's driver."""


class UnknownMission(GamificationError):
    """Mission id is not in the rule set's catalog."""


class MissionNotAvailable(GamificationError):
    """Mission is not in the Available state."""


class BadRuleSet(ConfigError):
    """Rules file cannot be parsed or references unknown entities."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
