"""Scoring parameter set and its flat key-value config file codec.

Every knob of the window scorer lives here. The file format is one
`key = value` pair per line (decimal values, comma-separated lists), `#`
comments allowed; unknown keys are rejected. Defaults reproduce the shipped
scoring behaviour and every key can be overridden individually.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from ecodrive.errors import BadBinSpec, ConfigError


@dataclass(frozen=True, slots=True)
class SigmoidParams:
    """Decreasing sigmoid a2 + a1 / (a4 + e^(a3 (x - x0))), bounded in [0, 1]."""

    a1: float = 1.0
    a2: float = 0.0
    a3: float = 1.0
    a4: float = 1.0
    x0: float = 0.0

    def validate(self, name: str = "sigmoid") -> None:
        if self.a1 <= 0 or self.a3 <= 0 or self.a4 <= 0:
            raise ConfigError(f"{name}: a1, a3, a4 must be positive")
        if self.a2 < 0:
            raise ConfigError(f"{name}: a2 must be non-negative")
        if self.a2 + self.a1 / self.a4 > 1.0 + 1e-12:
            raise ConfigError(f"{name}: a2 + a1/a4 must not exceed 1")


@dataclass(frozen=True, slots=True)
class HistogramSpec:
    """Event-intensity histogram: len(weights) == len(edges) + 1, weights in [0, 1]."""

    edges: tuple[float, ...]
    weights: tuple[float, ...]

    def validate(self, name: str = "histogram") -> None:
        if len(self.weights) != len(self.edges) + 1:
            raise BadBinSpec(f"{name}: need len(edges)+1 weights, got {len(self.weights)}")
        for a, b in zip(self.edges, self.edges[1:]):
            if b <= a:
                raise BadBinSpec(f"{name}: edges must be strictly increasing")
        for w in self.weights:
            if not 0.0 <= w <= 1.0:
                raise BadBinSpec(f"{name}: weights must lie in [0, 1]")


@dataclass(frozen=True, slots=True)
class ScoringConfig:
    # time base
    window_s: float = 30.0
    # RPM-variance aggressiveness normalizer (RPM^2): a sustained +-500 RPM
    # oscillation saturates the score at 1
    mu: float = 250_000.0
    # throttle-variance aggressiveness normalizer (%^2)
    mu_throttle: float = 400.0
    # braking events with peak deceleration at or above this are abrupt (m/s^2)
    abrupt_brake_decel_mps2: float = 3.0
    # RPM drop within ~1 s that counts as a gear shift-up
    shift_rpm_drop: float = 500.0
    # heartbeat normalization range
    hr_rest_bpm: float = 60.0
    hr_max_bpm: float = 180.0
    # Trip Ecoscore combination: 100 * (weight_eco*eco_mean - weight_agg*agg_mean)
    weight_eco: float = 1.0
    weight_agg: float = 0.5
    # five-parameter combination weights (must sum to 1)
    combo_shift_up: float = 0.2
    combo_braking: float = 0.2
    combo_acceleration: float = 0.2
    combo_rpm: float = 0.2
    combo_cruising: float = 0.2
    # per-parameter sigmoids; the braking parameter itself is histogram-based,
    # its sigmoid entry is reserved config surface
    sigmoid_shift_up: SigmoidParams = field(
        default_factory=lambda: SigmoidParams(a3=0.8, x0=5.0))
    sigmoid_braking: SigmoidParams = field(
        default_factory=lambda: SigmoidParams(a3=2.0, x0=3.0))
    sigmoid_acceleration: SigmoidParams = field(
        default_factory=lambda: SigmoidParams(a3=2.0, x0=2.5))
    sigmoid_rpm: SigmoidParams = field(
        default_factory=lambda: SigmoidParams(a3=0.004, x0=2500.0))
    sigmoid_cruising: SigmoidParams = field(
        default_factory=lambda: SigmoidParams(a3=0.5, x0=4.0))
    sigmoid_lateral: SigmoidParams = field(
        default_factory=lambda: SigmoidParams(a3=2.0, x0=3.0))
    # braking histogram scores peak decelerations (m/s^2); the acceleration
    # histogram's first edge is also the acceleration-event threshold used by
    # event_rate_per_min
    hist_braking: HistogramSpec = field(default_factory=lambda: HistogramSpec(
        edges=(1.5, 3.0, 4.5), weights=(0.0, 0.25, 0.6, 1.0)))
    hist_acceleration: HistogramSpec = field(default_factory=lambda: HistogramSpec(
        edges=(1.5, 2.5, 3.5), weights=(0.0, 0.25, 0.6, 1.0)))

    def validate(self) -> None:
        if self.window_s <= 0:
            raise ConfigError("window_s must be positive")
        if self.mu <= 0 or self.mu_throttle <= 0:
            raise ConfigError("mu and mu_throttle must be positive")
        if self.abrupt_brake_decel_mps2 <= 0:
            raise ConfigError("abrupt_brake_decel_mps2 must be positive")
        if self.shift_rpm_drop <= 0:
            raise ConfigError("shift_rpm_drop must be positive")
        if self.hr_max_bpm <= self.hr_rest_bpm:
            raise ConfigError("hr_max_bpm must exceed hr_rest_bpm")
        if self.weight_eco < 0 or self.weight_agg < 0:
            raise ConfigError("ecoscore weights must be non-negative")
        combo = self.combo_weights()
        if any(w < 0 for w in combo):
            raise ConfigError("combination weights must be non-negative")
        if abs(sum(combo) - 1.0) > 1e-9:
            raise ConfigError("combination weights must sum to 1")
        for name in ("shift_up", "braking", "acceleration", "rpm", "cruising", "lateral"):
            getattr(self, f"sigmoid_{name}").validate(f"sigmoid.{name}")
        self.hist_braking.validate("hist.braking")
        self.hist_acceleration.validate("hist.acceleration")

    def combo_weights(self) -> tuple[float, float, float, float, float]:
        """(shift_up, braking, acceleration, rpm, cruising) weights."""
        return (self.combo_shift_up, self.combo_braking, self.combo_acceleration,
                self.combo_rpm, self.combo_cruising)

    @property
    def accel_event_mps2(self) -> float:
        """Step acceleration at or above this counts as an acceleration event."""
        return self.hist_acceleration.edges[0]

    # --- flat key-value codec -------------------------------------------------

    def to_text(self) -> str:
        lines = ["# ecodrive scoring configuration"]
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, SigmoidParams):
                base = f.name.replace("sigmoid_", "sigmoid.")
                for p in ("a1", "a2", "a3", "a4", "x0"):
                    lines.append(f"{base}.{p} = {getattr(value, p)!r}")
            elif isinstance(value, HistogramSpec):
                base = f.name.replace("hist_", "hist.")
                lines.append(f"{base}.edges = {','.join(repr(e) for e in value.edges)}")
                lines.append(f"{base}.weights = {','.join(repr(w) for w in value.weights)}")
            else:
                key = f.name.replace("combo_", "combo.")
                lines.append(f"{key} = {value!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ScoringConfig":
        cfg = cls()
        sig_updates: dict[str, dict[str, float]] = {}
        hist_updates: dict[str, dict[str, tuple[float, ...]]] = {}
        plain: dict[str, float] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, _, value = (part.strip() for part in line.partition("="))
            try:
                if key.startswith("sigmoid."):
                    _, name, param = key.split(".")
                    if param not in ("a1", "a2", "a3", "a4", "x0"):
                        raise ConfigError(f"line {lineno}: unknown sigmoid field {param!r}")
                    sig_updates.setdefault(name, {})[param] = float(value)
                elif key.startswith("hist."):
                    _, name, part = key.split(".")
                    if part not in ("edges", "weights"):
                        raise ConfigError(f"line {lineno}: unknown histogram field {part!r}")
                    hist_updates.setdefault(name, {})[part] = tuple(
                        float(v) for v in value.split(",") if v.strip())
                else:
                    field_name = key.replace("combo.", "combo_")
                    if field_name not in _PLAIN_FIELDS:
                        raise ConfigError(f"line {lineno}: unknown key {key!r}")
                    plain[field_name] = float(value)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad number ({exc})") from exc

        updates: dict[str, object] = dict(plain)
        for name, params in sig_updates.items():
            attr = f"sigmoid_{name}"
            if not hasattr(cfg, attr):
                raise ConfigError(f"unknown sigmoid {name!r}")
            updates[attr] = replace(getattr(cfg, attr), **params)
        for name, parts in hist_updates.items():
            attr = f"hist_{name}"
            if not hasattr(cfg, attr):
                raise ConfigError(f"unknown histogram {name!r}")
            updates[attr] = replace(getattr(cfg, attr), **parts)
        cfg = replace(cfg, **updates)
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "ScoringConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def to_file(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")


_PLAIN_FIELDS = {
    f.name for f in fields(ScoringConfig)
    if not f.name.startswith(("sigmoid_", "hist_"))
}
