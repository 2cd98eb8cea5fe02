"""Disk-backed trip and profile store.

Layout under one root directory:

    log.jsonl        append-only operation log (trip uploads, mission accepts)
    trips/<id>.csv   raw trip bytes exactly as uploaded
    scoring.cfg      scoring configuration frozen at first boot
    active.rules     gamification rules frozen at first boot

Profiles are never written to disk. They are rebuilt on boot by replaying the
log, which works because every gamification transition is a pure function.
The config and rules are frozen into the root so a replay after restart sees
the identical pipeline that scored the trips originally.

Writes serialize per driver (profile transitions) plus one global lock for id
assignment and log appends. Reads take no locks: they see immutable profile
values and never block uploads.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import threading
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ecodrive.errors import DuplicateTrip, UnknownDriver
from ecodrive.gamification import (
    Event,
    PlayerProfile,
    accept_mission,
    apply_trip,
    leaderboard,
    new_profile,
    parse_rules,
)
from ecodrive.model import decode_trip_csv
from ecodrive.scoring import ScoringConfig, TripScore, score_trip

_PENDING_ID = "pending"


def default_rules_text() -> str:
    return resources.files("ecodrive.data").joinpath("default.rules").read_text("utf-8")


@dataclass(frozen=True, slots=True)
class StoredTrip:
    trip_id: str
    driver_id: str
    received_at: float
    raw: bytes
    score: TripScore


class Storage:
    """Single-process store; one instance owns its root directory."""

    def __init__(
        self,
        root: str | Path,
        cfg: ScoringConfig | None = None,
        rules_text: str | None = None,
    ) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "trips").mkdir(exist_ok=True)

        cfg_path = self.root / "scoring.cfg"
        if cfg_path.exists():
            self.cfg = ScoringConfig.from_file(cfg_path)
        else:
            self.cfg = cfg or ScoringConfig()
            cfg_path.write_text(self.cfg.to_text(), encoding="utf-8")

        rules_path = self.root / "active.rules"
        if rules_path.exists():
            text = rules_path.read_text(encoding="utf-8")
        else:
            text = rules_text if rules_text is not None else default_rules_text()
            rules_path.write_text(text, encoding="utf-8")
        self.rules = parse_rules(text)

        self._trips: dict[str, StoredTrip] = {}
        self._profiles: dict[str, PlayerProfile] = {}
        self._seen_hashes: dict[str, set[str]] = {}
        self._trip_seq = 0
        self._io_lock = threading.Lock()
        self._driver_locks: dict[str, threading.Lock] = {}
        self._driver_locks_guard = threading.Lock()

        self._replay()
        self._log_file = (self.root / "log.jsonl").open("a", encoding="utf-8")

    # -- boot -------------------------------------------------------------

    def _replay(self) -> None:
        log = self.root / "log.jsonl"
        if not log.exists():
            return
        with log.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                op = json.loads(line)
                if op["op"] == "trip":
                    trip_id = op["trip_id"]
                    driver_id = op["driver_id"]
                    raw = (self.root / "trips" / f"{trip_id}.csv").read_bytes()
                    trip = decode_trip_csv(raw, trip_id, driver_id)
                    score = score_trip(trip, self.cfg)
                    stored = StoredTrip(
                        trip_id, driver_id, op["received_at"], raw, score
                    )
                    profile, _events = self._gamify(stored)
                    self._commit_trip(stored, _sha256(raw), profile)
                    self._trip_seq += 1
                elif op["op"] == "accept":
                    did = op["driver_id"]
                    self._profiles[did] = accept_mission(
                        self._profiles[did], op["mission_id"]
                    )

    def _gamify(self, stored: StoredTrip) -> tuple[PlayerProfile, tuple[Event, ...]]:
        profile = self._profiles.get(stored.driver_id) or new_profile(
            stored.driver_id, self.rules
        )
        return apply_trip(profile, stored.score, self.rules)

    def _commit_trip(
        self, stored: StoredTrip, digest: str, profile: PlayerProfile
    ) -> None:
        self._trips[stored.trip_id] = stored
        self._profiles[stored.driver_id] = profile
        self._seen_hashes.setdefault(stored.driver_id, set()).add(digest)

    # -- locking ----------------------------------------------------------

    def _driver_lock(self, driver_id: str) -> threading.Lock:
        with self._driver_locks_guard:
            lock = self._driver_locks.get(driver_id)
            if lock is None:
                lock = self._driver_locks[driver_id] = threading.Lock()
            return lock

    # -- writes -----------------------------------------------------------

    def add_trip(self, driver_id: str, raw: bytes) -> tuple[StoredTrip, tuple[Event, ...]]:
        """Store, score, and gamify one upload. All-or-nothing: any decode,
        scoring, or gamification failure leaves disk and memory untouched."""
        digest = _sha256(raw)
        with self._driver_lock(driver_id):
            if digest in self._seen_hashes.get(driver_id, set()):
                raise DuplicateTrip(f"identical trip already stored for {driver_id!r}")

            # run the whole pipeline before touching any state, so a failure
            # anywhere cannot leave a partial write behind
            trip = decode_trip_csv(raw, _PENDING_ID, driver_id)
            pending = score_trip(trip, self.cfg)

            with self._io_lock:
                trip_id = f"t{self._trip_seq + 1:06d}"
                score = dataclasses.replace(pending, trip_id=trip_id)
                stored = StoredTrip(trip_id, driver_id, time.time(), raw, score)
                profile, events = self._gamify(stored)
                # disk first, memory last: a failed write leaves the store
                # exactly as a replay of the log would rebuild it
                (self.root / "trips" / f"{trip_id}.csv").write_bytes(raw)
                self._append_log(
                    {
                        "op": "trip",
                        "trip_id": trip_id,
                        "driver_id": driver_id,
                        "received_at": stored.received_at,
                        "sha256": digest,
                    }
                )
                self._commit_trip(stored, digest, profile)
                self._trip_seq += 1
            return stored, events

    def accept(self, driver_id: str, mission_id: str) -> PlayerProfile:
        with self._driver_lock(driver_id):
            profile = self._profiles.get(driver_id)
            if profile is None:
                raise UnknownDriver(driver_id)
            updated = accept_mission(profile, mission_id)
            with self._io_lock:
                self._append_log(
                    {"op": "accept", "driver_id": driver_id,
                     "mission_id": mission_id, "at": time.time()}
                )
                self._profiles[driver_id] = updated
            return updated

    def _append_log(self, op: dict) -> None:
        self._log_file.write(json.dumps(op, separators=(",", ":")) + "\n")
        self._log_file.flush()

    # -- reads ------------------------------------------------------------

    def trip(self, trip_id: str) -> StoredTrip | None:
        return self._trips.get(trip_id)

    def profile(self, driver_id: str) -> PlayerProfile:
        profile = self._profiles.get(driver_id)
        if profile is None:
            raise UnknownDriver(driver_id)
        return profile

    def profiles(self) -> list[PlayerProfile]:
        return list(self._profiles.values())

    def trips_for(self, driver_id: str) -> list[StoredTrip]:
        return [t for t in self._trips.values() if t.driver_id == driver_id]

    def top(self, n: int) -> list[tuple[str, int, int, int]]:
        return leaderboard(self.profiles(), n)

    def close(self) -> None:
        self._log_file.close()


def _sha256(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()
