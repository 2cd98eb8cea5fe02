"""HTTP service: trip upload, scoring, gamification, and query endpoints.

All state lives in a Storage instance; endpoints are thin translations
between HTTP and the storage/gamification layers. Handlers are synchronous
on purpose: the framework runs them on a worker pool and Storage's per-driver
locks provide the serialization the profile transitions need.

Error mapping is uniform: every failure body is
`{"error": {"type", "message", "line"?, "field"?}}` so clients can branch on
`type` without parsing prose.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ecodrive.errors import (
    ConfigError,
    DuplicateTrip,
    EcodriveError,
    InvariantViolation,
    MalformedHeader,
    MalformedRow,
    MissionNotAvailable,
    NotUniformlySampled,
    OutOfOrderTimestamp,
    TooFewSamples,
    TripTooShort,
    UnknownDriver,
    UnknownMission,
)
from ecodrive.gamification import MissionState, PlayerProfile
from ecodrive.model import decode_trip_csv
from ecodrive.scoring import ScoringConfig
from ecodrive.storage import Storage

API_PREFIX = "/api/v1"

_DECODE_ERRORS = (MalformedHeader, MalformedRow, OutOfOrderTimestamp, TooFewSamples)
_REJECT_ERRORS = (TripTooShort, NotUniformlySampled)


@dataclass(frozen=True, slots=True)
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8099
    storage_dir: str = "ecodrive-data"
    scoring_config: str = ""   # path to a scoring .cfg; empty = defaults
    rules: str = ""            # path to a .rules file; empty = packaged default
    static_dir: str = ""       # dashboard build to serve at /; empty = API only

    @classmethod
    def from_text(cls, text: str) -> "ServerConfig":
        cfg = cls()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"line {lineno}: expected key = value")
            key, value = key.strip(), value.strip()
            if key == "port":
                cfg = replace(cfg, port=int(value))
            elif key in ("host", "storage_dir", "scoring_config", "rules", "static_dir"):
                cfg = replace(cfg, **{key: value})
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "ServerConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


def _error_body(exc: EcodriveError, extra: dict | None = None) -> dict:
    body = {"type": type(exc).__name__, "message": str(exc)}
    line = getattr(exc, "line", None)
    if line is not None:
        body["line"] = line
    fieldname = getattr(exc, "field", None)
    if fieldname is not None:
        body["field"] = fieldname
    if extra:
        body.update(extra)
    return {"error": body}


def _error(status: int, exc: EcodriveError) -> JSONResponse:
    return JSONResponse(_error_body(exc), status_code=status)


def _profile_body(profile: PlayerProfile, storage: Storage) -> dict:
    """Profile dict extended with the mission catalog detail the UI needs."""
    body = profile.to_dict()
    states = dict(profile.missions)
    body["missions"] = [
        {
            "mission_id": m.mission_id,
            "state": states.get(m.mission_id, MissionState.LOCKED).value,
            "prerequisite_card": m.prerequisite_card,
            "objective": m.describe_objective(),
            "trophy_id": m.trophy_id,
        }
        for m in storage.rules.missions
    ]
    return body


def create_app(
    storage: Storage | None = None, config: ServerConfig | None = None
) -> FastAPI:
    config = config or ServerConfig()
    if storage is None:
        scoring = (
            ScoringConfig.from_file(config.scoring_config)
            if config.scoring_config
            else None
        )
        rules_text = (
            Path(config.rules).read_text(encoding="utf-8") if config.rules else None
        )
        storage = Storage(config.storage_dir, cfg=scoring, rules_text=rules_text)

    app = FastAPI(title="ecodrive", docs_url=None, redoc_url=None)
    app.state.storage = storage

    @app.middleware("http")
    async def request_log(request: Request, call_next):
        start = time.monotonic()
        response = await call_next(request)
        line = {
            "method": request.method,
            "path": request.url.path,
            "status": response.status_code,
            "ms": round((time.monotonic() - start) * 1000, 2),
        }
        print(json.dumps(line, separators=(",", ":")), file=sys.stdout, flush=True)
        return response

    @app.post(API_PREFIX + "/trips", status_code=201)
    async def upload_trip(request: Request) -> Response:
        driver_id = request.headers.get("x-driver-id", "").strip()
        if not driver_id:
            return JSONResponse(
                {"error": {"type": "MissingDriverId",
                           "message": "X-Driver-Id header is required"}},
                status_code=400,
            )
        raw = await request.body()
        try:
            stored, events = storage.add_trip(driver_id, raw)
        except InvariantViolation as exc:
            return _error(400, exc)
        except _DECODE_ERRORS as exc:
            return _error(400, exc)
        except _REJECT_ERRORS as exc:
            return _error(422, exc)
        except DuplicateTrip as exc:
            return _error(409, exc)
        return JSONResponse(
            {
                "trip_id": stored.trip_id,
                "driver_id": driver_id,
                "trip_ecoscore": stored.score.trip_ecoscore,
                "events": [e.to_dict() for e in events],
            },
            status_code=201,
        )

    @app.get(API_PREFIX + "/trips/{trip_id}")
    def get_trip(trip_id: str) -> Response:
        stored = storage.trip(trip_id)
        if stored is None:
            return JSONResponse(
                {"error": {"type": "UnknownTrip", "message": trip_id}},
                status_code=404,
            )
        trip = decode_trip_csv(stored.raw, stored.trip_id, stored.driver_id)
        return JSONResponse(
            {
                "trip_id": stored.trip_id,
                "driver_id": stored.driver_id,
                "received_at": stored.received_at,
                "score": stored.score.to_dict(),
                "path": [[s.lat, s.lon] for s in trip.samples],
            }
        )

    @app.get(API_PREFIX + "/drivers/{driver_id}/trips")
    def list_trips(driver_id: str) -> Response:
        trips = sorted(storage.trips_for(driver_id), key=lambda t: t.trip_id)
        return JSONResponse(
            {
                "driver_id": driver_id,
                "trips": [
                    {
                        "trip_id": t.trip_id,
                        "received_at": t.received_at,
                        "trip_ecoscore": t.score.trip_ecoscore,
                    }
                    for t in trips
                ],
            }
        )

    @app.get(API_PREFIX + "/drivers/{driver_id}/profile")
    def get_profile(driver_id: str) -> Response:
        try:
            profile = storage.profile(driver_id)
        except UnknownDriver as exc:
            return _error(404, exc)
        return JSONResponse(_profile_body(profile, storage))

    @app.get(API_PREFIX + "/leaderboard")
    def get_leaderboard(n: int = 10) -> Response:
        entries = storage.top(max(n, 0))
        return JSONResponse(
            {
                "entries": [
                    {
                        "driver_id": d,
                        "skill_points": p,
                        "badge_count": b,
                        "trophy_count": t,
                    }
                    for d, p, b, t in entries
                ]
            }
        )

    @app.post(API_PREFIX + "/drivers/{driver_id}/missions/{mission_id}/accept")
    def accept(driver_id: str, mission_id: str) -> Response:
        try:
            profile = storage.accept(driver_id, mission_id)
        except (UnknownDriver, UnknownMission) as exc:
            return _error(404, exc)
        except MissionNotAvailable as exc:
            return _error(409, exc)
        return JSONResponse(
            {
                "driver_id": driver_id,
                "mission_id": mission_id,
                "state": dict(profile.missions)[mission_id].value,
            }
        )

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True))

    return app


def run(config: ServerConfig) -> None:
    import uvicorn

    app = create_app(config=config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
