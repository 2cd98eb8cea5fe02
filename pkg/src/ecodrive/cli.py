"""Command-line entry point.

Subcommands: score, simulate, obd-decode, serve.

Exit codes are part of the contract:
    0  success
    1  runtime failure (including any bad line in an OBD log)
    2  usage or input error (bad flags, unreadable files, malformed input)
    3  domain rejection (structurally valid input the pipeline refuses)
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ecodrive.errors import (
    ConfigError,
    EcodriveError,
    MalformedRoute,
    EmptyRoute,
    NotUniformlySampled,
    TooFewSamples,
    TripTooShort,
)
from ecodrive.model import decode_trip_csv, encode_trip_csv
from ecodrive.obd import decode_hex_log
from ecodrive.scoring import ScoringConfig, score_trip

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_REJECTED = 3


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc.strerror}", EXIT_USAGE))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_score(args: argparse.Namespace) -> int:
    raw = _read_bytes(args.trip)
    try:
        cfg = ScoringConfig.from_file(args.config) if args.config else ScoringConfig()
    except (OSError, ConfigError) as exc:
        return _fail(f"bad config: {exc}", EXIT_USAGE)

    trip_id = Path(args.trip).stem
    try:
        trip = decode_trip_csv(raw, trip_id, "local")
    except EcodriveError as exc:
        return _fail(f"cannot decode {args.trip}: {exc}", EXIT_USAGE)

    try:
        score = score_trip(trip, cfg, resample_period_ms=args.period_ms)
    except (TripTooShort, NotUniformlySampled, TooFewSamples) as exc:
        return _fail(f"trip rejected: {exc}", EXIT_REJECTED)

    if args.json:
        print(json.dumps(score.to_dict(), indent=2))
        return EXIT_OK

    print(f"trip {score.trip_id}: {len(score.windows)} windows")
    header = f"{'win':>3} {'eco':>6} {'agg':>6}  " + " ".join(
        f"{name:>12}" for name in sorted(score.windows[0].parameters)
    )
    print(header)
    for w in score.windows:
        params = " ".join(f"{w.parameters[k]:>12.4f}" for k in sorted(w.parameters))
        print(f"{w.window_index:>3} {w.eco:>6.4f} {w.aggressiveness:>6.4f}  {params}")
    print(f"eco_mean={score.eco_mean:.4f} agg_mean={score.agg_mean:.4f}")
    print(f"trip_ecoscore: {score.trip_ecoscore}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    from ecodrive import tripgen

    try:
        factory = tripgen.PROFILE_FACTORIES[tripgen.Style(args.profile)]
    except ValueError:
        return _fail(f"unknown profile {args.profile!r}", EXIT_USAGE)
    try:
        route = tripgen.load_route(args.route)
    except OSError as exc:
        return _fail(f"cannot read route {args.route}: {exc.strerror}", EXIT_USAGE)
    except (MalformedRoute, EmptyRoute) as exc:
        return _fail(f"bad route: {exc}", EXIT_USAGE)

    trip = tripgen.generate_trip(
        factory(args.seed), route, period_ms=args.period_ms,
        trip_id=f"{args.profile}-{args.seed}", driver_id=f"driver-{args.profile}",
    )
    data = encode_trip_csv(trip)
    if args.output == "-":
        sys.stdout.write(data.decode("utf-8"))
    else:
        Path(args.output).write_bytes(data)
        print(f"wrote {args.output}: {len(trip.samples)} samples, "
              f"{trip.duration_ms / 1000:.0f} s")
    return EXIT_OK


def cmd_obd_decode(args: argparse.Namespace) -> int:
    text = _read_bytes(args.hexlog).decode("utf-8", errors="replace")
    result = decode_hex_log(text)
    for ts, reading in result.readings:
        print(f"{ts} {reading.channel.value} {reading.value:g}")
    for err in result.errors:
        print(f"error: line {err.line}: {err.message}", file=sys.stderr)
    return EXIT_RUNTIME if result.errors else EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from ecodrive import server

    try:
        config = server.ServerConfig.from_file(args.config) if args.config \
            else server.ServerConfig()
    except OSError as exc:
        return _fail(f"cannot read config {args.config}: {exc.strerror}", EXIT_USAGE)
    except ConfigError as exc:
        return _fail(f"bad config: {exc}", EXIT_USAGE)
    server.run(config)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecodrive", description="eco-driving telemetry scoring toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score a trip CSV")
    p.add_argument("trip")
    p.add_argument("--config", default="", help="scoring config file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--period-ms", type=int, default=1000,
                   help="resample period (default 1000)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("simulate", help="generate a synthetic trip")
    p.add_argument("--profile", required=True,
                   choices=["smooth", "aggressive", "mixed"])
    p.add_argument("--route", required=True, help="route file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--period-ms", type=int, default=1000)
    p.add_argument("-o", "--output", required=True, help="output CSV ('-' = stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("obd-decode", help="decode an OBD-II hex log")
    p.add_argument("hexlog")
    p.set_defaults(func=cmd_obd_decode)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default="", help="server config file")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except EcodriveError as exc:
        return _fail(str(exc), EXIT_RUNTIME)


if __name__ == "__main__":
    sys.exit(main())
