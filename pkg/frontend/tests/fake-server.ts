/**
 * In-memory stand-in for the HTTP API. Every request the dashboard makes is
 * recorded, which is what lets the e2e test audit that displayed numbers
 * came from responses and nowhere else.
 */

import type {
  FetchLike,
  LeaderboardEntry,
  Mission,
  Profile,
  TripDetail,
  TripSummary,
  WindowFeatures,
  WindowScore,
} from "../src/api.js";

export interface LoggedRequest {
  method: string;
  url: string;
}

interface Routed {
  status: number;
  body: unknown;
}

export class FakeServer {
  readonly requests: LoggedRequest[] = [];
  readonly profiles = new Map<string, Profile>();
  readonly trips = new Map<string, TripDetail>();
  readonly tripLists = new Map<string, TripSummary[]>();
  leaderboard: LeaderboardEntry[] = [];
  acceptMode: "ok" | "conflict" = "ok";

  private gate: Promise<void> | null = null;

  /** Hold every subsequent request open until the returned release runs. */
  hold(): () => void {
    let release!: () => void;
    this.gate = new Promise((resolve) => {
      release = () => {
        this.gate = null;
        resolve();
      };
    });
    return release;
  }

  readonly fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    this.requests.push({ method, url });
    if (this.gate) await this.gate;
    const routed = this.route(method, url);
    return new Response(JSON.stringify(routed.body), {
      status: routed.status,
      headers: { "content-type": "application/json" },
    });
  };

  requestsTo(pattern: RegExp): LoggedRequest[] {
    return this.requests.filter((r) => pattern.test(r.url));
  }

  private route(method: string, url: string): Routed {
    const accept = url.match(/^\/api\/v1\/drivers\/([^/]+)\/missions\/([^/]+)\/accept$/);
    if (accept && method === "POST") {
      return this.routeAccept(accept[1]!, accept[2]!);
    }
    const profile = url.match(/^\/api\/v1\/drivers\/([^/]+)\/profile$/);
    if (profile) {
      const body = this.profiles.get(profile[1]!);
      return body
        ? { status: 200, body }
        : notFound("UnknownDriver", profile[1]!);
    }
    const trips = url.match(/^\/api\/v1\/drivers\/([^/]+)\/trips$/);
    if (trips) {
      return {
        status: 200,
        body: { driver_id: trips[1], trips: this.tripLists.get(trips[1]!) ?? [] },
      };
    }
    const trip = url.match(/^\/api\/v1\/trips\/([^/]+)$/);
    if (trip) {
      const body = this.trips.get(trip[1]!);
      return body ? { status: 200, body } : notFound("UnknownTrip", trip[1]!);
    }
    if (/^\/api\/v1\/leaderboard/.test(url)) {
      return { status: 200, body: { entries: this.leaderboard } };
    }
    return notFound("UnknownRoute", url);
  }

  private routeAccept(driverId: string, missionId: string): Routed {
    if (this.acceptMode === "conflict") {
      return {
        status: 409,
        body: {
          error: { type: "MissionNotAvailable", message: missionId },
        },
      };
    }
    const profile = this.profiles.get(driverId);
    if (!profile) return notFound("UnknownDriver", driverId);
    const mission = profile.missions.find((m) => m.mission_id === missionId);
    if (!mission) return notFound("UnknownMission", missionId);
    mission.state = "accepted";
    return {
      status: 200,
      body: { driver_id: driverId, mission_id: missionId, state: "accepted" },
    };
  }
}

function notFound(type: string, message: string): Routed {
  return { status: 404, body: { error: { type, message } } };
}

// ---- fixture builders ----

export function makeMission(overrides: Partial<Mission> = {}): Mission {
  return {
    mission_id: "steady-hands",
    state: "available",
    prerequisite_card: "smooth-braking",
    objective: "trip ecoscore at least 75",
    trophy_id: "bronze-wheel",
    ...overrides,
  };
}

export function makeProfile(overrides: Partial<Profile> = {}): Profile {
  return {
    driver_id: "alex",
    skill_points: 0,
    level: 1,
    badges: [],
    knowledge_cards: [],
    missions: [],
    trophies: [],
    avatar_parts: [],
    trip_history: [],
    ...overrides,
  };
}

export function makeFeatures(overrides: Partial<WindowFeatures> = {}): WindowFeatures {
  return {
    duration_s: 30,
    sample_count: 30,
    speed_mean_kmh: 48.2,
    speed_variance: 2.1,
    rpm_mean: 1810,
    rpm_variance: 1200,
    throttle_variance: 9.4,
    accel_p95_mps2: 0.8,
    lateral_accel_p95_mps2: 0.6,
    abrupt_brakes: 0,
    smooth_brakes: 1,
    brake_peak_decels_mps2: [1.2],
    brake_durations_s: [2.0],
    shift_up_events: 1,
    high_rpm_unshifted_s: 0,
    event_rate_per_min: 2,
    hr_mean_bpm: 0,
    cruising: true,
    ...overrides,
  };
}

export function makeWindow(
  index: number,
  overrides: Partial<Omit<WindowScore, "features">> = {},
  features: Partial<WindowFeatures> = {},
): WindowScore {
  return {
    window_index: index,
    scores: {
      shift_up: 0.9,
      braking: 0.8,
      acceleration: 0.95,
      rpm: 0.99,
      cruising: 0.88,
    },
    eco: 0.9,
    aggressiveness: 0.1,
    features: makeFeatures(features),
    ...overrides,
  };
}

export function makeTrip(overrides: Partial<TripDetail> = {}): TripDetail {
  return {
    trip_id: "t000001",
    driver_id: "alex",
    received_at: 1723800000,
    score: {
      trip_id: "t000001",
      driver_id: "alex",
      // deliberately NOT derivable from the window values below: the UI
      // must show this number verbatim, not recompute it
      trip_ecoscore: 87,
      eco_mean: 0.9,
      agg_mean: 0.1,
      windows: [
        makeWindow(0),
        makeWindow(1),
        makeWindow(2, { aggressiveness: 0.62 }, { abrupt_brakes: 2, smooth_brakes: 0 }),
        makeWindow(3),
      ],
    },
    path: [
      [45.0, 7.0],
      [45.001, 7.001],
      [45.002, 7.0015],
      [45.003, 7.003],
    ],
    ...overrides,
  };
}
