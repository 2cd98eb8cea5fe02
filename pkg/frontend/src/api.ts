/**
 * Typed client for the /api/v1 endpoints.
 *
 * Every number the dashboard shows comes out of these response types; the
 * client never derives or recomputes a score. The fetch function is
 * injectable so tests can intercept requests and audit exactly that.
 */

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface WindowFeatures {
  duration_s: number;
  sample_count: number;
  speed_mean_kmh: number;
  speed_variance: number;
  rpm_mean: number;
  rpm_variance: number;
  throttle_variance: number;
  accel_p95_mps2: number;
  lateral_accel_p95_mps2: number;
  abrupt_brakes: number;
  smooth_brakes: number;
  brake_peak_decels_mps2: number[];
  brake_durations_s: number[];
  shift_up_events: number;
  high_rpm_unshifted_s: number;
  event_rate_per_min: number;
  hr_mean_bpm: number;
  cruising: boolean;
}

export interface WindowScore {
  window_index: number;
  scores: Record<string, number>;
  eco: number;
  aggressiveness: number;
  features: WindowFeatures;
}

export interface TripScore {
  trip_id: string;
  driver_id: string;
  trip_ecoscore: number;
  eco_mean: number;
  agg_mean: number;
  windows: WindowScore[];
}

export interface TripDetail {
  trip_id: string;
  driver_id: string;
  received_at: number;
  score: TripScore;
  path: [number, number][];
}

export interface TripSummary {
  trip_id: string;
  received_at: number;
  trip_ecoscore: number;
}

export type MissionState = "locked" | "available" | "accepted" | "completed";

export interface Mission {
  mission_id: string;
  state: MissionState;
  prerequisite_card: string;
  objective: string;
  trophy_id: string;
}

export interface Profile {
  driver_id: string;
  skill_points: number;
  level: number;
  badges: string[];
  knowledge_cards: string[];
  missions: Mission[];
  trophies: string[];
  avatar_parts: string[];
  trip_history: [string, number][];
}

export interface LeaderboardEntry {
  driver_id: string;
  skill_points: number;
  badge_count: number;
  trophy_count: number;
}

export interface ApiErrorBody {
  type: string;
  message: string;
  line?: number;
  field?: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(`${body.type}: ${body.message}`);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let body: ApiErrorBody = { type: "UnknownError", message: response.statusText };
  try {
    const parsed = (await response.json()) as { error?: ApiErrorBody };
    if (parsed.error) body = parsed.error;
  } catch {
    // non-JSON error body; keep the status-line fallback
  }
  return new ApiError(response.status, body);
}

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
    private readonly base: string = "/api/v1",
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.base + path);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  profile(driverId: string): Promise<Profile> {
    return this.getJson(`/drivers/${encodeURIComponent(driverId)}/profile`);
  }

  async trips(driverId: string): Promise<TripSummary[]> {
    const body = await this.getJson<{ trips: TripSummary[] }>(
      `/drivers/${encodeURIComponent(driverId)}/trips`,
    );
    return body.trips;
  }

  trip(tripId: string): Promise<TripDetail> {
    return this.getJson(`/trips/${encodeURIComponent(tripId)}`);
  }

  async leaderboard(n = 10): Promise<LeaderboardEntry[]> {
    const body = await this.getJson<{ entries: LeaderboardEntry[] }>(
      `/leaderboard?n=${n}`,
    );
    return body.entries;
  }

  async acceptMission(driverId: string, missionId: string): Promise<MissionState> {
    const response = await this.fetchFn(
      `${this.base}/drivers/${encodeURIComponent(driverId)}` +
        `/missions/${encodeURIComponent(missionId)}/accept`,
      { method: "POST" },
    );
    if (!response.ok) throw await parseError(response);
    const body = (await response.json()) as { state: MissionState };
    return body.state;
  }
}
