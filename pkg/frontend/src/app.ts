import { ApiClient, ApiError } from "./api.js";
import { clear, el } from "./dom.js";
import { renderLeaderboard } from "./views/leaderboard.js";
import { renderMissionBoard } from "./views/missions.js";
import { renderProfile, renderUnknownDriver } from "./views/profile.js";
import { renderTripReplay } from "./views/replay.js";

export const POLL_INTERVAL_MS = 10_000;

type Tab = "profile" | "missions" | "trips" | "leaderboard";
const TABS: Tab[] = ["profile", "missions", "trips", "leaderboard"];

/**
 * Single-page shell. All state lives in (driverId, tab, selectedTrip) and
 * every render is a fresh fetch, so the UI is always reconstructible from
 * the API alone. The leaderboard refreshes on a 10 s poll while visible.
 */
export class DashboardApp {
  private driverId = "";
  private tab: Tab = "leaderboard";
  private selectedTrip: string | null = null;
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  private epoch = 0;
  private missionNotice = ""; // one-shot, survives exactly one re-render

  private readonly content = el("main", { class: "content" });

  constructor(private readonly api: ApiClient) {}

  mount(root: HTMLElement): void {
    clear(root);
    root.append(this.renderChrome(), this.content);
    this.show(this.tab);
  }

  /** Switch tab and render; also restarts or stops the leaderboard poll. */
  show(tab: Tab): void {
    this.tab = tab;
    if (this.pollTimer !== null) {
      clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
    if (tab === "leaderboard") {
      this.pollTimer = setInterval(() => {
        void this.renderCurrent();
      }, POLL_INTERVAL_MS);
    }
    void this.renderCurrent();
  }

  setDriver(driverId: string): void {
    this.driverId = driverId.trim();
    this.selectedTrip = null;
    this.show(this.driverId ? "profile" : "leaderboard");
  }

  openTrip(tripId: string): void {
    this.selectedTrip = tripId;
    void this.renderCurrent();
  }

  private renderChrome(): HTMLElement {
    const input = el("input", {
      type: "text",
      placeholder: "driver id",
      class: "driver-input",
      "aria-label": "driver id",
    });
    const load = el("button", { class: "driver-load" }, "Load");
    load.addEventListener("click", () => this.setDriver(input.value));
    input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") this.setDriver(input.value);
    });

    const nav = el("nav", { class: "tabs" });
    for (const tab of TABS) {
      const button = el("button", { class: "tab", "data-tab": tab }, tab);
      button.addEventListener("click", () => this.show(tab));
      nav.append(button);
    }
    return el(
      "header",
      { class: "chrome" },
      el("h1", {}, "ecodrive"),
      el("div", { class: "driver-pick" }, input, load),
      nav,
    );
  }

  private async renderCurrent(): Promise<void> {
    const epoch = ++this.epoch;
    let view: HTMLElement;
    try {
      view = await this.buildView();
    } catch (err) {
      view = this.errorView(err);
    }
    if (epoch !== this.epoch) return; // a newer render superseded this one
    clear(this.content);
    this.content.append(view);
  }

  private async buildView(): Promise<HTMLElement> {
    switch (this.tab) {
      case "leaderboard":
        return renderLeaderboard(await this.api.leaderboard());
      case "profile": {
        if (!this.driverId) return this.pickDriverView();
        return renderProfile(await this.api.profile(this.driverId));
      }
      case "missions": {
        if (!this.driverId) return this.pickDriverView();
        const profile = await this.api.profile(this.driverId);
        const notice = this.missionNotice;
        this.missionNotice = "";
        return renderMissionBoard(
          this.driverId,
          profile.missions,
          this.api,
          {
            onChanged: () => void this.renderCurrent(),
            onConflict: (message) => {
              this.missionNotice = message;
              void this.renderCurrent();
            },
          },
          notice,
        );
      }
      case "trips": {
        if (!this.driverId) return this.pickDriverView();
        if (this.selectedTrip) {
          return renderTripReplay(await this.api.trip(this.selectedTrip));
        }
        return this.tripListView(await this.api.trips(this.driverId));
      }
    }
  }

  private tripListView(
    trips: { trip_id: string; trip_ecoscore: number }[],
  ): HTMLElement {
    const root = el("section", { class: "trips", "data-view": "trips" });
    root.append(el("h2", {}, "Trips"));
    if (trips.length === 0) {
      root.append(el("p", { class: "empty-state" }, "No trips recorded yet."));
      return root;
    }
    const list = el("ul", { class: "trip-list" });
    for (const trip of trips) {
      const open = el("button", { class: "trip-open", "data-trip": trip.trip_id },
        `${trip.trip_id} - score ${trip.trip_ecoscore}`);
      open.addEventListener("click", () => this.openTrip(trip.trip_id));
      list.append(el("li", {}, open));
    }
    root.append(list);
    return root;
  }

  private pickDriverView(): HTMLElement {
    return el(
      "section",
      { class: "empty-state", "data-view": "pick-driver" },
      el("p", {}, "Enter a driver id above to see their profile."),
    );
  }

  private errorView(err: unknown): HTMLElement {
    if (err instanceof ApiError && err.status === 404 && this.driverId) {
      return renderUnknownDriver(this.driverId);
    }
    const message = err instanceof Error ? err.message : String(err);
    return el(
      "section",
      { class: "error-state", "data-view": "error" },
      el("h2", {}, "Something went wrong"),
      el("p", {}, message),
    );
  }
}
