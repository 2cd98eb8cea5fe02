/**
 * End-to-end against an intercepted fetch: the app is driven through the
 * DOM while every request it makes is recorded, so the tests can assert
 * both what renders and where each number came from.
 */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { DashboardApp, POLL_INTERVAL_MS } from "../src/app.js";
import { FakeServer, makeMission, makeProfile, makeTrip } from "./fake-server.js";

function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

function mountApp(server: FakeServer): { app: DashboardApp; root: HTMLElement } {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app")!;
  const app = new DashboardApp(new ApiClient(server.fetch));
  app.mount(root);
  return { app, root };
}

function populated(): FakeServer {
  const server = new FakeServer();
  server.profiles.set(
    "alex",
    makeProfile({
      skill_points: 96,
      badges: ["eco-novice"],
      knowledge_cards: ["smooth-braking"],
      missions: [
        makeMission(),
        makeMission({
          mission_id: "eco-ace",
          state: "locked",
          prerequisite_card: "master-class",
        }),
      ],
    }),
  );
  server.tripLists.set("alex", [
    { trip_id: "t000001", received_at: 1723800000, trip_ecoscore: 87 },
  ]);
  server.trips.set("t000001", makeTrip());
  server.leaderboard = [
    { driver_id: "alex", skill_points: 96, badge_count: 1, trophy_count: 0 },
  ];
  return server;
}

describe("dashboard end to end", () => {
  let server: FakeServer;
  let app: DashboardApp;
  let root: HTMLElement;

  beforeEach(() => {
    server = populated();
    ({ app, root } = mountApp(server));
  });

  afterEach(() => {
    app.show("profile"); // stops the leaderboard poll timer
  });

  it("renders the profile from the API response", async () => {
    app.setDriver("alex");
    await flush();
    expect(root.querySelector("[data-view='profile']")).not.toBeNull();
    expect(root.querySelector("[data-field='skill-points']")?.textContent).toBe("96 pts");
    expect(
      server.requestsTo(/\/drivers\/alex\/profile$/).map((r) => r.method),
    ).toEqual(["GET"]);
  });

  it("shows an explicit unknown-driver state on 404", async () => {
    app.setDriver("ghost");
    await flush();
    expect(root.querySelector("[data-view='unknown-driver']")).not.toBeNull();
    expect(root.textContent).toContain("ghost");
  });

  it("displays the trip ecoscore exactly as the API served it", async () => {
    app.setDriver("alex");
    await flush();
    app.show("trips");
    await flush();
    (root.querySelector("[data-trip='t000001']") as HTMLButtonElement).click();
    await flush();

    // the fixture's headline score (87) is deliberately inconsistent with
    // its own windows (eco 0.9 / agg 0.1 would round to 85), so equality
    // here proves the UI did zero client-side recomputation
    expect(
      root.querySelector("[data-field='trip-ecoscore']")?.textContent,
    ).toBe("87");
    expect(server.requestsTo(/\/trips\/t000001$/)).toHaveLength(1);
    expect(root.querySelectorAll(".window")).toHaveLength(4);
    expect(root.querySelectorAll(".window-abrupt")).toHaveLength(1);
  });

  it("talks to /api/v1 endpoints and nothing else", async () => {
    app.setDriver("alex");
    await flush();
    app.show("trips");
    await flush();
    (root.querySelector("[data-trip='t000001']") as HTMLButtonElement).click();
    await flush();
    app.show("leaderboard");
    await flush();
    app.show("profile");
    await flush();

    expect(server.requests.length).toBeGreaterThanOrEqual(5);
    for (const request of server.requests) {
      expect(request.url).toMatch(/^\/api\/v1\//);
    }
  });

  it("accepts a mission through the API and refetches", async () => {
    app.setDriver("alex");
    await flush();
    app.show("missions");
    await flush();

    const release = server.hold();
    const button = root.querySelector("button.accept") as HTMLButtonElement;
    button.click();
    expect(button.disabled).toBe(true); // in flight

    release();
    await flush();
    await flush();

    const accepts = server.requestsTo(/\/missions\/steady-hands\/accept$/);
    expect(accepts.map((r) => r.method)).toEqual(["POST"]);
    const stateOnBoard = root.querySelector(
      "[data-mission='steady-hands'] .mission-state",
    );
    expect(stateOnBoard?.textContent).toBe("accepted");
    expect(root.querySelector("button.accept")).toBeNull();
  });

  it("renders a 409 on accept as a notice, not a dead end", async () => {
    server.acceptMode = "conflict";
    app.setDriver("alex");
    await flush();
    app.show("missions");
    await flush();

    (root.querySelector("button.accept") as HTMLButtonElement).click();
    await flush();
    await flush();

    const notice = root.querySelector(".notice") as HTMLElement;
    expect(notice.hidden).toBe(false);
    expect(notice.textContent).toContain("steady-hands");
    // the board itself survived and re-rendered
    expect(root.querySelector("[data-view='missions']")).not.toBeNull();
  });

  it("renders the leaderboard in server order with an empty state", async () => {
    await flush();
    expect(
      [...root.querySelectorAll("tbody tr")].map((row) => row.getAttribute("data-driver")),
    ).toEqual(["alex"]);

    server.leaderboard = [];
    app.show("leaderboard");
    await flush();
    expect(root.querySelector(".empty-state")).not.toBeNull();
  });
});

describe("leaderboard polling", () => {
  it("refetches every 10 s while visible and stops after leaving", async () => {
    vi.useFakeTimers();
    try {
      const server = populated();
      const { app } = mountApp(server);
      await vi.advanceTimersByTimeAsync(0);
      expect(server.requestsTo(/\/leaderboard/)).toHaveLength(1);

      await vi.advanceTimersByTimeAsync(POLL_INTERVAL_MS);
      expect(server.requestsTo(/\/leaderboard/)).toHaveLength(2);
      await vi.advanceTimersByTimeAsync(POLL_INTERVAL_MS);
      expect(server.requestsTo(/\/leaderboard/)).toHaveLength(3);

      app.show("profile");
      await vi.advanceTimersByTimeAsync(POLL_INTERVAL_MS * 3);
      expect(server.requestsTo(/\/leaderboard/)).toHaveLength(3);
    } finally {
      vi.useRealTimers();
    }
  });
});
