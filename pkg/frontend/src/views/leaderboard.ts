import type { LeaderboardEntry } from "../api.js";
import { el } from "../dom.js";

/** Hall-of-fame table in exactly the order the server returned. */
export function renderLeaderboard(entries: LeaderboardEntry[]): HTMLElement {
  const root = el("section", { class: "leaderboard", "data-view": "leaderboard" });
  root.append(el("h2", {}, "Hall of Fame"));

  if (entries.length === 0) {
    root.append(
      el(
        "p",
        { class: "empty-state" },
        "No drivers on the board yet. Scores appear after the first trip upload.",
      ),
    );
    return root;
  }

  const table = el("table", { class: "board" });
  table.append(
    el(
      "thead",
      {},
      el(
        "tr",
        {},
        el("th", {}, "#"),
        el("th", {}, "driver"),
        el("th", {}, "points"),
        el("th", {}, "badges"),
        el("th", {}, "trophies"),
      ),
    ),
  );
  const body = el("tbody", {});
  entries.forEach((entry, i) => {
    body.append(
      el(
        "tr",
        { "data-driver": entry.driver_id },
        el("td", {}, String(i + 1)),
        el("td", { class: "driver" }, entry.driver_id),
        el("td", { class: "points" }, String(entry.skill_points)),
        el("td", {}, String(entry.badge_count)),
        el("td", {}, String(entry.trophy_count)),
      ),
    );
  });
  table.append(body);
  root.append(table);
  return root;
}
