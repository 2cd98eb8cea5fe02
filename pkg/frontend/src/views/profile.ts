import type { Profile } from "../api.js";
import { el } from "../dom.js";

/** Level, points, badge grid, avatar with unlocked parts, card shelf. */
export function renderProfile(profile: Profile): HTMLElement {
  const root = el("section", { class: "profile", "data-view": "profile" });

  root.append(
    el(
      "header",
      { class: "profile-head" },
      el("h2", {}, profile.driver_id),
      el("p", { class: "level" }, `Level ${profile.level}`),
      el(
        "p",
        { class: "points", "data-field": "skill-points" },
        `${profile.skill_points} pts`,
      ),
    ),
  );

  const avatar = el("div", { class: "avatar" }, el("span", { class: "avatar-base" }, "driver"));
  if (profile.avatar_parts.length === 0) {
    avatar.append(el("p", { class: "muted" }, "base avatar"));
  }
  for (const part of profile.avatar_parts) {
    avatar.append(el("span", { class: "avatar-part", "data-part": part }, part));
  }
  root.append(el("h3", {}, "Avatar"), avatar);

  const badges = el("ul", { class: "badge-grid" });
  for (const badge of profile.badges) {
    badges.append(el("li", { class: "badge", "data-badge": badge }, badge));
  }
  root.append(el("h3", {}, "Badges"), badges.childElementCount ? badges : emptyNote("no badges yet"));

  const cards = el("ul", { class: "card-shelf" });
  for (const card of profile.knowledge_cards) {
    cards.append(el("li", { class: "knowledge-card", "data-card": card }, card));
  }
  root.append(
    el("h3", {}, "Knowledge cards"),
    cards.childElementCount ? cards : emptyNote("no cards yet"),
  );

  const trophies = el("ul", { class: "trophy-row" });
  for (const trophy of profile.trophies) {
    trophies.append(el("li", { class: "trophy", "data-trophy": trophy }, trophy));
  }
  root.append(
    el("h3", {}, "Trophies"),
    trophies.childElementCount ? trophies : emptyNote("no trophies yet"),
  );

  return root;
}

export function renderUnknownDriver(driverId: string): HTMLElement {
  return el(
    "section",
    { class: "empty-state", "data-view": "unknown-driver" },
    el("h2", {}, "Unknown driver"),
    el("p", {}, `No trips recorded for "${driverId}" yet. Upload one to get started.`),
  );
}

function emptyNote(text: string): HTMLElement {
  return el("p", { class: "muted" }, text);
}
