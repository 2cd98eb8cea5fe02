import type { ApiClient, Mission } from "../api.js";
import { ApiError } from "../api.js";
import { el } from "../dom.js";

export interface MissionBoardHooks {
  /** Called after a successful accept so the host can refetch the profile. */
  onChanged: () => void;
  /** Called on an accept conflict; the host re-renders with this notice. */
  onConflict: (message: string) => void;
}

const STATE_ORDER = { available: 0, accepted: 1, completed: 2, locked: 3 } as const;

/**
 * Mission list grouped by state. Accept goes through the API and nowhere
 * else; the button stays disabled while its request is in flight, and a
 * conflict (someone accepted faster, or the mission moved) is shown as a
 * notice rather than an error page.
 */
export function renderMissionBoard(
  driverId: string,
  missions: Mission[],
  api: ApiClient,
  hooks: MissionBoardHooks,
  initialNotice = "",
): HTMLElement {
  const root = el("section", { class: "missions", "data-view": "missions" });
  root.append(el("h2", {}, "Missions"));
  const notice = el("p", { class: "notice", role: "status" }, initialNotice);
  notice.hidden = initialNotice === "";
  root.append(notice);

  const list = el("ul", { class: "mission-list" });
  const sorted = [...missions].sort(
    (a, b) => STATE_ORDER[a.state] - STATE_ORDER[b.state],
  );
  for (const mission of sorted) {
    list.append(renderMission(mission, driverId, api, hooks, notice));
  }
  root.append(list);
  return root;
}

function renderMission(
  mission: Mission,
  driverId: string,
  api: ApiClient,
  hooks: MissionBoardHooks,
  notice: HTMLElement,
): HTMLElement {
  const item = el(
    "li",
    { class: `mission mission-${mission.state}`, "data-mission": mission.mission_id },
    el("span", { class: "mission-name" }, mission.mission_id),
    el("span", { class: "mission-state" }, mission.state),
    el("p", { class: "mission-objective" }, mission.objective),
  );

  if (mission.state === "locked") {
    item.append(
      el(
        "p",
        { class: "mission-prereq" },
        `requires card: ${mission.prerequisite_card}`,
      ),
    );
  }
  if (mission.state === "completed") {
    item.append(el("span", { class: "trophy", "data-trophy": mission.trophy_id }, mission.trophy_id));
  }

  if (mission.state === "available") {
    const button = el("button", { class: "accept" }, "Accept");
    button.addEventListener("click", () => {
      void acceptFlow(button, mission, driverId, api, hooks, notice);
    });
    item.append(button);
  }
  return item;
}

async function acceptFlow(
  button: HTMLButtonElement,
  mission: Mission,
  driverId: string,
  api: ApiClient,
  hooks: MissionBoardHooks,
  notice: HTMLElement,
): Promise<void> {
  if (button.disabled) return;
  button.disabled = true;
  try {
    await api.acceptMission(driverId, mission.mission_id);
    hooks.onChanged();
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      hooks.onConflict(
        `"${mission.mission_id}" is not available any more; refreshed.`,
      );
    } else {
      notice.textContent = err instanceof Error ? err.message : String(err);
      notice.hidden = false;
      button.disabled = false;
    }
  }
}
