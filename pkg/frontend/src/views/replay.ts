import type { TripDetail, WindowScore } from "../api.js";
import { el, svgEl } from "../dom.js";

/**
 * Per-trip replay: the route as an SVG path and one timeline segment per
 * scoring window (speed, RPM, eco/aggressiveness as reported). Windows
 * containing abrupt braking are flagged. All numbers are rendered verbatim
 * from the API payload.
 */
export function renderTripReplay(trip: TripDetail): HTMLElement {
  const root = el("section", { class: "replay", "data-view": "replay" });
  root.append(
    el(
      "header",
      {},
      el("h2", {}, `Trip ${trip.trip_id}`),
      el(
        "p",
        { class: "headline-score", "data-field": "trip-ecoscore" },
        String(trip.score.trip_ecoscore),
      ),
      el(
        "p",
        { class: "muted" },
        `eco ${trip.score.eco_mean.toFixed(4)} / agg ${trip.score.agg_mean.toFixed(4)}`,
      ),
    ),
  );

  root.append(renderMap(trip.path));

  const timeline = el("ol", { class: "timeline" });
  for (const window of trip.score.windows) {
    timeline.append(renderWindow(window));
  }
  root.append(el("h3", {}, "Windows"), timeline);
  return root;
}

function renderWindow(window: WindowScore): HTMLElement {
  const abrupt = window.features.abrupt_brakes > 0;
  const item = el(
    "li",
    {
      class: abrupt ? "window window-abrupt" : "window",
      "data-window": String(window.window_index),
    },
    el("span", { class: "window-index" }, `#${window.window_index}`),
    el("span", { class: "window-speed" }, `${window.features.speed_mean_kmh.toFixed(1)} km/h`),
    el("span", { class: "window-rpm" }, `${window.features.rpm_mean.toFixed(0)} rpm`),
    el("span", { class: "window-eco" }, window.eco.toFixed(3)),
    el("span", { class: "window-agg" }, window.aggressiveness.toFixed(3)),
  );
  if (abrupt) {
    item.append(
      el(
        "span",
        { class: "abrupt-flag" },
        `${window.features.abrupt_brakes} abrupt brake(s)`,
      ),
    );
  }
  return item;
}

function renderMap(path: [number, number][]): HTMLElement {
  const wrap = el("figure", { class: "route-map" });
  const svg = svgEl("svg", {
    viewBox: "0 0 400 240",
    class: "route-svg",
    role: "img",
    "aria-label": "route",
  });
  if (path.length >= 2) {
    const lats = path.map((p) => p[0]);
    const lons = path.map((p) => p[1]);
    const latSpan = Math.max(Math.max(...lats) - Math.min(...lats), 1e-9);
    const lonSpan = Math.max(Math.max(...lons) - Math.min(...lons), 1e-9);
    const minLat = Math.min(...lats);
    const minLon = Math.min(...lons);
    const points = path
      .map(([lat, lon]) => {
        const x = 10 + ((lon - minLon) / lonSpan) * 380;
        const y = 230 - ((lat - minLat) / latSpan) * 220;
        return `${x.toFixed(1)},${y.toFixed(1)}`;
      })
      .join(" ");
    const line = svgEl("polyline", {
      points,
      class: "route-line",
      fill: "none",
    });
    svg.append(line);
  }
  wrap.append(svg);
  return wrap;
}
