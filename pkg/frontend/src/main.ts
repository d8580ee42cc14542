import { ApiClient } from "./client.js";
import { SteeringController } from "./controller.js";
import { renderChart } from "./chart.js";
import { renderMap } from "./map.js";
import { UiStore } from "./store.js";

// Numbers are printed with String(), not toFixed(): what the user reads is
// bit for bit what the service reported.

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const store = new UiStore(4000);
const client = new ApiClient("");
const controller = new SteeringController(client, store);

const slider = $<HTMLInputElement>("weight-slider");
const weightLabel = $("weight-value");
const pendingChip = $("pending-chip");
const connBadge = $("connection");
const statusLine = $("status-line");
const distOut = $("dist-value");
const tardyOut = $("tardy-value");
const utilityOut = $("utility-value");
const unassignedOut = $("unassigned-value");
const pinButton = $<HTMLButtonElement>("pin-btn");
const pinnedPanel = $("pinned-panel");
const pinnedStats = $("pinned-stats");
const mapSvg = $("route-map") as unknown as SVGSVGElement;
const pinnedSvg = $("pinned-map") as unknown as SVGSVGElement;
const chartSvg = $("trajectory-chart") as unknown as SVGSVGElement;

slider.addEventListener("input", () => {
  controller.onSliderInput(Number(slider.value));
});

$("pause-btn").addEventListener("click", () => void controller.pause().catch(showError));
$("resume-btn").addEventListener("click", () => void controller.resume().catch(showError));
$("realloc-btn").addEventListener("click", () =>
  void controller.forceReallocate().catch(showError),
);
pinButton.addEventListener("click", () => {
  if (store.pinned) store.unpin();
  else store.pin();
});

function showError(err: unknown): void {
  statusLine.textContent = String(err);
}

let sliderHeld = false;
slider.addEventListener("pointerdown", () => (sliderHeld = true));
slider.addEventListener("pointerup", () => (sliderHeld = false));

function render(): void {
  connBadge.textContent = store.connection;
  connBadge.className = `badge ${store.connection}`;

  const snap = store.latest;
  renderMap(mapSvg, snap);
  renderChart(chartSvg, store.trajectory.toArray());

  if (!snap) {
    statusLine.textContent = "waiting for the engine";
    return;
  }
  statusLine.textContent =
    `${snap.status}  iteration ${snap.wall_iteration}` +
    (snap.seed === undefined ? "" : `  seed ${snap.seed}`) +
    `  solution v${snap.solution_version}`;

  // The slider shows the last acknowledged weight unless the user is mid
  // drag or a request is still unacknowledged.
  if (!sliderHeld && store.pendingWeight === null) {
    slider.value = String(snap.w_dist);
  }
  weightLabel.textContent = String(snap.w_dist);
  if (store.pendingWeight !== null) {
    pendingChip.textContent = `pending ${store.pendingWeight}`;
    pendingChip.hidden = false;
  } else {
    pendingChip.hidden = true;
  }

  distOut.textContent = String(snap.objectives.dist);
  tardyOut.textContent = String(snap.objectives.tardy);
  utilityOut.textContent = String(snap.utility);
  unassignedOut.textContent =
    snap.unassigned.length === 0 ? "none" : snap.unassigned.join(", ");

  pinButton.textContent = store.pinned ? "unpin" : "pin";
  pinnedPanel.hidden = store.pinned === null;
  if (store.pinned) {
    renderMap(pinnedSvg, store.pinned);
    pinnedStats.textContent =
      `w ${store.pinned.w_dist}  dist ${store.pinned.objectives.dist}` +
      `  tardy ${store.pinned.objectives.tardy}`;
  }
}

store.subscribe(render);
render();

const abort = new AbortController();
window.addEventListener("beforeunload", () => abort.abort());
void controller.connect(abort.signal);
