/** Application wiring: loads a session, renders the panels, and routes
 * every user action through the pure state transitions in state.ts.
 */

import { ApiClient, ApiError } from "./api.js";
import { GazePlot } from "./plot.js";
import {
  applySelection,
  clearSelection,
  initialState,
  labelSystem,
  labelsSaved,
  markIn,
  markOut,
  mergeServerLabels,
  plotVisible,
  resetZoom,
  seekFrame,
  setMode,
  setZoom,
  type ReviewState,
} from "./state.js";
import { Timeline } from "./timeline.js";
import type { PlotResponse, RegionShape, ReviewMode } from "./types.js";
import { SchematicVideo } from "./video.js";

const api = new ApiClient("");

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

async function boot(): Promise<void> {
  const sessions = await api.listSessions();
  const picker = $("session-picker") as HTMLSelectElement;
  picker.replaceChildren(
    ...sessions.map((s) => new Option(`${s.id} (${s.frame_count} frames)`, s.id)),
  );
  picker.addEventListener("change", () => openSession(picker.value));
  if (sessions.length > 0) await openSession(sessions[0].id);
}

async function openSession(sessionId: string): Promise<void> {
  const plotData = await api.getPlot(sessionId);
  let state = initialState(sessionId, plotData.frame_count, plotData.fps);
  try {
    const labels = await api.getLabels(sessionId, labelSystem(state));
    state = { ...state, drafts: labels.intervals, labelVersion: labels.version };
  } catch (err) {
    if (!(err instanceof ApiError && err.status === 404)) throw err;
  }
  mount(state, plotData);
}

function mount(state: ReviewState, plotData: PlotResponse): void {
  const plotPanel = $("plot-panel");
  const videoPanel = $("video-panel");
  const timelinePanel = $("timeline-panel");
  plotPanel.replaceChildren();
  videoPanel.replaceChildren();
  timelinePanel.replaceChildren();

  const video = new SchematicVideo(videoPanel, plotData.points);
  const timeline = new Timeline(
    timelinePanel,
    {
      fps: state.fps,
      frameCount: state.frameCount,
      events: plotData.events,
    },
    {
      onSeekFrame: (frame) => update(seekFrame(state, frame)),
      onZoom: (a, b) => update(setZoom(state, a, b)),
      onResetZoom: () => update(resetZoom(state)),
    },
  );
  let plot: GazePlot | null = null;

  const mountPlot = () => {
    if (plot || !plotVisible(state)) return;
    plot = new GazePlot(plotPanel, plotData.points, {
      onSelect: (shape: RegionShape) => {
        void api
          .regionQuery(state.sessionId, shape)
          .then((resp) =>
            update(
              applySelection(state, shape, resp.highlight_ranges, resp.time_ranges_ms),
            ),
          )
          .catch(showError);
      },
      onClearSelection: () => update(clearSelection(state)),
      onPointClick: (frame) => update(seekFrame(state, frame)),
    });
  };

  const unmountPlot = () => {
    plot?.destroy();
    plot = null;
  };

  const update = (next: ReviewState): void => {
    state = next;
    if (plotVisible(state)) mountPlot();
    else unmountPlot();
    plot?.setCurrentFrame(state.currentFrame);
    video.setFrame(state.currentFrame);
    timeline.setZoom(state.zoom[0], state.zoom[1]);
    timeline.setHighlights(state.highlightedTimesMs);
    timeline.setDrafts(state.drafts);
    timeline.setCurrentFrame(state.currentFrame);
    $("frame-readout").textContent =
      `frame ${state.currentFrame} / ${state.frameCount - 1}` +
      ` · ${(state.currentFrame / state.fps).toFixed(2)}s` +
      ` · labeling as ${labelSystem(state)} (v${state.labelVersion})`;
    const banner = $("notice");
    banner.textContent = state.notice ?? "";
    banner.style.display = state.notice ? "block" : "none";
    renderDrafts();
  };

  const renderDrafts = (): void => {
    const list = $("draft-list");
    list.replaceChildren(
      ...state.drafts.map(([s, e], i) => {
        const item = document.createElement("li");
        item.textContent = `frames ${s}–${e}  `;
        const remove = document.createElement("button");
        remove.textContent = "remove";
        remove.addEventListener("click", () =>
          update({ ...state, drafts: state.drafts.filter((_, j) => j !== i) }),
        );
        item.appendChild(remove);
        return item;
      }),
    );
  };

  const showError = (err: unknown): void => {
    update({ ...state, notice: err instanceof Error ? err.message : String(err) });
  };

  $("mode-picker").onchange = (ev) => {
    const mode = (ev.target as HTMLSelectElement).value as ReviewMode;
    update(setMode(state, mode));
  };
  $("mark-in").onclick = () => update(markIn(state));
  $("mark-out").onclick = () => update(markOut(state));
  $("submit-labels").onclick = () => {
    void api
      .putLabels(state.sessionId, labelSystem(state), state.drafts, state.labelVersion)
      .then((resp) => update(labelsSaved(state, resp.version)))
      .catch(async (err) => {
        if (err instanceof ApiError && err.status === 409) {
          const server = await api.getLabels(state.sessionId, labelSystem(state));
          update(mergeServerLabels(state, server.intervals, server.version));
        } else {
          showError(err);
        }
      });
  };

  update(state);
}

void boot().catch((err) => {
  const banner = $("notice");
  banner.textContent = err instanceof Error ? err.message : String(err);
  banner.style.display = "block";
});
