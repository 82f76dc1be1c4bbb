/** Session review state and its pure transitions.
 *
 * The state is a plain object; every transition returns a new state, so the
 * UI layer can re-render from scratch and tests can drive transitions
 * without a DOM. Invariants:
 *   - currentFrame is always in [0, frameCount)
 *   - the zoom window stays inside [0, duration] and is never empty
 *   - highlightedRanges always mirrors the latest region-query response for
 *     the active selection (cleared when the selection is cleared)
 *   - in human_only mode there is no selection and no highlighted ranges,
 *     because the gaze plot (the only selection source) is not shown
 */

import { normalize, union } from "./intervals.js";
import type {
  Interval,
  RegionShape,
  ReviewMode,
  SystemName,
} from "./types.js";

export interface ReviewState {
  sessionId: string;
  frameCount: number;
  fps: number;
  mode: ReviewMode;
  currentFrame: number;
  selection: RegionShape | null;
  highlightedRanges: Interval[]; // frame intervals from the region query
  highlightedTimesMs: Interval[]; // the API's half-open ms ranges
  drafts: Interval[]; // pending label intervals, always normalized
  markIn: number | null; // armed mark-in frame, if any
  labelVersion: number; // version last seen from the server
  zoom: [number, number]; // visible window in seconds
  notice: string | null; // transient user-facing message
}

export function initialState(
  sessionId: string,
  frameCount: number,
  fps: number,
  mode: ReviewMode = "hybrid",
): ReviewState {
  return {
    sessionId,
    frameCount,
    fps,
    mode,
    currentFrame: 0,
    selection: null,
    highlightedRanges: [],
    highlightedTimesMs: [],
    drafts: [],
    markIn: null,
    labelVersion: 0,
    zoom: [0, frameCount / fps],
    notice: null,
  };
}

export function duration(state: ReviewState): number {
  return state.frameCount / state.fps;
}

/** Seek to a frame; out-of-range values clamp to the session. */
export function seekFrame(state: ReviewState, frame: number): ReviewState {
  const clamped = Math.min(Math.max(Math.round(frame), 0), state.frameCount - 1);
  return { ...state, currentFrame: clamped };
}

/** Seek by time; the video timeline maps t -> floor(t * fps). */
export function seekTime(state: ReviewState, seconds: number): ReviewState {
  return seekFrame(state, Math.floor(seconds * state.fps));
}

/** Apply a region-query response for the given selection. */
export function applySelection(
  state: ReviewState,
  selection: RegionShape,
  highlightedRanges: Interval[],
  highlightedTimesMs: Interval[],
): ReviewState {
  if (state.mode === "human_only") {
    throw new Error("region selection is unavailable in human-only mode");
  }
  return { ...state, selection, highlightedRanges, highlightedTimesMs };
}

export function clearSelection(state: ReviewState): ReviewState {
  return { ...state, selection: null, highlightedRanges: [], highlightedTimesMs: [] };
}

export function setMode(state: ReviewState, mode: ReviewMode): ReviewState {
  const next = { ...state, mode };
  return mode === "human_only" ? clearSelection(next) : next;
}

/** Whether the gaze plot (and region selection) may be shown at all. */
export function plotVisible(state: ReviewState): boolean {
  return state.mode !== "human_only";
}

/** The label system this review session produces. */
export function labelSystem(state: ReviewState): SystemName {
  return state.mode === "human_only" ? "human" : "hybrid";
}

/** Arm mark-in at the current frame. */
export function markIn(state: ReviewState): ReviewState {
  return { ...state, markIn: state.currentFrame };
}

/** Close the armed interval at the current frame and add it to the drafts.
 * Ends may be given in either order; overlapping or adjacent drafts
 * coalesce, and the state carries a notice when that happens.
 */
export function markOut(state: ReviewState): ReviewState {
  if (state.markIn === null) {
    return { ...state, notice: "press mark-in first" };
  }
  const added: Interval = [
    Math.min(state.markIn, state.currentFrame),
    Math.max(state.markIn, state.currentFrame),
  ];
  const merged = union(state.drafts, [added]);
  const coalesced = merged.length <= state.drafts.length;
  return {
    ...state,
    drafts: merged,
    markIn: null,
    notice: coalesced ? "overlapping drafts merged" : null,
  };
}

export function removeDraft(state: ReviewState, index: number): ReviewState {
  return { ...state, drafts: state.drafts.filter((_, i) => i !== index) };
}

export function clearNotice(state: ReviewState): ReviewState {
  return { ...state, notice: null };
}

/** Record a successful label submission. */
export function labelsSaved(state: ReviewState, version: number): ReviewState {
  return { ...state, labelVersion: version, notice: `saved (version ${version})` };
}

/** Resolve a 409: merge the server's intervals into the local drafts and
 * adopt the server's version, so the next submit applies cleanly.
 */
export function mergeServerLabels(
  state: ReviewState,
  serverIntervals: Interval[],
  serverVersion: number,
): ReviewState {
  return {
    ...state,
    drafts: union(state.drafts, normalize(serverIntervals)),
    labelVersion: serverVersion,
    notice: "labels changed on the server; merged and ready to resubmit",
  };
}

/** Zoom to a sub-window; degenerate or out-of-range windows clamp. */
export function setZoom(state: ReviewState, start: number, end: number): ReviewState {
  const d = duration(state);
  const minWidth = 1 / state.fps; // at least one frame visible
  let s = Math.min(Math.max(Math.min(start, end), 0), d - minWidth);
  let e = Math.min(Math.max(Math.max(start, end), s + minWidth), d);
  return { ...state, zoom: [s, e] };
}

export function resetZoom(state: ReviewState): ReviewState {
  return { ...state, zoom: [0, duration(state)] };
}
