/** Layout math shared by the timeline and gaze plot renderers.
 *
 * Kept free of DOM types so it is unit-testable; renderers only translate
 * these numbers into SVG attributes.
 */

import type { Interval } from "./types.js";

export interface TimelineViewport {
  widthPx: number;
  zoomStartSec: number;
  zoomEndSec: number;
}

export function timeToPx(vp: TimelineViewport, seconds: number): number {
  const span = vp.zoomEndSec - vp.zoomStartSec;
  return ((seconds - vp.zoomStartSec) / span) * vp.widthPx;
}

export function pxToTime(vp: TimelineViewport, px: number): number {
  const span = vp.zoomEndSec - vp.zoomStartSec;
  return vp.zoomStartSec + (px / vp.widthPx) * span;
}

export function frameToPx(vp: TimelineViewport, frame: number, fps: number): number {
  return timeToPx(vp, frame / fps);
}

/** Frame picked when the user clicks at pixel x on the timeline. */
export function pxToFrame(vp: TimelineViewport, px: number, fps: number): number {
  return Math.floor(pxToTime(vp, px) * fps);
}

export interface PixelRange {
  left: number;
  width: number;
}

/** Map the API's half-open millisecond ranges to pixel bars, clipped to the
 * visible window. Ranges wholly outside the window are dropped; visible bars
 * are at least 1 px wide so single-frame highlights do not vanish.
 */
export function highlightBars(
  vp: TimelineViewport,
  timeRangesMs: Interval[],
): PixelRange[] {
  const bars: PixelRange[] = [];
  for (const [startMs, endMs] of timeRangesMs) {
    const s = Math.max(startMs / 1000, vp.zoomStartSec);
    const e = Math.min(endMs / 1000, vp.zoomEndSec);
    if (e <= s) continue;
    const left = timeToPx(vp, s);
    const width = Math.max(timeToPx(vp, e) - left, 1);
    bars.push({ left, width });
  }
  return bars;
}

export interface PlotViewport {
  sizePx: number; // square plot, [-1, 1]^2 mapped onto it
}

export function uvToPx(vp: PlotViewport, u: number, v: number): [number, number] {
  // v points up on the plane, y points down on screen
  return [((u + 1) / 2) * vp.sizePx, ((1 - v) / 2) * vp.sizePx];
}

export function pxToUv(vp: PlotViewport, x: number, y: number): [number, number] {
  return [(x / vp.sizePx) * 2 - 1, 1 - (y / vp.sizePx) * 2];
}

/** Convert a screen-space drag rectangle into a plane-space region. */
export function dragToRectangle(
  vp: PlotViewport,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
): { u_min: number; u_max: number; v_min: number; v_max: number } {
  const [ua, va] = pxToUv(vp, x0, y0);
  const [ub, vb] = pxToUv(vp, x1, y1);
  return {
    u_min: Math.min(ua, ub),
    u_max: Math.max(ua, ub),
    v_min: Math.min(va, vb),
    v_max: Math.max(va, vb),
  };
}
