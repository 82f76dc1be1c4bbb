/** Timeline panel: click-to-seek bar with blue highlight ranges, an event
 * lane above, a playhead, and a zoom selector below.
 */

import {
  frameToPx,
  highlightBars,
  pxToFrame,
  pxToTime,
  type TimelineViewport,
} from "./layout.js";
import type { Interval } from "./types.js";

export interface TimelineCallbacks {
  onSeekFrame(frame: number): void;
  onZoom(startSec: number, endSec: number): void;
  onResetZoom(): void;
}

export interface TimelineData {
  fps: number;
  frameCount: number;
  events: { frame: number; kind: string }[];
}

export class Timeline {
  private readonly root: HTMLElement;
  private readonly eventLane: HTMLElement;
  private readonly bar: HTMLElement;
  private readonly playhead: HTMLElement;
  private readonly zoomBar: HTMLElement;
  private vp: TimelineViewport;
  private highlights: Interval[] = [];
  private drafts: Interval[] = [];
  private zoomDrag: number | null = null;

  constructor(
    container: HTMLElement,
    private readonly data: TimelineData,
    private readonly callbacks: TimelineCallbacks,
    widthPx = 860,
  ) {
    this.vp = {
      widthPx,
      zoomStartSec: 0,
      zoomEndSec: data.frameCount / data.fps,
    };
    this.root = el("div", "timeline");
    this.root.style.width = `${widthPx}px`;
    this.eventLane = el("div", "event-lane");
    this.bar = el("div", "timeline-bar");
    this.playhead = el("div", "playhead");
    this.zoomBar = el("div", "zoom-bar");
    this.bar.appendChild(this.playhead);
    this.root.append(this.eventLane, this.bar, this.zoomBar);
    container.appendChild(this.root);

    this.bar.addEventListener("click", (ev) => {
      const frame = pxToFrame(this.vp, this.localX(ev, this.bar), this.data.fps);
      this.callbacks.onSeekFrame(frame);
    });
    this.zoomBar.addEventListener("mousedown", (ev) => {
      this.zoomDrag = this.localX(ev, this.zoomBar);
    });
    this.zoomBar.addEventListener("mouseup", (ev) => {
      if (this.zoomDrag === null) return;
      const a = this.zoomDrag;
      const b = this.localX(ev, this.zoomBar);
      this.zoomDrag = null;
      if (Math.abs(b - a) < 3) {
        this.callbacks.onResetZoom();
        return;
      }
      // the zoom bar always spans the full session regardless of zoom
      const full: TimelineViewport = {
        widthPx: this.vp.widthPx,
        zoomStartSec: 0,
        zoomEndSec: this.data.frameCount / this.data.fps,
      };
      this.callbacks.onZoom(
        pxToTime(full, Math.min(a, b)),
        pxToTime(full, Math.max(a, b)),
      );
    });
    this.render();
  }

  setZoom(startSec: number, endSec: number): void {
    this.vp = { ...this.vp, zoomStartSec: startSec, zoomEndSec: endSec };
    this.render();
  }

  setHighlights(timeRangesMs: Interval[]): void {
    this.highlights = timeRangesMs;
    this.render();
  }

  setDrafts(drafts: Interval[]): void {
    this.drafts = drafts;
    this.render();
  }

  setCurrentFrame(frame: number): void {
    const x = frameToPx(this.vp, frame + 0.5, this.data.fps);
    this.playhead.style.left = `${x}px`;
    this.playhead.style.display =
      x < 0 || x > this.vp.widthPx ? "none" : "block";
  }

  private localX(ev: MouseEvent, target: HTMLElement): number {
    return ev.clientX - target.getBoundingClientRect().left;
  }

  private render(): void {
    this.eventLane.replaceChildren();
    for (const e of this.data.events) {
      const x = frameToPx(this.vp, e.frame, this.data.fps);
      if (x < 0 || x > this.vp.widthPx) continue;
      const marker = el("div", `event-marker kind-${e.kind}`);
      marker.style.left = `${x}px`;
      marker.title = `${e.kind} @ frame ${e.frame}`;
      this.eventLane.appendChild(marker);
    }

    this.bar.replaceChildren(this.playhead);
    for (const { left, width } of highlightBars(this.vp, this.highlights)) {
      const h = el("div", "highlight");
      h.style.left = `${left}px`;
      h.style.width = `${width}px`;
      this.bar.appendChild(h);
    }
    const fps = this.data.fps;
    const draftMs: Interval[] = this.drafts.map(([s, e]) => [
      Math.round((s * 1000) / fps),
      Math.round(((e + 1) * 1000) / fps),
    ]);
    for (const { left, width } of highlightBars(this.vp, draftMs)) {
      const d = el("div", "draft-range");
      d.style.left = `${left}px`;
      d.style.width = `${width}px`;
      this.bar.appendChild(d);
    }
  }
}

function el(tag: string, className: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}
