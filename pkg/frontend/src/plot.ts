/** Gaze plot panel: SVG scatter of projected gaze points with a red
 * current-frame marker and drag-rectangle region selection.
 */

import { dragToRectangle, uvToPx, type PlotViewport } from "./layout.js";
import type { PlotPoint, RectangleShape } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface PlotCallbacks {
  onSelect(shape: RectangleShape): void;
  onClearSelection(): void;
  onPointClick(frame: number): void;
}

export class GazePlot {
  private readonly svg: SVGSVGElement;
  private readonly vp: PlotViewport;
  private readonly dots = new Map<number, SVGCircleElement>();
  private currentFrame = -1;
  private brush: SVGRectElement | null = null;
  private dragStart: [number, number] | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly points: PlotPoint[],
    private readonly callbacks: PlotCallbacks,
    sizePx = 420,
  ) {
    this.vp = { sizePx };
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("width", String(sizePx));
    this.svg.setAttribute("height", String(sizePx));
    this.svg.setAttribute("class", "gaze-plot");
    container.appendChild(this.svg);

    const disk = document.createElementNS(SVG_NS, "circle");
    const [cx, cy] = uvToPx(this.vp, 0, 0);
    disk.setAttribute("cx", String(cx));
    disk.setAttribute("cy", String(cy));
    disk.setAttribute("r", String(sizePx / 2));
    disk.setAttribute("class", "plot-disk");
    this.svg.appendChild(disk);

    for (const p of this.points) {
      const dot = document.createElementNS(SVG_NS, "circle");
      const [x, y] = uvToPx(this.vp, p.u, p.v);
      dot.setAttribute("cx", String(x));
      dot.setAttribute("cy", String(y));
      dot.setAttribute("r", "2");
      dot.setAttribute("class", "plot-point");
      dot.addEventListener("click", (ev) => {
        ev.stopPropagation();
        this.callbacks.onPointClick(p.frame);
      });
      this.svg.appendChild(dot);
      this.dots.set(p.frame, dot);
    }

    this.svg.addEventListener("mousedown", (ev) => this.onDown(ev));
    this.svg.addEventListener("mousemove", (ev) => this.onMove(ev));
    this.svg.addEventListener("mouseup", (ev) => this.onUp(ev));
  }

  setCurrentFrame(frame: number): void {
    const prev = this.dots.get(this.currentFrame);
    if (prev) {
      prev.setAttribute("class", "plot-point");
      prev.setAttribute("r", "2");
    }
    const dot = this.dots.get(frame);
    if (dot) {
      dot.setAttribute("class", "plot-point current");
      dot.setAttribute("r", "4");
      this.svg.appendChild(dot); // raise above neighbors
    }
    this.currentFrame = frame;
  }

  destroy(): void {
    this.container.removeChild(this.svg);
  }

  private local(ev: MouseEvent): [number, number] {
    const r = this.svg.getBoundingClientRect();
    return [ev.clientX - r.left, ev.clientY - r.top];
  }

  private onDown(ev: MouseEvent): void {
    this.dragStart = this.local(ev);
    if (this.brush) this.brush.remove();
    this.brush = document.createElementNS(SVG_NS, "rect");
    this.brush.setAttribute("class", "plot-brush");
    this.svg.appendChild(this.brush);
  }

  private onMove(ev: MouseEvent): void {
    if (!this.dragStart || !this.brush) return;
    const [x0, y0] = this.dragStart;
    const [x1, y1] = this.local(ev);
    this.brush.setAttribute("x", String(Math.min(x0, x1)));
    this.brush.setAttribute("y", String(Math.min(y0, y1)));
    this.brush.setAttribute("width", String(Math.abs(x1 - x0)));
    this.brush.setAttribute("height", String(Math.abs(y1 - y0)));
  }

  private onUp(ev: MouseEvent): void {
    if (!this.dragStart) return;
    const [x0, y0] = this.dragStart;
    const [x1, y1] = this.local(ev);
    this.dragStart = null;
    if (Math.abs(x1 - x0) < 3 && Math.abs(y1 - y0) < 3) {
      // a click, not a drag: clear the active selection
      this.brush?.remove();
      this.brush = null;
      this.callbacks.onClearSelection();
      return;
    }
    this.callbacks.onSelect({
      type: "rectangle",
      ...dragToRectangle(this.vp, x0, y0, x1, y1),
    });
  }
}
