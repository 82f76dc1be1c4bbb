/** Video panel. Synthetic sessions have no footage, so the panel renders a
 * schematic frame: a head glyph with an arrow showing the frame's predicted
 * gaze direction (pitch/yaw derived from the plot point's u/v coordinates,
 * which are the first two components of the unit gaze vector).
 */

import type { PlotPoint } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export class SchematicVideo {
  private readonly arrow: SVGLineElement;
  private readonly label: SVGTextElement;
  private readonly byFrame: Map<number, PlotPoint>;
  private readonly cx: number;
  private readonly cy: number;

  constructor(container: HTMLElement, points: PlotPoint[], sizePx = 320) {
    this.byFrame = new Map(points.map((p) => [p.frame, p]));
    this.cx = sizePx / 2;
    this.cy = sizePx / 2;

    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(sizePx));
    svg.setAttribute("height", String(sizePx));
    svg.setAttribute("class", "schematic-video");

    const head = document.createElementNS(SVG_NS, "circle");
    head.setAttribute("cx", String(this.cx));
    head.setAttribute("cy", String(this.cy));
    head.setAttribute("r", String(sizePx * 0.28));
    head.setAttribute("class", "head-glyph");

    for (const dx of [-1, 1]) {
      const eye = document.createElementNS(SVG_NS, "circle");
      eye.setAttribute("cx", String(this.cx + dx * sizePx * 0.1));
      eye.setAttribute("cy", String(this.cy - sizePx * 0.06));
      eye.setAttribute("r", String(sizePx * 0.03));
      eye.setAttribute("class", "head-eye");
      svg.appendChild(eye);
      svg.insertBefore(head, eye);
    }

    this.arrow = document.createElementNS(SVG_NS, "line");
    this.arrow.setAttribute("class", "gaze-arrow");
    this.arrow.setAttribute("x1", String(this.cx));
    this.arrow.setAttribute("y1", String(this.cy));

    this.label = document.createElementNS(SVG_NS, "text");
    this.label.setAttribute("x", "8");
    this.label.setAttribute("y", "20");
    this.label.setAttribute("class", "frame-label");

    svg.append(this.arrow, this.label);
    container.appendChild(svg);
    this.scale = sizePx * 0.45;
  }

  private readonly scale: number;

  setFrame(frame: number): void {
    const p = this.byFrame.get(frame);
    if (!p || !p.face) {
      this.arrow.setAttribute("x2", String(this.cx));
      this.arrow.setAttribute("y2", String(this.cy));
      this.label.textContent = `frame ${frame} (no face)`;
      return;
    }
    this.arrow.setAttribute("x2", String(this.cx + p.u * this.scale));
    this.arrow.setAttribute("y2", String(this.cy - p.v * this.scale));
    this.label.textContent = `frame ${frame}`;
  }
}
