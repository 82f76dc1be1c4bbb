/** Wire types for the gazereview HTTP API. */

export interface SessionManifest {
  id: string;
  frame_count: number;
  fps: number;
  created_at: string;
  source: string;
  video_uri: string | null;
}

export interface PlotPoint {
  frame: number;
  u: number;
  v: number;
  face: boolean;
}

export interface PlotResponse {
  frame_count: number;
  fps: number;
  points: PlotPoint[];
  events: { frame: number; kind: string; note: string | null }[];
}

export type Interval = [number, number];

export interface RectangleShape {
  type: "rectangle";
  u_min: number;
  u_max: number;
  v_min: number;
  v_max: number;
}

export interface PolygonShape {
  type: "polygon";
  vertices: [number, number][];
}

export type RegionShape = RectangleShape | PolygonShape;

export interface RegionQueryResponse {
  frame_count: number;
  fps: number;
  frames: number[];
  highlight_ranges: Interval[];
  time_ranges_ms: Interval[];
}

export interface LabelsResponse {
  system: string;
  frame_count: number;
  fps: number;
  intervals: Interval[];
  version: number;
}

export type SystemName = "human" | "ml" | "hybrid";

export type ReviewMode = "human_only" | "hybrid";
