/** Frame-interval helpers mirroring the backend's inclusive-interval algebra:
 * intervals are [start, end] with both ends inclusive, and a union coalesces
 * overlapping or adjacent (end + 1 === start) intervals.
 */

import type { Interval } from "./types.js";

export function normalize(intervals: Interval[]): Interval[] {
  const sorted = intervals
    .map(([s, e]): Interval => [Math.min(s, e), Math.max(s, e)])
    .sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  const out: Interval[] = [];
  for (const [s, e] of sorted) {
    const last = out[out.length - 1];
    if (last && s <= last[1] + 1) {
      last[1] = Math.max(last[1], e);
    } else {
      out.push([s, e]);
    }
  }
  return out;
}

export function union(a: Interval[], b: Interval[]): Interval[] {
  return normalize([...a, ...b]);
}

export function containsFrame(intervals: Interval[], frame: number): boolean {
  return intervals.some(([s, e]) => s <= frame && frame <= e);
}
