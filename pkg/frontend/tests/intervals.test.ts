import { describe, expect, it } from "vitest";

import { containsFrame, normalize, union } from "../src/intervals.js";
import type { Interval } from "../src/types.js";

describe("normalize", () => {
  it("sorts and keeps disjoint non-adjacent intervals", () => {
    expect(normalize([[5, 6], [1, 2]])).toEqual([[1, 2], [5, 6]]);
  });

  it("merges overlapping intervals", () => {
    expect(normalize([[1, 4], [3, 7]])).toEqual([[1, 7]]);
  });

  it("coalesces adjacency (end + 1 == start)", () => {
    expect(normalize([[1, 2], [3, 5]])).toEqual([[1, 5]]);
  });

  it("orders reversed endpoints", () => {
    expect(normalize([[9, 4]])).toEqual([[4, 9]]);
  });

  it("matches a bitmask oracle on random input", () => {
    // mirrors the backend's interval union semantics exactly
    let seed = 12345;
    const rand = (n: number) => {
      seed = (seed * 1103515245 + 12345) & 0x7fffffff;
      return seed % n;
    };
    for (let trial = 0; trial < 200; trial++) {
      const T = 30;
      const ivs: Interval[] = [];
      for (let i = 0; i < rand(6); i++) {
        const a = rand(T);
        const b = rand(T);
        ivs.push([a, b]);
      }
      const mask = new Array(T).fill(0);
      for (const [a, b] of ivs) {
        for (let f = Math.min(a, b); f <= Math.max(a, b); f++) mask[f] = 1;
      }
      const expected: Interval[] = [];
      for (let f = 0; f < T; f++) {
        if (mask[f] && (f === 0 || !mask[f - 1])) expected.push([f, f]);
        else if (mask[f]) expected[expected.length - 1][1] = f;
      }
      expect(normalize(ivs)).toEqual(expected);
    }
  });
});

describe("union", () => {
  it("is commutative and idempotent", () => {
    const a: Interval[] = [[0, 3], [10, 12]];
    const b: Interval[] = [[4, 6]];
    expect(union(a, b)).toEqual(union(b, a));
    expect(union(a, a)).toEqual(normalize(a));
    expect(union(a, b)).toEqual([[0, 6], [10, 12]]);
  });
});

describe("containsFrame", () => {
  it("is inclusive at both ends", () => {
    const ivs: Interval[] = [[2, 5]];
    expect(containsFrame(ivs, 2)).toBe(true);
    expect(containsFrame(ivs, 5)).toBe(true);
    expect(containsFrame(ivs, 1)).toBe(false);
    expect(containsFrame(ivs, 6)).toBe(false);
  });
});
