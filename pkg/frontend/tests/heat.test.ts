import { describe, expect, it } from "vitest";

import { heatColor, heatCss } from "../src/heat.js";

describe("heatColor", () => {
  it("returns white at weight 0", () => {
    expect(heatColor(0.0)).toEqual([255, 255, 255]);
  });

  it("returns red at weight 1", () => {
    expect(heatColor(1.0)).toEqual([255, 0, 0]);
  });

  it("returns the midpoint at weight 0.5", () => {
    expect(heatColor(0.5)).toEqual([255, 128, 128]);
  });

  it("matches the interpolation formula on a grid", () => {
    for (let i = 0; i <= 100; i++) {
      const w = i / 100;
      expect(heatColor(w)).toEqual([255, Math.round(255 * (1 - w)), Math.round(255 * (1 - w))]);
    }
  });

  it("clamps out-of-range and non-finite weights", () => {
    expect(heatColor(-0.5)).toEqual([255, 255, 255]);
    expect(heatColor(3.2)).toEqual([255, 0, 0]);
    expect(heatColor(Number.NaN)).toEqual([255, 255, 255]);
  });

  it("renders a css color string", () => {
    expect(heatCss(1.0)).toBe("rgb(255,0,0)");
  });
});
