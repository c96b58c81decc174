import { describe, expect, it } from "vitest";

import { decodeBase64, parsePgm, saliencyColors } from "../src/pgm.js";

function pgmBytes(header: string, pixels: number[]): Uint8Array {
  const head = new TextEncoder().encode(header);
  const out = new Uint8Array(head.length + pixels.length);
  out.set(head, 0);
  out.set(Uint8Array.from(pixels), head.length);
  return out;
}

describe("parsePgm", () => {
  it("parses a small binary PGM", () => {
    const image = parsePgm(pgmBytes("P5\n3 2\n255\n", [0, 64, 128, 192, 255, 10]));
    expect(image.width).toBe(3);
    expect(image.height).toBe(2);
    expect(image.maxval).toBe(255);
    expect(Array.from(image.pixels)).toEqual([0, 64, 128, 192, 255, 10]);
  });

  it("skips header comments", () => {
    const image = parsePgm(pgmBytes("P5\n# saliency frame 0\n2 1\n255\n", [7, 9]));
    expect(image.width).toBe(2);
    expect(Array.from(image.pixels)).toEqual([7, 9]);
  });

  it("rejects non-PGM payloads and truncated rasters", () => {
    expect(() => parsePgm(new TextEncoder().encode("P6\n1 1\n255\nx"))).toThrow(/P5/);
    expect(() => parsePgm(pgmBytes("P5\n4 4\n255\n", [1, 2, 3]))).toThrow(/truncated/);
  });
});

describe("saliencyColors", () => {
  it("maps pixels through the white-to-red ramp", () => {
    const image = parsePgm(pgmBytes("P5\n3 1\n255\n", [0, 255, 128]));
    const colors = saliencyColors(image);
    expect(colors).toHaveLength(3);
    expect(colors[0]).toEqual([255, 255, 255]);
    expect(colors[1]).toEqual([255, 0, 0]);
    expect(colors[2]).toEqual([255, Math.round(255 * (1 - 128 / 255)), Math.round(255 * (1 - 128 / 255))]);
  });
});

describe("decodeBase64", () => {
  it("roundtrips bytes", () => {
    const bytes = Uint8Array.from([80, 53, 0, 255, 128]);
    const encoded = Buffer.from(bytes).toString("base64");
    expect(Array.from(decodeBase64(encoded))).toEqual(Array.from(bytes));
  });
});
