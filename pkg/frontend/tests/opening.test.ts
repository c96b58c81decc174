import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { OpeningAnalyzer } from "../src/views/opening.js";
import { jsonResponse, queuedFetch } from "./helpers.js";

function tinyPgmB64(pixels: number[], width: number, height: number): string {
  const header = new TextEncoder().encode(`P5\n${width} ${height}\n255\n`);
  const out = new Uint8Array(header.length + pixels.length);
  out.set(header, 0);
  out.set(Uint8Array.from(pixels), header.length);
  return Buffer.from(out).toString("base64");
}

describe("OpeningAnalyzer", () => {
  it("renders one strip cell per attention entry", async () => {
    const attention = Array.from({ length: 18 }, (_, i) => (i === 4 ? 0.5 : 0.5 / 17));
    const { fetch } = queuedFetch([
      jsonResponse({ probability_popular: 0.42, frame_attention: attention }),
    ]);
    const analyzer = new OpeningAnalyzer(new ApiClient("", fetch));
    await analyzer.analyze({ features: [] });

    expect(analyzer.frames).toHaveLength(18);
    expect(analyzer.probability).toBe(0.42);
    expect(analyzer.renderHtml().match(/class="frame"/g)).toHaveLength(18);
  });

  it("attaches decoded saliency maps to their frames", async () => {
    const { fetch } = queuedFetch([
      jsonResponse({
        probability_popular: 0.9,
        frame_attention: [0.6, 0.4],
        saliency: [
          { frame_index: 0, pgm_b64: tinyPgmB64([0, 255], 2, 1), min: 0, max: 1 },
          { frame_index: 1, pgm_b64: tinyPgmB64([128, 128], 2, 1), min: 0, max: 2 },
        ],
      }),
    ]);
    const analyzer = new OpeningAnalyzer(new ApiClient("", fetch));
    await analyzer.analyze({ frames_ppm_b64: ["x", "y"], saliency: true });

    expect(analyzer.frames[0].saliency?.width).toBe(2);
    expect(Array.from(analyzer.frames[0].saliency?.pixels ?? [])).toEqual([0, 255]);
    expect(analyzer.frames[1].saliency?.pixels[0]).toBe(128);
  });

  it("only renders overlays when the toggle is on", async () => {
    const { fetch } = queuedFetch([
      jsonResponse({
        probability_popular: 0.5,
        frame_attention: [1.0],
        saliency: [{ frame_index: 0, pgm_b64: tinyPgmB64([9], 1, 1), min: 0, max: 1 }],
      }),
    ]);
    const analyzer = new OpeningAnalyzer(new ApiClient("", fetch));
    await analyzer.analyze({ frames_ppm_b64: ["x"], saliency: true });

    expect(analyzer.renderHtml()).not.toContain("saliency-overlay");
    analyzer.toggleOverlay();
    expect(analyzer.renderHtml()).toContain("saliency-overlay");
  });

  it("keeps the error message when the service rejects the frame count", async () => {
    const { fetch } = queuedFetch([
      jsonResponse({ error_code: "shape_error", message: "expected 18 frames" }, 400),
    ]);
    const analyzer = new OpeningAnalyzer(new ApiClient("", fetch));
    await analyzer.analyze({ features: [[0]] });

    expect(analyzer.error).toBe("expected 18 frames");
    expect(analyzer.frames).toEqual([]);
  });
});
