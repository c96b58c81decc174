/** Opening-Scene Analyzer: frame strip with attention heat and saliency overlays. */

import { ApiClient, VideoScoreRequest } from "../api.js";
import { heatCss } from "../heat.js";
import { decodeBase64, parsePgm, PgmImage } from "../pgm.js";

export interface FrameCell {
  frameIndex: number;
  attention: number;
  saliency: PgmImage | null;
}

export class OpeningAnalyzer {
  probability: number | null = null;
  frames: FrameCell[] = [];
  overlayVisible = false;
  error: string | null = null;

  constructor(private readonly api: ApiClient) {}

  async analyze(request: VideoScoreRequest): Promise<void> {
    try {
      const body = await this.api.scoreVideo(request);
      this.probability = body.probability_popular;
      const maps = new Map<number, PgmImage>();
      for (const entry of body.saliency ?? []) {
        maps.set(entry.frame_index, parsePgm(decodeBase64(entry.pgm_b64)));
      }
      this.frames = body.frame_attention.map((attention, frameIndex) => ({
        frameIndex,
        attention,
        saliency: maps.get(frameIndex) ?? null,
      }));
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : "request failed";
    }
  }

  toggleOverlay(): void {
    this.overlayVisible = !this.overlayVisible;
  }

  renderHtml(): string {
    const peak = Math.max(1e-12, ...this.frames.map((f) => f.attention));
    const cells = this.frames
      .map((frame) => {
        const overlay =
          this.overlayVisible && frame.saliency !== null
            ? '<canvas class="saliency-overlay"></canvas>'
            : "";
        return (
          `<div class="frame" data-frame="${frame.frameIndex}" ` +
          `style="border-color:${heatCss(frame.attention / peak)}">${overlay}</div>`
        );
      })
      .join("");
    const score =
      this.probability !== null
        ? `<div class="score">Popularity: ${this.probability.toFixed(2)}</div>`
        : "";
    return `<section class="opening-analyzer">${score}<div class="strip">${cells}</div></section>`;
  }
}
