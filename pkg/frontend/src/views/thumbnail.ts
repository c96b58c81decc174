/** Thumbnail Picker: candidate grid ordered by server scores. */

import { ApiClient, ThumbnailRecommendRequest } from "../api.js";

export interface ThumbnailCell {
  /** Index of the candidate in the order it was submitted. */
  frameIndex: number;
  score: number;
  /** True for the server's recommended (argmax) candidate. */
  badge: boolean;
}

export class ThumbnailPicker {
  /** Grid cells sorted by descending score; ties keep submission order. */
  grid: ThumbnailCell[] = [];
  recommendedIndex: number | null = null;
  error: string | null = null;

  constructor(private readonly api: ApiClient) {}

  async load(request: ThumbnailRecommendRequest): Promise<void> {
    try {
      const body = await this.api.recommendThumbnail(request);
      this.recommendedIndex = body.recommended_index;
      this.grid = body.scores
        .map((score, frameIndex) => ({
          frameIndex,
          score,
          badge: frameIndex === body.recommended_index,
        }))
        .sort((a, b) => b.score - a.score || a.frameIndex - b.frameIndex);
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : "request failed";
    }
  }

  renderHtml(): string {
    const cells = this.grid
      .map(
        (cell) =>
          `<figure class="thumb" data-frame="${cell.frameIndex}">` +
          `<figcaption>${cell.score.toFixed(2)}` +
          (cell.badge ? '<span class="badge">recommended</span>' : "") +
          "</figcaption></figure>",
      )
      .join("");
    return `<section class="thumbnail-picker">${cells}</section>`;
  }
}
