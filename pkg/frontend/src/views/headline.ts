/** Headline Studio: live title scoring with per-word heat. */

import { ApiClient, ApiError, TokenContribution } from "../api.js";
import { heatCss, Rgb, heatColor } from "../heat.js";

export interface HeatCell extends TokenContribution {
  color: Rgb;
}

export interface HeadlineState {
  probability: number | null;
  heat: HeatCell[];
  error: string | null;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Each submit is stamped with a monotonically increasing sequence number;
 * a response (or failure) only updates the view if nothing newer has already
 * rendered, so out-of-order replies to rapid edits are discarded.
 */
export class HeadlineStudio {
  private nextSeq = 0;
  private lastRenderedSeq = 0;

  state: HeadlineState = { probability: null, heat: [], error: null };

  constructor(private readonly api: ApiClient) {}

  async submit(title: string): Promise<void> {
    const seq = ++this.nextSeq;
    try {
      const body = await this.api.scoreHeadline(title);
      if (seq <= this.lastRenderedSeq) return; // stale: a newer edit already rendered
      this.lastRenderedSeq = seq;
      this.state = {
        probability: body.probability_popular,
        heat: body.contributions.map((c) => ({ ...c, color: heatColor(c.weight) })),
        error: null,
      };
    } catch (err) {
      if (seq <= this.lastRenderedSeq) return;
      this.lastRenderedSeq = seq;
      const message = err instanceof ApiError ? err.message : "service unreachable";
      // keep the last good score and heat; only the banner changes
      this.state = { ...this.state, error: message };
    }
  }

  renderHtml(): string {
    const parts: string[] = ['<section class="headline-studio">'];
    if (this.state.error !== null) {
      parts.push(`<div class="banner error">${escapeHtml(this.state.error)}</div>`);
    }
    if (this.state.probability !== null) {
      parts.push(
        `<div class="score">Popularity: ${this.state.probability.toFixed(2)}</div>`,
      );
    }
    parts.push('<div class="word-heat">');
    for (const cell of this.state.heat) {
      parts.push(
        `<span class="word" style="background:${heatCss(cell.weight)}">` +
          `${escapeHtml(cell.token)}</span>`,
      );
    }
    parts.push("</div></section>");
    return parts.join("");
  }
}
