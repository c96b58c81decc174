/** Alerts: pre-publication popup when a score falls below the category baseline. */

import { AlertCheckResponse, ApiClient } from "../api.js";

export class AlertsPanel {
  popupVisible = false;
  lastDecision: AlertCheckResponse | null = null;
  error: string | null = null;

  constructor(private readonly api: ApiClient) {}

  async check(score: number, category: string): Promise<void> {
    try {
      const decision = await this.api.checkAlert(score, category);
      this.lastDecision = decision;
      // the popup tracks the server verdict exactly
      this.popupVisible = decision.alert === true;
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : "request failed";
      this.popupVisible = false;
    }
  }

  dismiss(): void {
    this.popupVisible = false;
  }

  renderHtml(): string {
    if (!this.popupVisible || this.lastDecision === null) {
      return '<section class="alerts"></section>';
    }
    const d = this.lastDecision;
    return (
      '<section class="alerts"><div class="popup">' +
      `Predicted score ${d.score.toFixed(2)} is below the category baseline ` +
      `${d.threshold.toFixed(2)} (history of ${d.history_size}).` +
      "</div></section>"
    );
  }
}
