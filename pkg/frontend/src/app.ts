/** Wires the five views onto a single API client. */

import { ApiClient, FetchLike } from "./api.js";
import { AlertsPanel } from "./views/alerts.js";
import { ChatPanel } from "./views/chat.js";
import { HeadlineStudio } from "./views/headline.js";
import { OpeningAnalyzer } from "./views/opening.js";
import { ThumbnailPicker } from "./views/thumbnail.js";

export interface App {
  headline: HeadlineStudio;
  thumbnails: ThumbnailPicker;
  opening: OpeningAnalyzer;
  chat: ChatPanel;
  alerts: AlertsPanel;
  renderHtml(): string;
}

export function createApp(baseUrl = "", fetchImpl?: FetchLike): App {
  const api = new ApiClient(baseUrl, fetchImpl);
  const views = {
    headline: new HeadlineStudio(api),
    thumbnails: new ThumbnailPicker(api),
    opening: new OpeningAnalyzer(api),
    chat: new ChatPanel(api),
    alerts: new AlertsPanel(api),
  };
  return {
    ...views,
    renderHtml(): string {
      return (
        '<main class="creatorkit">' +
        views.alerts.renderHtml() +
        views.headline.renderHtml() +
        views.thumbnails.renderHtml() +
        views.opening.renderHtml() +
        views.chat.renderHtml() +
        "</main>"
      );
    },
  };
}
