/** Archive Chat: transcript over the /chat endpoint. */

import { ApiClient } from "../api.js";

export interface ChatTurn {
  role: "user" | "assistant";
  text: string;
  intent?: string;
}

export class ChatPanel {
  transcript: ChatTurn[] = [];

  constructor(private readonly api: ApiClient) {}

  async send(text: string): Promise<void> {
    this.transcript.push({ role: "user", text });
    try {
      const body = await this.api.chat(text);
      this.transcript.push({ role: "assistant", text: body.message, intent: body.intent });
    } catch (err) {
      const message = err instanceof Error ? err.message : "request failed";
      this.transcript.push({ role: "assistant", text: `Sorry, something went wrong: ${message}` });
    }
  }

  renderHtml(): string {
    const turns = this.transcript
      .map((turn) => `<p class="${turn.role}">${turn.text}</p>`)
      .join("");
    return `<section class="archive-chat">${turns}</section>`;
  }
}
