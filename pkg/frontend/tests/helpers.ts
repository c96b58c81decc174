/** Mock transport helpers shared by the view tests. */

import { FetchLike, FetchResponse } from "../src/api.js";

export function jsonResponse(body: unknown, status = 200): FetchResponse {
  return { ok: status < 400, status, json: async () => body };
}

export interface Deferred {
  resolve(response: FetchResponse): void;
  promise: Promise<FetchResponse>;
}

export function deferred(): Deferred {
  let resolve!: (response: FetchResponse) => void;
  const promise = new Promise<FetchResponse>((r) => {
    resolve = r;
  });
  return { resolve, promise };
}

export interface RecordedCall {
  url: string;
  body: unknown;
}

/** A fetch mock that replies from a queue and records every request body. */
export function queuedFetch(
  queue: Array<FetchResponse | Promise<FetchResponse>>,
): { fetch: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetch: FetchLike = async (url, init) => {
    calls.push({ url, body: init?.body ? JSON.parse(init.body) : null });
    const next = queue.shift();
    if (!next) throw new Error("mock fetch queue exhausted");
    return next;
  };
  return { fetch, calls };
}
