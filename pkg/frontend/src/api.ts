/** Typed JSON client for the creatorkit scoring service. */

export interface TokenContribution {
  token: string;
  weight: number;
}

export interface HeadlineScoreResponse {
  probability_popular: number;
  contributions: TokenContribution[];
}

export interface ThumbnailRecommendRequest {
  features?: number[][];
  features_fvec_b64?: string;
  frames_ppm_b64?: string[];
}

export interface ThumbnailRecommendResponse {
  scores: number[];
  recommended_index: number;
}

export interface SaliencyFrame {
  frame_index: number;
  pgm_b64: string;
  min: number;
  max: number;
}

export interface VideoScoreRequest {
  features?: number[][];
  frames_ppm_b64?: string[];
  saliency?: boolean;
}

export interface VideoScoreResponse {
  probability_popular: number;
  frame_attention: number[];
  saliency?: SaliencyFrame[];
}

export interface AlertCheckResponse {
  score: number;
  threshold: number;
  alert: boolean;
  history_size: number;
}

export interface ChatResponse {
  intent: string;
  slots: Record<string, string>;
  message: string;
}

export interface AbLiftResponse {
  lift_percent: number;
  ci_low: number;
  ci_high: number;
}

/** Minimal response surface so tests can mock transport without DOM types. */
export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<FetchResponse>;

/** Raised for any non-2xx service reply; carries the server's error code. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorCode: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = globalThis.fetch as FetchLike,
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ApiError(
        response.status,
        String(payload.error_code ?? "unknown"),
        String(payload.message ?? "request failed"),
      );
    }
    return payload as T;
  }

  scoreHeadline(title: string): Promise<HeadlineScoreResponse> {
    return this.post("/headline/score", { title });
  }

  recommendThumbnail(
    request: ThumbnailRecommendRequest,
  ): Promise<ThumbnailRecommendResponse> {
    return this.post("/thumbnail/recommend", request);
  }

  scoreVideo(request: VideoScoreRequest): Promise<VideoScoreResponse> {
    return this.post("/video/score", request);
  }

  checkAlert(score: number, category: string): Promise<AlertCheckResponse> {
    return this.post("/alert/check", { score, category });
  }

  chat(text: string): Promise<ChatResponse> {
    return this.post("/chat", { text });
  }

  abLift(
    groupA: number[],
    groupB: number[],
    seed = 0,
    resamples = 10000,
  ): Promise<AbLiftResponse> {
    return this.post("/ab/lift", {
      group_a: groupA,
      group_b: groupB,
      seed,
      resamples,
    });
  }
}
