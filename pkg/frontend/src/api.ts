// Thin typed client for the query service.  At most one flower request is
// in flight: issuing a new one aborts the previous so a slow response can
// never overwrite a newer flower.

import type {
  DetailResponse,
  FlowerConfigBody,
  FlowerResponse,
  GalleryResponse,
  SearchHitPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function readError(response: Response): Promise<ApiError> {
  let message = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") message = body.error;
  } catch {
    // keep the status text
  }
  return new ApiError(response.status, message);
}

export class ApiClient {
  private flowerController: AbortController | null = null;

  constructor(private readonly base: string = "") {}

  async flower(body: FlowerConfigBody): Promise<FlowerResponse> {
    this.flowerController?.abort();
    const controller = new AbortController();
    this.flowerController = controller;
    const response = await fetch(`${this.base}/api/flower`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal: controller.signal,
    });
    if (!response.ok) throw await readError(response);
    return response.json();
  }

  async search(query: string, kinds: string[], limit = 20): Promise<SearchHitPayload[]> {
    const params = new URLSearchParams({ q: query, limit: String(limit) });
    if (kinds.length) params.set("kinds", kinds.join(","));
    const response = await fetch(`${this.base}/api/search?${params}`);
    if (!response.ok) throw await readError(response);
    return (await response.json()).hits;
  }

  async detail(configToken: string, alterId: string): Promise<DetailResponse> {
    const params = new URLSearchParams({ config: configToken, alter: alterId });
    const response = await fetch(`${this.base}/api/detail?${params}`);
    if (!response.ok) throw await readError(response);
    return response.json();
  }

  async gallery(): Promise<GalleryResponse> {
    const response = await fetch(`${this.base}/api/gallery`);
    if (!response.ok) throw await readError(response);
    return response.json();
  }
}

// Config tokens are URL-safe base64 of the canonical config JSON; decoding
// one lets the UI rebuild its controls from a shared link.
export function decodeConfigToken(token: string): FlowerConfigBody {
  const padded = token.replace(/-/g, "+").replace(/_/g, "/")
    + "=".repeat((4 - (token.length % 4)) % 4);
  return JSON.parse(atob(padded)) as FlowerConfigBody;
}
