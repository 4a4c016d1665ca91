import type {
  ContrastBundle,
  DecisionIn,
  DecisionOut,
  Problem,
  Ranking,
  Summary,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(problem: Problem) {
    super(problem.detail);
    this.status = problem.status;
    this.code = problem.code;
  }
}

type FetchLike = typeof fetch;

/** Thin typed client over the service endpoints. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      if (body && typeof body === "object" && "code" in body) {
        throw new ApiError(body as Problem);
      }
      throw new ApiError({
        title: "request failed",
        status: response.status,
        code: "HTTP_" + response.status,
        detail: JSON.stringify(body),
      });
    }
    return body as T;
  }

  getRanking(k?: number): Promise<Ranking> {
    const query = k === undefined ? "" : `?k=${k}`;
    return this.request<Ranking>(`/ranking${query}`);
  }

  getContrast(idA: string, idB: string, policy?: string): Promise<ContrastBundle> {
    const query = policy ? `?policy=${encodeURIComponent(policy)}` : "";
    return this.request<ContrastBundle>(
      `/contrast/${encodeURIComponent(idA)}/${encodeURIComponent(idB)}${query}`,
    );
  }

  postDecision(decision: DecisionIn): Promise<DecisionOut> {
    return this.request<DecisionOut>("/decision", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(decision),
    });
  }

  getSummary(): Promise<Summary> {
    return this.request<Summary>("/decisions/summary");
  }
}
