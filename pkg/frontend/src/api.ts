// Typed client for the quality-metadata HTTP API. The UI consumes these
// endpoints and nothing else; all scoring happens server-side.

export type Level = "metric" | "dimension" | "category";

export interface TaxonomyMetric {
  iri: string;
  label: string;
  kind: string;
  normalized: boolean;
}

export interface TaxonomyDimension {
  iri: string;
  metrics: TaxonomyMetric[];
}

export interface TaxonomyCategory {
  iri: string;
  dimensions: TaxonomyDimension[];
}

export interface Taxonomy {
  categories: TaxonomyCategory[];
}

export interface DatasetSummary {
  slug: string;
  iri: string;
  metrics: number;
  problems: number;
}

export interface Contribution {
  node: string;
  amount: number;
}

export interface RankedRow {
  dataset: string;
  slug: string;
  total: number;
  breakdown: Contribution[];
}

export interface RankResponse {
  level: Level;
  results: RankedRow[];
}

export interface ObservationRow {
  metric: string;
  label: string;
  value: number | boolean;
  observed_at: string;
}

export interface ObservationsPayload {
  dataset: string;
  slug: string;
  observations: ObservationRow[];
  history: number;
}

export interface ProblemRow {
  metric: string;
  kind: string;
  item: string;
}

export interface ProblemsPage {
  dataset: string;
  slug: string;
  total: number;
  offset: number;
  limit: number;
  problems: ProblemRow[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, init);
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const error = body && typeof body === "object" ? (body as { error?: { code?: string; message?: string } }).error : undefined;
    throw new ApiError(response.status, error?.code ?? "error", error?.message ?? response.statusText);
  }
  return body as T;
}

export interface ApiClient {
  taxonomy(): Promise<Taxonomy>;
  datasets(): Promise<DatasetSummary[]>;
  observations(slug: string): Promise<ObservationsPayload>;
  problems(slug: string, offset: number, limit: number): Promise<ProblemsPage>;
  rank(level: Level, weights: Record<string, number>): Promise<RankResponse>;
}

export function createClient(base = ""): ApiClient {
  return {
    taxonomy: () => request<Taxonomy>(`${base}/api/taxonomy`),
    datasets: async () =>
      (await request<{ datasets: DatasetSummary[] }>(`${base}/api/datasets`)).datasets,
    observations: (slug) => request<ObservationsPayload>(`${base}/api/datasets/${slug}/observations`),
    problems: (slug, offset, limit) =>
      request<ProblemsPage>(
        `${base}/api/datasets/${slug}/problems?offset=${offset}&limit=${limit}`,
      ),
    rank: (level, weights) =>
      request<RankResponse>(`${base}/api/rank`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ level, weights }),
      }),
  };
}
