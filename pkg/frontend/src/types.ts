/** Response shapes of the frequency API, mirrored field for field. */

export interface MetaResponse {
  schema_version: number;
  generation: string;
  first_date: string;
  last_date: string;
  last_update_instant: string;
  day_count: number;
  token_total: number;
  type_total: number;
  source_count: number;
}

export interface SeriesPoint {
  date: string;
  abs: number;
  rel: number;
  smoothed: number | null;
}

export interface PatternSeries {
  pattern: string;
  kind: "unigram" | "bigram";
  points: SeriesPoint[];
}

export interface HitRow {
  word_form: string;
  pattern: string;
  abs_count_in_range: number;
}

export interface QueryMeta {
  denominators: Record<string, string>;
  dropped_patterns: string[];
}

export interface QueryResponse {
  schema_version: number;
  generation: string;
  mode: string;
  window: number;
  date_from: string;
  date_to: string;
  meta: QueryMeta;
  series: PatternSeries[];
  hits: HitRow[] | null;
}

export interface BigramHit {
  form1: string;
  form2: string;
  count: number;
}

export interface BigramsResponse {
  schema_version: number;
  generation: string;
  pattern: string;
  bmode: string;
  date_from: string;
  date_to: string;
  limit: number;
  results: BigramHit[];
}

export type MatchMode = "exact" | "within";
export type BigramMode = "anywhere" | "first" | "second";

export interface QueryParams {
  patterns: string;
  mode: MatchMode;
  from?: string;
  to?: string;
  window: number;
}

export interface BigramParams {
  pattern: string;
  bmode: BigramMode;
  from?: string;
  to?: string;
  limit?: number;
}
