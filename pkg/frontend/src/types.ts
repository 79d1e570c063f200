// Shapes served by the review service API (mirrors the server's models).

export interface AnnotationRecord {
  word: string;
  metric: string;
  label: number;
  annotator: string;
  category: string | null;
  note: string | null;
  timestamp: string;
}

export interface RankingEntry {
  rank: number;
  word: string;
  value: number;
  occurrences: number;
  users: number;
  location_frequency: number;
  toponym: boolean;
  annotation: AnnotationRecord | null;
}

export interface RankingPage {
  metric: string;
  total: number;
  offset: number;
  limit: number;
  entries: RankingEntry[];
}

export interface MetricInfo {
  metric: string;
  size: number;
}

export interface MetricScore {
  metric: string;
  rank: number;
  value: number;
}

export interface LocationRow {
  location_id: string;
  name: string;
  occurrences: number;
  users: number;
  per_million: number;
}

export interface SampleContext {
  user: string;
  text: string;
}

export interface WordDetail {
  word: string;
  toponym: boolean;
  scores: MetricScore[];
  locations: LocationRow[];
  samples: SampleContext[];
}

export interface ExportSummary {
  metric: string;
  annotations: number;
  words_annotated: number;
  labeled_relevant: number;
  fraction_relevant: number;
}

export interface ExportDump {
  summary: ExportSummary;
  annotations: AnnotationRecord[];
}

export interface AnnotationInput {
  word: string;
  metric: string;
  label: 0 | 1;
  annotator: string;
  category?: string | null;
  note?: string | null;
}

// Table-5-style suggestions; the field itself is free text.
export const CATEGORY_SUGGESTIONS = [
  "colloquialism",
  "indigenism",
  "regional reality",
  "interjection",
  "orthographic variation",
  "regional morpheme",
];
