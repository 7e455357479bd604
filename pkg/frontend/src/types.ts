// Payload shapes exactly as the query service emits them.  The UI renders
// these verbatim and never derives influence numbers of its own.

export type EntityKind = "author" | "venue" | "institution" | "topic" | "paper";
export type AlterKind = "author" | "venue" | "institution" | "topic";
export type SortMode = "ratio" | "influenced_by" | "influencing" | "total";

export type YearRange = [number, number];

export interface FlowerConfigBody {
  members: [string, string][];
  name: string;
  alter: AlterKind;
  pub: YearRange | null;
  cite: YearRange | null;
  petals: number;
  sort: SortMode;
  self_citations: boolean;
  exclude_co_contributors: boolean;
  s1: boolean;
  s2: boolean;
  s3: boolean;
  topic_level: number;
  contrast: { pub: YearRange | null; cite: YearRange | null } | null;
}

export interface PetalPayload {
  alter_id: string;
  label: string;
  greyed: boolean;
  angle: number;
  node_radius: number;
  color_t: number;
  color: string;
  in_width: number;
  out_width: number;
  in_score: number;
  out_score: number;
}

export interface FlowerLayoutPayload {
  type: "flower";
  ego: { label: string; radius: number; color: string };
  span: number;
  petals: PetalPayload[];
}

export interface OverlayPetalPayload {
  alter_id: string;
  present: boolean;
  node_radius: number;
  in_width: number;
  out_width: number;
  color_t: number | null;
  color: string | null;
  in_score: number;
  out_score: number;
}

export interface ContrastLayoutPayload {
  type: "contrast";
  anchor: FlowerLayoutPayload;
  overlay: OverlayPetalPayload[];
}

export type LayoutPayload = FlowerLayoutPayload | ContrastLayoutPayload;

export interface BarRowPayload {
  alter_id: string;
  label: string;
  raw_ref_count: number;
  raw_cite_count: number;
  in_flower: boolean;
}

export interface BarsPayload {
  total_alters: number;
  rows: BarRowPayload[];
}

export interface StatsPayload {
  papers: number;
  refs_total: number;
  cites_total: number;
  refs_avg: number;
  cites_avg: number;
  pub_histogram: [number, number][];
  cite_histogram: [number, number][];
}

export interface FlowerResponse {
  layout: LayoutPayload;
  bars: BarsPayload;
  stats: StatsPayload;
  config_link: string;
  diagnostics: { ego_papers: number; fetches: number; hits: number; misses: number };
}

export interface SearchHitPayload {
  entity_id: string;
  kind: EntityKind;
  name: string;
  paper_count: number;
  citation_count: number;
  hint: string;
  base_relevance: number;
  adjusted_relevance: number;
}

export interface PaperInfoPayload {
  id: string;
  title: string;
  year: number;
}

export interface DetailRowPayload {
  ego_paper: PaperInfoPayload;
  incoming: PaperInfoPayload[];
  outgoing: PaperInfoPayload[];
}

export interface DetailResponse {
  alter_id: string;
  alter_name: string;
  pair_count: number;
  rows: DetailRowPayload[];
}

export interface GalleryEntryPayload {
  name: string;
  description: string;
  config_token: string;
}

export interface GalleryResponse {
  categories: { category: string; entries: GalleryEntryPayload[] }[];
}
