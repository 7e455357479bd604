// UI state and its transitions.  The state always serializes to a valid
// flower config body; switching the influence-type tab changes only the
// alter kind, never the year ranges or filter toggles.

import type { AlterKind, FlowerConfigBody, SortMode, YearRange } from "./types.js";

export interface CurationItem {
  id: string;
  kind: string;
  name: string;
}

export interface UiState {
  members: [string, string][];
  displayName: string;
  alterKind: AlterKind;
  pubRange: YearRange | null;
  citeRange: YearRange | null;
  petalCount: number;
  sortMode: SortMode;
  selfCitations: boolean;
  excludeCoContributors: boolean;
  s1: boolean;
  s2: boolean;
  s3: boolean;
  topicLevel: number;
  compareWithAnchor: boolean;
  contrastPub: YearRange | null;
  contrastCite: YearRange | null;
}

export function initialState(): UiState {
  return {
    members: [],
    displayName: "",
    alterKind: "author",
    pubRange: null,
    citeRange: null,
    petalCount: 25,
    sortMode: "ratio",
    selfCitations: true,
    excludeCoContributors: false,
    s1: true,
    s2: false,
    s3: false,
    topicLevel: 1,
    compareWithAnchor: false,
    contrastPub: null,
    contrastCite: null,
  };
}

export function toConfigBody(state: UiState): FlowerConfigBody {
  const petals = Math.min(50, Math.max(1, Math.round(state.petalCount)));
  return {
    members: state.members,
    name: state.displayName,
    alter: state.alterKind,
    pub: state.pubRange,
    cite: state.citeRange,
    petals,
    sort: state.sortMode,
    self_citations: state.selfCitations,
    exclude_co_contributors: state.excludeCoContributors,
    s1: state.s1,
    s2: state.s2,
    s3: state.s3,
    topic_level: state.topicLevel,
    contrast: state.compareWithAnchor
      ? { pub: state.contrastPub, cite: state.contrastCite }
      : null,
  };
}

export function fromConfigBody(body: FlowerConfigBody): UiState {
  const state = initialState();
  state.members = body.members ?? [];
  state.displayName = body.name ?? "";
  state.alterKind = body.alter ?? "author";
  state.pubRange = body.pub ?? null;
  state.citeRange = body.cite ?? null;
  state.petalCount = body.petals ?? 25;
  state.sortMode = body.sort ?? "ratio";
  state.selfCitations = body.self_citations ?? true;
  state.excludeCoContributors = body.exclude_co_contributors ?? false;
  state.s1 = body.s1 ?? true;
  state.s2 = body.s2 ?? false;
  state.s3 = body.s3 ?? false;
  state.topicLevel = body.topic_level ?? 1;
  if (body.contrast) {
    state.compareWithAnchor = true;
    state.contrastPub = body.contrast.pub ?? null;
    state.contrastCite = body.contrast.cite ?? null;
  }
  return state;
}

export function switchTab(state: UiState, kind: AlterKind): UiState {
  return { ...state, alterKind: kind };
}

export function setCuration(state: UiState, items: CurationItem[],
                            displayName: string): UiState {
  return {
    ...state,
    members: items.map((item) => [item.id, item.kind]),
    displayName,
  };
}
