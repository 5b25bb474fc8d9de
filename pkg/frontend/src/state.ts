// UI session state and the view-model helpers the panels share.
// Everything here is derivable from service responses; reloading the
// browser rebuilds the same view from the service alone.

import type { CurationStatus, Paper, SchemeDoc } from "./api.js";

export type ViewName = "scheme" | "triage" | "clusters" | "trends" | "sensitivity";

export interface UiSession {
  projectId: string;
  view: ViewName;
  revision: number;
  pendingJobs: string[];
}

export function newSession(projectId: string): UiSession {
  return { projectId, view: "triage", revision: -1, pendingJobs: [] };
}

export type SortKey = "title" | "year" | "citation_count" | "relevancy" | "popularity";

export interface TriageFilter {
  text: string;
  curation: CurationStatus | "all";
  relevancyEquals: number | null;
}

export const defaultFilter: TriageFilter = { text: "", curation: "all", relevancyEquals: null };

export function sortPapers(papers: Paper[], key: SortKey, descending: boolean): Paper[] {
  const sorted = [...papers].sort((a, b) => {
    const av = a[key] ?? -Infinity;
    const bv = b[key] ?? -Infinity;
    if (av === bv) return a.eid.localeCompare(b.eid);
    return av < bv ? -1 : 1;
  });
  return descending ? sorted.reverse() : sorted;
}

export function filterPapers(papers: Paper[], filter: TriageFilter): Paper[] {
  const needle = filter.text.trim().toLowerCase();
  return papers.filter((paper) => {
    if (filter.curation !== "all" && paper.curation !== filter.curation) return false;
    if (filter.relevancyEquals !== null && paper.relevancy !== filter.relevancyEquals)
      return false;
    if (needle && !`${paper.title} ${paper.eid}`.toLowerCase().includes(needle)) return false;
    return true;
  });
}

// counts banner: found / excluded / included_general / remaining
export interface Banner {
  found: number;
  excluded: number;
  includedGeneral: number;
  remaining: number;
}

export function banner(counts: Record<CurationStatus, number>): Banner {
  const found =
    counts.unreviewed + counts.included + counts.excluded + counts.included_general;
  return {
    found,
    excluded: counts.excluded,
    includedGeneral: counts.included_general,
    remaining: counts.included + counts.unreviewed,
  };
}

// added/removed EIDs between the pool before and after a re-run
export function poolDiff(before: string[], after: string[]): { added: string[]; removed: string[] } {
  const beforeSet = new Set(before);
  const afterSet = new Set(after);
  return {
    added: after.filter((eid) => !beforeSet.has(eid)),
    removed: before.filter((eid) => !afterSet.has(eid)),
  };
}

export function emptyScheme(): SchemeDoc {
  return {
    problem_l1: [],
    problem_l2: [],
    problem_l3: [],
    solution_l1: [],
    solution_l2: [],
    solution_l3: [],
    doc_types: [],
    min_year_exclusive: null,
  };
}

// grid cell text <-> keyword groups: one line per group, variants
// separated by " OR "
export function parseGroups(text: string): string[][] {
  return text
    .split("\n")
    .map((line) =>
      ` ${line} ` // padding lets a leading/trailing OR act as a separator
        .split(/\s+OR\s+/i)
        .map((variant) => variant.trim())
        .filter((variant) => variant.length > 0),
    )
    .filter((group) => group.length > 0);
}

export function groupsToText(groups: string[][]): string {
  return groups.map((group) => group.join(" OR ")).join("\n");
}
