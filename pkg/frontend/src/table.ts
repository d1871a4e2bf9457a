/** Hit-table view state: searching, sorting, and paging are pure functions
 * over the cached response rows, so changing them never refetches anything.
 */

import type { BigramHit, HitRow } from "./types";

export type SortKey = "count" | "form" | "pattern";
export type SortDirection = "asc" | "desc";

export interface TableState {
  sort: SortKey;
  direction: SortDirection;
  search: string;
  page: number;
  pageSize: number;
}

export function defaultTableState(): TableState {
  return { sort: "count", direction: "desc", search: "", page: 0, pageSize: 15 };
}

/** Clicking a header sorts by it; clicking again flips the direction. */
export function toggleSort(state: TableState, key: SortKey): TableState {
  if (state.sort === key) {
    const direction = state.direction === "desc" ? "asc" : "desc";
    return { ...state, direction, page: 0 };
  }
  // fresh columns start descending for counts, ascending for text
  const direction: SortDirection = key === "count" ? "desc" : "asc";
  return { ...state, sort: key, direction, page: 0 };
}

export function setSearch(state: TableState, search: string): TableState {
  return { ...state, search, page: 0 };
}

export function setPage(state: TableState, page: number): TableState {
  return { ...state, page };
}

export interface TableView {
  rows: HitRow[];
  matching: number;
  page: number;
  pageCount: number;
}

function compareKey(a: HitRow, b: HitRow, key: SortKey): number {
  if (key === "count") {
    return a.abs_count_in_range - b.abs_count_in_range;
  }
  const left = key === "form" ? a.word_form : a.pattern;
  const right = key === "form" ? b.word_form : b.pattern;
  return left < right ? -1 : left > right ? 1 : 0;
}

export function tableView(rows: HitRow[], state: TableState): TableView {
  const needle = state.search.trim().toLowerCase();
  const filtered = needle
    ? rows.filter(
        (row) =>
          row.word_form.includes(needle) || row.pattern.includes(needle),
      )
    : [...rows];
  filtered.sort((a, b) => {
    const primary = compareKey(a, b, state.sort);
    if (primary !== 0) {
      return state.direction === "desc" ? -primary : primary;
    }
    // ties stay in the ranked order the server uses: form, then pattern
    if (a.word_form !== b.word_form) {
      return a.word_form < b.word_form ? -1 : 1;
    }
    return a.pattern < b.pattern ? -1 : a.pattern > b.pattern ? 1 : 0;
  });
  const pageCount = Math.max(1, Math.ceil(filtered.length / state.pageSize));
  const page = Math.min(Math.max(state.page, 0), pageCount - 1);
  const start = page * state.pageSize;
  return {
    rows: filtered.slice(start, start + state.pageSize),
    matching: filtered.length,
    page,
    pageCount,
  };
}

/** The finder table is served ranked; rendering keeps the server order. */
export function bigramRows(results: BigramHit[], pageSize: number, page: number): BigramHit[] {
  const start = Math.max(page, 0) * pageSize;
  return results.slice(start, start + pageSize);
}
