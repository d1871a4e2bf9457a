/** Shareable page state, encoded in the URL fragment.
 *
 * The fragment looks like `#main?patterns=fc%2Ccorona&mode=exact&...` so a
 * pasted link restores the tab and its form inputs: restoring fills the
 * drafts only, it never auto-submits.
 */

import type { BigramMode, MatchMode } from "./types";

export type Tab = "main" | "bigrams";

export interface AppUrlState {
  tab: Tab;
  patterns?: string;
  mode?: MatchMode;
  from?: string;
  to?: string;
  window?: number;
  bpattern?: string;
  bmode?: BigramMode;
}

export function encodeState(state: AppUrlState): string {
  const params = new URLSearchParams();
  if (state.patterns) params.set("patterns", state.patterns);
  if (state.mode) params.set("mode", state.mode);
  if (state.from) params.set("from", state.from);
  if (state.to) params.set("to", state.to);
  if (state.window !== undefined) params.set("window", String(state.window));
  if (state.bpattern) params.set("bpattern", state.bpattern);
  if (state.bmode) params.set("bmode", state.bmode);
  const qs = params.toString();
  return qs ? `#${state.tab}?${qs}` : `#${state.tab}`;
}

export function decodeState(fragment: string): AppUrlState {
  const raw = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  const [tabPart, queryPart] = raw.split("?", 2);
  const tab: Tab = tabPart === "bigrams" ? "bigrams" : "main";
  const state: AppUrlState = { tab };
  if (!queryPart) {
    return state;
  }
  const params = new URLSearchParams(queryPart);
  const patterns = params.get("patterns");
  if (patterns) state.patterns = patterns;
  const mode = params.get("mode");
  if (mode === "exact" || mode === "within") state.mode = mode;
  const from = params.get("from");
  if (from) state.from = from;
  const to = params.get("to");
  if (to) state.to = to;
  const windowRaw = params.get("window");
  if (windowRaw !== null) {
    const window = Number(windowRaw);
    if (Number.isInteger(window)) state.window = window;
  }
  const bpattern = params.get("bpattern");
  if (bpattern) state.bpattern = bpattern;
  const bmode = params.get("bmode");
  if (bmode === "anywhere" || bmode === "first" || bmode === "second") {
    state.bmode = bmode;
  }
  return state;
}
