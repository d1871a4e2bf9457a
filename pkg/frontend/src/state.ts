/** View-model state for both pages.
 *
 * Editing any input mutates only the draft; nothing touches the network
 * until the action button commits the draft as the submitted spec. The
 * rendered chart and tables therefore always reflect the last submitted
 * spec, never live-edited inputs. At most one submit per page is in
 * flight; a response that arrives after a newer submit is discarded.
 */

import { ApiClient, ApiError } from "./api";
import type {
  BigramHit,
  BigramMode,
  BigramsResponse,
  MatchMode,
  MetaResponse,
  QueryParams,
  QueryResponse,
} from "./types";

export const MIN_WINDOW = 1;
export const MAX_WINDOW = 14;

export interface QueryDraft {
  patterns: string;
  mode: MatchMode;
  from: string;
  to: string;
  window: number;
}

export interface BigramDraft {
  pattern: string;
  bmode: BigramMode;
  from: string;
  to: string;
}

type Listener = () => void;

class Notifier {
  private listeners: Listener[] = [];

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((entry) => entry !== listener);
    };
  }

  protected notify(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }
}

function isIsoDate(value: string): boolean {
  return /^\d{4}-\d{2}-\d{2}$/.test(value);
}

export class MainPageController extends Notifier {
  draft: QueryDraft = { patterns: "", mode: "exact", from: "", to: "", window: 1 };
  submitted: QueryDraft | null = null;
  result: QueryResponse | null = null;
  error: string | null = null;
  loading = false;
  meta: MetaResponse | null = null;
  private sequence = 0;

  constructor(private readonly api: ApiClient) {
    super();
  }

  applyMeta(meta: MetaResponse): void {
    this.meta = meta;
    if (!this.draft.from) {
      this.draft.from = meta.first_date;
    }
    if (!this.draft.to) {
      this.draft.to = meta.last_date;
    }
    this.notify();
  }

  setPatterns(text: string): void {
    this.draft.patterns = text;
    this.notify();
  }

  setMode(mode: MatchMode): void {
    this.draft.mode = mode;
    this.notify();
  }

  setFrom(day: string): void {
    this.draft.from = day;
    this.notify();
  }

  setTo(day: string): void {
    this.draft.to = day;
    this.notify();
  }

  setWindow(window: number): void {
    this.draft.window = window;
    this.notify();
  }

  /** Bigram-finder click-through lands here: fill the form, do not submit. */
  prefill(patterns: string, mode: MatchMode): void {
    this.draft.patterns = patterns;
    this.draft.mode = mode;
    this.notify();
  }

  /** Inline hint shown next to the action button; null means submittable. */
  validationError(): string | null {
    if (!this.draft.patterns.trim()) {
      return "enter at least one pattern";
    }
    if (
      !Number.isInteger(this.draft.window) ||
      this.draft.window < MIN_WINDOW ||
      this.draft.window > MAX_WINDOW
    ) {
      return `window must be between ${MIN_WINDOW} and ${MAX_WINDOW} days`;
    }
    for (const day of [this.draft.from, this.draft.to]) {
      if (day && !isIsoDate(day)) {
        return "dates must be YYYY-MM-DD";
      }
    }
    if (this.draft.from && this.draft.to && this.draft.from > this.draft.to) {
      return "the range start is after its end";
    }
    return null;
  }

  canSubmit(): boolean {
    return this.validationError() === null;
  }

  submittedParams(): QueryParams | null {
    if (!this.submitted) {
      return null;
    }
    return {
      patterns: this.submitted.patterns,
      mode: this.submitted.mode,
      from: this.submitted.from || undefined,
      to: this.submitted.to || undefined,
      window: this.submitted.window,
    };
  }

  async calculate(): Promise<void> {
    if (!this.canSubmit()) {
      return;
    }
    const snapshot: QueryDraft = { ...this.draft };
    this.submitted = snapshot;
    this.loading = true;
    this.error = null;
    const ticket = ++this.sequence;
    this.notify();
    try {
      const result = await this.api.query({
        patterns: snapshot.patterns,
        mode: snapshot.mode,
        from: snapshot.from || undefined,
        to: snapshot.to || undefined,
        window: snapshot.window,
      });
      if (ticket !== this.sequence) {
        return; // superseded by a newer submit
      }
      this.result = result;
    } catch (exc) {
      if (ticket !== this.sequence) {
        return;
      }
      this.result = null;
      this.error = exc instanceof ApiError ? exc.message : String(exc);
    } finally {
      if (ticket === this.sequence) {
        this.loading = false;
        this.notify();
      }
    }
  }
}

export class BigramFinderController extends Notifier {
  draft: BigramDraft = { pattern: "", bmode: "anywhere", from: "", to: "" };
  submitted: BigramDraft | null = null;
  result: BigramsResponse | null = null;
  error: string | null = null;
  loading = false;
  private sequence = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly onPrefill: (hit: BigramHit) => void,
  ) {
    super();
  }

  setPattern(text: string): void {
    this.draft.pattern = text;
    this.notify();
  }

  setBmode(bmode: BigramMode): void {
    this.draft.bmode = bmode;
    this.notify();
  }

  setFrom(day: string): void {
    this.draft.from = day;
    this.notify();
  }

  setTo(day: string): void {
    this.draft.to = day;
    this.notify();
  }

  validationError(): string | null {
    const pattern = this.draft.pattern.trim();
    if (!pattern) {
      return "enter a single-word pattern";
    }
    if (pattern.includes(" ")) {
      return "the finder takes one word, not a bigram";
    }
    return null;
  }

  canSubmit(): boolean {
    return this.validationError() === null;
  }

  async search(): Promise<void> {
    if (!this.canSubmit()) {
      return;
    }
    const snapshot: BigramDraft = { ...this.draft };
    this.submitted = snapshot;
    this.loading = true;
    this.error = null;
    const ticket = ++this.sequence;
    this.notify();
    try {
      const result = await this.api.bigrams({
        pattern: snapshot.pattern,
        bmode: snapshot.bmode,
        from: snapshot.from || undefined,
        to: snapshot.to || undefined,
      });
      if (ticket !== this.sequence) {
        return;
      }
      this.result = result;
    } catch (exc) {
      if (ticket !== this.sequence) {
        return;
      }
      this.result = null;
      this.error = exc instanceof ApiError ? exc.message : String(exc);
    } finally {
      if (ticket === this.sequence) {
        this.loading = false;
        this.notify();
      }
    }
  }

  /** Hand a result row to the main page as an exact bigram query. */
  clickThrough(hit: BigramHit): void {
    this.onPrefill(hit);
  }
}
