// Glue between the API client and session state: paging the ranking in,
// optimistic label writes with rollback, cursor advance on label.

import { ApiClient } from "./api.js";
import { ReviewSession } from "./session.js";
import type { AnnotationRecord } from "./types.js";

const PAGE_SIZE = 200;

export class ReviewController {
  lastError: string | null = null;

  constructor(
    public readonly api: ApiClient,
    public readonly session: ReviewSession,
  ) {}

  /** Load the ranking head (up to the review scope) and build a session. */
  static async start(
    api: ApiClient,
    metric: string,
    annotator: string,
    reviewScope = 1000,
  ): Promise<ReviewController> {
    const session = new ReviewSession(metric, annotator, reviewScope);
    const entries = [];
    for (let offset = 0; offset < reviewScope; offset += PAGE_SIZE) {
      const page = await api.getRankingPage(
        metric,
        offset,
        Math.min(PAGE_SIZE, reviewScope - offset),
        annotator,
      );
      entries.push(...page.entries);
      if (offset + page.entries.length >= page.total) break;
      if (page.entries.length === 0) break;
    }
    session.setEntries(entries);
    return new ReviewController(api, session);
  }

  /**
   * Optimistically record a label, then POST it. On failure the previous
   * annotation is restored and the error is surfaced via lastError.
   */
  async submitLabel(
    word: string,
    label: 0 | 1,
    category?: string | null,
    note?: string | null,
  ): Promise<AnnotationRecord> {
    const session = this.session;
    const previous = session.annotationFor(word);
    session.applyAnnotation(word, {
      word,
      metric: session.metric,
      label,
      annotator: session.annotator,
      category: category ?? null,
      note: note ?? null,
      timestamp: "(saving)",
    });
    this.lastError = null;
    try {
      const stored = await this.api.postAnnotation({
        word,
        metric: session.metric,
        label,
        annotator: session.annotator,
        category: category ?? null,
        note: note ?? null,
      });
      session.applyAnnotation(word, stored);
      return stored;
    } catch (err) {
      session.applyAnnotation(word, previous);
      this.lastError = err instanceof Error ? err.message : String(err);
      throw err;
    }
  }

  /** Keyboard flow: label the word under the cursor and move on. */
  async labelCurrentAndAdvance(
    label: 0 | 1,
    category?: string | null,
    note?: string | null,
  ): Promise<void> {
    const entry = this.session.current();
    if (!entry) return;
    const promise = this.submitLabel(entry.word, label, category, note).catch(() => {
      // rollback already happened; lastError carries the message
    });
    // if the labeled row is now hidden (hide-annotated filter), the next
    // row slid under the cursor by itself; otherwise step past it
    if (this.session.current()?.word === entry.word) {
      this.session.move(1);
    }
    await promise;
  }
}
