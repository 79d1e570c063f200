// Review-session state: which ranking is open, where the cursor sits,
// which filters hide rows. Pure logic, no DOM, no fetch; everything here
// is rebuilt from the service on reload.

import type { AnnotationRecord, RankingEntry } from "./types.js";

export interface Filters {
  hideToponyms: boolean;
  hideAnnotated: boolean;
}

export class ReviewSession {
  entries: RankingEntry[] = [];
  cursor = 0;
  filters: Filters = { hideToponyms: false, hideAnnotated: false };

  constructor(
    public readonly metric: string,
    public readonly annotator: string,
    public readonly reviewScope: number = 1000,
  ) {}

  setEntries(entries: RankingEntry[]): void {
    this.entries = entries;
    this.clampCursor();
  }

  /** Rows after filters; filters compose (both can be on at once). */
  visible(): RankingEntry[] {
    return this.entries.filter((e) => {
      if (this.filters.hideToponyms && e.toponym) return false;
      if (this.filters.hideAnnotated && e.annotation !== null) return false;
      return true;
    });
  }

  current(): RankingEntry | null {
    return this.visible()[this.cursor] ?? null;
  }

  move(delta: number): void {
    const upper = Math.max(0, this.visible().length - 1);
    this.cursor = Math.min(upper, Math.max(0, this.cursor + delta));
  }

  toggleFilter(name: keyof Filters): void {
    const word = this.current()?.word;
    this.filters[name] = !this.filters[name];
    // keep the cursor on the same word when it survives the new filter
    if (word !== undefined) {
      const index = this.visible().findIndex((e) => e.word === word);
      if (index >= 0) this.cursor = index;
    }
    this.clampCursor();
  }

  annotationFor(word: string): AnnotationRecord | null {
    return this.entries.find((e) => e.word === word)?.annotation ?? null;
  }

  /** Local echo of a stored (or optimistic) annotation; null clears it. */
  applyAnnotation(word: string, annotation: AnnotationRecord | null): void {
    const entry = this.entries.find((e) => e.word === word);
    if (entry) entry.annotation = annotation;
    this.clampCursor();
  }

  /** Distinct annotated words over the review scope (e.g. 123/1000). */
  progress(): { annotated: number; scope: number } {
    const scoped = this.entries.slice(0, this.reviewScope);
    return {
      annotated: scoped.filter((e) => e.annotation !== null).length,
      scope: Math.min(this.reviewScope, this.entries.length) || this.reviewScope,
    };
  }

  private clampCursor(): void {
    const upper = Math.max(0, this.visible().length - 1);
    this.cursor = Math.min(upper, Math.max(0, this.cursor));
  }
}
