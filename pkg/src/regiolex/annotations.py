"""Durable lexicographer judgments: an append-only log with last-write-wins.

Every write is one JSON line, flushed and fsynced. The current view keeps
the latest record per (word, metric, annotator); nothing is ever deleted,
so the full history stays auditable.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path


@dataclass(frozen=True)
class Annotation:
    word: str
    metric: str  # which ranking was being reviewed
    label: int  # 1 = lexicographically relevant (candidate regionalism), 0 = not
    annotator: str
    category: str | None = None  # free text, e.g. colloquialism / indigenism
    note: str | None = None
    timestamp: str = ""


class AnnotationStore:
    """Append-only JSONL store; safe for concurrent writers in one process."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, annotation: Annotation) -> Annotation:
        if annotation.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {annotation.label!r}")
        if not annotation.word or not annotation.annotator:
            raise ValueError("word and annotator are required")
        if not annotation.timestamp:
            stamp = datetime.now(timezone.utc).isoformat()
            annotation = Annotation(**{**asdict(annotation), "timestamp": stamp})
        line = json.dumps(asdict(annotation), ensure_ascii=False)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        return annotation

    def history(self) -> list[Annotation]:
        """Every record ever written, in write order."""
        if not self.path.exists():
            return []
        records = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    records.append(Annotation(**json.loads(line)))
        return records

    def current(self, metric: str | None = None) -> dict[tuple[str, str], Annotation]:
        """Latest annotation per (word, annotator), optionally for one metric."""
        view: dict[tuple[str, str], Annotation] = {}
        for record in self.history():
            if metric is not None and record.metric != metric:
                continue
            view[(record.word, record.annotator)] = record
        return view

    def status_for_word(
        self, word: str, metric: str, annotator: str | None = None
    ) -> Annotation | None:
        """Most recent current annotation of a word, optionally per annotator."""
        latest = None
        for record in self.history():
            if record.word != word or record.metric != metric:
                continue
            if annotator is not None and record.annotator != annotator:
                continue
            latest = record
        return latest


def export_annotations(store: AnnotationStore, metric: str) -> dict:
    """Current annotations for one ranking plus the labeled-relevant fraction."""
    view = store.current(metric)
    records = sorted(view.values(), key=lambda a: (a.word, a.annotator))
    relevant = sum(1 for a in records if a.label == 1)
    total = len(records)
    return {
        "summary": {
            "metric": metric,
            "annotations": total,
            "words_annotated": len({a.word for a in records}),
            "labeled_relevant": relevant,
            "fraction_relevant": relevant / total if total else 0.0,
        },
        "annotations": [asdict(a) for a in records],
    }
