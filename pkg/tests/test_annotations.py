import threading

import pytest

from regiolex.annotations import Annotation, AnnotationStore, export_annotations


@pytest.fixture
def store(tmp_path):
    return AnnotationStore(tmp_path / "annotations.jsonl")


def test_write_then_read_roundtrip(store):
    written = store.append(Annotation("che", "luf_ig", 1, "ana", category="colloquialism"))
    assert written.timestamp  # filled in at store time
    view = store.current("luf_ig")
    assert view[("che", "ana")] == written


def test_second_write_supersedes(store):
    store.append(Annotation("che", "luf_ig", 1, "ana"))
    store.append(Annotation("che", "luf_ig", 0, "ana", note="toponym after all"))
    view = store.current("luf_ig")
    assert view[("che", "ana")].label == 0
    assert len(store.history()) == 2  # log keeps both


def test_annotators_kept_separate(store):
    store.append(Annotation("che", "luf_ig", 1, "ana"))
    store.append(Annotation("che", "luf_ig", 0, "beto"))
    view = store.current("luf_ig")
    assert view[("che", "ana")].label == 1
    assert view[("che", "beto")].label == 0


def test_invalid_label_rejected(store):
    with pytest.raises(ValueError):
        store.append(Annotation("che", "luf_ig", 2, "ana"))
    with pytest.raises(ValueError):
        store.append(Annotation("", "luf_ig", 1, "ana"))


def test_concurrent_writes_both_retained(store):
    def write(annotator, words):
        for w in words:
            store.append(Annotation(w, "ltf_ig", 1, annotator))

    t1 = threading.Thread(target=write, args=("ana", [f"w{i}" for i in range(50)]))
    t2 = threading.Thread(target=write, args=("beto", [f"w{i}" for i in range(50)]))
    t1.start(), t2.start()
    t1.join(), t2.join()
    view = store.current("ltf_ig")
    assert len(view) == 100
    assert len(store.history()) == 100


def test_export_fraction(store):
    store.append(Annotation("a", "luf_ig", 1, "ana"))
    store.append(Annotation("b", "luf_ig", 0, "ana"))
    store.append(Annotation("c", "luf_ig", 1, "ana"))
    store.append(Annotation("x", "ltf_ig", 1, "ana"))  # other ranking, excluded
    out = export_annotations(store, "luf_ig")
    assert out["summary"]["annotations"] == 3
    assert out["summary"]["labeled_relevant"] == 2
    assert out["summary"]["fraction_relevant"] == pytest.approx(2 / 3)
    assert [a["word"] for a in out["annotations"]] == ["a", "b", "c"]


def test_export_all_zeros_and_empty(store):
    out = export_annotations(store, "luf_ig")
    assert out["summary"]["fraction_relevant"] == 0.0
    assert out["annotations"] == []
    store.append(Annotation("a", "luf_ig", 0, "ana"))
    out = export_annotations(store, "luf_ig")
    assert out["summary"]["fraction_relevant"] == 0.0


def test_status_for_word(store):
    store.append(Annotation("che", "luf_ig", 1, "ana"))
    store.append(Annotation("che", "luf_ig", 0, "beto"))
    assert store.status_for_word("che", "luf_ig").annotator == "beto"  # latest write
    assert store.status_for_word("che", "luf_ig", annotator="ana").label == 1
    assert store.status_for_word("nada", "luf_ig") is None


def test_restart_loses_nothing(tmp_path):
    path = tmp_path / "annotations.jsonl"
    AnnotationStore(path).append(Annotation("che", "luf_ig", 1, "ana"))
    reopened = AnnotationStore(path)
    assert reopened.current("luf_ig")[("che", "ana")].label == 1
