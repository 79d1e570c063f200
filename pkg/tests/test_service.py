import pytest
from fastapi.testclient import TestClient

from regiolex.corpus import RawPost, SampleIndex, ingest, save_stats
from regiolex.locations import save_locations
from regiolex.metrics import Metric, build_ranking, flag_toponyms, write_ranking_tsv
from regiolex.service import create_app, load_state

from conftest import make_locations

POSTS = [
    RawPost("u1", "l01", "che che mate"),
    RawPost("u2", "l01", "che mate chivilcoy dulce dulce dulce dulce"),
    RawPost("u3", "l02", "mate mate che"),
    RawPost("u4", "l03", "dulce facturas"),
]


@pytest.fixture
def artifacts(tmp_path):
    locations = make_locations(3, aliases={"l01": ("chivilcoy",)})
    samples = SampleIndex(cap=50, seed=0)
    stats = ingest(POSTS, locations, sample_index=samples)
    save_stats(stats, tmp_path / "corpus.stats")
    save_locations(locations, tmp_path / "locations.tsv")
    samples.save(tmp_path / "samples.json")
    for metric in (Metric.LTF_IG, Metric.LUF_IG):
        ranking = flag_toponyms(build_ranking(stats, metric), locations)
        write_ranking_tsv(ranking, stats, tmp_path / f"ranking_{metric.value}.tsv")
    return tmp_path


@pytest.fixture
def client(artifacts):
    state = load_state(
        stats_file=artifacts / "corpus.stats",
        locations_file=artifacts / "locations.tsv",
        rankings_dir=artifacts,
        annotations_file=artifacts / "annotations.jsonl",
        samples_file=artifacts / "samples.json",
    )
    return TestClient(create_app(state))


def test_metrics_listing(client):
    body = client.get("/api/metrics").json()
    assert [m["metric"] for m in body] == ["ltf_ig", "luf_ig"]
    assert all(m["size"] == 5 for m in body)


def test_ranking_page_shape(client):
    body = client.get("/api/rankings/ltf_ig", params={"offset": 0, "limit": 20}).json()
    assert body["metric"] == "ltf_ig"
    assert body["total"] == 5
    assert len(body["entries"]) == 5
    first = body["entries"][0]
    assert set(first) == {
        "rank", "word", "value", "occurrences", "users",
        "location_frequency", "toponym", "annotation",
    }
    assert first["rank"] == 1
    assert first["annotation"] is None


def test_pagination_concatenates_to_prefix(client):
    whole = client.get("/api/rankings/luf_ig", params={"limit": 5}).json()["entries"]
    paged = []
    for offset in range(0, 5, 2):
        page = client.get(
            "/api/rankings/luf_ig", params={"offset": offset, "limit": 2}
        ).json()["entries"]
        paged.extend(page)
    assert [e["word"] for e in paged] == [e["word"] for e in whole]


def test_pagination_beyond_end_is_empty(client):
    body = client.get("/api/rankings/ltf_ig", params={"offset": 99, "limit": 10}).json()
    assert body["entries"] == []
    assert body["total"] == 5


def test_unknown_metric_is_404_with_error_shape(client):
    response = client.get("/api/rankings/nope")
    assert response.status_code == 404
    assert response.json() == {
        "code": "not_found",
        "message": "no ranking for metric 'nope'",
    }


def test_word_detail_per_million_and_rows(client):
    body = client.get("/api/words/che").json()
    rows = {r["location_id"]: r for r in body["locations"]}
    assert set(rows) == {"l01", "l02", "l03"}  # one row per location, zeros kept
    # l01 wrote 10 tokens, 3 of them "che"
    assert rows["l01"]["occurrences"] == 3
    assert rows["l01"]["per_million"] == pytest.approx(3e5)
    assert rows["l01"]["users"] == 2
    assert rows["l02"]["occurrences"] == 1
    assert rows["l03"]["occurrences"] == 0
    assert rows["l03"]["per_million"] == 0.0
    assert {s["metric"] for s in body["scores"]} == {"ltf_ig", "luf_ig"}


def test_word_detail_toponym_flag(client):
    assert client.get("/api/words/chivilcoy").json()["toponym"] is True
    assert client.get("/api/words/che").json()["toponym"] is False


def test_word_detail_samples_pseudonymized(client):
    body = client.get("/api/words/facturas").json()
    assert len(body["samples"]) == 1
    sample = body["samples"][0]
    assert sample["text"] == "dulce facturas"
    assert sample["user"] != "u4"
    assert len(sample["user"]) == 12


def test_word_detail_unknown_word(client):
    response = client.get("/api/words/inexistente")
    assert response.status_code == 404
    assert response.json()["code"] == "not_found"


def test_annotation_roundtrip_and_supersede(client):
    payload = {"word": "che", "metric": "luf_ig", "label": 1, "annotator": "ana"}
    created = client.post("/api/annotations", json=payload)
    assert created.status_code == 200
    assert created.json()["timestamp"]

    page = client.get("/api/rankings/luf_ig", params={"annotator": "ana"}).json()
    note = next(e["annotation"] for e in page["entries"] if e["word"] == "che")
    assert note["label"] == 1

    client.post("/api/annotations", json={**payload, "label": 0, "note": "es toponimo"})
    page = client.get("/api/rankings/luf_ig", params={"annotator": "ana"}).json()
    note = next(e["annotation"] for e in page["entries"] if e["word"] == "che")
    assert note["label"] == 0
    assert note["note"] == "es toponimo"


def test_annotation_invalid_label_rejected(client):
    response = client.post(
        "/api/annotations",
        json={"word": "che", "metric": "luf_ig", "label": 7, "annotator": "ana"},
    )
    assert response.status_code == 422
    assert response.json()["code"] == "validation_error"


def test_annotation_unknown_metric_rejected(client):
    response = client.post(
        "/api/annotations",
        json={"word": "che", "metric": "nope", "label": 1, "annotator": "ana"},
    )
    assert response.status_code == 400
    assert response.json()["code"] == "bad_request"


def test_export_fraction(client):
    for word, label in (("che", 1), ("mate", 0), ("dulce", 1), ("facturas", 1)):
        client.post(
            "/api/annotations",
            json={"word": word, "metric": "ltf_ig", "label": label, "annotator": "ana"},
        )
    body = client.get("/api/export/ltf_ig").json()
    assert body["summary"]["annotations"] == 4
    assert body["summary"]["labeled_relevant"] == 3
    assert body["summary"]["fraction_relevant"] == pytest.approx(0.75)
    assert len(body["annotations"]) == 4


def test_restart_preserves_annotations(artifacts):
    def fresh_client():
        state = load_state(
            stats_file=artifacts / "corpus.stats",
            locations_file=artifacts / "locations.tsv",
            rankings_dir=artifacts,
            annotations_file=artifacts / "annotations.jsonl",
            samples_file=artifacts / "samples.json",
        )
        return TestClient(create_app(state))

    first = fresh_client()
    first.post(
        "/api/annotations",
        json={"word": "mate", "metric": "ltf_ig", "label": 1, "annotator": "ana"},
    )
    reborn = fresh_client()
    body = reborn.get("/api/export/ltf_ig").json()
    assert body["summary"]["annotations"] == 1
    assert body["annotations"][0]["word"] == "mate"
