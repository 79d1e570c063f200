"""Command-line pipeline: ingest -> rank -> diff/geo, plus synth and serve.

Every command reads a declarative JSON config (--config) that individual
flags override, and embeds the resolved config in its reports. Outputs are
deterministic given config + seed.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .annotations import AnnotationStore, export_annotations
from .config import RunConfig, load_config
from .corpus import SampleIndex, apply_thresholds, ingest_file, load_stats, save_stats, write_posts
from .geoloc import Hyperparams, build_user_documents, save_model, split_users, sweep, write_sweep_tsv
from .locations import load_locations, save_locations
from .metrics import (
    DegeneratePresenceError,
    Metric,
    build_ranking,
    flag_toponyms,
    rank_diff_table,
    score,
    write_ranking_tsv,
)
from .profiles import max_occurrences, max_user_count, write_profiles_tsv
from .service import create_app, load_state
from .synth import SynthConfig, generate, write_truth_tsv


def _comma_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _comma_floats(text: str) -> list[float]:
    return [float(part) for part in _comma_list(text)]


def _outdir(config: RunConfig) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(config: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(config, n) in (None, "")]
    if missing:
        raise SystemExit(f"error: missing required option(s): {', '.join('--' + n.replace('_', '-') for n in missing)}")


def _per_location_row(values: dict[str, int], location_ids: list[str]) -> dict:
    series = [values.get(loc, 0) for loc in location_ids]
    return {
        "total": sum(series),
        "mean": statistics.mean(series) if series else 0.0,
        "sd": statistics.pstdev(series) if len(series) > 1 else 0.0,
    }


def cmd_ingest(config: RunConfig) -> int:
    _require(config, "posts", "locations")
    out = _outdir(config)
    locations = load_locations(config.locations)
    samples = SampleIndex(cap=config.sample_cap, seed=config.seed) if config.keep_samples else None
    stats = ingest_file(config.posts, locations, sample_index=samples)
    if stats.total_posts == 0:
        print(f"error: no ingestable posts in {config.posts}", file=sys.stderr)
        return 1
    save_stats(stats, config.stats_file)
    if samples is not None:
        samples.save(config.samples_file)

    vocab_per_loc = {loc: 0 for loc in stats.location_ids}
    for by_loc in stats.word_loc_counts.values():
        for loc, c in by_loc.items():
            if c > 0:
                vocab_per_loc[loc] += 1
    summary = {
        "config": json.loads(config.as_json()),
        "totals": {
            "tokens": _per_location_row(stats.tokens_per_location, stats.location_ids),
            "posts": _per_location_row(stats.posts_per_location, stats.location_ids),
            "users": _per_location_row(stats.users_per_location(), stats.location_ids),
            "vocabulary": {
                **_per_location_row(vocab_per_loc, stats.location_ids),
                "total": len(stats.word_loc_counts),
            },
        },
        "errors": stats.errors,
    }
    (out / "ingest_summary.json").write_text(
        json.dumps(summary, ensure_ascii=False, indent=2), encoding="utf-8"
    )
    print(f"{'':12}{'Total':>12}{'Mean':>12}{'SD':>12}")
    for name in ("tokens", "posts", "users", "vocabulary"):
        row = summary["totals"][name]
        print(f"{name:<12}{row['total']:>12}{row['mean']:>12.1f}{row['sd']:>12.1f}")
    if stats.errors:
        print(f"rejected records: {stats.errors}")
    print(f"stats written to {config.stats_file}")
    return 0


def _thresholded(config: RunConfig):
    stats = load_stats(config.stats_file)
    return apply_thresholds(stats, config.min_occ, config.min_users)


def cmd_rank(config: RunConfig) -> int:
    _require(config, "stats_file", "locations")
    out = _outdir(config)
    locations = load_locations(config.locations)
    stats = _thresholded(config)
    if not stats.word_loc_counts:
        print("error: no words survive the thresholds", file=sys.stderr)
        return 1
    comment = f"config: {config.as_json()}"
    for name in config.metrics:
        ranking = flag_toponyms(build_ranking(stats, name, config.log_base), locations)
        write_ranking_tsv(ranking, stats, out / f"ranking_{name}.tsv", header_comment=comment)

    score_metrics = [Metric(m) for m in config.metrics if Metric(m) is not Metric.TF_ILF]
    occ_max = max_occurrences(stats)
    users_max = max_user_count(stats)
    with open(out / "rankings_combined.tsv", "w", encoding="utf-8") as fh:
        fh.write(f"# {comment}\n")
        fh.write("word\t#occurrences\t#users\t" + "\t".join(m.value for m in score_metrics) + "\n")
        for word in sorted(stats.word_loc_counts):
            values = []
            for m in score_metrics:
                try:
                    values.append(
                        score(stats, word, m, config.log_base, occ_max=occ_max, users_max=users_max)
                    )
                except DegeneratePresenceError:
                    values.append(0.0)
            fh.write(
                f"{word}\t{stats.occurrences(word)}\t{stats.user_count(word)}\t"
                + "\t".join(f"{v:.12g}" for v in values)
                + "\n"
            )
    if config.write_profiles:
        write_profiles_tsv(stats, out / "profiles.tsv")
    print(f"wrote {len(config.metrics)} ranking file(s) + rankings_combined.tsv to {out}")
    return 0


def cmd_diff(config: RunConfig) -> int:
    _require(config, "stats_file")
    out = _outdir(config)
    stats = _thresholded(config)
    r_words = build_ranking(stats, Metric.LTF_IG)
    r_users = build_ranking(stats, Metric.LUF_IG)
    rows = rank_diff_table(r_words, r_users, top_k=config.diff_top_k)
    with open(out / "rank_diff.tsv", "w", encoding="utf-8") as fh:
        fh.write(f"# config: {config.as_json()}\n")
        fh.write("word\tword_rank\tuser_rank\n")
        for word, word_rank, user_rank, _ in rows:
            fh.write(f"{word}\t{word_rank}\t{user_rank}\n")
    print(f"wrote top-{len(rows)} rank divergences to {out / 'rank_diff.tsv'}")
    return 0


def cmd_geo(config: RunConfig) -> int:
    _require(config, "posts", "locations", "stats_file")
    out = _outdir(config)
    locations = load_locations(config.locations)
    stats = _thresholded(config)
    rankings = {name: build_ranking(stats, name, config.log_base) for name in config.metrics}
    docs = build_user_documents(
        corpus_mod.read_posts(config.posts), locations, stats.word_loc_counts
    )
    split = split_users(docs, config.train_n, config.test_n, config.seed)
    hp = Hyperparams(
        learning_rate=config.learning_rate,
        l2=config.l2,
        max_epochs=config.max_epochs,
        tol=config.tol,
        seed=config.seed,
        log_counts=config.log_counts,
    )

    def persist(metric: str, fraction: float, model) -> None:
        if config.save_models:
            save_model(model, out / f"model_{metric}_{fraction:g}.json")

    rows = sweep(rankings, config.fractions, split, locations, hp, on_model=persist)
    write_sweep_tsv(rows, out / "sweep.tsv", header_comment=f"config: {config.as_json()}")
    for row in rows:
        print(
            f"{row.metric:<12} fraction={row.fraction:<6g} features={row.n_features:<6} "
            f"accuracy={row.accuracy:.3f} mean_km={row.mean_distance_km:.1f}"
        )
    return 0


def cmd_synth(config: RunConfig) -> int:
    out = _outdir(config)
    params = dict(config.synth)
    params.setdefault("seed", config.seed)
    synth_config = SynthConfig(**params)
    posts, truth, locations = generate(synth_config)
    n = write_posts(posts, out / "posts.jsonl")
    save_locations(locations, out / "locations.tsv")
    write_truth_tsv(truth, out / "truth.tsv")
    print(f"wrote {n} posts, {len(truth)} truth rows to {out}")
    return 0


def cmd_serve(config: RunConfig) -> int:
    _require(config, "stats_file", "locations")
    state = load_state(
        stats_file=config.stats_file,
        locations_file=config.locations,
        rankings_dir=config.output_dir,
        annotations_file=config.annotations_file,
        samples_file=config.samples_file,
        hash_salt=config.hash_salt,
    )
    app = create_app(state, ui_dir=config.ui_dir)
    import uvicorn

    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def cmd_export_annotations(config: RunConfig, metric: str, output: str | None) -> int:
    store = AnnotationStore(config.annotations_file)
    dump = export_annotations(store, metric)
    target = Path(output) if output else _outdir(config) / f"annotations_{metric}.json"
    target.write_text(json.dumps(dump, ensure_ascii=False, indent=2), encoding="utf-8")
    s = dump["summary"]
    print(
        f"{metric}: {s['annotations']} annotations over {s['words_annotated']} words, "
        f"{s['fraction_relevant']:.1%} marked relevant -> {target}"
    )
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--posts", help="input posts (JSON lines)")
    parser.add_argument("--locations", help="gazetteer TSV")
    parser.add_argument("--output-dir", dest="output_dir")
    parser.add_argument("--stats-file", dest="stats_file")
    parser.add_argument("--samples-file", dest="samples_file")
    parser.add_argument("--annotations-file", dest="annotations_file")
    parser.add_argument("--min-occ", dest="min_occ", type=int)
    parser.add_argument("--min-users", dest="min_users", type=int)
    parser.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regiolex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="normalize posts into a stats file")
    _add_common(p)
    p.add_argument("--keep-samples", dest="keep_samples", action="store_const", const=True,
                   help="build the per-word sample-context index")
    p.add_argument("--sample-cap", dest="sample_cap", type=int)

    p = sub.add_parser("rank", help="export per-metric ranking files")
    _add_common(p)
    p.add_argument("--metrics", type=_comma_list)
    p.add_argument("--log-base", dest="log_base", type=float)
    p.add_argument("--profiles", dest="write_profiles", action="store_const", const=True,
                   help="also dump per-word frequency profiles")

    p = sub.add_parser("diff", help="word-rank vs user-rank divergence report")
    _add_common(p)
    p.add_argument("--top-k", dest="diff_top_k", type=int)

    p = sub.add_parser("geo", help="feature-selection sweep for user geolocation")
    _add_common(p)
    p.add_argument("--metrics", type=_comma_list)
    p.add_argument("--fractions", type=_comma_floats)
    p.add_argument("--train-n", dest="train_n", type=int)
    p.add_argument("--test-n", dest="test_n", type=int)
    p.add_argument("--learning-rate", dest="learning_rate", type=float)
    p.add_argument("--l2", type=float)
    p.add_argument("--max-epochs", dest="max_epochs", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--raw-counts", dest="log_counts", action="store_const", const=False,
                   help="use raw counts instead of log(1+count) features")
    p.add_argument("--no-models", dest="save_models", action="store_const", const=False)

    p = sub.add_parser("synth", help="generate a synthetic corpus with ground truth")
    _add_common(p)
    p.add_argument("--synth-json", dest="synth", type=json.loads,
                   help='generator parameters as JSON, e.g. \'{"n_locations": 5}\'')

    p = sub.add_parser("serve", help="run the review service")
    _add_common(p)
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--hash-salt", dest="hash_salt")
    p.add_argument("--ui-dir", dest="ui_dir")

    p = sub.add_parser("export-annotations", help="dump one ranking's annotations")
    _add_common(p)
    p.add_argument("--metric", required=True)
    p.add_argument("--output")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    payload = vars(args)
    command = payload.pop("command")
    config_path = payload.pop("config", None)
    metric = payload.pop("metric", None)
    output = payload.pop("output", None)
    config = load_config(config_path, overrides=payload)

    if command == "ingest":
        return cmd_ingest(config)
    if command == "rank":
        return cmd_rank(config)
    if command == "diff":
        return cmd_diff(config)
    if command == "geo":
        return cmd_geo(config)
    if command == "synth":
        return cmd_synth(config)
    if command == "serve":
        return cmd_serve(config)
    if command == "export-annotations":
        return cmd_export_annotations(config, metric, output)
    raise SystemExit(f"unknown command {command!r}")


if __name__ == "__main__":
    sys.exit(main())
