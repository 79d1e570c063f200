"""Declarative run configuration: one JSON file plus flag overrides.

Reports embed the resolved configuration so every output is traceable to
the exact parameters that produced it.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .metrics import Metric

DEFAULT_METRICS = [
    Metric.LTF_IG.value,
    Metric.LUF_IG.value,
    Metric.IGR_WORDS.value,
    Metric.IGR_USERS.value,
    Metric.TF_ILF.value,
]


@dataclass
class RunConfig:
    # paths
    posts: str | None = None
    locations: str | None = None
    output_dir: str = "out"
    stats_file: str | None = None  # default <output_dir>/corpus.stats
    samples_file: str | None = None  # default <output_dir>/samples.json
    annotations_file: str | None = None  # default <output_dir>/annotations.jsonl
    # vocabulary thresholds
    min_occ: int = 40
    min_users: int = 25
    # ranking
    metrics: list[str] = field(default_factory=lambda: list(DEFAULT_METRICS))
    log_base: float | None = None  # natural log when unset
    diff_top_k: int = 100
    write_profiles: bool = False
    # geolocation experiment
    fractions: list[float] = field(default_factory=lambda: [0.05])
    train_n: int = 7500
    test_n: int = 2500
    seed: int = 0
    learning_rate: float = 0.5
    l2: float = 1e-4
    max_epochs: int = 500
    tol: float = 1e-7
    log_counts: bool = True
    save_models: bool = True
    # ingestion extras
    keep_samples: bool = False
    sample_cap: int = 50
    # review service
    host: str = "127.0.0.1"
    port: int = 8765
    hash_salt: str = "regiolex"
    ui_dir: str | None = None
    # synthetic corpus parameters, passed through to SynthConfig
    synth: dict = field(default_factory=dict)

    def resolve_paths(self) -> None:
        out = Path(self.output_dir)
        if self.stats_file is None:
            self.stats_file = str(out / "corpus.stats")
        if self.samples_file is None:
            self.samples_file = str(out / "samples.json")
        if self.annotations_file is None:
            self.annotations_file = str(out / "annotations.jsonl")

    def as_json(self) -> str:
        """Canonical single-line form embedded in report headers."""
        return json.dumps(asdict(self), ensure_ascii=False, sort_keys=True)


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> RunConfig:
    """Build a RunConfig from an optional JSON file and explicit overrides."""
    known = {f.name for f in fields(RunConfig)}
    values: dict = {}
    if path is not None:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            if key not in known:
                raise ValueError(f"unknown config override: {key}")
            values[key] = value
    config = RunConfig(**values)
    config.resolve_paths()
    return config
