"""Read side of the review service: corpus artifacts loaded once, queried often.

Everything served is derived from three durable inputs (stats file,
ranking files, annotation log) plus the optional sample index, so a
restart reconstructs the exact same responses.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from ..annotations import AnnotationStore
from ..corpus import CorpusStats, SampleIndex, load_stats
from ..locations import LocationTable, load_locations
from ..metrics import RankingRow, read_ranking_tsv

RANKING_FILE_PREFIX = "ranking_"


class ServiceState:
    def __init__(
        self,
        stats: CorpusStats,
        locations: LocationTable,
        rankings: dict[str, list[RankingRow]],
        store: AnnotationStore,
        samples: SampleIndex | None = None,
        hash_salt: str = "regiolex",
        sample_limit: int = 20,
    ):
        self.stats = stats
        self.locations = locations
        self.rankings = rankings
        self.store = store
        self.samples = samples
        self.hash_salt = hash_salt
        self.sample_limit = sample_limit
        # word -> per-metric (rank, value) and toponym flag, for word detail
        self.word_scores: dict[str, dict[str, tuple[int, float]]] = {}
        self.word_toponym: dict[str, bool] = {}
        for metric, rows in rankings.items():
            for row in rows:
                self.word_scores.setdefault(row.word, {})[metric] = (row.rank, row.value)
                self.word_toponym[row.word] = self.word_toponym.get(row.word, False) or row.toponym

    def pseudonym(self, user_id: str) -> str:
        digest = hashlib.sha256(f"{self.hash_salt}:{user_id}".encode("utf-8")).hexdigest()
        return digest[:12]

    def location_rows(self, word: str) -> list[dict]:
        occ = self.stats.occ_by_location(word) if word in self.stats else {}
        users = self.stats.user_counts_by_location(word) if word in self.stats else {}
        rows = []
        for loc in self.locations.entries:
            tokens_here = self.stats.tokens_per_location.get(loc.location_id, 0)
            count = occ.get(loc.location_id, 0)
            rows.append(
                {
                    "location_id": loc.location_id,
                    "name": loc.name,
                    "occurrences": count,
                    "users": users.get(loc.location_id, 0),
                    "per_million": 1e6 * count / tokens_here if tokens_here else 0.0,
                }
            )
        return rows

    def sample_contexts(self, word: str) -> list[dict]:
        if self.samples is None:
            return []
        return [
            {"user": self.pseudonym(user), "text": text}
            for user, text in self.samples.get(word, self.sample_limit)
        ]


def load_state(
    stats_file: str | Path,
    locations_file: str | Path,
    rankings_dir: str | Path,
    annotations_file: str | Path,
    samples_file: str | Path | None = None,
    hash_salt: str = "regiolex",
    sample_limit: int = 20,
) -> ServiceState:
    """Assemble service state from the artifacts cmd_ingest/cmd_rank wrote."""
    rankings = {}
    for path in sorted(Path(rankings_dir).glob(f"{RANKING_FILE_PREFIX}*.tsv")):
        metric = path.stem[len(RANKING_FILE_PREFIX):]
        rankings[metric] = read_ranking_tsv(path)
    if not rankings:
        raise FileNotFoundError(f"no {RANKING_FILE_PREFIX}*.tsv files under {rankings_dir}")
    samples = None
    if samples_file is not None and Path(samples_file).exists():
        samples = SampleIndex.load(samples_file)
    return ServiceState(
        stats=load_stats(stats_file),
        locations=load_locations(locations_file),
        rankings=rankings,
        store=AnnotationStore(annotations_file),
        samples=samples,
        hash_salt=hash_salt,
        sample_limit=sample_limit,
    )
