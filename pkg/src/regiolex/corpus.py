"""Corpus ingestion: geotagged posts -> mergeable per-word count statistics.

Input posts are JSON Lines, one object per line with fields user_id,
location_id, text and an optional ISO-8601 timestamp (kept verbatim,
never interpreted).

A user belongs to exactly one location for the whole corpus. Posts that
contradict a user's already-seen location are rejected and tallied; as a
consequence ingestion is order-independent only for streams with
consistent user/location attribution, which is the data model here.

Distinct-user counts are exact: per-word user-id sets are kept so that
shards can be merged without double counting.
"""

from __future__ import annotations

import json
import random
import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .locations import LocationTable
from .textnorm import extract_tokens

# ingest-error tally keys
UNKNOWN_LOCATION = "unknown_location"
CONFLICTING_USER_LOCATION = "conflicting_user_location"
EMPTY_TEXT = "empty_text"
MALFORMED_RECORD = "malformed_record"


@dataclass(frozen=True)
class RawPost:
    user_id: str
    location_id: str
    text: str
    timestamp: str | None = None


@dataclass
class CorpusStats:
    """Per-word occurrence and distinct-user counts over a fixed location set."""

    location_ids: list[str]
    word_loc_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    word_users: dict[str, set[str]] = field(default_factory=dict)
    user_locations: dict[str, str] = field(default_factory=dict)
    tokens_per_location: dict[str, int] = field(default_factory=dict)
    posts_per_location: dict[str, int] = field(default_factory=dict)
    errors: dict[str, int] = field(default_factory=dict)

    # -- identity ---------------------------------------------------------

    @property
    def n_locations(self) -> int:
        return len(self.location_ids)

    def fingerprint(self) -> str:
        return "|".join(self.location_ids)

    # -- per-word views ---------------------------------------------------

    def words(self) -> list[str]:
        return list(self.word_loc_counts)

    def __contains__(self, word: str) -> bool:
        return word in self.word_loc_counts

    def occurrences(self, word: str) -> int:
        return sum(self.word_loc_counts[word].values())

    def occ_by_location(self, word: str) -> dict[str, int]:
        return self.word_loc_counts[word]

    def user_count(self, word: str) -> int:
        return len(self.word_users[word])

    def user_counts_by_location(self, word: str) -> dict[str, int]:
        counts: dict[str, int] = {}
        for user in self.word_users[word]:
            loc = self.user_locations[user]
            counts[loc] = counts.get(loc, 0) + 1
        return counts

    def location_frequency(self, word: str) -> int:
        """Number of locations where the word occurs at least once."""
        return sum(1 for c in self.word_loc_counts[word].values() if c > 0)

    # -- corpus totals ----------------------------------------------------

    @property
    def total_tokens(self) -> int:
        return sum(self.tokens_per_location.values())

    @property
    def total_posts(self) -> int:
        return sum(self.posts_per_location.values())

    @property
    def total_users(self) -> int:
        return len(self.user_locations)

    def users_per_location(self) -> dict[str, int]:
        counts = {loc: 0 for loc in self.location_ids}
        for loc in self.user_locations.values():
            counts[loc] += 1
        return counts


def ingest(
    posts: Iterable[RawPost],
    locations: LocationTable,
    sample_index: "SampleIndex | None" = None,
) -> CorpusStats:
    """Accumulate counts from a post stream.

    Invalid posts (unknown location, conflicting user location, empty text)
    are rejected and tallied in stats.errors.
    """
    stats = CorpusStats(location_ids=locations.ids())
    tally = stats.errors
    for post in posts:
        if post.location_id not in locations:
            tally[UNKNOWN_LOCATION] = tally.get(UNKNOWN_LOCATION, 0) + 1
            continue
        if not post.text.strip():
            tally[EMPTY_TEXT] = tally.get(EMPTY_TEXT, 0) + 1
            continue
        seen_loc = stats.user_locations.get(post.user_id)
        if seen_loc is None:
            stats.user_locations[post.user_id] = post.location_id
        elif seen_loc != post.location_id:
            tally[CONFLICTING_USER_LOCATION] = tally.get(CONFLICTING_USER_LOCATION, 0) + 1
            continue
        loc = post.location_id
        tokens = extract_tokens(post.text)
        stats.posts_per_location[loc] = stats.posts_per_location.get(loc, 0) + 1
        stats.tokens_per_location[loc] = stats.tokens_per_location.get(loc, 0) + len(tokens)
        for tok in tokens:
            by_loc = stats.word_loc_counts.setdefault(tok, {})
            by_loc[loc] = by_loc.get(loc, 0) + 1
            stats.word_users.setdefault(tok, set()).add(post.user_id)
        if sample_index is not None:
            sample_index.offer(post, tokens)
    return stats


def merge(a: CorpusStats, b: CorpusStats) -> CorpusStats:
    """Combine two shards built against the same location table.

    Occurrence counts add; distinct-user sets union. A user appearing with
    different locations in the two shards is attributed to whichever of the
    two locations comes first in the table (deterministic and symmetric)
    and tallied as a conflict; shard-then-merge equals single-pass ingest
    exactly when shards are conflict-free.
    """
    if a.location_ids != b.location_ids:
        raise ValueError("cannot merge stats built against different location tables")
    order = {loc: i for i, loc in enumerate(a.location_ids)}

    out = CorpusStats(location_ids=list(a.location_ids))
    for src in (a, b):
        for word, by_loc in src.word_loc_counts.items():
            dst = out.word_loc_counts.setdefault(word, {})
            for loc, c in by_loc.items():
                dst[loc] = dst.get(loc, 0) + c
        for word, users in src.word_users.items():
            out.word_users.setdefault(word, set()).update(users)
        for loc, c in src.tokens_per_location.items():
            out.tokens_per_location[loc] = out.tokens_per_location.get(loc, 0) + c
        for loc, c in src.posts_per_location.items():
            out.posts_per_location[loc] = out.posts_per_location.get(loc, 0) + c
        for key, c in src.errors.items():
            out.errors[key] = out.errors.get(key, 0) + c

    out.user_locations = dict(a.user_locations)
    for user, loc in b.user_locations.items():
        prev = out.user_locations.get(user)
        if prev is None:
            out.user_locations[user] = loc
        elif prev != loc:
            out.user_locations[user] = min(prev, loc, key=order.__getitem__)
            out.errors[CONFLICTING_USER_LOCATION] = out.errors.get(CONFLICTING_USER_LOCATION, 0) + 1
    return out


def apply_thresholds(stats: CorpusStats, min_occ: int = 40, min_users: int = 25) -> CorpusStats:
    """Keep words with strictly more than min_occ occurrences AND min_users users.

    Corpus-level totals (tokens, posts, users per location) are preserved:
    they describe the corpus, not the surviving vocabulary.
    """
    keep = {
        word
        for word in stats.word_loc_counts
        if stats.occurrences(word) > min_occ and stats.user_count(word) > min_users
    }
    return CorpusStats(
        location_ids=list(stats.location_ids),
        word_loc_counts={w: dict(stats.word_loc_counts[w]) for w in keep},
        word_users={w: set(stats.word_users[w]) for w in keep},
        user_locations=dict(stats.user_locations),
        tokens_per_location=dict(stats.tokens_per_location),
        posts_per_location=dict(stats.posts_per_location),
        errors=dict(stats.errors),
    )


# -- post file I/O ---------------------------------------------------------


def read_posts(path: str | Path, errors: dict[str, int] | None = None) -> Iterator[RawPost]:
    """Yield posts from a JSONL file; malformed lines are tallied and skipped."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                post = RawPost(
                    user_id=str(obj["user_id"]),
                    location_id=str(obj["location_id"]),
                    text=str(obj["text"]),
                    timestamp=obj.get("timestamp"),
                )
            except (json.JSONDecodeError, KeyError, TypeError):
                if errors is not None:
                    errors[MALFORMED_RECORD] = errors.get(MALFORMED_RECORD, 0) + 1
                continue
            yield post


def write_posts(posts: Iterable[RawPost], path: str | Path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for post in posts:
            record = {"user_id": post.user_id, "location_id": post.location_id, "text": post.text}
            if post.timestamp is not None:
                record["timestamp"] = post.timestamp
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
            n += 1
    return n


def ingest_file(
    path: str | Path,
    locations: LocationTable,
    sample_index: "SampleIndex | None" = None,
) -> CorpusStats:
    """Read a JSONL post file and ingest it; malformed-line tally included."""
    file_errors: dict[str, int] = {}
    stats = ingest(read_posts(path, errors=file_errors), locations, sample_index=sample_index)
    for key, c in file_errors.items():
        stats.errors[key] = stats.errors.get(key, 0) + c
    return stats


# -- stats persistence ------------------------------------------------------
#
# Binary envelope: 4-byte magic "RGLX", big-endian u16 format version,
# u8 flags (bit 0: zlib-compressed payload), then the payload: a UTF-8 JSON
# object with sorted keys. User sets are stored as sorted lists, so files are
# byte-deterministic for equal stats and round-trip exactly.

STATS_MAGIC = b"RGLX"
STATS_VERSION = 1


def save_stats(stats: CorpusStats, path: str | Path) -> None:
    payload = {
        "location_ids": stats.location_ids,
        "word_loc_counts": stats.word_loc_counts,
        "word_users": {w: sorted(users) for w, users in stats.word_users.items()},
        "user_locations": stats.user_locations,
        "tokens_per_location": stats.tokens_per_location,
        "posts_per_location": stats.posts_per_location,
        "errors": stats.errors,
    }
    raw = json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(STATS_MAGIC)
        fh.write(struct.pack(">HB", STATS_VERSION, 1))
        fh.write(zlib.compress(raw, 6))


def load_stats(path: str | Path) -> CorpusStats:
    blob = Path(path).read_bytes()
    if blob[:4] != STATS_MAGIC:
        raise ValueError(f"{path}: not a regiolex stats file (bad magic)")
    version, flags = struct.unpack(">HB", blob[4:7])
    if version != STATS_VERSION:
        raise ValueError(f"{path}: unsupported stats format version {version}")
    raw = blob[7:]
    if flags & 1:
        raw = zlib.decompress(raw)
    payload = json.loads(raw.decode("utf-8"))
    return CorpusStats(
        location_ids=payload["location_ids"],
        word_loc_counts=payload["word_loc_counts"],
        word_users={w: set(users) for w, users in payload["word_users"].items()},
        user_locations=payload["user_locations"],
        tokens_per_location=payload["tokens_per_location"],
        posts_per_location=payload["posts_per_location"],
        errors=payload["errors"],
    )


# -- sample-context index ----------------------------------------------------


class SampleIndex:
    """Reservoir-sampled example posts per word, for the review service.

    Keeps at most `cap` (user_id, text) pairs per word; sampling is
    deterministic given the post stream order and the seed.
    """

    def __init__(self, cap: int = 50, seed: int = 0):
        self.cap = cap
        self.seed = seed
        self._rng = random.Random(seed)
        self.seen: dict[str, int] = {}
        self.samples: dict[str, list[tuple[str, str]]] = {}

    def offer(self, post: RawPost, tokens: list[str]) -> None:
        for word in sorted(set(tokens)):
            n = self.seen.get(word, 0) + 1
            self.seen[word] = n
            bucket = self.samples.setdefault(word, [])
            if len(bucket) < self.cap:
                bucket.append((post.user_id, post.text))
            else:
                j = self._rng.randrange(n)
                if j < self.cap:
                    bucket[j] = (post.user_id, post.text)

    def get(self, word: str, limit: int | None = None) -> list[tuple[str, str]]:
        bucket = self.samples.get(word, [])
        return bucket[:limit] if limit is not None else list(bucket)

    def save(self, path: str | Path) -> None:
        payload = {
            "cap": self.cap,
            "seed": self.seed,
            "seen": self.seen,
            "samples": {w: [[u, t] for u, t in pairs] for w, pairs in self.samples.items()},
        }
        Path(path).write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "SampleIndex":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        index = cls(cap=payload["cap"], seed=payload["seed"])
        index.seen = {w: int(n) for w, n in payload["seen"].items()}
        index.samples = {w: [(u, t) for u, t in pairs] for w, pairs in payload["samples"].items()}
        return index
