"""Word-scoring metrics over location distributions, and ranking machinery.

Two families of scores live here:

* entropy-weighted frequency metrics: the location entropy of a word's
  occurrences (or of its users) measures geographic spread; multiplying
  the "information gain" (log N - H) by a frequency term promotes words
  that are both common and concentrated. The frequency term is either the
  raw relative frequency (i_*_raw) or the normalized log-frequency
  (ltf_ig / luf_ig), which tames Zipfian magnitudes.
* information gain ratio (igr): the mutual information between a word's
  presence and the location variable, normalized by the word's intrinsic
  entropy, over either token or user counts.

plus the tf_ilf baseline ordering and rank-divergence analysis used to
spot bot-like vocabulary (huge occurrence counts from a handful of
accounts).

All logarithms are natural unless a log_base is passed; rankings are
invariant to the base.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable

from .corpus import CorpusStats
from .locations import LocationTable
from .profiles import (
    OCCURRENCES,
    USERS,
    loc_dist_occurrences,
    loc_dist_users,
    max_occurrences,
    max_user_count,
)


class DegeneratePresenceError(ValueError):
    """IGR is undefined for a word present in all units or none (IV = 0)."""


class Metric(str, enum.Enum):
    H_WORDS = "h_words"
    H_USERS = "h_users"
    I_WORDS_RAW = "i_words_raw"
    I_USERS_RAW = "i_users_raw"
    LTF_IG = "ltf_ig"
    LUF_IG = "luf_ig"
    IGR_WORDS = "igr_words"
    IGR_USERS = "igr_users"
    TF_ILF = "tf_ilf"  # an ordering, not a score


SCORE_METRICS = [m for m in Metric if m is not Metric.TF_ILF]


def _rescale(value: float, log_base: float | None) -> float:
    # Entropies and gains are computed in nats and converted by a single
    # final division: per-element log(x, base) rounds differently and can
    # flip sub-ulp near-ties between bases, while one scaling cannot.
    if log_base is None:
        return value
    return value / math.log(log_base)


def _entropy(probs: Iterable[float]) -> float:
    return -sum(p * math.log(p) for p in probs if p > 0.0)


# -- entropies ---------------------------------------------------------------


def h_words(stats: CorpusStats, word: str, log_base: float | None = None) -> float:
    """Entropy of the word's occurrence distribution over locations."""
    return _rescale(_entropy(loc_dist_occurrences(stats, word).probs), log_base)


def h_users(stats: CorpusStats, word: str, log_base: float | None = None) -> float:
    """Entropy of the location distribution of the word's distinct users."""
    return _rescale(_entropy(loc_dist_users(stats, word).probs), log_base)


# -- entropy-weighted frequency metrics --------------------------------------


def i_words_raw(stats: CorpusStats, word: str, log_base: float | None = None) -> float:
    p = stats.occurrences(word) / stats.total_tokens
    gain = math.log(stats.n_locations) - _entropy(loc_dist_occurrences(stats, word).probs)
    return _rescale(p * gain, log_base)


def i_users_raw(stats: CorpusStats, word: str, log_base: float | None = None) -> float:
    q = stats.user_count(word) / stats.total_users
    gain = math.log(stats.n_locations) - _entropy(loc_dist_users(stats, word).probs)
    return _rescale(q * gain, log_base)


def ltf_ig(
    stats: CorpusStats,
    word: str,
    log_base: float | None = None,
    occ_max: int | None = None,
) -> float:
    """Normalized log token frequency times occurrence information gain."""
    if occ_max is None:
        occ_max = max_occurrences(stats)
    n = math.log(stats.occurrences(word)) / math.log(occ_max)
    gain = math.log(stats.n_locations) - _entropy(loc_dist_occurrences(stats, word).probs)
    return _rescale(n * gain, log_base)


def luf_ig(
    stats: CorpusStats,
    word: str,
    log_base: float | None = None,
    users_max: int | None = None,
) -> float:
    """Normalized log user frequency times user information gain."""
    if users_max is None:
        users_max = max_user_count(stats)
    n = math.log(stats.user_count(word)) / math.log(users_max)
    gain = math.log(stats.n_locations) - _entropy(loc_dist_users(stats, word).probs)
    return _rescale(n * gain, log_base)


# -- information gain ratio ---------------------------------------------------


def igr(stats: CorpusStats, word: str, basis: str = OCCURRENCES, log_base: float | None = None) -> float:
    """Information gain of the word about location, over its intrinsic value.

    IG is computed as H(L) - H(L|word) with maximum-likelihood estimates
    from the chosen basis (token counts or distinct-user counts); IV is the
    binary entropy of the word's presence probability. The ratio is
    base-independent, so log_base is accepted for uniformity but has no
    effect on the value.
    """
    del log_base
    if basis == OCCURRENCES:
        present = stats.occ_by_location(word)
        per_loc = stats.tokens_per_location
        word_total = stats.occurrences(word)
        grand_total = stats.total_tokens
    elif basis == USERS:
        present = stats.user_counts_by_location(word)
        per_loc = stats.users_per_location()
        word_total = stats.user_count(word)
        grand_total = stats.total_users
    else:
        raise ValueError(f"unknown basis {basis!r}")

    p_word = word_total / grand_total
    if p_word <= 0.0 or p_word >= 1.0:
        raise DegeneratePresenceError(
            f"IGR undefined for word {word!r}: presence probability is {p_word}"
        )

    h_class = _entropy(per_loc.get(loc, 0) / grand_total for loc in stats.location_ids)
    h_given_present = _entropy(present.get(loc, 0) / word_total for loc in stats.location_ids)
    absent_total = grand_total - word_total
    h_given_absent = _entropy(
        (per_loc.get(loc, 0) - present.get(loc, 0)) / absent_total for loc in stats.location_ids
    )
    ig = h_class - (p_word * h_given_present + (1.0 - p_word) * h_given_absent)
    iv = -p_word * math.log(p_word) - (1.0 - p_word) * math.log(1.0 - p_word)
    return ig / iv


# -- rankings ------------------------------------------------------------------


@dataclass(frozen=True)
class RankEntry:
    rank: int
    word: str
    value: float
    toponym: bool = False


@dataclass
class Ranking:
    """Deterministic word ordering under one metric. Ranks start at 1."""

    metric: str
    entries: list[RankEntry]
    _positions: dict[str, int] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self._positions = {e.word: e.rank for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self._positions

    def rank_of(self, word: str) -> int:
        if word not in self._positions:
            raise KeyError(f"word {word!r} not present in {self.metric} ranking")
        return self._positions[word]

    def words(self) -> list[str]:
        return [e.word for e in self.entries]


def score(
    stats: CorpusStats,
    word: str,
    metric: Metric,
    log_base: float | None = None,
    occ_max: int | None = None,
    users_max: int | None = None,
) -> float:
    if metric is Metric.H_WORDS:
        return h_words(stats, word, log_base)
    if metric is Metric.H_USERS:
        return h_users(stats, word, log_base)
    if metric is Metric.I_WORDS_RAW:
        return i_words_raw(stats, word, log_base)
    if metric is Metric.I_USERS_RAW:
        return i_users_raw(stats, word, log_base)
    if metric is Metric.LTF_IG:
        return ltf_ig(stats, word, log_base, occ_max=occ_max)
    if metric is Metric.LUF_IG:
        return luf_ig(stats, word, log_base, users_max=users_max)
    if metric is Metric.IGR_WORDS:
        return igr(stats, word, OCCURRENCES, log_base)
    if metric is Metric.IGR_USERS:
        return igr(stats, word, USERS, log_base)
    raise ValueError(f"{metric} is an ordering, not a scored metric")


def tf_ilf_order(stats: CorpusStats) -> Ranking:
    """Baseline ordering: location frequency ascending, then occurrences
    descending, then lexicographic. The stored value is the location
    frequency (number of locations with at least one occurrence)."""
    words = sorted(
        stats.word_loc_counts,
        key=lambda w: (stats.location_frequency(w), -stats.occurrences(w), w),
    )
    entries = [
        RankEntry(i + 1, w, float(stats.location_frequency(w))) for i, w in enumerate(words)
    ]
    return Ranking(Metric.TF_ILF.value, entries)


def build_ranking(
    stats: CorpusStats, metric: Metric | str, log_base: float | None = None
) -> Ranking:
    """Rank every word in the stats under a metric.

    Score metrics sort by value descending with ties broken by occurrence
    count descending then lexicographically, so output is deterministic.
    """
    metric = Metric(metric)
    if metric is Metric.TF_ILF:
        return tf_ilf_order(stats)
    occ_max = max_occurrences(stats)
    users_max = max_user_count(stats)
    # order on natural-log values; a requested base only rescales what is
    # reported, keeping rankings ordinally identical across bases
    natural = {}
    for w in stats.word_loc_counts:
        try:
            natural[w] = score(stats, w, metric, None, occ_max=occ_max, users_max=users_max)
        except DegeneratePresenceError:
            # a word present in every unit discriminates nothing
            natural[w] = 0.0
    ordered = sorted(natural, key=lambda w: (-natural[w], -stats.occurrences(w), w))
    if metric in (Metric.IGR_WORDS, Metric.IGR_USERS):
        log_base = None  # ratios are base-independent
    entries = [
        RankEntry(i + 1, w, _rescale(natural[w], log_base)) for i, w in enumerate(ordered)
    ]
    return Ranking(metric.value, entries)


# -- rank-divergence analysis ---------------------------------------------------


def log_rank_diff(r_words: Ranking, r_users: Ranking, word: str) -> float:
    """log(user rank) - log(word rank); large positive values flag words
    ranked far better by occurrence counts than by user counts."""
    return math.log(r_users.rank_of(word)) - math.log(r_words.rank_of(word))


def rank_diff_table(
    r_words: Ranking, r_users: Ranking, top_k: int | None = None
) -> list[tuple[str, int, int, float]]:
    """(word, word_rank, user_rank, diff) for words in both rankings,
    sorted by diff descending."""
    common = [w for w in r_words.words() if w in r_users]
    rows = [
        (w, r_words.rank_of(w), r_users.rank_of(w), log_rank_diff(r_words, r_users, w))
        for w in common
    ]
    rows.sort(key=lambda r: (-r[3], r[0]))
    return rows[:top_k] if top_k is not None else rows


# -- toponym flagging -------------------------------------------------------------


def flag_toponyms(ranking: Ranking, locations: LocationTable) -> Ranking:
    """Mark entries whose word matches a location name/alias, or is a
    prefix (length >= 3) of one. Flagged words stay in the ranking."""
    toponyms = locations.toponym_strings()
    entries = []
    for entry in ranking.entries:
        word = entry.word
        flagged = any(
            word == t or (len(word) >= 3 and t.startswith(word)) for t in toponyms
        )
        entries.append(replace(entry, toponym=flagged))
    return Ranking(ranking.metric, entries)


# -- ranking files -------------------------------------------------------------


RANKING_HEADER = "rank\tword\tmetric_value\t#occurrences\t#users\tlocations_with_occurrences\ttoponym_flag"


def write_ranking_tsv(
    ranking: Ranking,
    stats: CorpusStats,
    path: str | Path,
    header_comment: str | None = None,
) -> None:
    """Export a ranking; byte-deterministic for a given stats file."""
    with open(path, "w", encoding="utf-8") as fh:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        fh.write(RANKING_HEADER + "\n")
        for e in ranking.entries:
            fh.write(
                f"{e.rank}\t{e.word}\t{e.value:.12g}\t{stats.occurrences(e.word)}\t"
                f"{stats.user_count(e.word)}\t{stats.location_frequency(e.word)}\t"
                f"{int(e.toponym)}\n"
            )


@dataclass(frozen=True)
class RankingRow:
    rank: int
    word: str
    value: float
    occurrences: int
    users: int
    location_frequency: int
    toponym: bool


def read_ranking_tsv(path: str | Path) -> list[RankingRow]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#") or line.startswith("rank\t"):
                continue
            rank, word, value, occ, users, locfreq, topo = line.split("\t")
            rows.append(
                RankingRow(int(rank), word, float(value), int(occ), int(users), int(locfreq), topo == "1")
            )
    return rows
