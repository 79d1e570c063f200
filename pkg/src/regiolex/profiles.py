"""Probability estimates and normalized log-frequencies over corpus counts.

All estimates are maximum-likelihood count ratios; locations with zero
count simply contribute probability 0. Normalized log-frequencies divide
log(count) by log(max count over the vocabulary), so the most frequent
(most used) word scores exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import CorpusStats

OCCURRENCES = "occurrences"
USERS = "users"


@dataclass(frozen=True)
class LocationDistribution:
    word: str
    probs: tuple[float, ...]  # aligned with stats.location_ids
    basis: str  # OCCURRENCES or USERS


@dataclass(frozen=True)
class FrequencyProfile:
    word: str
    p: float  # relative token frequency
    q: float  # proportion of users
    n_words: float  # log(#w) / log(#most-frequent)
    n_users: float  # log(u(w)) / log(u(most-used))


def _require(stats: CorpusStats, word: str) -> None:
    if word not in stats:
        raise KeyError(f"word {word!r} not in corpus stats")


def loc_dist_occurrences(
    stats: CorpusStats, word: str, balance: bool = False
) -> LocationDistribution:
    """Distribution of a word's occurrences over locations.

    With balance=True, counts are first divided by per-location token
    totals (for corpora that are not balanced across locations) and then
    renormalized.
    """
    _require(stats, word)
    by_loc = stats.occ_by_location(word)
    if balance:
        weights = [
            by_loc.get(loc, 0) / stats.tokens_per_location[loc] if by_loc.get(loc) else 0.0
            for loc in stats.location_ids
        ]
        total = sum(weights)
        probs = tuple(w / total for w in weights)
    else:
        total = stats.occurrences(word)
        probs = tuple(by_loc.get(loc, 0) / total for loc in stats.location_ids)
    return LocationDistribution(word, probs, OCCURRENCES)


def loc_dist_users(stats: CorpusStats, word: str) -> LocationDistribution:
    """Distribution of a word's distinct users over locations."""
    _require(stats, word)
    by_loc = stats.user_counts_by_location(word)
    total = stats.user_count(word)
    probs = tuple(by_loc.get(loc, 0) / total for loc in stats.location_ids)
    return LocationDistribution(word, probs, USERS)


def max_occurrences(stats: CorpusStats) -> int:
    """Occurrence count of the most frequent word in the vocabulary."""
    return max(stats.occurrences(w) for w in stats.word_loc_counts)


def max_user_count(stats: CorpusStats) -> int:
    """User count of the word used by the most distinct users."""
    return max(len(users) for users in stats.word_users.values())


def frequency_profile(
    stats: CorpusStats,
    word: str,
    occ_max: int | None = None,
    users_max: int | None = None,
) -> FrequencyProfile:
    """Relative frequencies and normalized log-frequencies for one word.

    occ_max/users_max may be precomputed once when profiling a whole
    vocabulary. Raises on a degenerate corpus whose most frequent word
    occurs once (log 1 = 0 denominator).
    """
    _require(stats, word)
    if occ_max is None:
        occ_max = max_occurrences(stats)
    if users_max is None:
        users_max = max_user_count(stats)
    if occ_max < 2 or users_max < 2:
        raise ValueError("degenerate corpus: most frequent word occurs once")
    occ = stats.occurrences(word)
    users = stats.user_count(word)
    return FrequencyProfile(
        word=word,
        p=occ / stats.total_tokens,
        q=users / stats.total_users,
        n_words=math.log(occ) / math.log(occ_max),
        n_users=math.log(users) / math.log(users_max),
    )


def write_profiles_tsv(stats: CorpusStats, path) -> int:
    """Dump every word's profile as TSV; returns the number of rows."""
    words = sorted(stats.word_loc_counts)
    occ_max = max_occurrences(stats)
    users_max = max_user_count(stats)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("word\toccurrences\tusers\tp\tq\tn_words\tn_users\n")
        for word in words:
            prof = frequency_profile(stats, word, occ_max=occ_max, users_max=users_max)
            fh.write(
                f"{word}\t{stats.occurrences(word)}\t{stats.user_count(word)}\t"
                f"{prof.p:.12g}\t{prof.q:.12g}\t{prof.n_words:.12g}\t{prof.n_users:.12g}\n"
            )
    return len(words)
