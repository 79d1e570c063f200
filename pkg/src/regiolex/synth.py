"""Synthetic geotagged corpora with known ground truth.

Three word populations are planted over a Zipfian background:

* background words: drawn location-uniformly, frequencies ~ 1/rank^s;
* regionalisms: a fixed token budget concentrated (e.g. 90% of mass) in
  1-3 home locations, spread over many distinct users there;
* bot words: a large token budget emitted by at most a handful of
  accounts in a single location, mimicking news/weather feeds.

Generation is fully deterministic per seed, and the ground-truth table
labels every word that actually occurs in the emitted corpus.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import RawPost
from .locations import Location, LocationTable

BACKGROUND = "background"
REGIONALISM = "regionalism"
BOT = "bot"


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    n_locations: int = 23
    users_per_location: int = 20
    posts_per_user: float = 20.0  # Poisson mean, at least 1 post
    tokens_per_post: float = 8.0  # Poisson mean, at least 1 token
    background_vocab: int = 2000
    zipf_exponent: float = 1.0
    n_regionalisms: int = 50
    regionalism_concentration: float = 0.9  # probability mass on home locations
    regionalism_min_homes: int = 1
    regionalism_max_homes: int = 3
    regionalism_tokens: int = 300
    n_bot_words: int = 20
    bot_max_users: int = 3
    bot_tokens: int = 400

    def validate(self) -> None:
        if self.n_locations < 2:
            raise ValueError("need at least 2 locations")
        for name in ("users_per_location", "background_vocab", "regionalism_tokens",
                     "bot_tokens", "bot_max_users"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 1.0 / self.n_locations < self.regionalism_concentration <= 1.0:
            raise ValueError("concentration must be in (1/N, 1]")
        if not 1 <= self.regionalism_min_homes <= self.regionalism_max_homes:
            raise ValueError("bad home-location range")
        if self.regionalism_max_homes >= self.n_locations:
            raise ValueError("home locations must leave at least one non-home location")


@dataclass(frozen=True)
class TruthRow:
    word: str
    label: str  # background | regionalism | bot
    home_locations: tuple[str, ...]  # empty for background


def synthetic_locations(n: int) -> LocationTable:
    """Deterministic gazetteer l01..lNN with capitals on an Argentina-sized box."""
    entries = []
    for i in range(n):
        frac = i / max(1, n - 1)
        entries.append(
            Location(f"l{i + 1:02d}", f"Loc{i + 1:02d}", (), -22.0 - 33.0 * frac, -72.0 + 18.0 * frac)
        )
    return LocationTable(entries)


def generate(config: SynthConfig) -> tuple[list[RawPost], list[TruthRow], LocationTable]:
    """Emit (posts, ground truth, gazetteer); byte-identical per seed."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    locations = synthetic_locations(config.n_locations)
    loc_ids = locations.ids()
    n = config.n_locations

    # post skeleton: (user, location), filled with background tokens in bulk
    post_owner: list[tuple[str, str]] = []
    posts_by_loc: list[list[int]] = [[] for _ in range(n)]
    for li, loc in enumerate(loc_ids):
        for k in range(config.users_per_location):
            user = f"u_{loc}_{k:03d}"
            n_posts = max(1, int(rng.poisson(config.posts_per_user)))
            for _ in range(n_posts):
                posts_by_loc[li].append(len(post_owner))
                post_owner.append((user, loc))

    lengths = np.maximum(1, rng.poisson(config.tokens_per_post, size=len(post_owner)))
    ranks = np.arange(1, config.background_vocab + 1, dtype=float)
    weights = ranks ** -config.zipf_exponent
    weights /= weights.sum()
    flat = rng.choice(config.background_vocab, size=int(lengths.sum()), p=weights)
    bg_words = [f"bg{i + 1:04d}" for i in range(config.background_vocab)]
    tokens: list[list[str]] = []
    offset = 0
    for length in lengths:
        tokens.append([bg_words[i] for i in flat[offset : offset + length]])
        offset += length

    truth: list[TruthRow] = []

    # regionalisms: a token budget multinomially split over a concentrated
    # location distribution, each token appended to a random local post
    for r in range(config.n_regionalisms):
        word = f"reg{r + 1:03d}"
        n_homes = int(rng.integers(config.regionalism_min_homes, config.regionalism_max_homes + 1))
        homes = sorted(int(i) for i in rng.choice(n, size=n_homes, replace=False))
        probs = np.full(n, (1.0 - config.regionalism_concentration) / (n - n_homes))
        probs[homes] = config.regionalism_concentration / n_homes
        counts = rng.multinomial(config.regionalism_tokens, probs)
        for li, count in enumerate(counts):
            for post_idx in rng.integers(0, len(posts_by_loc[li]), size=count):
                tokens[posts_by_loc[li][int(post_idx)]].append(word)
        truth.append(TruthRow(word, REGIONALISM, tuple(loc_ids[i] for i in homes)))

    # bot words: huge token count from very few accounts in one location
    for b in range(config.n_bot_words):
        word = f"bot{b + 1:02d}"
        li = int(rng.integers(n))
        n_users = int(rng.integers(1, config.bot_max_users + 1))
        picked = rng.choice(config.users_per_location, size=n_users, replace=False)
        bot_users = {f"u_{loc_ids[li]}_{int(u):03d}" for u in picked}
        candidate_posts = [idx for idx in posts_by_loc[li] if post_owner[idx][0] in bot_users]
        for post_idx in rng.integers(0, len(candidate_posts), size=config.bot_tokens):
            tokens[candidate_posts[int(post_idx)]].append(word)
        truth.append(TruthRow(word, BOT, (loc_ids[li],)))

    posts = [
        RawPost(user, loc, " ".join(toks))
        for (user, loc), toks in zip(post_owner, tokens)
    ]
    emitted = {tok for toks in tokens for tok in toks}
    for word in bg_words:
        if word in emitted:
            truth.append(TruthRow(word, BACKGROUND, ()))
    truth.sort(key=lambda row: row.word)
    return posts, truth, locations


def write_truth_tsv(truth: list[TruthRow], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("word\tlabel\thome_locations\n")
        for row in truth:
            fh.write(f"{row.word}\t{row.label}\t{','.join(row.home_locations)}\n")


def read_truth_tsv(path: str | Path) -> list[TruthRow]:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines()[1:]:
        word, label, homes = line.split("\t")
        rows.append(TruthRow(word, label, tuple(h for h in homes.split(",") if h)))
    return rows
