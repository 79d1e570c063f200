import random

import pytest

from regiolex.corpus import RawPost
from regiolex.locations import Location, LocationTable

_acceptance_results: list[tuple[str, bool]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].removeprefix("test_criterion_")
    _acceptance_results.append((name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")


def make_locations(n: int, aliases: dict[str, tuple[str, ...]] | None = None) -> LocationTable:
    """Synthetic gazetteer l01..lNN with capitals spread over an Argentina-ish box."""
    aliases = aliases or {}
    entries = []
    for i in range(n):
        loc_id = f"l{i + 1:02d}"
        lat = -22.0 - 33.0 * i / max(1, n - 1)
        lon = -72.0 + 18.0 * i / max(1, n - 1)
        entries.append(Location(loc_id, f"Loc{i + 1:02d}", aliases.get(loc_id, ()), lat, lon))
    return LocationTable(entries)


def random_posts(
    rng: random.Random,
    n_posts: int,
    locations: LocationTable,
    vocab_size: int = 20,
    users_per_location: int = 10,
    tokens_per_post: tuple[int, int] = (1, 8),
) -> list[RawPost]:
    """Plain-token posts (no punctuation) with consistent user/location pairs."""
    vocab = [f"w{i:02d}" for i in range(vocab_size)]
    users = {
        loc: [f"u_{loc}_{j}" for j in range(users_per_location)] for loc in locations.ids()
    }
    posts = []
    for _ in range(n_posts):
        loc = rng.choice(locations.ids())
        user = rng.choice(users[loc])
        k = rng.randint(*tokens_per_post)
        text = " ".join(rng.choices(vocab, k=k))
        posts.append(RawPost(user, loc, text))
    return posts


@pytest.fixture
def loc3():
    return make_locations(3)


@pytest.fixture
def loc4():
    return make_locations(4)
