"""Gazetteer of locations: ids, display names, aliases and capital coordinates.

File format is a TSV with columns
    location_id, name, aliases (comma-separated, may be empty), capital_lat, capital_lon
and no header. Lines starting with '#' are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class Location:
    location_id: str
    name: str
    aliases: tuple[str, ...]
    capital_lat: float
    capital_lon: float


@dataclass
class LocationTable:
    entries: list[Location]
    _index: dict[str, Location] = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.entries) < 2:
            raise ValueError("a location table needs at least 2 locations")
        self._index = {}
        for loc in self.entries:
            if loc.location_id in self._index:
                raise ValueError(f"duplicate location_id {loc.location_id!r}")
            if not -90.0 <= loc.capital_lat <= 90.0:
                raise ValueError(f"latitude out of range for {loc.location_id!r}")
            if not -180.0 <= loc.capital_lon <= 180.0:
                raise ValueError(f"longitude out of range for {loc.location_id!r}")
            self._index[loc.location_id] = loc

    @property
    def n(self) -> int:
        return len(self.entries)

    def ids(self) -> list[str]:
        return [loc.location_id for loc in self.entries]

    def __contains__(self, location_id: str) -> bool:
        return location_id in self._index

    def get(self, location_id: str) -> Location:
        return self._index[location_id]

    def capital(self, location_id: str) -> tuple[float, float]:
        loc = self._index[location_id]
        return (loc.capital_lat, loc.capital_lon)

    def toponym_strings(self) -> list[str]:
        """All lowercase names and aliases, for toponym flagging."""
        out = []
        for loc in self.entries:
            out.append(loc.name.lower())
            out.extend(a.lower() for a in loc.aliases)
        return out

    def fingerprint(self) -> str:
        """Identity string used to refuse merging stats built on different tables."""
        return "|".join(self.ids())


def load_locations(path: str | Path) -> LocationTable:
    entries = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected 5 tab-separated fields, got {len(parts)}")
        loc_id, name, aliases, lat, lon = parts
        alias_tuple = tuple(a.strip() for a in aliases.split(",") if a.strip())
        entries.append(Location(loc_id, name, alias_tuple, float(lat), float(lon)))
    return LocationTable(entries)


def save_locations(table: LocationTable, path: str | Path) -> None:
    lines = []
    for loc in table.entries:
        aliases = ",".join(loc.aliases)
        lines.append(f"{loc.location_id}\t{loc.name}\t{aliases}\t{loc.capital_lat}\t{loc.capital_lon}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
