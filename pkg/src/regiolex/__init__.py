"""Regional-lexicon analytics over geotagged short-text corpora."""

__version__ = "0.1.0"
