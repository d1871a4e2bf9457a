"""Shared fixtures: offline feed sources, harvested corpora, published stores."""
from __future__ import annotations

from datetime import date
from pathlib import Path

import pytest

from newsgrams.config import AppConfig
from newsgrams.corpus import Corpus, CorpusItem
from newsgrams.ingest import FeedSource, harvest_cycle
from newsgrams.snapshots import SnapshotStore, build_and_publish

FEEDS_DIR = Path(__file__).parent / "data" / "feeds"
GOLDEN_HEADLINES = Path(__file__).parent / "data" / "golden_headlines.tsv"

REFERENCE_ZONE = "Europe/Berlin"


def feed_url(name: str) -> str:
    return (FEEDS_DIR / name).as_uri()


def fixture_sources() -> list[FeedSource]:
    """The three well-formed offline feeds, in configuration order."""
    return [
        FeedSource(id="alpha", name="Alpha Nachrichten", url=feed_url("rss_alpha.xml")),
        FeedSource(id="beta", name="Beta Kurier", url=feed_url("rss_beta.xml")),
        FeedSource(id="gamma", name="Gamma Journal", url=feed_url("atom_gamma.xml")),
    ]


def write_sources_tsv(path: Path, sources: list[FeedSource]) -> Path:
    lines = ["id\tname\turl\tcountry\tnotes"]
    lines.extend(f"{s.id}\t{s.name}\t{s.url}\t{s.country}\t{s.notes}" for s in sources)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def harvest_fixtures(data_dir: Path) -> None:
    harvest_cycle(data_dir, fixture_sources(), REFERENCE_ZONE)


@pytest.fixture
def harvested_dir(tmp_path: Path) -> Path:
    data_dir = tmp_path / "data"
    harvest_fixtures(data_dir)
    return data_dir


@pytest.fixture
def published_store(harvested_dir: Path) -> SnapshotStore:
    store = SnapshotStore(harvested_dir)
    build_and_publish(store, segment_length=5)
    return store


@pytest.fixture
def app_config(tmp_path: Path) -> AppConfig:
    return AppConfig(data_dir=tmp_path / "data")


# --- hand-built corpora ----------------------------------------------------


def make_corpus(day_sequences: dict[date, list[list[str]]]) -> Corpus:
    """Corpus from raw token sequences; each sequence is one text unit."""
    corpus = Corpus()
    for day, sequences in day_sequences.items():
        for n, tokens in enumerate(sequences):
            corpus.add_item(CorpusItem(f"src{n % 2}", day, tokens, []))
    return corpus


# A 3-day corpus with 30 types and deliberate substring overlaps
# (maske/masken/maskenpflicht/schutzmasken, corona/coronavirus/corona-krise),
# used for randomized matching-semantics checks against the naive oracle.
MATCH_DAYS = {
    date(2020, 4, 1): [
        ["die", "maskenpflicht", "im", "alltag"],
        ["masken", "und", "abstand", "halten"],
        ["corona", "bleibt", "im", "land"],
        ["die", "corona-krise", "und", "der", "alltag"],
        ["wir", "schaffen", "das"],
        ["neue", "normalität", "im", "land"],
    ],
    date(2020, 4, 2): [
        ["coronavirus", "und", "die", "folgen"],
        ["masken", "masken", "masken", "überall"],
        ["fc", "bayern", "gewinnt"],
        ["tempo", "und", "maske"],
    ],
    date(2020, 4, 3): [
        ["die", "maske", "bleibt"],
        ["corona", "corona", "corona"],
        ["neue", "normalität"],
        ["homeoffice", "statt", "stadt"],
        ["schutzmasken", "im", "handel"],
    ],
}


@pytest.fixture
def match_corpus() -> Corpus:
    return make_corpus(MATCH_DAYS)


@pytest.fixture
def match_store(tmp_path: Path, match_corpus: Corpus) -> SnapshotStore:
    """The matching-fixture corpus published to disk as a real generation."""
    from newsgrams.snapshots import stage_generation

    store = SnapshotStore(tmp_path / "match-data")
    store.publish(lambda gen_dir: stage_generation(match_corpus, gen_dir, with_downloads=False))
    return store
