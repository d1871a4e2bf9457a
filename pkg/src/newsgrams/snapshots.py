"""Generation-based snapshot publication and the archive-to-snapshot pipeline.

Each rebuild stages a complete generation directory (daily tables plus
download bundle), renames it into place, and atomically repoints the CURRENT
marker.  Readers resolve CURRENT once and keep using that generation, so a
rebuild never disturbs an in-flight query, and a crash mid-build leaves the
previously published generation untouched.
"""
from __future__ import annotations

import json
import logging
import os
import shutil
import threading
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path

from .corpus import Corpus, CorpusItem, load_daily_tables, read_meta, write_daily_tables
from .errors import SnapshotMissing
from .ingest import ARCHIVE_NAME, read_archive
from .normalize import ExclusionList, normalize_text
from .query import QueryEngine
from .report import generate_report

log = logging.getLogger(__name__)

SNAPSHOTS_DIR = "snapshots"
CURRENT_MARKER = "CURRENT"
TABLES_DIR = "tables"
DOWNLOADS_DIR = "downloads"
KEEP_GENERATIONS = 3


def build_corpus(archive_path: str | Path, exclusions: ExclusionList | None = None) -> Corpus:
    """Normalize every archived item and accumulate the daily tables."""
    if exclusions is None:
        exclusions = ExclusionList.default()
    corpus = Corpus()
    for record in read_archive(archive_path):
        corpus.add_item(
            CorpusItem(
                source_id=record.source_id,
                day=record.day,
                title_tokens=normalize_text(record.title, exclusions),
                description_tokens=normalize_text(record.description, exclusions),
            )
        )
    return corpus


@dataclass
class LoadedSnapshot:
    """One generation held in memory, shared read-only between queries."""

    generation: str
    published_at: str
    corpus: Corpus
    engine: QueryEngine
    meta: dict

    @property
    def first_date(self) -> date:
        return date.fromisoformat(self.meta["first_date"])

    @property
    def last_date(self) -> date:
        return date.fromisoformat(self.meta["last_date"])

    def downloads_dir(self, store: "SnapshotStore") -> Path:
        return store.generation_dir(self.generation) / DOWNLOADS_DIR


class SnapshotStore:
    """Filesystem layout and lifecycle of snapshot generations."""

    def __init__(self, data_dir: str | Path) -> None:
        self.data_dir = Path(data_dir)
        self.snapshots_dir = self.data_dir / SNAPSHOTS_DIR
        self._active: LoadedSnapshot | None = None
        self._lock = threading.Lock()

    # --- filesystem layout ----------------------------------------------

    @property
    def archive_path(self) -> Path:
        return self.data_dir / ARCHIVE_NAME

    def generation_dir(self, generation: str) -> Path:
        return self.snapshots_dir / generation

    def _generations_on_disk(self) -> list[str]:
        if not self.snapshots_dir.is_dir():
            return []
        return sorted(
            p.name for p in self.snapshots_dir.iterdir() if p.is_dir() and p.name.isdigit()
        )

    def read_current(self) -> tuple[str, str] | None:
        """(generation, published_at) from the CURRENT marker, or None."""
        marker = self.snapshots_dir / CURRENT_MARKER
        try:
            payload = json.loads(marker.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        return payload["generation"], payload["published_at"]

    # --- publication -----------------------------------------------------

    def publish(self, stage, now: datetime | None = None) -> str:
        """Stage a new generation via ``stage(gen_dir)`` and atomically publish it."""
        self.snapshots_dir.mkdir(parents=True, exist_ok=True)
        existing = self._generations_on_disk()
        next_id = int(existing[-1]) + 1 if existing else 1
        generation = f"{next_id:08d}"
        staging = self.snapshots_dir / f".staging-{generation}-{os.getpid()}"
        if staging.exists():
            shutil.rmtree(staging)
        staging.mkdir(parents=True)
        try:
            stage(staging)
            final = self.generation_dir(generation)
            os.replace(staging, final)
        except BaseException:
            shutil.rmtree(staging, ignore_errors=True)
            raise
        published_at = (now or datetime.now(timezone.utc)).isoformat()
        payload = json.dumps({"generation": generation, "published_at": published_at})
        marker_tmp = self.snapshots_dir / f".{CURRENT_MARKER}.tmp-{os.getpid()}"
        marker_tmp.write_text(payload + "\n", encoding="utf-8")
        os.replace(marker_tmp, self.snapshots_dir / CURRENT_MARKER)
        self._prune(keep=KEEP_GENERATIONS, current=generation)
        return generation

    def _prune(self, keep: int, current: str) -> None:
        generations = self._generations_on_disk()
        retain = set(generations[-keep:]) | {current}
        for gen in generations:
            if gen not in retain:
                shutil.rmtree(self.generation_dir(gen), ignore_errors=True)

    # --- in-memory active snapshot ---------------------------------------

    def load(self, generation: str, published_at: str) -> LoadedSnapshot:
        tables_dir = self.generation_dir(generation) / TABLES_DIR
        corpus = load_daily_tables(tables_dir)
        meta = read_meta(tables_dir)
        return LoadedSnapshot(
            generation=generation,
            published_at=published_at,
            corpus=corpus,
            engine=QueryEngine(corpus, generation=generation),
            meta=meta,
        )

    def reload(self) -> LoadedSnapshot:
        """Load the CURRENT generation and make it the active one."""
        current = self.read_current()
        if current is None:
            raise SnapshotMissing(f"no snapshot published under {self.snapshots_dir}")
        snapshot = self.load(*current)
        with self._lock:
            self._active = snapshot
        return snapshot

    def get(self) -> LoadedSnapshot:
        """The active snapshot, loading CURRENT on first use."""
        with self._lock:
            if self._active is not None:
                return self._active
        return self.reload()


# --- build pipeline --------------------------------------------------------


def stage_generation(
    corpus: Corpus,
    gen_dir: Path,
    with_downloads: bool = True,
    segment_length: int = 100,
    as_of: date | None = None,
) -> None:
    write_daily_tables(corpus, gen_dir / TABLES_DIR)
    if with_downloads and corpus.token_total > 0:
        generate_report(corpus, gen_dir / DOWNLOADS_DIR, segment_length, as_of)


def build_and_publish(
    store: SnapshotStore,
    exclusions: ExclusionList | None = None,
    with_downloads: bool = True,
    segment_length: int = 100,
    as_of: date | None = None,
) -> str:
    """Full rebuild: archive -> daily tables -> downloads -> atomic swap."""
    corpus = build_corpus(store.archive_path, exclusions)
    generation = store.publish(
        lambda gen_dir: stage_generation(corpus, gen_dir, with_downloads, segment_length, as_of)
    )
    log.info(
        "published generation %s: %d days, %d tokens",
        generation,
        len(corpus.tables),
        corpus.token_total,
    )
    return generation
