"""Background jobs: the 3-hourly harvest and the weekly rebuild/publish."""
from __future__ import annotations

import logging
import threading
from typing import Callable

from .config import AppConfig
from .ingest import FeedSource, default_sources, harvest_cycle, load_sources
from .normalize import ExclusionList
from .snapshots import SnapshotStore, build_and_publish

log = logging.getLogger(__name__)


class JobScheduler:
    """Runs named jobs on fixed intervals, each in its own thread.

    Every job runs once immediately at start.  A failing run is logged and
    retried on the next interval; it never kills the scheduler.
    """

    def __init__(self) -> None:
        self._jobs: list[tuple[str, float, Callable[[], None]]] = []
        self._threads: list[threading.Thread] = []
        self._stop = threading.Event()

    def add_job(self, name: str, interval: float, fn: Callable[[], None]) -> None:
        self._jobs.append((name, interval, fn))

    def _loop(self, name: str, interval: float, fn: Callable[[], None]) -> None:
        while not self._stop.is_set():
            try:
                fn()
            except Exception:
                log.exception("job %s failed; retrying next cycle", name)
            if self._stop.wait(interval):
                return

    def start(self) -> None:
        for name, interval, fn in self._jobs:
            thread = threading.Thread(
                target=self._loop, args=(name, interval, fn), name=f"job-{name}", daemon=True
            )
            self._threads.append(thread)
            thread.start()

    def stop(self, join_timeout: float = 5.0) -> None:
        self._stop.set()
        for thread in self._threads:
            thread.join(timeout=join_timeout)


def build_scheduler(config: AppConfig, store: SnapshotStore) -> JobScheduler:
    sources: list[FeedSource]
    if config.sources_path is not None:
        sources = load_sources(config.sources_path)
    else:
        sources = default_sources()
    exclusions = (
        ExclusionList.from_file(config.exclusions_path)
        if config.exclusions_path is not None
        else ExclusionList.default()
    )

    def harvest_job() -> None:
        report = harvest_cycle(
            config.data_dir, sources, config.timezone, timeout=config.fetch_timeout
        )
        log.info(
            "harvest: %d accepted, %d sources failed", report.accepted, report.failed_sources
        )

    def rebuild_job() -> None:
        build_and_publish(store, exclusions, segment_length=config.msttr_segment)
        store.reload()

    scheduler = JobScheduler()
    scheduler.add_job("harvest", config.harvest_interval, harvest_job)
    scheduler.add_job("rebuild", config.rebuild_interval, rebuild_job)
    return scheduler
