"""Operator entry points: harvest, build, metrics, query, bigrams, serve.

Exit codes: 0 success, 1 runtime error, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from datetime import date
from pathlib import Path

from .config import AppConfig
from .errors import (
    ArchiveCorrupt,
    CycleLocked,
    EmptyCorpus,
    InvalidQuery,
    NewsgramsError,
    SnapshotMissing,
)
from .ingest import default_sources, harvest_cycle, load_sources
from .normalize import ExclusionList
from .query import QuerySpec, query_result_to_csv, sanitize_pattern
from .report import generate_report
from .snapshots import DOWNLOADS_DIR, SnapshotStore, build_and_publish

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _load_config(args: argparse.Namespace) -> AppConfig:
    config = AppConfig.from_env()
    if args.data_dir is not None:
        config.data_dir = Path(args.data_dir)
    if args.sources is not None:
        config.sources_path = Path(args.sources)
    if args.exclusions is not None:
        config.exclusions_path = Path(args.exclusions)
    if args.timezone is not None:
        config.timezone = args.timezone
    if args.msttr_segment is not None:
        if args.msttr_segment < 2:
            raise ValueError("--msttr-segment must be >= 2")
        config.msttr_segment = args.msttr_segment
    return config


def _sources_for(config: AppConfig):
    if config.sources_path is not None:
        return load_sources(config.sources_path)
    return default_sources()


def _exclusions_for(config: AppConfig) -> ExclusionList:
    if config.exclusions_path is not None:
        return ExclusionList.from_file(config.exclusions_path)
    return ExclusionList.default()


def _parse_cli_date(value: str | None, fallback: date, label: str) -> date:
    if value is None:
        return fallback
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise InvalidQuery(f"invalid {label} date {value!r}") from None


def cmd_harvest(args: argparse.Namespace, config: AppConfig) -> int:
    try:
        sources = _sources_for(config)
    except (OSError, ValueError) as exc:
        print(f"error: cannot load sources: {exc}", file=sys.stderr)
        return EXIT_USAGE

    def one_cycle() -> int:
        report = harvest_cycle(
            config.data_dir, sources, config.timezone, timeout=config.fetch_timeout
        )
        for src in report.per_source:
            if src.error is not None:
                print(f"{src.source_id}\terror={src.error}")
            else:
                print(f"{src.source_id}\taccepted={src.accepted}\tduplicates={src.duplicates}")
        print(f"total\taccepted={report.accepted}\tfailed_sources={report.failed_sources}")
        return EXIT_RUNTIME if report.all_failed else EXIT_OK

    try:
        if not args.loop:
            return one_cycle()
        interval = args.interval if args.interval is not None else config.harvest_interval
        while True:
            one_cycle()
            time.sleep(interval)
    except CycleLocked as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        return EXIT_OK


def cmd_build(args: argparse.Namespace, config: AppConfig) -> int:
    store = SnapshotStore(config.data_dir)
    if not store.archive_path.is_file():
        print(f"error: no raw archive at {store.archive_path}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        generation = build_and_publish(
            store,
            _exclusions_for(config),
            with_downloads=False,
            segment_length=config.msttr_segment,
        )
    except (ArchiveCorrupt, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    snap = store.reload()
    print(f"published generation {generation}: {snap.meta['day_count']} days, "
          f"{snap.meta['token_total']} tokens")
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace, config: AppConfig) -> int:
    store = SnapshotStore(config.data_dir)
    as_of = None
    if args.as_of is not None:
        try:
            as_of = date.fromisoformat(args.as_of)
        except ValueError:
            print(f"error: invalid --as-of date {args.as_of!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        snap = store.get()
        dest = store.generation_dir(snap.generation) / DOWNLOADS_DIR
        written = generate_report(snap.corpus, dest, config.msttr_segment, as_of)
    except (SnapshotMissing, EmptyCorpus) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"wrote {len(written)} files to {dest}")
    return EXIT_OK


def cmd_query(args: argparse.Namespace, config: AppConfig) -> int:
    store = SnapshotStore(config.data_dir)
    try:
        snap = store.get()
    except SnapshotMissing as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        date_from = _parse_cli_date(args.date_from, snap.first_date, "--from")
        date_to = _parse_cli_date(args.date_to, snap.last_date, "--to")
        spec = QuerySpec.create(args.patterns, args.mode, date_from, date_to, args.window)
    except InvalidQuery as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = snap.engine.run_query(spec)
    sys.stdout.write(query_result_to_csv(result))
    return EXIT_OK


def cmd_bigrams(args: argparse.Namespace, config: AppConfig) -> int:
    store = SnapshotStore(config.data_dir)
    try:
        snap = store.get()
    except SnapshotMissing as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        date_from = _parse_cli_date(args.date_from, snap.first_date, "--from")
        date_to = _parse_cli_date(args.date_to, snap.last_date, "--to")
        cleaned = sanitize_pattern(args.pattern)
        results = snap.engine.find_bigrams(cleaned, args.bmode, date_from, date_to, args.limit)
    except InvalidQuery as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print("form1\tform2\tcount")
    for hit in results:
        print(f"{hit.form1}\t{hit.form2}\t{hit.count}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace, config: AppConfig) -> int:
    import uvicorn

    from .scheduler import build_scheduler
    from .service import create_app

    if args.host is not None:
        config.host = args.host
    if args.port is not None:
        config.port = args.port
    store = SnapshotStore(config.data_dir)
    app = create_app(config, store)
    scheduler = None
    if args.with_scheduler:
        scheduler = build_scheduler(config, store)
        scheduler.start()
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    finally:
        if scheduler is not None:
            scheduler.stop()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newsgrams",
        description="Harvest newsfeeds into a daily n-gram corpus and explore word frequencies.",
    )
    parser.add_argument("--data-dir", help="corpus data directory (default: $NEWSGRAMS_DATA_DIR or ./data)")
    parser.add_argument("--sources", help="source configuration TSV (default: packaged list)")
    parser.add_argument("--exclusions", help="exclusion-list file (default: packaged list)")
    parser.add_argument("--timezone", help="reference timezone for day bucketing (default: UTC)")
    parser.add_argument("--msttr-segment", type=int, help="MSTTR segment length (default: 100)")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("harvest", help="fetch all sources once (or loop on an interval)")
    p.add_argument("--loop", action="store_true", help="keep harvesting on the interval")
    p.add_argument("--interval", type=float, help="seconds between cycles (loop mode)")
    p.set_defaults(func=cmd_harvest)

    p = sub.add_parser("build", help="rebuild daily tables from the raw archive and publish")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("metrics", help="write metrics CSV, report page, and frequency lists")
    p.add_argument("--as-of", help="label the report with this date (default: last corpus day)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("query", help="run a frequency query, print CSV to stdout")
    p.add_argument("--patterns", required=True, help="comma-separated patterns")
    p.add_argument("--mode", choices=["exact", "within"], default="exact")
    p.add_argument("--from", dest="date_from", help="start date (ISO), default corpus start")
    p.add_argument("--to", dest="date_to", help="end date (ISO), default corpus end")
    p.add_argument("--window", type=int, default=1, help="rolling-mean window, 1-14 days")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("bigrams", help="search bigrams by pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--bmode", choices=["anywhere", "first", "second"], default="anywhere")
    p.add_argument("--from", dest="date_from")
    p.add_argument("--to", dest="date_to")
    p.add_argument("--limit", type=int, default=200)
    p.set_defaults(func=cmd_bigrams)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--with-scheduler", action="store_true",
                   help="also run the periodic harvest and weekly rebuild jobs")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = _load_config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, config)
    except NewsgramsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
