"""Per-day unigram/bigram frequency tables and their on-disk snapshot format.

A snapshot is a directory of per-day files:

    unigrams-YYYY-MM-DD.tsv   header ``form<TAB>count``
    bigrams-YYYY-MM-DD.tsv    header ``form1<TAB>form2<TAB>count``
    tokens-YYYY-MM-DD.txt     one token per line, ingestion order

All files UTF-8 with LF line endings; frequency rows are sorted by count
descending, ties broken by form ascending (UTF-8 binary order).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from datetime import date, timedelta
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DateMismatch, EmptyCorpus, EmptyRange

SNAPSHOT_SCHEMA = 1


@dataclass
class CorpusItem:
    """One deduplicated, day-bucketed feed item with normalized token sequences."""

    source_id: str
    day: date
    title_tokens: list[str]
    description_tokens: list[str]


@dataclass
class DailyTable:
    """Unigram and bigram counts plus the ordered token stream for one day."""

    day: date
    unigrams: Counter = field(default_factory=Counter)
    bigrams: Counter = field(default_factory=Counter)
    token_order: list[str] = field(default_factory=list)
    token_total: int = 0
    bigram_total: int = 0
    sequence_count: int = 0  # non-empty token sequences ingested

    @property
    def type_count(self) -> int:
        return len(self.unigrams)

    def add_sequence(self, tokens: list[str]) -> None:
        """Count one title or description; bigrams never cross sequence bounds."""
        if not tokens:
            return
        self.unigrams.update(tokens)
        self.token_total += len(tokens)
        for first, second in zip(tokens, tokens[1:]):
            self.bigrams[(first, second)] += 1
        self.bigram_total += len(tokens) - 1
        self.token_order.extend(tokens)
        self.sequence_count += 1

    def add_item(self, item: CorpusItem) -> None:
        if item.day != self.day:
            raise DateMismatch(f"item dated {item.day} added to table for {self.day}")
        self.add_sequence(item.title_tokens)
        self.add_sequence(item.description_tokens)


class Corpus:
    """All daily tables of one corpus build, keyed by calendar day."""

    def __init__(self) -> None:
        self.tables: dict[date, DailyTable] = {}
        self.source_ids: set[str] = set()

    def table_for(self, day: date) -> DailyTable:
        table = self.tables.get(day)
        if table is None:
            table = DailyTable(day)
            self.tables[day] = table
        return table

    def add_item(self, item: CorpusItem) -> None:
        self.table_for(item.day).add_item(item)
        self.source_ids.add(item.source_id)

    def day(self, day: date) -> DailyTable | None:
        return self.tables.get(day)

    @property
    def dates(self) -> list[date]:
        return sorted(self.tables)

    @property
    def first_date(self) -> date | None:
        return min(self.tables) if self.tables else None

    @property
    def last_date(self) -> date | None:
        return max(self.tables) if self.tables else None

    @property
    def token_total(self) -> int:
        return sum(t.token_total for t in self.tables.values())

    @property
    def type_total(self) -> int:
        forms: set[str] = set()
        for table in self.tables.values():
            forms.update(table.unigrams)
        return len(forms)

    def vocabulary(self) -> set[str]:
        forms: set[str] = set()
        for table in self.tables.values():
            forms.update(table.unigrams)
        return forms


@dataclass
class CorpusSummary:
    """Per-period token counts and shares, Table-1 style."""

    rows: list[tuple[str, int, float, int]]  # (period label, tokens, share, types)


def monthly_summary(corpus: Corpus) -> CorpusSummary:
    """Aggregate tokens and distinct types per calendar month.

    Types are uniqued within each month, so monthly type counts do not sum to
    the corpus-wide type total.
    """
    grand_total = corpus.token_total
    if grand_total == 0:
        raise EmptyCorpus("no tokens in corpus")
    months: dict[str, tuple[int, set[str]]] = {}
    for day in corpus.dates:
        table = corpus.tables[day]
        label = f"{day.year:04d}-{day.month:02d}"
        tokens, forms = months.get(label, (0, set()))
        tokens += table.token_total
        forms = forms | set(table.unigrams)
        months[label] = (tokens, forms)
    rows = [
        (label, tokens, tokens / grand_total, len(forms))
        for label, (tokens, forms) in sorted(months.items())
    ]
    return CorpusSummary(rows=rows)


# --- frequency-table serialization ---------------------------------------


def sorted_unigram_rows(counts: Counter) -> list[tuple[str, int]]:
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def sorted_bigram_rows(counts: Counter) -> list[tuple[tuple[str, str], int]]:
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def _write_lines(path: Path, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def write_unigram_file(path: Path, counts: Counter) -> None:
    lines = ["form\tcount"]
    lines.extend(f"{form}\t{count}" for form, count in sorted_unigram_rows(counts))
    _write_lines(path, lines)


def write_bigram_file(path: Path, counts: Counter) -> None:
    lines = ["form1\tform2\tcount"]
    lines.extend(
        f"{pair[0]}\t{pair[1]}\t{count}" for pair, count in sorted_bigram_rows(counts)
    )
    _write_lines(path, lines)


def read_unigram_file(path: Path) -> Counter:
    counts: Counter = Counter()
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if header.rstrip("\n") != "form\tcount":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            form, count = line.rstrip("\n").split("\t")
            counts[form] = int(count)
    return counts


def read_bigram_file(path: Path) -> Counter:
    counts: Counter = Counter()
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if header.rstrip("\n") != "form1\tform2\tcount":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            first, second, count = line.rstrip("\n").split("\t")
            counts[(first, second)] = int(count)
    return counts


def write_daily_tables(corpus: Corpus, dest: Path) -> None:
    """Write every day's three snapshot files plus ``meta.json`` into ``dest``."""
    dest.mkdir(parents=True, exist_ok=True)
    for day in corpus.dates:
        table = corpus.tables[day]
        iso = day.isoformat()
        write_unigram_file(dest / f"unigrams-{iso}.tsv", table.unigrams)
        write_bigram_file(dest / f"bigrams-{iso}.tsv", table.bigrams)
        _write_lines(dest / f"tokens-{iso}.txt", table.token_order)
    meta = {
        "schema": SNAPSHOT_SCHEMA,
        "first_date": corpus.first_date.isoformat() if corpus.first_date else None,
        "last_date": corpus.last_date.isoformat() if corpus.last_date else None,
        "day_count": len(corpus.tables),
        "token_total": corpus.token_total,
        "type_total": corpus.type_total,
        "source_count": len(corpus.source_ids),
    }
    with open(dest / "meta.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_daily_tables(tables_dir: Path) -> Corpus:
    """Reconstruct a corpus from a snapshot's per-day files."""
    corpus = Corpus()
    for path in sorted(tables_dir.glob("unigrams-*.tsv")):
        iso = path.stem.removeprefix("unigrams-")
        day = date.fromisoformat(iso)
        table = DailyTable(day)
        table.unigrams = read_unigram_file(path)
        table.bigrams = read_bigram_file(tables_dir / f"bigrams-{iso}.tsv")
        tokens_path = tables_dir / f"tokens-{iso}.txt"
        with open(tokens_path, encoding="utf-8") as fh:
            table.token_order = [line.rstrip("\n") for line in fh if line != "\n"]
        table.token_total = sum(table.unigrams.values())
        table.bigram_total = sum(table.bigrams.values())
        table.sequence_count = table.token_total - table.bigram_total
        corpus.tables[day] = table
    return corpus


def read_meta(tables_dir: Path) -> dict:
    with open(tables_dir / "meta.json", encoding="utf-8") as fh:
        return json.load(fh)


# --- weekly aggregation and export files ----------------------------------


def week_index(day: date, corpus_start: date) -> int:
    """1-based week number with day 1 of week 1 being the corpus start date."""
    return (day - corpus_start).days // 7 + 1


def week_start(index: int, corpus_start: date) -> date:
    return corpus_start + timedelta(days=(index - 1) * 7)


def export_frequency_list(
    corpus: Corpus,
    dest: Path,
    granularity: str = "daily",
    kind: str = "unigram",
) -> list[Path]:
    """Write download files ``{daily|weekly}-{unigrams|bigrams}-<date>.tsv``.

    Weekly files merge the days of each 7-day block counted from the corpus
    start date; the file is named after the block's first day.
    """
    if granularity not in ("daily", "weekly"):
        raise ValueError(f"unknown granularity {granularity!r}")
    if kind not in ("unigram", "bigram"):
        raise ValueError(f"unknown kind {kind!r}")
    days = corpus.dates
    if not days:
        raise EmptyRange("corpus has no days to export")
    dest.mkdir(parents=True, exist_ok=True)
    write = write_unigram_file if kind == "unigram" else write_bigram_file
    field_name = "unigrams" if kind == "unigram" else "bigrams"
    written: list[Path] = []

    if granularity == "daily":
        for day in days:
            counts = getattr(corpus.tables[day], field_name)
            path = dest / f"daily-{field_name}-{day.isoformat()}.tsv"
            write(path, counts)
            written.append(path)
        return written

    start = days[0]
    weeks: dict[int, Counter] = {}
    for day in days:
        idx = week_index(day, start)
        bucket = weeks.setdefault(idx, Counter())
        bucket.update(getattr(corpus.tables[day], field_name))
    for idx in sorted(weeks):
        label = week_start(idx, start).isoformat()
        path = dest / f"weekly-{field_name}-{label}.tsv"
        write(path, weeks[idx])
        written.append(path)
    return written


def iter_days(date_from: date, date_to: date) -> Iterator[date]:
    """Every calendar day in the closed range, in order."""
    if date_from > date_to:
        raise EmptyRange(f"{date_from} is after {date_to}")
    day = date_from
    while day <= date_to:
        yield day
        day += timedelta(days=1)
