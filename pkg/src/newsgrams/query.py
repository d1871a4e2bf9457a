"""Pattern queries over the daily tables with the viewer's search semantics.

Three routes: exact unigram match, within-word substring match (with a hit
table of the matching forms), and exact bigram match for patterns containing
one space.  Series report absolute counts, relative frequencies, and a
center-aligned rolling mean.
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from datetime import date

from .corpus import Corpus, iter_days
from .errors import EmptyRange, InvalidQuery, TooManyPatterns

MAX_PATTERNS = 10
MIN_WINDOW = 1
MAX_WINDOW = 14
DEFAULT_BIGRAM_LIMIT = 200

MODES = ("exact", "within")
BIGRAM_MODES = ("anywhere", "first", "second")

# the denominator convention behind rel_freq, stated in every API response
DENOMINATORS = {
    "unigram": "per-day token total (share of the day's unigrams)",
    "bigram": "per-day bigram total (share of the day's bigrams)",
}

_REGEX_SPECIALS = set("\\^$.|?*+()[]{}")
_WS_RUN = re.compile(r"\s+")


def sanitize_pattern(raw: str) -> str:
    """Delete regex metacharacters, trim, lowercase, collapse inner whitespace.

    Returns "" when nothing survives; the caller drops such patterns.
    """
    kept = "".join(ch for ch in raw if ch not in _REGEX_SPECIALS)
    kept = kept.strip().lower()
    return _WS_RUN.sub(" ", kept)


def split_patterns(raw: str) -> list[str]:
    """Split a comma-separated pattern field into raw entries."""
    return [part for part in raw.split(",")]


@dataclass(frozen=True)
class QuerySpec:
    """A validated query: sanitized patterns, match mode, range, smoothing window."""

    patterns: tuple[str, ...]
    mode: str
    date_from: date
    date_to: date
    window: int
    dropped: tuple[str, ...] = ()

    @classmethod
    def create(
        cls,
        raw_patterns: list[str] | str,
        mode: str,
        date_from: date,
        date_to: date,
        window: int = 1,
    ) -> "QuerySpec":
        if isinstance(raw_patterns, str):
            raw_patterns = split_patterns(raw_patterns)
        if mode not in MODES:
            raise InvalidQuery(f"unknown mode {mode!r}")
        if not (MIN_WINDOW <= window <= MAX_WINDOW):
            raise InvalidQuery(f"window must be in [{MIN_WINDOW}, {MAX_WINDOW}], got {window}")
        if date_from > date_to:
            raise InvalidQuery(f"date_from {date_from} is after date_to {date_to}")
        patterns: list[str] = []
        dropped: list[str] = []
        for raw in raw_patterns:
            pattern = sanitize_pattern(raw)
            if not pattern:
                if raw.strip():
                    dropped.append(raw.strip())
                continue
            if pattern.count(" ") > 1:
                raise InvalidQuery(
                    f"pattern {pattern!r} has more than two parts; only unigrams and bigrams are searchable"
                )
            if pattern not in patterns:
                patterns.append(pattern)
        if not patterns:
            raise InvalidQuery("no pattern survives sanitization")
        if len(patterns) > MAX_PATTERNS:
            raise TooManyPatterns(f"at most {MAX_PATTERNS} patterns per query, got {len(patterns)}")
        return cls(
            patterns=tuple(patterns),
            mode=mode,
            date_from=date_from,
            date_to=date_to,
            window=window,
            dropped=tuple(dropped),
        )


@dataclass
class SeriesPoint:
    day: date
    abs_count: int
    rel_freq: float
    smoothed: float | None = None


@dataclass
class PatternSeries:
    pattern: str
    kind: str  # "unigram" or "bigram"
    points: list[SeriesPoint]


@dataclass
class HitRow:
    word_form: str
    pattern: str
    abs_count: int


@dataclass
class BigramHit:
    form1: str
    form2: str
    count: int


@dataclass
class QueryResult:
    spec: QuerySpec
    series: list[PatternSeries]
    hits: list[HitRow] | None
    generation: str | None = None


def rolling_mean(values: list[float], window: int) -> list[float | None]:
    """Center-aligned moving average; None where no full window fits.

    For even windows the extra slot extends toward earlier positions: the
    window covers ceil((w-1)/2) values before and floor((w-1)/2) after.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if window == 1:
        return [float(v) for v in values]
    before = window // 2
    after = (window - 1) // 2
    out: list[float | None] = []
    for i in range(len(values)):
        if i - before < 0 or i + after >= len(values):
            out.append(None)
        else:
            chunk = values[i - before : i + after + 1]
            out.append(sum(chunk) / window)
    return out


class QueryEngine:
    """Read-only query view over one immutable corpus snapshot.

    Corpus-level inverted indexes (form -> per-day counts) are built once on
    first use so that substring scans touch the vocabulary, not every day's
    table.
    """

    def __init__(self, corpus: Corpus, generation: str | None = None) -> None:
        self.corpus = corpus
        self.generation = generation
        self._unigram_index: dict[str, dict[date, int]] | None = None
        self._bigram_index: dict[tuple[str, str], dict[date, int]] | None = None

    # --- indexes ---------------------------------------------------------

    @property
    def unigram_index(self) -> dict[str, dict[date, int]]:
        if self._unigram_index is None:
            index: dict[str, dict[date, int]] = {}
            for day, table in self.corpus.tables.items():
                for form, count in table.unigrams.items():
                    index.setdefault(form, {})[day] = count
            self._unigram_index = index
        return self._unigram_index

    @property
    def bigram_index(self) -> dict[tuple[str, str], dict[date, int]]:
        if self._bigram_index is None:
            index: dict[tuple[str, str], dict[date, int]] = {}
            for day, table in self.corpus.tables.items():
                for pair, count in table.bigrams.items():
                    index.setdefault(pair, {})[day] = count
            self._bigram_index = index
        return self._bigram_index

    # --- per-day denominators -------------------------------------------

    def _token_total(self, day: date) -> int:
        table = self.corpus.tables.get(day)
        return table.token_total if table else 0

    def _bigram_total(self, day: date) -> int:
        table = self.corpus.tables.get(day)
        return table.bigram_total if table else 0

    def _series_from_counts(
        self, per_day: dict[date, int], date_from: date, date_to: date, denominator: str
    ) -> list[SeriesPoint]:
        total_of = self._token_total if denominator == "unigram" else self._bigram_total
        points = []
        for day in iter_days(date_from, date_to):
            abs_count = per_day.get(day, 0)
            total = total_of(day)
            rel = abs_count / total if total else 0.0
            points.append(SeriesPoint(day=day, abs_count=abs_count, rel_freq=rel))
        return points

    # --- match routes ----------------------------------------------------

    def match_exact(self, pattern: str, date_from: date, date_to: date) -> list[SeriesPoint]:
        """Per-day counts of the form exactly equal to the pattern."""
        per_day = self.unigram_index.get(pattern, {})
        return self._series_from_counts(per_day, date_from, date_to, "unigram")

    def match_within(
        self, pattern: str, date_from: date, date_to: date
    ) -> tuple[list[SeriesPoint], list[HitRow]]:
        """Per-day summed counts of every form containing the pattern, plus the hit table."""
        if date_from > date_to:
            raise EmptyRange(f"{date_from} is after {date_to}")
        per_day: dict[date, int] = {}
        totals: dict[str, int] = {}
        for form, day_counts in self.unigram_index.items():
            if pattern not in form:
                continue
            form_total = 0
            for day, count in day_counts.items():
                if date_from <= day <= date_to:
                    per_day[day] = per_day.get(day, 0) + count
                    form_total += count
            if form_total:
                totals[form] = form_total
        hits = [
            HitRow(word_form=form, pattern=pattern, abs_count=count)
            for form, count in sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
        ]
        return self._series_from_counts(per_day, date_from, date_to, "unigram"), hits

    def match_bigram(self, pattern: str, date_from: date, date_to: date) -> list[SeriesPoint]:
        """Per-day counts of the exact bigram 'form1 form2'."""
        first, _, second = pattern.partition(" ")
        per_day = self.bigram_index.get((first, second), {})
        return self._series_from_counts(per_day, date_from, date_to, "bigram")

    def find_bigrams(
        self,
        pattern: str,
        bmode: str,
        date_from: date,
        date_to: date,
        limit: int = DEFAULT_BIGRAM_LIMIT,
    ) -> list[BigramHit]:
        """Ranked bigrams whose parts match the pattern per the selected mode.

        anywhere: pattern is a substring of either part; first/second: the
        given part equals the pattern exactly.
        """
        if bmode not in BIGRAM_MODES:
            raise InvalidQuery(f"unknown bigram mode {bmode!r}")
        if " " in pattern or not pattern:
            raise InvalidQuery("bigram finder takes a single-word pattern")
        if date_from > date_to:
            raise EmptyRange(f"{date_from} is after {date_to}")
        totals: dict[tuple[str, str], int] = {}
        for (first, second), day_counts in self.bigram_index.items():
            if bmode == "anywhere":
                if pattern not in first and pattern not in second:
                    continue
            elif bmode == "first":
                if first != pattern:
                    continue
            else:
                if second != pattern:
                    continue
            in_range = sum(
                count for day, count in day_counts.items() if date_from <= day <= date_to
            )
            if in_range:
                totals[(first, second)] = in_range
        ranked = sorted(totals.items(), key=lambda kv: (-kv[1], f"{kv[0][0]} {kv[0][1]}"))
        return [BigramHit(form1=f1, form2=f2, count=c) for (f1, f2), c in ranked[:limit]]

    # --- full query ------------------------------------------------------

    def run_query(self, spec: QuerySpec) -> QueryResult:
        """Dispatch every pattern to its route and smooth all series alike.

        A pattern containing one space is searched as an exact bigram
        regardless of the mode switch.
        """
        series: list[PatternSeries] = []
        all_hits: list[HitRow] = []
        for pattern in spec.patterns:
            if " " in pattern:
                points = self.match_bigram(pattern, spec.date_from, spec.date_to)
                kind = "bigram"
            elif spec.mode == "exact":
                points = self.match_exact(pattern, spec.date_from, spec.date_to)
                kind = "unigram"
            else:
                points, hits = self.match_within(pattern, spec.date_from, spec.date_to)
                all_hits.extend(hits)
                kind = "unigram"
            smoothed = rolling_mean([p.rel_freq for p in points], spec.window)
            for point, value in zip(points, smoothed):
                point.smoothed = value
            series.append(PatternSeries(pattern=pattern, kind=kind, points=points))
        hits_out: list[HitRow] | None = None
        if spec.mode == "within":
            hits_out = sorted(all_hits, key=lambda h: (-h.abs_count, h.word_form, h.pattern))
        return QueryResult(spec=spec, series=series, hits=hits_out, generation=self.generation)


def query_result_to_csv(result: QueryResult) -> str:
    """Render a query result as the downloadable CSV (shared by CLI and API)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["date", "pattern", "abs", "rel", "smoothed"])
    for series in result.series:
        for point in series.points:
            writer.writerow(
                [
                    point.day.isoformat(),
                    series.pattern,
                    point.abs_count,
                    repr(point.rel_freq),
                    "" if point.smoothed is None else repr(point.smoothed),
                ]
            )
    return buf.getvalue()
