"""The metrics CSV, frequency-list downloads, and the static HTML report."""
from __future__ import annotations

from datetime import date, timedelta

import pytest

from newsgrams.corpus import Corpus, DailyTable
from newsgrams.errors import EmptyCorpus
from newsgrams.metrics import daily_diversity
from newsgrams.report import (
    diversity_records,
    generate_report,
    write_metrics_csv,
)

from conftest import make_corpus

START = date(2020, 4, 1)


def _week_corpus() -> Corpus:
    days = {}
    for offset in range(7):
        tokens = [f"w{offset}{i % (3 + offset)}" for i in range(12)]
        days[START + timedelta(days=offset)] = [tokens]
    return make_corpus(days)


class TestDiversityRecords:
    def test_one_record_per_nonempty_day(self):
        corpus = _week_corpus()
        records, empty_days = diversity_records(corpus, segment_length=4)
        assert [r.day for r in records] == corpus.dates
        assert empty_days == []

    def test_empty_day_reported_separately(self):
        corpus = _week_corpus()
        hole = START + timedelta(days=2)
        corpus.tables[hole] = DailyTable(hole)
        records, empty_days = diversity_records(corpus, segment_length=4)
        assert empty_days == [hole]
        assert hole not in [r.day for r in records]

    def test_values_match_the_metric_ops(self):
        corpus = _week_corpus()
        records, _ = diversity_records(corpus, segment_length=4)
        for record in records:
            table = corpus.tables[record.day]
            expected = daily_diversity(table, segment_length=4)
            assert record == expected


class TestMetricsCsv:
    def test_format_and_rounding(self, tmp_path):
        corpus = _week_corpus()
        records, _ = diversity_records(corpus, segment_length=4)
        path = tmp_path / "metrics.csv"
        write_metrics_csv(records, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "date,redundancy,msttr,top100_share"
        assert len(lines) == 8
        first = lines[1].split(",")
        assert first[0] == "2020-04-01"
        assert first[1] == f"{records[0].redundancy:.6f}"
        assert first[2] == f"{records[0].msttr:.6f}"
        assert first[3] == f"{records[0].top100_share:.6f}"

    def test_short_day_leaves_msttr_cell_blank(self, tmp_path):
        corpus = make_corpus({START: [["a", "b", "a"]]})
        records, _ = diversity_records(corpus, segment_length=100)
        path = tmp_path / "metrics.csv"
        write_metrics_csv(records, path)
        day_row = path.read_text(encoding="utf-8").splitlines()[1]
        assert day_row.split(",")[2] == ""


class TestGenerateReport:
    def test_writes_the_full_bundle(self, tmp_path):
        written = generate_report(_week_corpus(), tmp_path, segment_length=4)
        names = {p.name for p in written}
        assert "metrics.csv" in names
        assert "report.html" in names
        assert "daily-unigrams-2020-04-01.tsv" in names
        assert "weekly-unigrams-2020-04-01.tsv" in names
        assert all(p.is_file() for p in written)

    def test_report_mentions_coverage_and_empty_days(self, tmp_path):
        corpus = _week_corpus()
        hole = START + timedelta(days=3)
        corpus.tables[hole] = DailyTable(hole)
        generate_report(corpus, tmp_path, segment_length=4)
        html = (tmp_path / "report.html").read_text(encoding="utf-8")
        assert "2020-04-01" in html and "2020-04-07" in html
        assert "2020-04-04" in html  # the empty day is named in the note
        assert "Days with no tokens" in html
        csv_text = (tmp_path / "metrics.csv").read_text(encoding="utf-8")
        assert "2020-04-04" not in csv_text

    def test_rerun_is_byte_identical(self, tmp_path):
        corpus = _week_corpus()
        first_dir, second_dir = tmp_path / "a", tmp_path / "b"
        generate_report(corpus, first_dir, segment_length=4, as_of=START)
        generate_report(corpus, second_dir, segment_length=4, as_of=START)
        for path in sorted(first_dir.iterdir()):
            assert path.read_bytes() == (second_dir / path.name).read_bytes()

    def test_trend_section_survives_short_corpora(self, tmp_path):
        corpus = make_corpus({START: [["a", "b"]], START + timedelta(days=1): [["c"]]})
        generate_report(corpus, tmp_path)
        html = (tmp_path / "report.html").read_text(encoding="utf-8")
        assert "Not enough days" in html

    def test_empty_corpus_rejected(self, tmp_path):
        with pytest.raises(EmptyCorpus):
            generate_report(Corpus(), tmp_path)
