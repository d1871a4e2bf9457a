"""Feed fetching, parsing, timestamp bucketing, dedup, and the raw archive."""
from __future__ import annotations

import logging
import threading
from datetime import date, datetime, timezone
from pathlib import Path

import httpx
import pytest
from filelock import FileLock

from newsgrams.errors import (
    ArchiveCorrupt,
    CycleLocked,
    FeedParseError,
    NetworkError,
    TimestampParseError,
)
from newsgrams.ingest import (
    ArchiveRecord,
    FeedSource,
    RawFeedItem,
    SeenKeys,
    append_archive,
    bucket_day,
    dedup_key,
    dedupe,
    default_sources,
    fetch_feed,
    harvest_cycle,
    load_sources,
    normalize_timestamp,
    parse_feed,
    read_archive,
)

from conftest import FEEDS_DIR, REFERENCE_ZONE, feed_url, fixture_sources

NOW = datetime(2020, 3, 4, 12, 0, tzinfo=timezone.utc)


def _item(title="T", description="D", link="https://x/1", source_id="s") -> RawFeedItem:
    return RawFeedItem(
        source_id=source_id,
        title=title,
        description=description,
        link=link,
        published_raw="Sun, 01 Mar 2020 08:00:00 +0100",
        fetched_at=NOW,
    )


class TestParseFeed:
    def test_rss_fields_verbatim_and_in_order(self):
        items = parse_feed((FEEDS_DIR / "rss_alpha.xml").read_bytes(), "alpha", NOW)
        assert [it.link for it in items] == [
            f"https://alpha.example/a{n}" for n in (1, 2, 3, 4)
        ]
        assert items[0].title == "Corona-Krise: Bund und Länder beraten"
        # CDATA carries its markup through untouched; stripping happens later
        assert items[0].description == (
            "<p>Die Ministerpr&auml;sidenten beraten &uuml;ber sch&auml;rfere Regeln.</p>"
        )
        assert items[0].published_raw == "Sun, 01 Mar 2020 07:45:00 +0100"
        assert all(it.source_id == "alpha" for it in items)
        assert all(it.fetched_at == NOW for it in items)

    def test_rss_drops_item_empty_after_markup_stripping(self):
        items = parse_feed((FEEDS_DIR / "rss_alpha.xml").read_bytes(), "alpha", NOW)
        assert len(items) == 4  # the a5 item has no text at all

    def test_html_entities_outside_cdata(self):
        items = parse_feed((FEEDS_DIR / "rss_beta.xml").read_bytes(), "beta", NOW)
        assert items[0].title == "Bundesliga im Überblick"
        assert "für" in items[1].description

    def test_atom_entries(self):
        items = parse_feed((FEEDS_DIR / "atom_gamma.xml").read_bytes(), "gamma", NOW)
        assert len(items) == 2
        assert items[0].title == "Corona und die Folgen für die Wirtschaft"
        assert items[0].description == "Ökonomen rechnen mit einer Rezession."
        # rel=alternate wins over rel=self
        assert items[0].link == "https://gamma.example/g1"
        assert items[0].published_raw == "2020-03-01T10:00:00Z"

    def test_truncated_xml(self):
        with pytest.raises(FeedParseError):
            parse_feed((FEEDS_DIR / "broken.xml").read_bytes(), "kaputt", NOW)

    def test_not_xml(self):
        with pytest.raises(FeedParseError):
            parse_feed(b"plainly not xml", "x", NOW)

    def test_unknown_root(self):
        with pytest.raises(FeedParseError, match="unsupported feed root"):
            parse_feed(b"<html><body>hi</body></html>", "x", NOW)


class TestFetch:
    def test_file_url(self):
        source = FeedSource(id="alpha", name="A", url=feed_url("rss_alpha.xml"))
        assert len(fetch_feed(source, now=NOW)) == 4

    def test_plain_path(self):
        source = FeedSource(id="alpha", name="A", url=str(FEEDS_DIR / "rss_alpha.xml"))
        assert len(fetch_feed(source, now=NOW)) == 4

    def test_missing_file(self):
        source = FeedSource(id="x", name="X", url="file:///no/such/feed.xml")
        with pytest.raises(NetworkError):
            fetch_feed(source, now=NOW)

    def test_unsupported_scheme(self):
        source = FeedSource(id="x", name="X", url="ftp://example.test/feed.xml")
        with pytest.raises(NetworkError):
            fetch_feed(source, now=NOW)

    def test_http_via_injected_client(self):
        payload = (FEEDS_DIR / "rss_beta.xml").read_bytes()

        def handler(request: httpx.Request) -> httpx.Response:
            assert request.url.host == "beta.example"
            return httpx.Response(200, content=payload)

        client = httpx.Client(transport=httpx.MockTransport(handler))
        source = FeedSource(id="beta", name="B", url="https://beta.example/rss")
        assert len(fetch_feed(source, client=client, now=NOW)) == 3

    def test_http_error_status(self):
        client = httpx.Client(
            transport=httpx.MockTransport(lambda request: httpx.Response(503))
        )
        source = FeedSource(id="b", name="B", url="https://beta.example/rss")
        with pytest.raises(NetworkError, match="503"):
            fetch_feed(source, client=client, now=NOW)


class TestTimestamps:
    def test_rfc822_with_offset(self):
        # 23:30 +0200 is 21:30 UTC on the same day
        assert normalize_timestamp("Wed, 15 Apr 2020 23:30:00 +0200", "UTC") == date(
            2020, 4, 15
        )

    def test_offset_crosses_midnight_in_reference_zone(self):
        # 23:30 UTC is already April 16 in Berlin (+02:00 in April)
        assert normalize_timestamp(
            "Wed, 15 Apr 2020 23:30:00 +0000", "Europe/Berlin"
        ) == date(2020, 4, 16)

    def test_iso_zulu(self):
        assert normalize_timestamp("2020-03-01T10:00:00Z", "UTC") == date(2020, 3, 1)

    def test_iso_offset(self):
        assert normalize_timestamp("2020-03-02T00:30:00+02:00", "UTC") == date(2020, 3, 1)

    def test_naive_taken_as_reference_zone(self):
        assert normalize_timestamp("2020-03-01 23:30:00", "Europe/Berlin") == date(
            2020, 3, 1
        )

    def test_garbage_raises(self):
        with pytest.raises(TimestampParseError):
            normalize_timestamp("kaputt", "UTC")
        with pytest.raises(TimestampParseError):
            normalize_timestamp("", "UTC")

    def test_bucket_day_fallback_logs_warning(self, caplog):
        item = RawFeedItem(
            source_id="s",
            title="t",
            description="d",
            link="l",
            published_raw="kaputt",
            fetched_at=NOW,
        )
        with caplog.at_level(logging.WARNING):
            day = bucket_day(item, REFERENCE_ZONE)
        assert day == date(2020, 3, 4)  # fetch instant, Berlin zone
        assert "unparseable timestamp" in caplog.text


class TestDedup:
    def test_key_changes_with_any_text_field(self):
        base = _item()
        assert dedup_key(base) == dedup_key(_item())
        assert dedup_key(base) != dedup_key(_item(title="T2"))
        assert dedup_key(base) != dedup_key(_item(description="D2"))
        assert dedup_key(base) != dedup_key(_item(link="https://x/2"))
        assert dedup_key(base) != dedup_key(_item(source_id="other"))

    def test_key_ignores_timestamp(self):
        other = RawFeedItem(
            source_id="s",
            title="T",
            description="D",
            link="https://x/1",
            published_raw="different",
            fetched_at=datetime(2021, 1, 1, tzinfo=timezone.utc),
        )
        assert dedup_key(_item()) == dedup_key(other)

    def test_seen_keys_persist_across_instances(self, tmp_path):
        path = tmp_path / "seen.keys"
        first = SeenKeys(path)
        first.add("aa")
        first.add("bb")
        first.add("aa")  # re-adding must not duplicate the line
        reopened = SeenKeys(path)
        assert "aa" in reopened and "bb" in reopened
        assert len(reopened) == 2
        assert path.read_text().count("aa") == 1

    def test_dedupe_keeps_first_and_preserves_order(self, tmp_path):
        seen = SeenKeys(tmp_path / "seen.keys")
        a, b = _item(title="eins"), _item(title="zwei")
        fresh = dedupe([a, b, a], seen)
        assert [it.title for it in fresh] == ["eins", "zwei"]
        assert dedupe([a, b], seen) == []


class TestArchive:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "archive.tsv"
        rec = ArchiveRecord(
            source_id="alpha",
            day=date(2020, 3, 1),
            title="Titel mit\tTab",
            description="Zeile\nUmbruch",
            link="https://x/1",
            fetched_at="2020-03-01T08:00:00+00:00",
        )
        append_archive(path, [rec])
        [read] = list(read_archive(path))
        assert read.title == "Titel mit Tab"
        assert read.description == "Zeile Umbruch"
        assert read.day == date(2020, 3, 1)
        assert read.link == "https://x/1"

    def test_corrupt_field_count(self, tmp_path):
        path = tmp_path / "archive.tsv"
        path.write_text("nur\tdrei\tfelder\n", encoding="utf-8")
        with pytest.raises(ArchiveCorrupt, match="expected 6 fields"):
            list(read_archive(path))

    def test_corrupt_date(self, tmp_path):
        path = tmp_path / "archive.tsv"
        path.write_text("a\tkein-datum\tt\td\tl\tf\n", encoding="utf-8")
        with pytest.raises(ArchiveCorrupt, match="bad date"):
            list(read_archive(path))


class TestSourceConfig:
    def test_load_and_defaults(self, tmp_path):
        path = tmp_path / "sources.tsv"
        path.write_text(
            "id\tname\turl\tcountry\tnotes\n"
            "a\tAlpha\thttps://a.example/rss\tDE\tlinksliberal\n"
            "b\tBeta\thttps://b.example/rss\n",
            encoding="utf-8",
        )
        sources = load_sources(path)
        assert [s.id for s in sources] == ["a", "b"]
        assert sources[0].country == "DE"
        assert sources[1].country == ""

    def test_missing_header(self, tmp_path):
        path = tmp_path / "sources.tsv"
        path.write_text("a\tAlpha\thttps://a.example/rss\n", encoding="utf-8")
        with pytest.raises(ValueError, match="header"):
            load_sources(path)

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "sources.tsv"
        path.write_text(
            "id\tname\turl\na\tA\tu1\na\tB\tu2\n",
            encoding="utf-8",
        )
        with pytest.raises(ValueError, match="duplicate"):
            load_sources(path)

    def test_packaged_default_sources(self):
        sources = default_sources()
        assert len(sources) == 13
        assert len({s.id for s in sources}) == 13
        assert all(s.url.startswith("http") for s in sources)


class TestHarvestCycle:
    def test_accepted_counts_deterministic(self, tmp_path):
        report = harvest_cycle(tmp_path / "data", fixture_sources(), REFERENCE_ZONE)
        by_id = {r.source_id: r for r in report.per_source}
        assert by_id["alpha"].accepted == 4
        assert by_id["beta"].accepted == 3
        assert by_id["gamma"].accepted == 2
        assert report.accepted == 9
        assert report.failed_sources == 0

    def test_second_cycle_accepts_nothing(self, tmp_path):
        harvest_cycle(tmp_path / "data", fixture_sources(), REFERENCE_ZONE)
        archive = (tmp_path / "data" / "archive.tsv").read_bytes()
        report = harvest_cycle(tmp_path / "data", fixture_sources(), REFERENCE_ZONE)
        assert report.accepted == 0
        assert sum(r.duplicates for r in report.per_source) == 9
        assert (tmp_path / "data" / "archive.tsv").read_bytes() == archive

    def test_failing_source_is_isolated(self, tmp_path):
        sources = fixture_sources() + [
            FeedSource(id="kaputt", name="K", url=feed_url("broken.xml")),
            FeedSource(id="weg", name="W", url="file:///no/such/feed.xml"),
        ]
        report = harvest_cycle(tmp_path / "data", sources, REFERENCE_ZONE)
        by_id = {r.source_id: r for r in report.per_source}
        assert report.accepted == 9
        assert report.failed_sources == 2
        assert by_id["kaputt"].error and by_id["weg"].error
        assert not report.all_failed

    def test_all_failed(self, tmp_path):
        sources = [FeedSource(id="weg", name="W", url="file:///no/such/feed.xml")]
        report = harvest_cycle(tmp_path / "data", sources, REFERENCE_ZONE)
        assert report.all_failed

    def test_archive_day_bucketing(self, tmp_path):
        harvest_cycle(tmp_path / "data", fixture_sources(), REFERENCE_ZONE)
        records = list(read_archive(tmp_path / "data" / "archive.tsv"))
        days = sorted({r.day for r in records})
        assert days == [date(2020, 3, 1), date(2020, 3, 2), date(2020, 3, 3)]
        # config order: all alpha rows precede all beta rows precede gamma
        assert [r.source_id for r in records] == ["alpha"] * 4 + ["beta"] * 3 + ["gamma"] * 2

    def test_cycle_lock_excludes_second_runner(self, tmp_path):
        data_dir = tmp_path / "data"
        data_dir.mkdir()
        held = FileLock(data_dir / "harvest.lock")
        held.acquire(timeout=0)
        try:
            in_thread: list[BaseException | None] = [None]

            def attempt() -> None:
                try:
                    harvest_cycle(data_dir, fixture_sources(), REFERENCE_ZONE)
                except BaseException as exc:  # noqa: BLE001 - recorded for assert
                    in_thread[0] = exc

            worker = threading.Thread(target=attempt)
            worker.start()
            worker.join(timeout=30)
            assert isinstance(in_thread[0], CycleLocked)
        finally:
            held.release()
