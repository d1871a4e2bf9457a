"""Feed harvesting: fetch configured RSS/Atom feeds, bucket items by day, dedupe.

Accepted items are appended verbatim (modulo tab/newline cleanup) to an
append-only archive before any text normalization, so the corpus can be
rebuilt from raw data after a normalization rule change.
"""
from __future__ import annotations

import email.utils
import hashlib
import html.entities
import logging
import re
import urllib.parse
import urllib.request
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import date, datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator
from zoneinfo import ZoneInfo

import httpx
from filelock import FileLock, Timeout

from .errors import ArchiveCorrupt, CycleLocked, FeedParseError, NetworkError, TimestampParseError
from .normalize import strip_markup

log = logging.getLogger(__name__)

DEFAULT_FETCH_TIMEOUT = 30.0

ARCHIVE_NAME = "archive.tsv"
SEEN_NAME = "seen.keys"
LOCK_NAME = "harvest.lock"

_FIELD_CLEAN = re.compile(r"[\t\r\n]+")


@dataclass(frozen=True)
class FeedSource:
    """One configured newsfeed."""

    id: str
    name: str
    url: str
    country: str = ""
    notes: str = ""


def load_sources(path: str | Path) -> list[FeedSource]:
    """Read the tab-separated source configuration (header: id name url country notes)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].split("\t")[:3] != ["id", "name", "url"]:
        raise ValueError(f"{path}: expected TSV header starting with id/name/url")
    sources = []
    seen_ids = set()
    for line in lines[1:]:
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) < 3:
            raise ValueError(f"{path}: source row needs at least id/name/url: {line!r}")
        fields += [""] * (5 - len(fields))
        source = FeedSource(*fields[:5])
        if source.id in seen_ids:
            raise ValueError(f"{path}: duplicate source id {source.id!r}")
        seen_ids.add(source.id)
        sources.append(source)
    return sources


def default_sources() -> list[FeedSource]:
    with resources.as_file(resources.files("newsgrams.data").joinpath("sources.tsv")) as path:
        return load_sources(path)


@dataclass(frozen=True)
class RawFeedItem:
    """One fetched feed entry, text carried verbatim."""

    source_id: str
    title: str
    description: str
    link: str
    published_raw: str
    fetched_at: datetime


def dedup_key(item: RawFeedItem) -> str:
    """Identity of a corpus item: any textual change yields a new key."""
    material = "\x1f".join((item.source_id, item.title, item.description, item.link))
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


# --- feed parsing ----------------------------------------------------------


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _element_text(element: ET.Element | None) -> str:
    if element is None:
        return ""
    return "".join(element.itertext()).strip()


def _first_child(element: ET.Element, *names: str) -> ET.Element | None:
    for child in element:
        if _local_name(child.tag) in names:
            return child
    return None


def _atom_link(entry: ET.Element) -> str:
    fallback = ""
    for child in entry:
        if _local_name(child.tag) != "link":
            continue
        rel = child.get("rel", "alternate")
        href = child.get("href", "")
        if rel == "alternate":
            return href
        fallback = fallback or href
    return fallback


# Feeds in the wild use HTML entity names (&uuml; etc.) outside CDATA even
# though XML predefines only five; rewrite them to numeric references and
# retry instead of rejecting the whole feed.
_XML_PREDEFINED = frozenset({"amp", "lt", "gt", "quot", "apos"})
_ENTITY_REF = re.compile(rb"&([A-Za-z][A-Za-z0-9]*);")
_CDATA_SECTION = re.compile(rb"<!\[CDATA\[.*?\]\]>", re.DOTALL)


def _entity_to_numeric(match: re.Match[bytes]) -> bytes:
    name = match.group(1).decode("ascii")
    if name in _XML_PREDEFINED:
        return match.group(0)
    value = html.entities.html5.get(name + ";")
    if value is None:
        return match.group(0)
    return "".join(f"&#{ord(ch)};" for ch in value).encode("ascii")


def _rewrite_html_entities(data: bytes) -> bytes:
    """Replace named HTML entities with numeric ones, leaving CDATA untouched."""
    out = []
    pos = 0
    for section in _CDATA_SECTION.finditer(data):
        out.append(_ENTITY_REF.sub(_entity_to_numeric, data[pos : section.start()]))
        out.append(section.group(0))
        pos = section.end()
    out.append(_ENTITY_REF.sub(_entity_to_numeric, data[pos:]))
    return b"".join(out)


def parse_feed(data: bytes, source_id: str, fetched_at: datetime) -> list[RawFeedItem]:
    """Parse RSS 2.0 or Atom bytes into raw items, in feed order.

    Items whose title and description are both empty after markup stripping
    are dropped.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        if "undefined entity" not in str(exc):
            raise FeedParseError(f"{source_id}: malformed XML: {exc}") from exc
        try:
            root = ET.fromstring(_rewrite_html_entities(data))
        except ET.ParseError as exc2:
            raise FeedParseError(f"{source_id}: malformed XML: {exc2}") from exc2
    root_name = _local_name(root.tag)
    if root_name == "rss":
        channel = _first_child(root, "channel")
        entries = [el for el in channel] if channel is not None else []
        entry_name, summary_names, time_names = "item", ("description",), ("pubDate",)
    elif root_name == "feed":
        entries = list(root)
        entry_name = "entry"
        summary_names = ("summary", "content")
        time_names = ("published", "updated")
    else:
        raise FeedParseError(f"{source_id}: unsupported feed root <{root_name}>")

    items = []
    for entry in entries:
        if _local_name(entry.tag) != entry_name:
            continue
        title = _element_text(_first_child(entry, "title"))
        description = _element_text(_first_child(entry, *summary_names))
        if root_name == "rss":
            link = _element_text(_first_child(entry, "link"))
        else:
            link = _atom_link(entry)
        published = _element_text(_first_child(entry, *time_names))
        if not strip_markup(title) and not strip_markup(description):
            continue
        items.append(
            RawFeedItem(
                source_id=source_id,
                title=title,
                description=description,
                link=link,
                published_raw=published,
                fetched_at=fetched_at,
            )
        )
    return items


def _fetch_bytes(url: str, timeout: float, client: httpx.Client | None = None) -> bytes:
    """Load feed bytes from http(s), file:// URLs, or plain local paths."""
    parsed = urllib.parse.urlsplit(url)
    if parsed.scheme in ("http", "https"):
        try:
            if client is not None:
                response = client.get(url, timeout=timeout, follow_redirects=True)
            else:
                response = httpx.get(url, timeout=timeout, follow_redirects=True)
        except httpx.HTTPError as exc:
            raise NetworkError(f"fetch failed for {url}: {exc}") from exc
        if response.status_code >= 400:
            raise NetworkError(f"HTTP {response.status_code} for {url}")
        return response.content
    if parsed.scheme == "file":
        path = urllib.request.url2pathname(parsed.path)
    elif parsed.scheme == "":
        path = url
    else:
        raise NetworkError(f"unsupported URL scheme {parsed.scheme!r} for {url}")
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise NetworkError(f"cannot read {url}: {exc}") from exc


def fetch_feed(
    source: FeedSource,
    timeout: float = DEFAULT_FETCH_TIMEOUT,
    client: httpx.Client | None = None,
    now: datetime | None = None,
) -> list[RawFeedItem]:
    """One fetch of one source; raises NetworkError/FeedParseError on failure."""
    fetched_at = now or datetime.now(timezone.utc)
    data = _fetch_bytes(source.url, timeout, client)
    return parse_feed(data, source.id, fetched_at)


# --- timestamp normalization ----------------------------------------------


def normalize_timestamp(published_raw: str, reference_zone: str | ZoneInfo = "UTC") -> date:
    """Calendar day of a feed timestamp after conversion to the reference zone.

    Accepts RFC-822-style ("Wed, 15 Apr 2020 23:30:00 +0200") and ISO-8601
    strings; naive timestamps are taken to already be in the reference zone.
    """
    zone = ZoneInfo(reference_zone) if isinstance(reference_zone, str) else reference_zone
    text = published_raw.strip()
    if not text:
        raise TimestampParseError("empty timestamp")
    parsed: datetime | None = None
    try:
        parsed = email.utils.parsedate_to_datetime(text)
    except (TypeError, ValueError):
        parsed = None
    if parsed is None:
        iso = text
        if iso.endswith(("Z", "z")):
            iso = iso[:-1] + "+00:00"
        try:
            parsed = datetime.fromisoformat(iso)
        except ValueError:
            raise TimestampParseError(f"unparseable timestamp {published_raw!r}") from None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=zone)
    return parsed.astimezone(zone).date()


def bucket_day(item: RawFeedItem, reference_zone: str | ZoneInfo = "UTC") -> date:
    """Day of publication, falling back to the fetch date when unparseable."""
    try:
        return normalize_timestamp(item.published_raw, reference_zone)
    except TimestampParseError:
        zone = ZoneInfo(reference_zone) if isinstance(reference_zone, str) else reference_zone
        log.warning(
            "source %s: unparseable timestamp %r, using fetch date",
            item.source_id,
            item.published_raw,
        )
        return item.fetched_at.astimezone(zone).date()


# --- dedup store and archive ----------------------------------------------


class SeenKeys:
    """File-backed set of dedup keys, one hex digest per line, append-only."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._keys: set[str] = set()
        if self.path.exists():
            with open(self.path, encoding="ascii") as fh:
                self._keys = {line.strip() for line in fh if line.strip()}

    def __contains__(self, key: str) -> bool:
        return key in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    def add(self, key: str) -> None:
        if key in self._keys:
            return
        self._keys.add(key)
        with open(self.path, "a", encoding="ascii", newline="\n") as fh:
            fh.write(key + "\n")


def dedupe(items: Iterable[RawFeedItem], seen: SeenKeys) -> list[RawFeedItem]:
    """Keep only first-seen items, inserting their keys; order preserved."""
    fresh = []
    for item in items:
        key = dedup_key(item)
        if key in seen:
            continue
        seen.add(key)
        fresh.append(item)
    return fresh


@dataclass(frozen=True)
class ArchiveRecord:
    """One accepted item as stored in the raw archive."""

    source_id: str
    day: date
    title: str
    description: str
    link: str
    fetched_at: str


def _clean_field(text: str) -> str:
    return _FIELD_CLEAN.sub(" ", text)


def append_archive(path: str | Path, records: Iterable[ArchiveRecord]) -> None:
    with open(path, "a", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fields = (
                rec.source_id,
                rec.day.isoformat(),
                _clean_field(rec.title),
                _clean_field(rec.description),
                _clean_field(rec.link),
                rec.fetched_at,
            )
            fh.write("\t".join(fields) + "\n")


def read_archive(path: str | Path) -> Iterator[ArchiveRecord]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 6:
                raise ArchiveCorrupt(f"{path}:{lineno}: expected 6 fields, got {len(fields)}")
            try:
                day = date.fromisoformat(fields[1])
            except ValueError as exc:
                raise ArchiveCorrupt(f"{path}:{lineno}: bad date {fields[1]!r}") from exc
            yield ArchiveRecord(fields[0], day, fields[2], fields[3], fields[4], fields[5])


# --- harvest cycle ---------------------------------------------------------


@dataclass
class SourceReport:
    source_id: str
    accepted: int = 0
    duplicates: int = 0
    error: str | None = None


@dataclass
class HarvestReport:
    per_source: list[SourceReport]

    @property
    def accepted(self) -> int:
        return sum(r.accepted for r in self.per_source)

    @property
    def failed_sources(self) -> int:
        return sum(1 for r in self.per_source if r.error is not None)

    @property
    def all_failed(self) -> bool:
        return bool(self.per_source) and self.failed_sources == len(self.per_source)


def harvest_cycle(
    data_dir: str | Path,
    sources: list[FeedSource],
    reference_zone: str = "UTC",
    timeout: float = DEFAULT_FETCH_TIMEOUT,
    max_workers: int = 8,
) -> HarvestReport:
    """Fetch all sources (concurrently), dedupe, and append accepted items.

    Results are applied in configuration order regardless of fetch completion
    order, so the archive is deterministic for a given set of feed snapshots.
    A failing source is logged and skipped; it never aborts the cycle.  Only
    one cycle may run at a time (file lock in the data directory).
    """
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    lock = FileLock(data_dir / LOCK_NAME)
    try:
        lock.acquire(timeout=0)
    except Timeout:
        raise CycleLocked(f"another harvest cycle holds {data_dir / LOCK_NAME}") from None
    try:
        workers = max(1, min(max_workers, len(sources) or 1))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fetch_feed, source, timeout) for source in sources]
            outcomes: list[list[RawFeedItem] | Exception] = []
            for future in futures:
                try:
                    outcomes.append(future.result())
                except (NetworkError, FeedParseError) as exc:
                    outcomes.append(exc)

        seen = SeenKeys(data_dir / SEEN_NAME)
        archive_path = data_dir / ARCHIVE_NAME
        reports = []
        for source, outcome in zip(sources, outcomes):
            report = SourceReport(source_id=source.id)
            if isinstance(outcome, Exception):
                report.error = str(outcome)
                log.error("source %s failed: %s", source.id, outcome)
                reports.append(report)
                continue
            fresh = dedupe(outcome, seen)
            report.accepted = len(fresh)
            report.duplicates = len(outcome) - len(fresh)
            records = [
                ArchiveRecord(
                    source_id=item.source_id,
                    day=bucket_day(item, reference_zone),
                    title=item.title,
                    description=item.description,
                    link=item.link,
                    fetched_at=item.fetched_at.isoformat(),
                )
                for item in fresh
            ]
            append_archive(archive_path, records)
            reports.append(report)
        return HarvestReport(per_source=reports)
    finally:
        lock.release()
