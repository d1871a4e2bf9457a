"""Exception hierarchy shared across the package."""


class NewsgramsError(Exception):
    """Base class for all package errors."""


class NetworkError(NewsgramsError):
    """A feed could not be retrieved (timeout, DNS, TLS, HTTP error, missing file)."""


class FeedParseError(NewsgramsError):
    """Fetched bytes are not a parseable RSS/Atom document."""


class TimestampParseError(NewsgramsError):
    """A publication timestamp string could not be interpreted."""


class CycleLocked(NewsgramsError):
    """Another harvest cycle currently holds the cycle lock."""


class ArchiveCorrupt(NewsgramsError):
    """The raw-item archive contains an unreadable record."""


class DateMismatch(NewsgramsError):
    """An item was added to a daily table for a different calendar day."""


class EmptyCorpus(NewsgramsError):
    """An operation requires a corpus with at least one token."""


class EmptyRange(NewsgramsError):
    """A date range or export range contains no days."""


class EmptyDistribution(NewsgramsError):
    """A frequency distribution with zero total tokens."""


class EmptyDay(NewsgramsError):
    """A per-day metric was requested for a day with no tokens."""


class StreamTooShort(NewsgramsError):
    """A token stream is shorter than one segment."""


class DegenerateFit(NewsgramsError):
    """A trend fit with too few points or no variation on the x axis."""


class InvalidQuery(NewsgramsError):
    """A query specification that cannot be executed."""


class TooManyPatterns(InvalidQuery):
    """More patterns than the per-query limit."""


class SnapshotMissing(NewsgramsError):
    """No snapshot generation has been published yet."""
