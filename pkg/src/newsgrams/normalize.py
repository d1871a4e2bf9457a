"""Raw headline text to normalized token sequences.

The pipeline keeps surface word forms only: markup is stripped, everything
is lowercased, punctuation is deleted except word-internal hyphens, and a
configurable list of boilerplate literals plus YouTube links and digit-only
tokens are dropped.
"""
from __future__ import annotations

import html
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

_TAG_RE = re.compile(r"<[^>]*>")
_WS_RE = re.compile(r"\s+")


def strip_markup(text: str) -> str:
    """Remove HTML/XML tags, decode character entities, collapse whitespace.

    Tag removal is best-effort: every maximal ``<...>`` substring is deleted.
    Entities are decoded after tag removal so that escaped markup such as
    ``&lt;3`` survives as visible text.
    """
    without_tags = _TAG_RE.sub("", text)
    decoded = html.unescape(without_tags)
    return _WS_RE.sub(" ", decoded).strip()


@dataclass(frozen=True)
class ExclusionList:
    """Verbatim word-form literals deleted during tokenization."""

    literals: frozenset[str]

    def __contains__(self, token: str) -> bool:
        return token in self.literals

    @classmethod
    def from_literals(cls, literals: Iterable[str]) -> "ExclusionList":
        return cls(frozenset(lit.lower() for lit in literals))

    @classmethod
    def from_file(cls, path: str | Path) -> "ExclusionList":
        """Load one literal per line; ``#`` lines are comments, blanks ignored."""
        literals = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            literals.append(line)
        return cls.from_literals(literals)

    @classmethod
    def default(cls) -> "ExclusionList":
        text = resources.files("newsgrams.data").joinpath("exclusions.txt").read_text("utf-8")
        literals = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        return cls.from_literals(literals)


def _keep_char(ch: str) -> bool:
    if ch == "-":
        return True
    return unicodedata.category(ch)[0] in ("L", "N")


def _digit_only(token: str) -> bool:
    return all(unicodedata.category(ch)[0] == "N" for ch in token)


def _is_youtube_link(token: str) -> bool:
    return "youtube.com" in token or "youtu.be" in token


def tokenize(text: str, exclusions: ExclusionList | None = None) -> list[str]:
    """Turn markup-free text into the final token sequence.

    Steps, in order: lowercase; split on whitespace runs; drop YouTube links
    and exclusion literals while the raw token is still intact (literals such
    as ``km/h`` would be unrecognizable after punctuation removal); delete
    every character that is not a letter, digit, or hyphen; strip leading and
    trailing hyphens; drop empty and digit-only leftovers.  Exclusion literals
    are checked again after punctuation removal, because literals such as
    ``t-onlinede`` only match once the dot of ``t-online.de`` is gone.
    """
    if exclusions is None:
        exclusions = ExclusionList.default()
    out: list[str] = []
    for raw in text.lower().split():
        if _is_youtube_link(raw):
            continue
        if raw in exclusions:
            continue
        token = "".join(ch for ch in raw if _keep_char(ch)).strip("-")
        if not token or _digit_only(token):
            continue
        if token in exclusions:
            continue
        out.append(token)
    return out


def normalize_text(text: str, exclusions: ExclusionList | None = None) -> list[str]:
    """Full pipeline from raw feed text: markup stripping, then tokenization."""
    return tokenize(strip_markup(text), exclusions)
