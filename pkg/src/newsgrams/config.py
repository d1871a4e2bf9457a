"""Runtime configuration for the CLI and the service, env-overridable."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

ENV_PREFIX = "NEWSGRAMS_"


def _env(name: str, default: str) -> str:
    return os.environ.get(ENV_PREFIX + name, default)


@dataclass
class AppConfig:
    data_dir: Path = field(default_factory=lambda: Path(_env("DATA_DIR", "data")))
    sources_path: Path | None = None  # None: packaged default source list
    exclusions_path: Path | None = None  # None: packaged default exclusion list
    timezone: str = "UTC"
    msttr_segment: int = 100
    fetch_timeout: float = 30.0
    harvest_interval: float = 3 * 3600.0
    rebuild_interval: float = 7 * 86400.0
    host: str = "127.0.0.1"
    port: int = 8000
    cors_origins: list[str] = field(default_factory=lambda: ["*"])

    def __post_init__(self) -> None:
        self.data_dir = Path(self.data_dir)
        if self.msttr_segment < 2:
            raise ValueError("msttr_segment must be >= 2")

    @classmethod
    def from_env(cls) -> "AppConfig":
        sources = _env("SOURCES", "")
        exclusions = _env("EXCLUSIONS", "")
        origins = _env("CORS_ORIGINS", "*")
        return cls(
            data_dir=Path(_env("DATA_DIR", "data")),
            sources_path=Path(sources) if sources else None,
            exclusions_path=Path(exclusions) if exclusions else None,
            timezone=_env("TIMEZONE", "UTC"),
            msttr_segment=int(_env("MSTTR_SEGMENT", "100")),
            fetch_timeout=float(_env("FETCH_TIMEOUT", "30")),
            harvest_interval=float(_env("HARVEST_INTERVAL", str(3 * 3600))),
            rebuild_interval=float(_env("REBUILD_INTERVAL", str(7 * 86400))),
            host=_env("HOST", "127.0.0.1"),
            port=int(_env("PORT", "8000")),
            cors_origins=[o.strip() for o in origins.split(",") if o.strip()],
        )
