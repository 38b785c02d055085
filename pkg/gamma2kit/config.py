from __future__ import annotations

import os
from dataclasses import dataclass

from gamma2kit.models import OutputFormat


@dataclass
class Settings:
    output_format: OutputFormat = OutputFormat.JSON
    seed: int = 0
    random_words: int = 1000
    random_word_length: int = 30
    level2_samples: int = 500
    search_depth: int = 3
    max_exhaustive_genus: int = 8
    log_level: str = "WARNING"


def _parse_format(raw: str) -> OutputFormat:
    try:
        return OutputFormat(raw.strip().lower())
    except ValueError:
        return OutputFormat.JSON


def load_settings() -> Settings:
    return Settings(
        output_format=_parse_format(os.environ.get("GAMMA2_FORMAT", "json")),
        seed=int(os.environ.get("GAMMA2_SEED", "0")),
        random_words=int(os.environ.get("GAMMA2_RANDOM_WORDS", "1000")),
        random_word_length=int(os.environ.get("GAMMA2_RANDOM_WORD_LENGTH", "30")),
        level2_samples=int(os.environ.get("GAMMA2_LEVEL2_SAMPLES", "500")),
        search_depth=int(os.environ.get("GAMMA2_SEARCH_DEPTH", "3")),
        max_exhaustive_genus=int(os.environ.get("GAMMA2_MAX_EXHAUSTIVE_GENUS", "8")),
        log_level=os.environ.get("GAMMA2_LOG_LEVEL", "WARNING").upper(),
    )
