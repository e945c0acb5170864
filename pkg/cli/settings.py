"""
Runtime settings for pqsaddle.

.env is loaded from the repo root or the CWD through python-dotenv before any other
pqsaddle module reads its PQSADDLE_* tunables; exported variables win over .env values.
CLI flags override settings; settings override defaults.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv


def _load_dotenv_file() -> None:
    here = Path(__file__).resolve().parent
    for path in (here.parent / ".env", Path.cwd() / ".env"):
        try:
            if path.exists():
                load_dotenv(path, override=False)
                break
        except Exception:
            # Never fail on dotenv load
            pass


_load_dotenv_file()


@dataclass(frozen=True)
class Settings:
    level: int = 3
    degree: int = 12
    inner_order: str = "lex"
    param_order: str = "canonical"
    gb_workers: int = 0
    progress: bool = False


def _int_env(name: str, default: int) -> int:
    raw = (os.environ.get(name) or "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def load_settings() -> Settings:
    return Settings(
        level=_int_env("PQSADDLE_LEVEL", 3),
        degree=_int_env("PQSADDLE_DEGREE", 12),
        inner_order=(os.environ.get("PQSADDLE_INNER_ORDER") or "lex").strip(),
        param_order=(os.environ.get("PQSADDLE_PARAM_ORDER") or "canonical").strip(),
        gb_workers=_int_env("PQSADDLE_GB_WORKERS", 0),
        progress=os.environ.get("PQSADDLE_PROGRESS", "0") == "1",
    )
