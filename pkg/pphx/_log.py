"""
pphx._log
=========
Debug flag, warnings and ANSI colouring for everything PPHx prints.

All diagnostics go to stderr; stdout carries only CSV/JSON results.
Colour is dropped when stderr is not a terminal or ``NO_COLOR`` is set,
so redirected logs stay plain text.

    set_debug(True)     verbose progress from any entry point
    dbg(...)            printed only in debug mode
    warn(...)           always printed, prefixed with ⚠
    c(text, *codes)     wrap text in colour codes (no-op without a tty)
"""

from __future__ import annotations

import os
import sys

_DEBUG: bool = False


def set_debug(enabled: bool) -> None:
    """Enable or disable verbose debug output package-wide."""
    global _DEBUG
    _DEBUG = bool(enabled)


def is_debug() -> bool:
    return _DEBUG


def _use_colour() -> bool:
    if "NO_COLOR" in os.environ:
        return False
    isatty = getattr(sys.stderr, "isatty", None)
    return bool(isatty and isatty())


def dbg(*args, **kwargs) -> None:
    if _DEBUG:
        print(*args, file=sys.stderr, **kwargs)


def warn(*args, **kwargs) -> None:
    print(c("  ⚠ ", C.BYELLOW, C.BOLD), *args, file=sys.stderr, **kwargs)


# ─── ANSI colour helpers ──────────────────────────────────────────────────────

class C:
    RESET   = "\033[0m"
    BOLD    = "\033[1m"
    DIM     = "\033[2m"
    BRED    = "\033[91m"
    BGREEN  = "\033[92m"
    BYELLOW = "\033[93m"
    BCYAN   = "\033[96m"
    BWHITE  = "\033[97m"


def c(text, *codes: str) -> str:
    """Wrap *text* in ANSI codes, or return it unchanged when colour is off."""
    if not codes or not _use_colour():
        return str(text)
    return "".join(codes) + str(text) + C.RESET
