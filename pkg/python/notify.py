import os
import sys

QUIET = os.getenv("BMGAUSS_QUIET", "false").lower() in ("1", "true", "yes", "on")


def set_quiet(value: bool) -> None:
    global QUIET
    QUIET = bool(value)


def notify(tag: str, message: str) -> None:
    if QUIET:
        return
    try:
        print(f"[{(tag or 'INFO').upper()}] {message}", file=sys.stderr, flush=True)
    except Exception:
        pass
