"""Process-wide switches."""
import os

# Extra postcondition checks (SNF identities, face bookkeeping). Tests turn it on.
DEBUG = os.environ.get("RHOMOTOPY_DEBUG", "") not in ("", "0")


def set_debug(flag: bool) -> None:
    global DEBUG
    DEBUG = bool(flag)
