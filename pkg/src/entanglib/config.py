"""Process-wide defaults: grid budget and worker threads."""

import os

DEFAULT_BUDGET = 10**8

_threads = None


def default_budget():
    """Grid enumeration budget; ``ENTANGLIB_BUDGET`` overrides the default."""
    raw = os.environ.get("ENTANGLIB_BUDGET")
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


def set_threads(k):
    global _threads
    _threads = None if k is None else max(1, int(k))


def threads():
    if _threads is not None:
        return _threads
    return os.cpu_count() or 1
