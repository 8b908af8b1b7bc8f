"""Runtime invariant checks.

Every mathematical guarantee the algorithms rely on goes through
``check`` so that a violation raises instead of silently producing a
wrong answer.  The counters let test harnesses confirm that checks
actually ran and that none fired.
"""

from collections import Counter
import threading

from .errors import InternalInvariantError

_lock = threading.Lock()
_evaluated = Counter()
_failed = Counter()


def check(name, cond, msg=""):
    with _lock:
        _evaluated[name] += 1
        if not cond:
            _failed[name] += 1
    if not cond:
        raise InternalInvariantError(f"{name}: {msg}" if msg else name)


def stats():
    """Return ``(evaluated, failed)`` as plain dicts keyed by check name."""
    with _lock:
        return dict(_evaluated), dict(_failed)


def reset():
    with _lock:
        _evaluated.clear()
        _failed.clear()
