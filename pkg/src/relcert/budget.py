"""Global size budget guarding combinatorial explosion.

Every constructor that enumerates objects or morphisms checks against this
budget and raises SizeBudgetExceeded instead of truncating silently.
"""

import os
from contextlib import contextmanager

from .errors import SizeBudgetExceeded

DEFAULT_MAX_OBJECTS = 10**5
DEFAULT_MAX_MORPHISMS = 10**6

_ENV_VAR = "RELCERT_BUDGET"


def _env_default() -> int | None:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        return None


class Budget:
    def __init__(self, max_objects=None, max_morphisms=None):
        env = _env_default()
        self.max_objects = max_objects if max_objects is not None else (env or DEFAULT_MAX_OBJECTS)
        self.max_morphisms = (
            max_morphisms if max_morphisms is not None else (10 * env if env else DEFAULT_MAX_MORPHISMS)
        )

    def check_objects(self, count, what="objects"):
        if count > self.max_objects:
            raise SizeBudgetExceeded(what, count, self.max_objects)

    def check_morphisms(self, count, what="morphisms"):
        if count > self.max_morphisms:
            raise SizeBudgetExceeded(what, count, self.max_morphisms)


_current = Budget()


def current() -> Budget:
    return _current


@contextmanager
def limit(max_objects=None, max_morphisms=None):
    """Temporarily replace the global budget."""
    global _current
    saved = _current
    _current = Budget(max_objects, max_morphisms)
    try:
        yield _current
    finally:
        _current = saved
