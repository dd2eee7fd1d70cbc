"""Size caps shared by every module.

The caps are process-wide defaults that the CLI (or a test) may override
temporarily with :func:`override`.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_elements: int = 250_000
    # dense Cayley tables are only materialized up to this order
    max_table_order: int = 5_000
    max_lattice_order: int = 5_000
    max_subgroups: int = 200_000


_current = Limits()


def current() -> Limits:
    return _current


@contextlib.contextmanager
def override(**changes):
    """Temporarily replace some caps, e.g. ``override(max_lattice_order=400)``."""
    global _current
    saved = _current
    _current = replace(_current, **{k: v for k, v in changes.items() if v is not None})
    try:
        yield _current
    finally:
        _current = saved
