"""Clamp bookkeeping for values that are negative only by rounding.

Quantities that are non-negative in exact arithmetic (variance, skew
information, square-root radicands) may come out slightly negative in
floating point. The return boundary clamps values in [-1e-12, 0) to zero;
anything more negative raises. When a collector is active on the current
context, every clamp event is recorded so callers can surface it.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

CLAMP_WINDOW = 1e-12

_collector: ContextVar[list | None] = ContextVar("qskew_clamp_collector", default=None)


@contextmanager
def collect_clamps():
    """Collect (label, value) clamp events from the enclosed computation."""
    events: list[tuple[str, float]] = []
    token = _collector.set(events)
    try:
        yield events
    finally:
        _collector.reset(token)


def clamp_nonnegative(value: float, label: str) -> float:
    """Clamp a rounding-level negative to 0; raise if genuinely negative."""
    if value >= 0.0:
        return value
    if value < -CLAMP_WINDOW:
        raise ArithmeticError(f"{label} = {value:.6e} is negative beyond the rounding window")
    events = _collector.get()
    if events is not None:
        events.append((label, float(value)))
    return 0.0


def record(label: str, value: float) -> None:
    """Record a diagnostic event without altering any value."""
    events = _collector.get()
    if events is not None:
        events.append((label, float(value)))
