"""Exception types and resource limits shared across the package."""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace


class FlowPolyError(Exception):
    """Base class for package errors."""


class DomainError(FlowPolyError, ValueError):
    """An argument lies outside the operation's domain."""


class ResourceLimitError(FlowPolyError, RuntimeError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, cap_name: str, cap: int, requested: int):
        self.cap_name = cap_name
        self.cap = cap
        self.requested = requested
        super().__init__(f"{cap_name}={cap} exceeded (requested {requested})")


class InvariantViolation(FlowPolyError, RuntimeError):
    """Internal consistency check failed; indicates a bug or invalid input."""


@dataclass(frozen=True)
class Limits:
    max_edges: int = 20
    max_enum: int = 10 ** 7
    max_subsets: int = 2 ** 20

    def __post_init__(self):
        for name in ("max_edges", "max_enum", "max_subsets"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive")


def _from_env() -> Limits:
    raw = os.environ.get("FLOWPOLY_MAX_EDGES")
    if raw:
        try:
            return Limits(max_edges=int(raw))
        except ValueError as exc:
            raise DomainError(f"FLOWPOLY_MAX_EDGES must be a positive integer, got {raw!r}") from exc
    return Limits()


_limits = _from_env()


def get_limits() -> Limits:
    return _limits


def set_limits(**changes) -> Limits:
    global _limits
    _limits = replace(_limits, **changes)
    return _limits


@contextmanager
def limits(**changes):
    global _limits
    saved = _limits
    _limits = replace(_limits, **changes)
    try:
        yield _limits
    finally:
        _limits = saved


def check_edges(m: int) -> None:
    cap = _limits.max_edges
    if m > cap:
        raise ResourceLimitError("max_edges", cap, m)


def check_enum(size: int) -> None:
    cap = _limits.max_enum
    if size > cap:
        raise ResourceLimitError("max_enum", cap, size)


def check_subsets(m: int) -> None:
    cap = _limits.max_subsets
    if 2 ** m > cap:
        raise ResourceLimitError("max_subsets", cap, 2 ** m)
