"""Enumeration caps shared by every exhaustive routine."""

import os

DEFAULT_LIMIT = 10
ENV_VAR = "TAMARI_LAB_LIMIT"


class LimitError(ValueError):
    """Requested size exceeds the configured enumeration cap."""


def current_limit() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise LimitError(f"{ENV_VAR} must be an integer, got {raw!r}") from None


def check_limit(n: int, what: str = "size") -> None:
    limit = current_limit()
    if n > limit:
        raise LimitError(
            f"{what} {n} exceeds enumeration limit {limit} "
            f"(set {ENV_VAR} to raise it)"
        )
