"""Resource bounds shared by the library and the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

ENV_MAX_DEGREE = "MSDUAL_MAX_DEGREE"


class ResourceGuardError(ValueError):
    """Raised when a request exceeds a configured size bound."""


@dataclass
class Bounds:
    graph_max_degree: int = 10
    hall_max_dim: int = 6
    count_max_dim: int = 6
    # total degree bound per cyclic n; None keys the integers
    canonical_max_degree: dict = field(default_factory=lambda: {2: 8, 3: 6, None: 7})
    canonical_default_other: int = 5

    def canonical_bound(self, n: int | None) -> int:
        return self.canonical_max_degree.get(n, self.canonical_default_other)


def env_override() -> int | None:
    raw = os.environ.get(ENV_MAX_DEGREE)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ResourceGuardError(f"{ENV_MAX_DEGREE} must be an integer, got {raw!r}") from None


def check_bound(value: int, bound: int, what: str) -> None:
    override = env_override()
    limit = override if override is not None else bound
    if value > limit:
        raise ResourceGuardError(
            f"{what} {value} exceeds the bound {limit} (set {ENV_MAX_DEGREE} to override)"
        )


DEFAULT_BOUNDS = Bounds()
