"""Path mechanisms: reward functions over (depth, path length).

A path mechanism pays only the agents on the winning path of a query
tree, and the payment to an agent depends only on her depth j on the
path and the path length n.  Four concrete families are provided:

* ``DoubleGeometric`` -- x(j,n) = (1-alpha)^(j-1) * alpha^(n-j) * delta,
  a geometric decay in the distance to the winner times a geometric
  decay in the distance to the requester;
* ``TwoHeaded``       -- pays a to the first path agent and b to the
  winner, nothing in between;
* ``UniformSplit``    -- delta/n to everyone (a deliberately attackable
  baseline);
* ``TableMechanism``  -- an explicit finite lower-triangular table.

Mechanisms are immutable values; every operation here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class MechanismDomainError(ValueError):
    """Bad mechanism parameters or a (j, n) query outside 1 <= j <= n."""


class TableRangeError(LookupError):
    """A finite table was queried beyond its declared range."""


def _check_indices(j, n):
    if not isinstance(j, int) or not isinstance(n, int):
        raise MechanismDomainError(f"depth and length must be integers, got j={j!r}, n={n!r}")
    if j < 1 or n < 1 or j > n:
        raise MechanismDomainError(f"need 1 <= j <= n, got j={j}, n={n}")


def _check_positive_finite(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise MechanismDomainError(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class WinningPath:
    """The rewarded path (i_1, ..., i_n): requester excluded, i_n is the winner."""

    agents: tuple

    def __post_init__(self):
        agents = tuple(self.agents)
        object.__setattr__(self, "agents", agents)
        if not agents:
            raise MechanismDomainError("a winning path must contain at least one agent")
        if len(set(agents)) != len(agents):
            raise MechanismDomainError("winning path agents must be distinct")

    def __len__(self):
        return len(self.agents)

    @property
    def length(self) -> int:
        return len(self.agents)


@dataclass(frozen=True)
class Allocation:
    """Per-agent payments for one winning path; anyone else gets exactly 0."""

    rewards: dict
    total: float

    def reward_for(self, agent) -> float:
        return self.rewards.get(agent, 0.0)


class Mechanism:
    """Base interface: a reward function x(j, n) plus derived operations."""

    def reward(self, j: int, n: int) -> float:
        raise NotImplementedError

    def total_cost(self, n: int) -> float:
        """Total paid along a winning path of length n."""
        if not isinstance(n, int) or n < 1:
            raise MechanismDomainError(f"path length must be a positive integer, got {n!r}")
        return sum(self.reward(j, n) for j in range(1, n + 1))

    def allocate(self, path: WinningPath) -> Allocation:
        """Pay each path agent x(j, n); the total equals total_cost(n) exactly."""
        if not isinstance(path, WinningPath):
            path = WinningPath(tuple(path))
        n = path.length
        rewards = {}
        total = 0.0
        for j, agent in enumerate(path.agents, start=1):
            x = self.reward(j, n)
            rewards[agent] = x
            total += x
        return Allocation(rewards, total)

    def describe(self) -> str:
        raise NotImplementedError

    def to_spec(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class DoubleGeometric(Mechanism):
    """x(j,n) = (1-alpha)^(j-1) * alpha^(n-j) * delta for 0 < alpha < 1, delta > 0."""

    alpha: float
    delta: float = 1.0

    def __post_init__(self):
        if not (isinstance(self.alpha, (int, float)) and 0.0 < self.alpha < 1.0):
            raise MechanismDomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        _check_positive_finite("delta", self.delta)

    def reward(self, j, n):
        _check_indices(j, n)
        return (1.0 - self.alpha) ** (j - 1) * self.alpha ** (n - j) * self.delta

    def describe(self):
        return f"dgm(alpha={self.alpha!r},delta={self.delta!r})"

    def to_spec(self):
        return {"type": "dgm", "alpha": self.alpha, "delta": self.delta}


@dataclass(frozen=True)
class TwoHeaded(Mechanism):
    """Pays a to the first path agent, b to the winner, 0 to interior agents.

    A length-1 path collapses both heads onto one agent, who gets a + b.
    """

    a: float
    b: float

    def __post_init__(self):
        for name, v in (("a", self.a), ("b", self.b)):
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise MechanismDomainError(f"{name} must be a finite non-negative number, got {v!r}")

    def reward(self, j, n):
        _check_indices(j, n)
        if n == 1:
            return self.a + self.b
        if j == 1:
            return self.a
        if j == n:
            return self.b
        return 0.0

    def describe(self):
        return f"two_headed(a={self.a!r},b={self.b!r})"

    def to_spec(self):
        return {"type": "two_headed", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class UniformSplit(Mechanism):
    """x(j,n) = delta/n: splits a fixed budget evenly along the path.

    Not sybil-proof; exists as the attackable baseline for demos.
    """

    delta: float = 1.0

    def __post_init__(self):
        _check_positive_finite("delta", self.delta)

    def reward(self, j, n):
        _check_indices(j, n)
        return self.delta / n

    def describe(self):
        return f"uniform_split(delta={self.delta!r})"

    def to_spec(self):
        return {"type": "uniform_split", "delta": self.delta}


@dataclass(frozen=True)
class TableMechanism(Mechanism):
    """An explicit finite reward table; rows[n-1][j-1] = x(j, n).

    Queries beyond the declared range raise TableRangeError -- a table is
    never silently zero outside its range.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(float(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise MechanismDomainError("a table needs at least one row")
        for n, row in enumerate(rows, start=1):
            if len(row) != n:
                raise MechanismDomainError(f"row {n} must have {n} entries, got {len(row)}")
            for v in row:
                if not math.isfinite(v):
                    raise MechanismDomainError(f"non-finite entry {v!r} in row {n}")

    @property
    def n_max(self) -> int:
        return len(self.rows)

    @classmethod
    def tabulate(cls, mech: Mechanism, n_max: int) -> "TableMechanism":
        """Freeze any mechanism into an explicit table up to n_max."""
        if not isinstance(n_max, int) or n_max < 1:
            raise MechanismDomainError(f"n_max must be a positive integer, got {n_max!r}")
        return cls(tuple(tuple(mech.reward(j, n) for j in range(1, n + 1)) for n in range(1, n_max + 1)))

    def reward(self, j, n):
        _check_indices(j, n)
        if n > self.n_max:
            raise TableRangeError(f"table covers n <= {self.n_max}, got n={n}")
        return self.rows[n - 1][j - 1]

    def describe(self):
        return f"table(n_max={self.n_max})"

    def to_spec(self):
        return {"type": "table", "n_max": self.n_max, "rows": [list(row) for row in self.rows]}


_SPEC_FIELDS = {
    "dgm": {"alpha", "delta"},
    "two_headed": {"a", "b"},
    "uniform_split": {"delta"},
    "table": {"n_max", "rows"},
}


def mechanism_from_spec(spec: dict) -> Mechanism:
    """Build a mechanism from its JSON specification object.

    Format: {"type": "dgm"|"two_headed"|"uniform_split"|"table", ...} with
    type-specific numeric fields; tables carry {"n_max": N, "rows": [[x(1,1)],
    [x(1,2), x(2,2)], ...]}.  Unknown types or keys are rejected.
    """
    if not isinstance(spec, dict):
        raise MechanismDomainError(f"mechanism spec must be an object, got {type(spec).__name__}")
    kind = spec.get("type")
    if kind not in _SPEC_FIELDS:
        raise MechanismDomainError(f"unknown mechanism type {kind!r}")
    extra = set(spec) - _SPEC_FIELDS[kind] - {"type"}
    if extra:
        raise MechanismDomainError(f"unknown keys for {kind!r} spec: {sorted(extra)}")
    if kind == "dgm":
        return DoubleGeometric(alpha=spec.get("alpha"), delta=spec.get("delta", 1.0))
    if kind == "two_headed":
        return TwoHeaded(a=spec.get("a"), b=spec.get("b"))
    if kind == "uniform_split":
        return UniformSplit(delta=spec.get("delta", 1.0))
    rows = spec.get("rows")
    if not isinstance(rows, list):
        raise MechanismDomainError("table spec needs a 'rows' list")
    table = TableMechanism(tuple(tuple(row) for row in rows))
    declared = spec.get("n_max", table.n_max)
    if declared != table.n_max:
        raise MechanismDomainError(f"declared n_max={declared} but rows cover n <= {table.n_max}")
    return table
