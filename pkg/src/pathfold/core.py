"""Exact data model for discrete-time Markov chains.

States are the integers ``1..n``.  Every probability is a
:class:`fractions.Fraction`, so comparisons anywhere in the package are
exact.  Substochastic matrices (row sums below one) are a normal, legal
state of affairs here: collapsing a region that traps probability mass
deliberately produces them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Rational = Fraction

StateSet = frozenset[int]


class DtmcError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DtmcError):
    """The matrix or initial state violates a model invariant."""


class NegativeEntryError(ValidationError):
    def __init__(self, src: int, dst: int, value: Fraction):
        super().__init__(f"entry ({src},{dst}) is negative: {value}")
        self.src, self.dst, self.value = src, dst, value


class EntryExceedsOneError(ValidationError):
    def __init__(self, src: int, dst: int, value: Fraction):
        super().__init__(f"entry ({src},{dst}) exceeds one: {value}")
        self.src, self.dst, self.value = src, dst, value


class RowSumExceedsOneError(ValidationError):
    def __init__(self, state: int, total: Fraction):
        super().__init__(f"row {state} sums to {total} > 1")
        self.state, self.total = state, total


class InitOutOfRangeError(ValidationError):
    def __init__(self, init: int, n: int):
        super().__init__(f"initial state {init} not in 1..{n}")
        self.init, self.n = init, n


@dataclass(frozen=True)
class ValidationReport:
    is_stochastic: bool


@dataclass(frozen=True)
class Dtmc:
    """A (sub)stochastic matrix over states ``1..n`` plus an initial state."""

    init: int
    rows: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, init: int, rows: Iterable[Iterable]) -> "Dtmc":
        return cls(init, tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_transitions(
        cls, n: int, init: int, transitions: Mapping[tuple[int, int], object]
    ) -> "Dtmc":
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (s, t), p in transitions.items():
            rows[s - 1][t - 1] = Fraction(p)  # type: ignore[arg-type]
        return cls.from_rows(init, rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def states(self) -> range:
        return range(1, self.n + 1)

    def prob(self, s: int, t: int) -> Fraction:
        if not (1 <= s <= self.n and 1 <= t <= self.n):
            raise ValueError(f"state pair ({s},{t}) out of range 1..{self.n}")
        return self.rows[s - 1][t - 1]

    def row_sum(self, s: int) -> Fraction:
        return sum(self.rows[s - 1], Fraction(0))

    def is_stochastic(self) -> bool:
        return all(self.row_sum(s) == 1 for s in self.states())

    def transitions(self) -> Iterator[tuple[int, int, Fraction]]:
        """Positive entries in (src, dst) order."""
        for s in self.states():
            for t in self.states():
                p = self.rows[s - 1][t - 1]
                if p > 0:
                    yield s, t, p

    def transition_count(self) -> int:
        return sum(1 for _ in self.transitions())


def state_set(states: Iterable[int], n: int) -> StateSet:
    """Normalize to a frozenset, rejecting indices outside ``1..n``."""
    out = frozenset(states)
    for s in out:
        if not (1 <= s <= n):
            raise ValueError(f"state {s} out of range 1..{n}")
    return out


def validate(d: Dtmc) -> ValidationReport:
    """Check entry ranges, row sums and the initial state.

    Returns a report with the stochastic/substochastic verdict; raises a
    :class:`ValidationError` subclass on any violation.
    """
    n = d.n
    if not (1 <= d.init <= n):
        raise InitOutOfRangeError(d.init, n)
    if any(len(row) != n for row in d.rows):
        raise ValidationError("matrix is not square")
    stochastic = True
    for s in d.states():
        total = Fraction(0)
        for t in d.states():
            p = d.rows[s - 1][t - 1]
            if p < 0:
                raise NegativeEntryError(s, t, p)
            if p > 1:
                raise EntryExceedsOneError(s, t, p)
            total += p
        if total > 1:
            raise RowSumExceedsOneError(s, total)
        if total != 1:
            stochastic = False
    return ValidationReport(is_stochastic=stochastic)


def non_absorbing(d: Dtmc) -> StateSet:
    """States that keep less than their full mass on the diagonal."""
    return frozenset(s for s in d.states() if d.prob(s, s) < 1)


def support_edges(d: Dtmc) -> list[tuple[int, int]]:
    """All pairs with strictly positive probability, sorted by (src, dst)."""
    return [(s, t) for s, t, _ in d.transitions()]
