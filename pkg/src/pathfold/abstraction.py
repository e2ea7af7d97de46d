"""Numerical collapse of a state subset into direct border transitions.

Given a subset, the states it can be entered and left through are
identified, the expected visit mass inside the subset is obtained from an
exact rational linear solve, and a new matrix is assembled in which every
route through the subset is replaced by a single transition carrying the
route set's total probability.  Reachability probabilities from the
initial state are preserved exactly; the state space itself never changes
(dropping states that become isolated is a separate, explicit step).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Dtmc, DtmcError, StateSet, state_set


class SingularMatrixError(DtmcError):
    """No usable pivot: the reaching set handed to the solver was not
    produced by :func:`reach_backward`."""


@dataclass(frozen=True)
class FrontierSets:
    """The five state sets steering one collapse step.

    ``interior_zero``
        Members of the subset, other than the initial state, with no
        incoming transition from outside; they lose all transitions.
    ``entries``
        The remaining members, the ones a path can enter through.
    ``exits``
        Outside states fed directly from the subset.
    ``reaching``
        Members with a route to an exit that stays inside the subset.
    ``reaching_one_step``
        Members that feed an exit directly.
    """

    interior_zero: StateSet
    entries: StateSet
    exits: StateSet
    reaching: StateSet
    reaching_one_step: StateSet


@dataclass(frozen=True)
class LinearSystem:
    """``a @ q = b`` over the reaching set; ``b`` selects one-step exiters."""

    a: tuple[tuple[Fraction, ...], ...]
    b: tuple[tuple[Fraction, ...], ...]


def frontier(d: Dtmc, subset: Iterable[int]) -> FrontierSets:
    """Compute all five frontier sets for collapsing ``subset``."""
    s1 = state_set(subset, d.n)
    outside = [s for s in d.states() if s not in s1]
    interior = frozenset(
        s for s in s1 if s != d.init and all(d.prob(r, s) == 0 for r in outside)
    )
    exits = frozenset(t for t in outside if any(d.prob(s, t) > 0 for s in s1))
    reaching = reach_backward(d, s1, exits)
    one_step = frozenset(r for r in s1 if any(d.prob(r, t) > 0 for t in exits))
    return FrontierSets(interior, s1 - interior, exits, reaching, one_step)


def reach_backward(d: Dtmc, subset: Iterable[int], exits: Iterable[int]) -> StateSet:
    """Members of ``subset`` with a positive-probability route to ``exits``
    that stays inside ``subset`` until the final step.

    Worklist iteration: seed with the exits, repeatedly add the subset
    states with a one-step transition into the newest layer, and return
    everything gathered except the exits themselves.
    """
    s1 = state_set(subset, d.n)
    exit_set = frozenset(exits)
    seen = set(exit_set)
    layer = set(exit_set)
    while layer:
        nxt = {r for r in s1 if r not in seen and any(d.prob(r, x) > 0 for x in layer)}
        seen |= nxt
        layer = nxt
    return frozenset(seen - exit_set)


def linear_system(d: Dtmc, fr: FrontierSets) -> LinearSystem:
    """Assemble the exact hitting system for one collapse step."""
    u = sorted(fr.reaching)
    u1 = sorted(fr.reaching_one_step)
    one, zero = Fraction(1), Fraction(0)
    a = tuple(
        tuple((one if i == j else zero) - d.prob(u[i], u[j]) for j in range(len(u)))
        for i in range(len(u))
    )
    b = tuple(tuple(one if row == col else zero for col in u1) for row in u)
    return LinearSystem(a, b)


def solve_linear(system: LinearSystem) -> tuple[tuple[Fraction, ...], ...]:
    """Exact Gauss-Jordan elimination with multiple right-hand sides.

    Pivots on the first nonzero entry in each column; magnitude pivoting
    buys nothing in exact arithmetic.
    """
    a = [list(row) for row in system.a]
    b = [list(row) for row in system.b]
    m = len(a)
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
        pivot = a[col][col]
        for r in range(m):
            if r != col and a[r][col] != 0:
                f = a[r][col] / pivot
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return tuple(tuple(x / a[r][r] for x in b[r]) for r in range(m))


def path_abstract(d: Dtmc, subset: Iterable[int]) -> Dtmc:
    """Collapse ``subset``: interior states lose all their transitions,
    entry states gain direct transitions onto the exits carrying the total
    mass of all routes through the subset, and everything else is kept.

    The state count and initial state stay fixed.  Collapsing a region
    with no way out (one containing a bottom strongly connected component,
    say) silently drops the trapped mass and leaves the result
    substochastic; that is intended, not an error.
    """
    s1 = state_set(subset, d.n)
    fr = frontier(d, s1)
    zero = Fraction(0)
    rows = [[zero] * d.n for _ in range(d.n)]
    for s in d.states():
        if s in s1:
            continue
        row = rows[s - 1]
        for t in d.states():
            if t not in fr.interior_zero:
                row[t - 1] = d.prob(s, t)
    sources = sorted(fr.entries & fr.reaching)
    if sources and fr.exits:
        u = sorted(fr.reaching)
        u1 = sorted(fr.reaching_one_step)
        q = solve_linear(linear_system(d, fr))
        row_of = {state: i for i, state in enumerate(u)}
        for s in sources:
            qrow = q[row_of[s]]
            for t in sorted(fr.exits):
                rows[s - 1][t - 1] = sum(
                    (qrow[j] * d.prob(u1[j], t) for j in range(len(u1))), zero
                )
    return Dtmc.from_rows(d.init, rows)


def path_abstract_seq(d: Dtmc, subsets: Iterable[Iterable[int]]) -> Dtmc:
    """Fold :func:`path_abstract` over ``subsets``, left to right."""
    current = d
    for subset in subsets:
        current = path_abstract(current, subset)
    return current


def prune_isolated(d: Dtmc) -> tuple[Dtmc, dict[int, int]]:
    """Drop non-initial states whose row and column are entirely zero.

    Returns the smaller chain and the old-to-new index map of the kept
    states; probabilities are untouched.
    """
    keep = [
        s
        for s in d.states()
        if s == d.init
        or any(d.prob(s, t) > 0 for t in d.states())
        or any(d.prob(r, s) > 0 for r in d.states())
    ]
    mapping = {old: new for new, old in enumerate(keep, start=1)}
    rows = [[d.prob(s, t) for t in keep] for s in keep]
    return Dtmc.from_rows(mapping[d.init], rows), mapping
