"""Reachability queries, threshold refinement and witness extraction."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import pairwise
from typing import Iterable

from .abstraction import frontier, path_abstract
from .core import Dtmc, DtmcError, StateSet, non_absorbing, state_set
from .scc import abstract_recursive, abstract_via_sccs, nontrivial_sccs
from .words import Word, path_prob, splice

METHODS = ("direct", "scc", "recursive")


class GoalNotAbsorbingError(DtmcError):
    """A goal or refinement target lacks a full self-loop."""


class InitIsGoalError(DtmcError):
    """The initial state may not itself be a goal."""


class InvalidSequenceError(DtmcError):
    """An abstraction sequence strayed outside the non-absorbing states."""


class NotAPathError(DtmcError):
    """The given word is not a positive-probability path where required."""


@dataclass(frozen=True)
class ReachabilityResult:
    per_goal: dict[int, Fraction]
    total: Fraction


@dataclass(frozen=True)
class RefinementStep:
    """One collapse step: the subset used, how many transitions survived,
    and the best single witness in the resulting chain."""

    index: int
    subset: tuple[int, ...]
    transition_count: int
    witness_path: Word | None
    witness_prob: Fraction


@dataclass(frozen=True)
class RefinementReport:
    violated: bool
    step_index: int | None
    witness_path: Word | None
    witness_prob: Fraction
    trace: tuple[RefinementStep, ...]


def model_check(
    d: Dtmc, goals: Iterable[int], method: str = "direct"
) -> ReachabilityResult:
    """Probability of eventually reaching each absorbing goal state.

    Collapses all non-absorbing states at once (``direct``), component by
    component (``scc``), or recursively inside components (``recursive``).
    All three agree exactly, so the choice is a matter of what intermediate
    chains one wants to see.
    """
    goal_set = state_set(goals, d.n)
    if d.init in goal_set:
        raise InitIsGoalError(f"initial state {d.init} is a goal")
    for g in sorted(goal_set):
        if d.prob(g, g) != 1:
            raise GoalNotAbsorbingError(f"goal {g} is not absorbing")
    k = non_absorbing(d)
    if method == "direct":
        final = path_abstract(d, k)
    elif method == "scc":
        final = abstract_via_sccs(d, k)
    elif method == "recursive":
        final = _recursive_over(d, k)
    else:
        raise ValueError(f"unknown method {method!r}; pick one of {METHODS}")
    per_goal = {g: final.prob(d.init, g) for g in sorted(goal_set)}
    return ReachabilityResult(per_goal, sum(per_goal.values(), Fraction(0)))


def _recursive_over(d: Dtmc, k: StateSet) -> Dtmc:
    current = d
    for comp in nontrivial_sccs(d, k):
        # A component nothing enters any more cannot anchor the recursion;
        # the final collapse of k wipes it out regardless.
        if frontier(current, comp).interior_zero == comp:
            continue
        current = abstract_recursive(current, comp)
    return path_abstract(current, k)


def most_probable_path(d: Dtmc, src: int, dst: int) -> tuple[Word, Fraction]:
    """Single path of maximal probability from ``src`` to ``dst``.

    Best-first search: transition probabilities never exceed one, so
    extending a path never improves it and the first settlement of the
    destination is optimal.  Ties resolve to the lexicographically
    smallest path.  Returns ``((), 0)`` if the destination is unreachable.
    """
    if not (1 <= src <= d.n and 1 <= dst <= d.n):
        raise ValueError(f"state pair ({src},{dst}) out of range 1..{d.n}")
    if src == dst:
        return (src,), Fraction(1)
    heap: list[tuple[Fraction, Word]] = [(Fraction(-1), (src,))]
    settled: set[int] = set()
    while heap:
        neg, path = heapq.heappop(heap)
        v = path[-1]
        if v in settled:
            continue
        settled.add(v)
        if v == dst:
            return path, -neg
        for t in d.states():
            p = d.prob(v, t)
            if p > 0 and t not in settled:
                heapq.heappush(heap, (neg * p, path + (t,)))
    return (), Fraction(0)


def refine(
    d: Dtmc,
    target: int,
    threshold,
    subsets: Iterable[Iterable[int]],
) -> RefinementReport:
    """Collapse along ``subsets``, checking after each step for a single
    path from the initial state to ``target`` whose probability exceeds
    ``threshold``; stop at the first step exhibiting one.

    Witness probabilities only grow along the sequence (a collapsed path
    carries at least the mass of any single path it stands for), so a run
    with no violation reports the final step's witness -- which is the
    exact reachability probability itself whenever the final subset covers
    all non-absorbing states.
    """
    if d.prob(target, target) != 1:
        raise GoalNotAbsorbingError(f"target {target} is not absorbing")
    threshold = Fraction(threshold)
    k = non_absorbing(d)
    sets: list[StateSet] = []
    for i, subset in enumerate(subsets):
        try:
            fs = state_set(subset, d.n)
        except ValueError as exc:
            raise InvalidSequenceError(f"step {i}: {exc}") from None
        stray = sorted(fs - k)
        if stray:
            raise InvalidSequenceError(
                f"step {i}: absorbing states {stray} in abstraction set"
            )
        sets.append(fs)

    trace: list[RefinementStep] = []
    current = d
    for i, fs in enumerate(sets):
        current = path_abstract(current, fs)
        path, prob = most_probable_path(current, d.init, target)
        trace.append(
            RefinementStep(
                i, tuple(sorted(fs)), current.transition_count(), path or None, prob
            )
        )
        if prob > threshold:
            return RefinementReport(True, i, path, prob, tuple(trace))
    if trace:
        last = trace[-1]
        return RefinementReport(
            False, last.index, last.witness_path, last.witness_prob, tuple(trace)
        )
    path, prob = most_probable_path(d, d.init, target)
    return RefinementReport(prob > threshold, None, path or None, prob, ())


def concretize_witness(
    d: Dtmc, subsets: Iterable[Iterable[int]], abstract_path: Iterable[int]
) -> Word:
    """Expand a witness from a collapsed chain back into the original one.

    Walks the abstraction sequence backwards; at every level each
    transition leaving the collapsed subset is replaced by the most
    probable route through the subset, found by best-first search confined
    to the subset plus the transition's endpoints.  The result is a
    positive-probability path of the original chain that collapses back
    onto the witness level by level.
    """
    word = tuple(abstract_path)
    sets = [state_set(s, d.n) for s in subsets]
    chain = [d]
    for fs in sets:
        chain.append(path_abstract(chain[-1], fs))
    try:
        positive = bool(word) and path_prob(chain[-1], word) > 0
    except ValueError:
        positive = False
    if not positive:
        raise NotAPathError(f"{word} is not a path of the abstracted chain")
    for level in range(len(sets) - 1, -1, -1):
        word = _expand_once(chain[level], sets[level], word)
    return word


def _expand_once(m: Dtmc, fs: StateSet, word: Word) -> Word:
    if len(word) == 1:
        return word
    pieces = []
    for a, b in pairwise(word):
        if a in fs:
            pieces.append(_best_route_through(m, fs, a, b))
        else:
            pieces.append((a, b))
    out = pieces[0]
    for piece in pieces[1:]:
        out = splice(out, piece)
    return out


def _best_route_through(m: Dtmc, fs: StateSet, src: int, dst: int) -> Word:
    heap: list[tuple[Fraction, Word]] = [(Fraction(-1), (src,))]
    settled: set[int] = set()
    while heap:
        neg, path = heapq.heappop(heap)
        v = path[-1]
        if v in settled:
            continue
        settled.add(v)
        if v == dst:
            return path
        for t in m.states():
            if (t == dst or t in fs) and t not in settled and m.prob(v, t) > 0:
                heapq.heappush(heap, (neg * m.prob(v, t), path + (t,)))
    raise NotAPathError(f"no route from {src} to {dst} through {sorted(fs)}")
