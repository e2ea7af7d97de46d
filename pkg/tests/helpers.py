"""Shared test material: the worked 8-state chain, its known collapses,
random model generators, and brute-force oracles kept deliberately naive."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from pathfold.core import Dtmc
from pathfold.words import path_prob

ME_TRANSITIONS = {
    (1, 2): "5/6",
    (1, 3): "1/6",
    (2, 3): "2/3",
    (2, 5): "1/3",
    (3, 4): "1",
    (4, 3): "3/4",
    (4, 7): "1/6",
    (4, 8): "1/12",
    (5, 6): "1",
    (6, 2): "1/4",
    (6, 5): "1/2",
    (6, 8): "1/4",
    (7, 7): "1",
    (8, 8): "1",
}

S1 = frozenset({2, 5, 6})
S2 = frozenset({3, 4})
S0 = frozenset({5, 6})
K = frozenset(range(1, 7))

# Expected collapses of the worked chain, complete entry maps.
FIG_MINUS_S1 = {
    (1, 2): "5/6",
    (1, 3): "1/6",
    (2, 3): "4/5",
    (2, 8): "1/5",
    (3, 4): "1",
    (4, 3): "3/4",
    (4, 7): "1/6",
    (4, 8): "1/12",
    (7, 7): "1",
    (8, 8): "1",
}
FIG_MINUS_S1_S2 = {
    (1, 2): "5/6",
    (1, 3): "1/6",
    (2, 3): "4/5",
    (2, 8): "1/5",
    (3, 7): "2/3",
    (3, 8): "1/3",
    (7, 7): "1",
    (8, 8): "1",
}
FIG_MINUS_K = {
    (1, 7): "5/9",
    (1, 8): "4/9",
    (7, 7): "1",
    (8, 8): "1",
}
FIG_MINUS_S0 = {
    (1, 2): "5/6",
    (1, 3): "1/6",
    (2, 3): "2/3",
    (2, 5): "1/3",
    (3, 4): "1",
    (4, 3): "3/4",
    (4, 7): "1/6",
    (4, 8): "1/12",
    (5, 2): "1/2",
    (5, 8): "1/2",
    (7, 7): "1",
    (8, 8): "1",
}
FIG_MINUS_1234 = {
    (1, 5): "5/18",
    (1, 7): "13/27",
    (1, 8): "13/54",
    (2, 5): "1/3",
    (2, 7): "4/9",
    (2, 8): "2/9",
    (5, 6): "1",
    (6, 2): "1/4",
    (6, 5): "1/2",
    (6, 8): "1/4",
    (7, 7): "1",
    (8, 8): "1",
}


def me_dtmc() -> Dtmc:
    return Dtmc.from_transitions(8, 1, ME_TRANSITIONS)


def entry_map(d: Dtmc) -> dict[tuple[int, int], Fraction]:
    return {(s, t): p for s, t, p in d.transitions()}


def as_fractions(table: dict) -> dict[tuple[int, int], Fraction]:
    return {k: Fraction(v) for k, v in table.items()}


def random_dtmc(rng: random.Random, n: int, max_weight: int = 6) -> Dtmc:
    """Row-normalized chain with random rational entries."""
    rows = []
    for _ in range(n):
        k = rng.randint(1, n)
        targets = rng.sample(range(n), k)
        weights = [rng.randint(1, max_weight) for _ in targets]
        total = sum(weights)
        row = [Fraction(0)] * n
        for t, w in zip(targets, weights):
            row[t] = Fraction(w, total)
        rows.append(row)
    return Dtmc.from_rows(rng.randint(1, n), rows)


def random_substochastic(rng: random.Random, n: int, max_weight: int = 6) -> Dtmc:
    rows = []
    for _ in range(n):
        k = rng.randint(1, n)
        targets = rng.sample(range(n), k)
        weights = [rng.randint(1, max_weight) for _ in targets]
        total = sum(weights) + rng.randint(0, max_weight)
        row = [Fraction(0)] * n
        for t, w in zip(targets, weights):
            row[t] = Fraction(w, total)
        rows.append(row)
    return Dtmc.from_rows(rng.randint(1, n), rows)


def random_subset(rng: random.Random, pool, allow_empty: bool = True) -> frozenset[int]:
    pool = sorted(pool)
    k = rng.randint(0 if allow_empty else 1, len(pool))
    return frozenset(rng.sample(pool, k))


def random_goal_model(
    rng: random.Random, n: int, n_goals: int = 2, fast: bool = False
) -> tuple[Dtmc, list[int]]:
    """Stochastic chain whose last ``n_goals`` states are absorbing; every
    transient state carries a direct goal edge, with at least two thirds of
    its row mass on it when ``fast`` is set (forcing fast convergence of
    truncated reachability sums).
    """
    goals = list(range(n - n_goals + 1, n + 1))
    rows = []
    for s in range(1, n + 1):
        row = [Fraction(0)] * n
        if s in goals:
            row[s - 1] = Fraction(1)
        else:
            k = rng.randint(1, n - 1)
            weights = {t: rng.randint(1, 3) for t in rng.sample(range(1, n + 1), k)}
            g = rng.choice(goals)
            other = sum(w for t, w in weights.items() if t != g)
            weights[g] = 2 * other + rng.randint(1, 3) if fast else max(
                weights.get(g, 0), 1
            )
            total = sum(weights.values())
            for t, w in weights.items():
                row[t - 1] = Fraction(w, total)
        rows.append(row)
    init = rng.randint(1, n - n_goals)
    return Dtmc.from_rows(init, rows), goals


def random_fast_exit_instance(
    rng: random.Random, n: int
) -> tuple[Dtmc, frozenset[int]]:
    """Chain plus subset where every subset state puts at least a third of
    its row mass directly outside the subset.  The mass still inside after
    k hops is then at most (2/3)^k, so truncated sums at k=64 land within
    3*(2/3)^65 < 2^-32 of the exact collapse entries.
    """
    size = rng.randint(1, n - 1)
    s1 = frozenset(rng.sample(range(1, n + 1), size))
    inside = sorted(s1)
    outside = sorted(set(range(1, n + 1)) - s1)
    rows = []
    for s in range(1, n + 1):
        row = [Fraction(0)] * n
        if s in s1:
            in_targets = rng.sample(inside, rng.randint(0, len(inside)))
            in_weights = {t: rng.randint(1, 3) for t in in_targets}
            w_in = sum(in_weights.values())
            out_targets = rng.sample(outside, rng.randint(1, len(outside)))
            out_weights = {t: rng.randint(1, 3) for t in out_targets}
            while 2 * sum(out_weights.values()) < w_in:
                out_weights[rng.choice(out_targets)] += 1
            weights = {**in_weights, **out_weights}
        else:
            targets = rng.sample(range(1, n + 1), rng.randint(1, n))
            weights = {t: rng.randint(1, 3) for t in targets}
        total = sum(weights.values())
        for t, w in weights.items():
            row[t - 1] = Fraction(w, total)
        rows.append(row)
    return Dtmc.from_rows(rng.randint(1, n), rows), s1


def random_acyclic_inside_instance(
    rng: random.Random, n: int
) -> tuple[Dtmc, frozenset[int]]:
    """Chain plus subset whose induced sub-digraph is acyclic: internal
    edges only run towards larger state indices."""
    size = rng.randint(1, n - 1)
    s1 = frozenset(rng.sample(range(1, n + 1), size))
    rows = []
    for s in range(1, n + 1):
        allowed = [
            t for t in range(1, n + 1) if not (s in s1 and t in s1 and t <= s)
        ]
        targets = rng.sample(allowed, rng.randint(1, len(allowed)))
        weights = [rng.randint(1, 4) for _ in targets]
        total = sum(weights)
        row = [Fraction(0)] * n
        for t, w in zip(targets, weights):
            row[t - 1] = Fraction(w, total)
        rows.append(row)
    return Dtmc.from_rows(rng.randint(1, n), rows), s1


def enumerated_walk_prob(d: Dtmc, s: int, subset, r: int, i: int) -> Fraction:
    """Mass of the words s*w*r with w ranging over subset^(i-1), summed by
    literal enumeration of every word."""
    inside = sorted(subset)
    total = Fraction(0)
    for mid in product(inside, repeat=i - 1):
        total += path_prob(d, (s, *mid, r))
    return total


def submatrix_power_entry(d: Dtmc, subset, power: int, s: int, r: int) -> Fraction:
    """Entry (s, r) of the subset-restricted matrix raised to ``power``."""
    inside = sorted(subset)
    idx = {v: i for i, v in enumerate(inside)}
    m = [[d.prob(a, b) for b in inside] for a in inside]
    acc = [
        [Fraction(1) if i == j else Fraction(0) for j in range(len(inside))]
        for i in range(len(inside))
    ]
    for _ in range(power):
        acc = [
            [
                sum((acc[i][k] * m[k][j] for k in range(len(inside))), Fraction(0))
                for j in range(len(inside))
            ]
            for i in range(len(inside))
        ]
    return acc[idx[s]][idx[r]]
