"""Weakly stable matchings for acyclic preferences on both sides.

Every agent's relation is extended to a total order and a single run of
man-proposing deferred acceptance is made on the extended instance.  Extra
strict comparisons only add blocking opportunities, so a stable matching of
the extended instance is weakly stable in the original one.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import ClassGateViolation
from .instance import Instance, Matching, classify_sides
from .prefs import PREF, OrderClass, Relation, linear_extension


@dataclass(frozen=True)
class StrictInstance:
    """An instance whose relations are all total orders, plus the ranked lists."""

    instance: Instance
    rankings: dict[str, tuple[str, ...]]


def check_weak_gate(instance: Instance) -> None:
    men, women = classify_sides(instance)
    if men > OrderClass.ACYCLIC or women > OrderClass.ACYCLIC:
        raise ClassGateViolation(
            f"weak solver needs acyclic preferences on both sides, got ({men.label}, {women.label})"
        )


def extend_to_strict(instance: Instance) -> StrictInstance:
    check_weak_gate(instance)
    rankings = {}
    prefs = {}
    for agent in instance.men + instance.women:
        rel = instance.prefs[agent]
        order = linear_extension(rel)
        rankings[agent] = tuple(order)
        entries = {(a, b): PREF for i, a in enumerate(order) for b in order[i + 1:]}
        prefs[agent] = Relation(agent, rel.universe, entries)
    extended = Instance(instance.men, instance.women, instance.edges, prefs)
    return StrictInstance(extended, rankings)


def deferred_acceptance(
    men: tuple[str, ...],
    rankings: dict[str, tuple[str, ...]],
) -> dict[str, str]:
    """Man-proposing deferred acceptance on ranked lists.

    The lowest-index free man always proposes next.  Returns ``man -> woman``.
    """
    man_pos = {m: i for i, m in enumerate(men)}
    rank: dict[str, dict[str, int]] = {}
    for m in men:
        for w in rankings[m]:
            if w not in rank:
                rank[w] = {u: i for i, u in enumerate(rankings[w])}
    next_choice = dict.fromkeys(men, 0)
    held: dict[str, str] = {}
    free = list(range(len(men)))
    heapq.heapify(free)
    while free:
        m = men[free[0]]
        if next_choice[m] >= len(rankings[m]):
            heapq.heappop(free)
            continue
        w = rankings[m][next_choice[m]]
        next_choice[m] += 1
        current = held.get(w)
        if current is None:
            held[w] = m
            heapq.heappop(free)
        elif rank[w][m] < rank[w][current]:
            held[w] = m
            heapq.heapreplace(free, man_pos[current])
    return {m: w for w, m in held.items()}


def solve_weak(instance: Instance) -> Matching:
    """A weakly stable matching; one always exists for acyclic preferences.

    Raises:
        ClassGateViolation: if either side is worse than acyclic.
    """
    strict = extend_to_strict(instance)
    assignment = deferred_acceptance(instance.men, strict.rankings)
    return Matching(frozenset(assignment.items()))
