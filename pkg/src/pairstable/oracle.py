"""Exhaustive ground truth for small instances.

Stable matchings are enumerated by backtracking over the edges in canonical
order, deciding for each edge whether it is in the matching.  A branch is cut
only when an excluded edge already blocks for certain, that is when both of
its endpoints have a final partner (matched, or every incident edge decided).
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .bipartite import BipartiteGraph, deficiency
from .errors import EmptyList, InputError, SizeGuard
from .instance import Instance, Matching
from .stability import StabilityNotion, blocking_predicate, partner_relation


@dataclass(frozen=True)
class OracleLimits:
    max_edges: int = 200
    max_nodes_expanded: int = 50_000_000
    time_budget: float | None = None  # seconds

    def __post_init__(self):
        if self.max_edges <= 0 or self.max_nodes_expanded <= 0:
            raise InputError("oracle limits must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise InputError("time budget must be positive")


class Verdict(Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    LIMIT_EXCEEDED = "limit_exceeded"


@dataclass
class OracleAnswer:
    verdict: Verdict
    matchings: list[Matching] = field(default_factory=list)
    nodes_expanded: int = 0

    @property
    def exists(self) -> bool | None:
        if self.verdict is Verdict.LIMIT_EXCEEDED:
            return None
        return self.verdict is Verdict.EXISTS


class _Search:
    def __init__(self, instance: Instance, notion: StabilityNotion, limits: OracleLimits,
                 first_only: bool, deadline: float | None):
        self.instance = instance
        self.notion = notion
        self.limits = limits
        self.first_only = first_only
        self.deadline = deadline
        self.edges = instance.edges
        self.incident: dict[str, list[int]] = {a: [] for a in instance.men + instance.women}
        for i, (m, w) in enumerate(self.edges):
            self.incident[m].append(i)
            self.incident[w].append(i)
        self.last = {a: (idx[-1] if idx else -1) for a, idx in self.incident.items()}
        self.partner: dict[str, str | None] = dict.fromkeys(self.incident)
        self.excluded = [False] * len(self.edges)
        self.found: list[tuple[int, ...]] = []
        self.chosen: list[int] = []
        self.nodes = 0
        self.limit_hit = False
        self.stopped = False
        self.prefixes: list[tuple[bool, ...]] | None = None
        self.decisions: list[bool] = []

    def _final(self, v: str, nxt: int) -> bool:
        return self.partner[v] is not None or self.last[v] < nxt

    def _blocks(self, j: int) -> bool:
        m, w = self.edges[j]
        prefs = self.instance.prefs
        s_m = partner_relation(prefs[m], w, self.partner[m])
        s_w = partner_relation(prefs[w], m, self.partner[w])
        return blocking_predicate(self.notion, s_m, s_w)

    def _consistent(self, i: int) -> bool:
        nxt = i + 1
        for v in self.edges[i]:
            if not self._final(v, nxt):
                continue
            for j in self.incident[v]:
                if j > i:
                    break
                if not self.excluded[j]:
                    continue
                m, w = self.edges[j]
                other = w if v == m else m
                if self._final(other, nxt) and self._blocks(j):
                    return False
        return True

    def _tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.limits.max_nodes_expanded:
            self.limit_hit = True
        elif self.deadline is not None and self.nodes % 2048 == 0 and time.monotonic() > self.deadline:
            self.limit_hit = True
        if self.limit_hit:
            self.stopped = True
        return not self.stopped

    def run(self, i: int = 0, prefix: Sequence[bool] = (), split_depth: int | None = None) -> None:
        if self.stopped or not self._tick():
            return
        if split_depth is not None and i == split_depth:
            self.prefixes.append(tuple(self.decisions))
            return
        if i == len(self.edges):
            self.found.append(tuple(self.chosen))
            if self.first_only:
                self.stopped = True
            return
        m, w = self.edges[i]
        forced = prefix[i] if i < len(prefix) else None
        if forced is not False and self.partner[m] is None and self.partner[w] is None:
            self.partner[m], self.partner[w] = w, m
            self.chosen.append(i)
            self.decisions.append(True)
            if self._consistent(i):
                self.run(i + 1, prefix, split_depth)
            self.decisions.pop()
            self.chosen.pop()
            self.partner[m] = self.partner[w] = None
            if self.stopped:
                return
        if forced is not True:
            self.excluded[i] = True
            self.decisions.append(False)
            if self._consistent(i):
                self.run(i + 1, prefix, split_depth)
            self.decisions.pop()
            self.excluded[i] = False


def _run_subtree(args):
    instance, notion, limits, first_only, deadline, prefix = args
    s = _Search(instance, notion, limits, first_only, deadline)
    s.run(prefix=prefix)
    return s.found, s.nodes, s.limit_hit


def enumerate_stable(
    instance: Instance,
    notion: StabilityNotion,
    limits: OracleLimits | None = None,
    *,
    first_only: bool = False,
    jobs: int = 1,
) -> OracleAnswer:
    """All stable matchings of ``instance`` under ``notion``.

    With ``first_only`` the search stops at the first stable matching, which
    settles existence.  ``jobs > 1`` splits the top of the search tree across
    worker processes; the result is post-sorted and does not depend on the
    worker count.
    """
    notion = StabilityNotion.parse(notion)
    limits = limits or OracleLimits()
    if len(instance.edges) > limits.max_edges:
        return OracleAnswer(Verdict.LIMIT_EXCEEDED, [], 0)
    deadline = None if limits.time_budget is None else time.monotonic() + limits.time_budget

    if jobs <= 1 or len(instance.edges) < 8:
        s = _Search(instance, notion, limits, first_only, deadline)
        s.run()
        found, nodes, limit_hit = s.found, s.nodes, s.limit_hit
    else:
        splitter = _Search(instance, notion, limits, False, deadline)
        splitter.prefixes = []
        depth = min(len(instance.edges), max(3, (4 * jobs).bit_length() + 1))
        splitter.run(split_depth=depth)
        nodes, limit_hit, found = splitter.nodes, splitter.limit_hit, list(splitter.found)
        if not limit_hit:
            tasks = [(instance, notion, limits, first_only, deadline, p) for p in splitter.prefixes]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for sub_found, sub_nodes, sub_hit in pool.map(_run_subtree, tasks):
                    found.extend(sub_found)
                    nodes += sub_nodes
                    limit_hit = limit_hit or sub_hit
        if first_only:
            found = found[:1] if found else []

    found = sorted(set(found))
    if first_only:
        found = found[:1]
    matchings = [Matching(frozenset(instance.edges[i] for i in chosen)) for chosen in found]
    if found:
        verdict = Verdict.EXISTS
    elif limit_hit:
        verdict = Verdict.LIMIT_EXCEEDED
    else:
        verdict = Verdict.NOT_EXISTS
    return OracleAnswer(verdict, matchings, nodes)


def all_matchings(instance: Instance):
    """Every matching of ``instance`` (exponential; tiny instances only)."""
    edges = instance.edges
    for r in range(len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            agents = [a for e in combo for a in e]
            if len(agents) == len(set(agents)):
                yield Matching(frozenset(combo))


def rural_hospitals(matchings: Sequence[Matching], instance: Instance | None = None):
    """Whether all matchings cover the same vertices.

    Returns ``(True, None)`` or ``(False, (first, second, vertex))`` where
    ``vertex`` is covered by exactly one of the two matchings.
    """
    if not matchings:
        raise EmptyList("need at least one matching")
    base = matchings[0]
    base_cov = base.covered()
    order = None
    if instance is not None:
        pos = {a: i for i, a in enumerate(instance.men + instance.women)}
        order = pos.__getitem__
    for other in matchings[1:]:
        diff = base_cov ^ other.covered()
        if diff:
            vertex = min(diff, key=order) if order else min(diff)
            return False, (base, other, vertex)
    return True, None


def brute_critical_set(g: BipartiteGraph) -> set[str]:
    """Intersection of all maximum-deficiency subsets, by subset enumeration."""
    if len(g.men) > 20:
        raise SizeGuard("subset enumeration limited to 20 men")
    best = 0
    winners: list[frozenset[str]] = []
    for r in range(len(g.men) + 1):
        for subset in itertools.combinations(g.men, r):
            d = deficiency(g, subset)
            if d > best:
                best, winners = d, [frozenset(subset)]
            elif d == best:
                winners.append(frozenset(subset))
    return set(frozenset.intersection(*winners))
