"""Maximum bipartite matching, deficiency and critical sets.

The critical set of a bipartite graph is the unique smallest subset of the
left side ("men") with maximum deficiency ``|X| - |N(X)|``.  Given any
maximum matching it consists of the uncovered men together with every man
reachable from them along alternating paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class BipartiteGraph:
    """Left side ``men``, right side ``women``; ``adj`` maps each man to his women."""

    men: tuple[str, ...]
    women: tuple[str, ...]
    adj: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def from_edges(cls, men: Iterable[str], women: Iterable[str], edges: Iterable[tuple[str, str]]) -> BipartiteGraph:
        men, women = tuple(men), tuple(women)
        adj: dict[str, list[str]] = {m: [] for m in men}
        for m, w in edges:
            adj[m].append(w)
        return cls(men, women, {m: tuple(ws) for m, ws in adj.items()})

    def neighbors(self, man: str) -> tuple[str, ...]:
        return self.adj.get(man, ())

    def edges(self) -> list[tuple[str, str]]:
        return [(m, w) for m in self.men for w in self.neighbors(m)]


def deficiency(g: BipartiteGraph, subset: Iterable[str]) -> int:
    subset = set(subset)
    nbhd = set()
    for m in subset:
        nbhd.update(g.neighbors(m))
    return len(subset) - len(nbhd)


@dataclass
class DeficiencyReport:
    subset: frozenset[str]
    neighborhood_size: int
    deficiency: int


def deficiency_report(g: BipartiteGraph, subset: Iterable[str]) -> DeficiencyReport:
    subset = frozenset(subset)
    d = deficiency(g, subset)
    return DeficiencyReport(subset, len(subset) - d, d)


def _augment_from(g: BipartiteGraph, root: str, mate_m: dict[str, str], mate_w: dict[str, str]) -> bool:
    """BFS for an augmenting path starting at the free man ``root``."""
    parent: dict[str, str] = {}  # woman -> man who reached her
    queue = deque([root])
    seen_w: set[str] = set()
    while queue:
        m = queue.popleft()
        for w in g.neighbors(m):
            if w in seen_w:
                continue
            seen_w.add(w)
            parent[w] = m
            nxt = mate_w.get(w)
            if nxt is None:
                # flip the path back to root
                while True:
                    pm = parent[w]
                    prev = mate_m.get(pm)
                    mate_m[pm] = w
                    mate_w[w] = pm
                    if pm == root:
                        return True
                    w = prev
            queue.append(nxt)
    return False


def max_matching(g: BipartiteGraph, warm: Iterable[tuple[str, str]] | None = None) -> dict[str, str]:
    """Maximum-cardinality matching as ``man -> woman``.

    With ``warm`` the search augments that matching instead of starting
    empty; a warm matching that is already maximum comes back unchanged.
    """
    mate_m: dict[str, str] = {}
    mate_w: dict[str, str] = {}
    if warm is not None:
        for m, w in warm:
            if m in mate_m or w in mate_w:
                raise ValueError("warm start is not a matching")
            if w not in g.neighbors(m):
                raise ValueError(f"warm start uses ({m}, {w}) which is not in the graph")
            mate_m[m] = w
            mate_w[w] = m
    for m in g.men:
        if m not in mate_m:
            _augment_from(g, m, mate_m, mate_w)
    return mate_m


def alternating_reach(g: BipartiteGraph, mate_m: Mapping[str, str]) -> set[str]:
    """Men uncovered by ``mate_m`` plus men reachable from them by alternating paths."""
    mate_w = {w: m for m, w in mate_m.items()}
    reached = {m for m in g.men if m not in mate_m}
    queue = deque(reached)
    seen_w: set[str] = set()
    while queue:
        m = queue.popleft()
        for w in g.neighbors(m):
            if w in seen_w:
                continue
            seen_w.add(w)
            nxt = mate_w.get(w)
            if nxt is not None and nxt not in reached:
                reached.add(nxt)
                queue.append(nxt)
    return reached


def critical_set(g: BipartiteGraph, matching: Mapping[str, str] | None = None) -> set[str]:
    """Critical set of men; ``matching`` must be maximum when supplied."""
    if matching is None:
        matching = max_matching(g)
    return alternating_reach(g, matching)
