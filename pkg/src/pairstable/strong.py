"""Strongly stable matchings: men with ties, women with asymmetric relations.

The solver alternates two phases.  In phase 1 every man without an active
edge proposes along his whole next tie; each proposal makes the woman reject
every strictly worse edge, and a rejection cascade then clears edges that
are incomparable to a man's last remaining option.  In phase 2 the critical
set of the active graph loses all its active edges.  When the critical set
is empty, a maximum matching of the active graph is the answer if it covers
every woman that ever had an active edge; otherwise no strongly stable
matching exists.

Rejected edges stay in the graph: they may still carry a proposal later and
trigger rejections, but never become active again.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .bipartite import BipartiteGraph, critical_set, max_matching
from .errors import ClassGateViolation
from .instance import Edge, Instance, Matching, classify_sides
from .prefs import PREF, OrderClass, Relation, ties_decomposition
from .trace import (
    Phase2Round,
    Propose,
    RejectCritical,
    RejectIncomparable,
    RejectStrict,
    SolverTrace,
)

INACTIVE, ACTIVE, REJECTED = 0, 1, 2


def check_strong_gate(instance: Instance) -> None:
    men, women = classify_sides(instance)
    if men > OrderClass.TIES or women > OrderClass.ASYMMETRIC:
        raise ClassGateViolation(
            "strong solver needs ties on the men's side and asymmetric (or better) "
            f"relations on the women's side, got ({men.label}, {women.label})"
        )


def _dummy_names(instance: Instance) -> dict[str, str]:
    taken = set(instance.men) | set(instance.women)
    names = {}
    for m in instance.men:
        name = f"{m}#dummy"
        while name in taken:
            name += "'"
        taken.add(name)
        names[m] = name
    return names


def _with_dummies(instance: Instance) -> tuple[Instance, dict[str, str]]:
    check_strong_gate(instance)
    dummy_of = _dummy_names(instance)
    women = instance.women + tuple(dummy_of[m] for m in instance.men)
    edges = list(instance.edges) + [(m, dummy_of[m]) for m in instance.men]
    prefs: dict[str, Relation] = dict(instance.prefs)
    for m in instance.men:
        rel = instance.prefs[m]
        d = dummy_of[m]
        entries = dict(rel.entries)
        for w in rel.universe:
            entries[(w, d)] = PREF
        prefs[m] = Relation(m, rel.universe + (d,), entries)
        prefs[d] = Relation(d, (m,))
    women_idx = {w: i for i, w in enumerate(women)}
    man_idx = {m: i for i, m in enumerate(instance.men)}
    edges.sort(key=lambda e: (man_idx[e[0]], women_idx[e[1]]))
    return Instance(instance.men, women, tuple(edges), prefs), dummy_of


def add_dummies(instance: Instance) -> Instance:
    """Give every man a private last-choice woman acceptable only to him."""
    return _with_dummies(instance)[0]


class StrongSolver:
    """Mutable solver state; :func:`solve_strong` drives it to completion.

    Exposed as a class so tests can inspect edge statuses between phases.
    """

    def __init__(self, instance: Instance):
        self.original = instance
        self.instance, self.dummy_of = _with_dummies(instance)
        inst = self.instance
        self.men = inst.men
        self.dummies = set(self.dummy_of.values())
        self.ties = {m: ties_decomposition(inst.prefs[m]).blocks for m in self.men}
        self.status: dict[Edge, int] = dict.fromkeys(inst.edges, INACTIVE)
        self.proposed: set[Edge] = set()
        self.tie_index = dict.fromkeys(self.men, -1)
        self.active_of: dict[str, set[str]] = {m: set() for m in self.men}
        self.ever_active: set[str] = set()
        self.done_single: set[tuple[str, str]] = set()
        self.done_zero: set[tuple[str, int]] = set()
        self.trace = SolverTrace()
        self._warm: dict[str, str] = {}
        self._rejected_since_matching = 0
        self._men_by_woman = {w: inst.neighbors[w] for w in inst.women}
        self._worse: dict[str, dict[str, list[str]]] = {}
        self._comparable: dict[str, dict[str, set[str]]] = {}
        self._incomparable: dict[tuple[str, str], list[str]] = {}
        for w in inst.women:
            rel = inst.prefs[w]
            worse: dict[str, list[str]] = {m: [] for m in rel.universe}
            comparable: dict[str, set[str]] = {m: set() for m in rel.universe}
            for a, b in rel.entries:
                worse[a].append(b)
                comparable[a].add(b)
                comparable[b].add(a)
            self._worse[w] = worse
            self._comparable[w] = comparable

    # -- primitives ----------------------------------------------------------

    def _reject(self, edge: Edge) -> tuple[bool, bool]:
        """Mark ``edge`` rejected; returns (status changed, it was active)."""
        state = self.status[edge]
        if state == REJECTED:
            return False, False
        if edge[1] in self.dummies:
            raise RuntimeError(f"dummy edge {edge} cannot be rejected")
        self.status[edge] = REJECTED
        self._rejected_since_matching += 1
        if state == ACTIVE:
            self.active_of[edge[0]].discard(edge[1])
            return True, True
        return True, False

    def incomparable_men(self, woman: str, man: str) -> list[str]:
        key = (woman, man)
        found = self._incomparable.get(key)
        if found is None:
            comparable = self._comparable[woman][man]
            found = [u for u in self._men_by_woman[woman] if u != man and u not in comparable]
            self._incomparable[key] = found
        return found

    def active_edges(self) -> list[Edge]:
        return [e for e, s in self.status.items() if s == ACTIVE]

    def active_graph(self) -> BipartiteGraph:
        adj = {m: tuple(w for w in self.instance.neighbors[m] if self.status[(m, w)] == ACTIVE) for m in self.men}
        return BipartiteGraph(self.men, self.instance.women, adj)

    # -- phase 1 -------------------------------------------------------------

    def propose_round(self) -> bool:
        """Every man with no active edge proposes along his next tie.

        Returns ``False`` when nobody needed to propose.
        """
        free = [m for m in self.men if not self.active_of[m]]
        if not free:
            return False
        new_edges: list[Edge] = []
        for m in free:
            self.tie_index[m] += 1
            tie = self.ties[m][self.tie_index[m]]
            edges = tuple((m, w) for w in tie)
            self.trace.append(Propose(m, self.tie_index[m], edges))
            for e in edges:
                self.proposed.add(e)
                if self.status[e] == INACTIVE:
                    self.status[e] = ACTIVE
                    self.active_of[m].add(e[1])
                    self.ever_active.add(e[1])
                new_edges.append(e)
        for m, w in new_edges:
            for worse in self._worse[w].get(m, ()):
                changed, _ = self._reject((worse, w))
                if changed:
                    self.trace.append(RejectStrict((m, w), (worse, w)))
        return True

    def strong_reject(self, seed: Iterable[str] | None = None) -> None:
        """Rejection cascade; ``seed`` is the initial worklist (default: all men)."""
        queue = deque(self.men if seed is None else seed)
        queued = set(queue)
        while queue:
            u = queue.popleft()
            queued.discard(u)
            active = self.active_of[u]
            if len(active) == 1:
                (w,) = active
                if (u, w) in self.done_single:
                    continue
                self.done_single.add((u, w))
                targets = [(u2, w) for u2 in self.incomparable_men(w, u)]
            elif not active and self.tie_index[u] >= 0:
                key = (u, self.tie_index[u])
                if key in self.done_zero:
                    continue
                self.done_zero.add(key)
                targets = [(u2, w) for w in self.ties[u][self.tie_index[u]] for u2 in self.incomparable_men(w, u)]
            else:
                continue
            for edge in targets:
                changed, was_active = self._reject(edge)
                if changed:
                    self.trace.append(RejectIncomparable(u, edge))
                if was_active and edge[0] not in queued:
                    queue.append(edge[0])
                    queued.add(edge[0])

    def phase1(self) -> None:
        while self.propose_round():
            self.strong_reject()

    # -- phase 2 -------------------------------------------------------------

    def maximum_active_matching(self) -> tuple[BipartiteGraph, dict[str, str]]:
        g = self.active_graph()
        warm = None
        if self._rejected_since_matching < len(self.men):
            warm = [(m, w) for m, w in self._warm.items() if self.status[(m, w)] == ACTIVE]
        matching = max_matching(g, warm)
        self._warm = dict(matching)
        self._rejected_since_matching = 0
        return g, matching

    def phase2(self) -> dict[str, str] | None:
        """One critical-set round; returns the final matching when the set is empty."""
        g, matching = self.maximum_active_matching()
        crit = critical_set(g, matching)
        if not crit:
            return matching
        ordered = tuple(m for m in self.men if m in crit)
        self.trace.append(Phase2Round(ordered))
        for m in ordered:
            edges = tuple((m, w) for w in self.instance.neighbors[m] if self.status[(m, w)] == ACTIVE)
            for e in edges:
                self._reject(e)
            self.trace.append(RejectCritical(m, edges))
        self.strong_reject()
        return None

    def run(self) -> Matching | None:
        while True:
            self.phase1()
            final = self.phase2()
            if final is not None:
                break
        self.trace.flagged_women = set(self.ever_active)
        covered = set(final.values())
        if not self.ever_active <= covered:
            return None
        return Matching(frozenset((m, w) for m, w in final.items() if w not in self.dummies))


def solve_strong(instance: Instance) -> tuple[Matching | None, SolverTrace]:
    """Strongly stable matching of ``instance`` or ``None`` if there is none.

    Raises:
        ClassGateViolation: unless men have lists with ties and women have
            asymmetric (or more ordered) relations.
    """
    solver = StrongSolver(instance)
    return solver.run(), solver.trace
