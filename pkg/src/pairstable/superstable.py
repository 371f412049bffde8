"""Super stable matchings: men with posets, women with asymmetric relations.

Men propose to every maximal woman left in their poset.  A woman accepts
only if the new suitor beats everyone who has ever proposed to her, and she
drops her current engagement whenever the new suitor is better than or
incomparable to it.  Dropped and refused edges are deleted, which can make
new women maximal for that man.  At the end the engagements are the answer
when they form a matching covering every woman who received a proposal.

Each man's poset is kept as its Hasse diagram with a virtual source
pointing at the initially maximal women.  After deleting woman ``w`` only
her Hasse successors can become maximal; one is promoted once all of its
Hasse predecessors are gone.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import ClassGateViolation
from .instance import Edge, Instance, Matching, classify_sides
from .prefs import INCOMP, OrderClass, Relation, classify
from .trace import Accept, BreakEngagement, DeleteEdge, ProposeOne, SolverTrace

SOURCE = None


@dataclass(frozen=True)
class Hasse:
    """Transitive reduction of a poset plus a virtual source.

    ``succ[SOURCE]`` lists the initially maximal elements.
    """

    succ: dict
    pred: dict

    @property
    def sources(self) -> tuple[str, ...]:
        return self.succ[SOURCE]


def build_hasse(r: Relation) -> Hasse:
    if classify(r) > OrderClass.POSET:
        raise ClassGateViolation(f"relation of {r.owner!r} is not a partial order")
    succ_sets = r.successors()
    idx = {a: i for i, a in enumerate(r.universe)}
    succ: dict = {}
    pred: dict = {a: [] for a in r.universe}
    for a in r.universe:
        indirect = set().union(*(succ_sets[c] for c in succ_sets[a]))
        direct = sorted(succ_sets[a] - indirect, key=idx.__getitem__)
        succ[a] = tuple(direct)
        for b in direct:
            pred[b].append(a)
    maximal = tuple(a for a in r.universe if not pred[a])
    succ[SOURCE] = maximal
    return Hasse(succ, {a: tuple(p) for a, p in pred.items()})


def check_super_gate(instance: Instance) -> None:
    men, women = classify_sides(instance)
    if men > OrderClass.POSET or women > OrderClass.ASYMMETRIC:
        raise ClassGateViolation(
            "super solver needs posets on the men's side and asymmetric (or better) "
            f"relations on the women's side, got ({men.label}, {women.label})"
        )


class SuperSolver:
    """Mutable state of the proposal process; see :func:`solve_super`."""

    def __init__(self, instance: Instance):
        check_super_gate(instance)
        self.instance = instance
        self.men = instance.men
        self.man_pos = instance.man_index
        self.woman_pos = instance.woman_index
        self.hasse = {m: build_hasse(instance.prefs[m]) for m in self.men}
        self.remaining = {m: set(instance.neighbors[m]) for m in self.men}
        self.live_preds = {
            m: {w: len(self.hasse[m].pred[w]) for w in instance.neighbors[m]} for m in self.men
        }
        self.frontier = {m: set(self.hasse[m].sources) for m in self.men}
        self.proposed: set[Edge] = set()
        self.pending = {m: [self.woman_pos[w] for w in self.hasse[m].sources] for m in self.men}
        for heap in self.pending.values():
            heapq.heapify(heap)
        self.ready = [self.man_pos[m] for m in self.men if self.pending[m]]
        heapq.heapify(self.ready)
        self.ever_proposed: dict[str, list[str]] = {w: [] for w in instance.women}
        self.engaged_to: dict[str, str] = {}
        self.engagements: dict[str, set[str]] = {m: set() for m in self.men}
        self.deleted: set[Edge] = set()
        self.trace = SolverTrace()

    def maximal_women(self, man: str) -> set[str]:
        """Current maximal women of ``man`` as kept by the Hasse frontier."""
        return set(self.frontier[man])

    def _delete(self, man: str, woman: str) -> None:
        self.deleted.add((man, woman))
        self.trace.append(DeleteEdge((man, woman)))
        self.remaining[man].discard(woman)
        self.frontier[man].discard(woman)
        live = self.live_preds[man]
        was_empty = not self.pending[man]
        for nxt in self.hasse[man].succ[woman]:
            live[nxt] -= 1
            if live[nxt] == 0 and nxt in self.remaining[man]:
                self.frontier[man].add(nxt)
                if (man, nxt) not in self.proposed:
                    heapq.heappush(self.pending[man], self.woman_pos[nxt])
        if was_empty and self.pending[man]:
            heapq.heappush(self.ready, self.man_pos[man])

    def _next_proposal(self) -> Edge | None:
        while self.ready:
            m = self.men[self.ready[0]]
            heap = self.pending[m]
            if not heap:
                heapq.heappop(self.ready)
                continue
            w = self.instance.women[heapq.heappop(heap)]
            if not heap:
                heapq.heappop(self.ready)
            return m, w
        return None

    def step(self) -> Edge | None:
        """Process one proposal; returns it, or ``None`` when finished."""
        edge = self._next_proposal()
        if edge is None:
            return None
        u, w = edge
        rel = self.instance.prefs[w]
        self.proposed.add(edge)
        self.trace.append(ProposeOne(u, w))
        previous = self.ever_proposed[w]
        accepted = all(rel.prefers(u, other) for other in previous if other != u)
        previous.append(u)
        self.trace.flagged_women.add(w)
        holder = self.engaged_to.get(w)
        if accepted:
            self.trace.append(Accept(u, w))
        else:
            self._delete(u, w)
        if holder is not None and holder != u:
            v = rel.value(u, holder)
            if rel.prefers(u, holder) or v is INCOMP:
                self.trace.append(BreakEngagement(w, holder))
                del self.engaged_to[w]
                self.engagements[holder].discard(w)
                self._delete(holder, w)
        if accepted:
            self.engaged_to[w] = u
            self.engagements[u].add(w)
        return edge

    def run(self) -> Matching | None:
        while self.step() is not None:
            pass
        pairs = [(m, w) for m in self.men for w in self.engagements[m]]
        if any(len(ws) > 1 for ws in self.engagements.values()):
            return None
        covered = {w for _, w in pairs}
        if not self.trace.flagged_women <= covered:
            return None
        return Matching(frozenset(pairs))


def solve_super(instance: Instance) -> tuple[Matching | None, SolverTrace]:
    """Super stable matching of ``instance`` or ``None`` if there is none.

    Raises:
        ClassGateViolation: unless men have posets and women have asymmetric
            (or more ordered) relations.
    """
    solver = SuperSolver(instance)
    return solver.run(), solver.trace
