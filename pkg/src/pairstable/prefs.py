"""Pairwise preference relations and their orderedness classes.

A :class:`Relation` stores one agent's comparisons between pairs of its
neighbours.  Only strict preferences and "both preferred" (``||``) pairs are
stored; a pair without an entry is incomparable (``~``).  Strict entries are
kept in the orientation ``(better, worse)``, ``||`` entries in index order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Sequence

from .errors import ConflictingPair, CyclicRelation, InputError, NotTies, UnknownAgent


class RelationValue(Enum):
    """Relation between an ordered pair ``(a, b)`` as seen by one agent."""

    STRICT_PREF = "<"
    STRICT_DISPREF = ">"
    INCOMPARABLE = "~"
    BOTH_PREFERRED = "||"

    def mirror(self) -> RelationValue:
        if self is RelationValue.STRICT_PREF:
            return RelationValue.STRICT_DISPREF
        if self is RelationValue.STRICT_DISPREF:
            return RelationValue.STRICT_PREF
        return self

    @classmethod
    def from_token(cls, token: str) -> RelationValue:
        try:
            return cls(token)
        except ValueError:
            raise InputError(f"unknown relation token {token!r}") from None


PREF = RelationValue.STRICT_PREF
DISPREF = RelationValue.STRICT_DISPREF
INCOMP = RelationValue.INCOMPARABLE
BOTH = RelationValue.BOTH_PREFERRED


class OrderClass(IntEnum):
    """The six orderedness levels, from most to least restrictive."""

    STRICT = 0
    TIES = 1
    POSET = 2
    ACYCLIC = 3
    ASYMMETRIC = 4
    ARBITRARY = 5

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @classmethod
    def parse(cls, text: str) -> OrderClass:
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise InputError(f"unknown order class {text!r}") from None


@dataclass(frozen=True)
class Relation:
    """One agent's pairwise comparisons over its neighbourhood.

    ``universe`` lists the neighbours in index order; that order breaks every
    tie in the deterministic routines below.
    """

    owner: str
    universe: tuple[str, ...]
    entries: dict[tuple[str, str], RelationValue] = field(default_factory=dict)

    def __post_init__(self):
        members = set(self.universe)
        if len(members) != len(self.universe):
            raise InputError(f"duplicate agent in universe of {self.owner!r}")
        for (a, b), value in self.entries.items():
            if a not in members or b not in members:
                raise UnknownAgent(f"{self.owner!r} compares {a!r} and {b!r} outside its universe")
            if a == b:
                raise InputError(f"{self.owner!r} compares {a!r} with itself")
            if value not in (PREF, BOTH):
                raise InputError("stored entries must be '<' or '||'")
            if (b, a) in self.entries:
                raise ConflictingPair(f"{self.owner!r} stores {a!r}/{b!r} twice")

    def __hash__(self):
        return hash((self.owner, self.universe, frozenset(self.entries.items())))

    def index(self, agent: str) -> int:
        return self._index[agent]

    @property
    def _index(self) -> dict[str, int]:
        try:
            return self.__dict__["_index_cache"]
        except KeyError:
            idx = {a: i for i, a in enumerate(self.universe)}
            object.__setattr__(self, "_index_cache", idx)
            return idx

    def value(self, a: str, b: str) -> RelationValue:
        """Relation of ``(a, b)``; ``STRICT_PREF`` means ``a`` is preferred."""
        v = self.entries.get((a, b))
        if v is not None:
            return v
        v = self.entries.get((b, a))
        if v is not None:
            return v.mirror()
        return INCOMP

    def prefers(self, a: str, b: str) -> bool:
        return self.entries.get((a, b)) is PREF

    @property
    def has_both(self) -> bool:
        return BOTH in self.entries.values()

    def strict_pairs(self) -> list[tuple[str, str]]:
        """All ``(better, worse)`` pairs, sorted by index."""
        idx = self._index
        pairs = [k for k, v in self.entries.items() if v is PREF]
        return sorted(pairs, key=lambda p: (idx[p[0]], idx[p[1]]))

    def successors(self) -> dict[str, set[str]]:
        """Strict-preference digraph: ``a -> b`` whenever ``a`` is preferred to ``b``."""
        succ: dict[str, set[str]] = {a: set() for a in self.universe}
        for (a, b), v in self.entries.items():
            if v is PREF:
                succ[a].add(b)
        return succ

    def restricted(self, agents: Iterable[str]) -> Relation:
        keep = set(agents)
        return Relation(
            self.owner,
            tuple(a for a in self.universe if a in keep),
            {k: v for k, v in self.entries.items() if k[0] in keep and k[1] in keep},
        )


def normalize_relation(
    raw: Iterable[tuple[str, str, str]],
    owner: str = "",
    universe: Sequence[str] | None = None,
) -> Relation:
    """Build a canonical :class:`Relation` from ``(a, b, token)`` triples.

    When ``universe`` is omitted it is the agents mentioned, in order of first
    appearance.
    """
    raw = list(raw)
    if universe is None:
        order: dict[str, None] = {}
        for a, b, _ in raw:
            order.setdefault(a)
            order.setdefault(b)
        universe = tuple(order)
    universe = tuple(universe)
    members = set(universe)
    idx = {a: i for i, a in enumerate(universe)}

    declared: dict[frozenset, tuple[str, str, RelationValue]] = {}
    for a, b, token in raw:
        value = RelationValue.from_token(token)
        for agent in (a, b):
            if agent not in members:
                raise UnknownAgent(f"{owner!r} compares unknown agent {agent!r}")
        if a == b:
            raise InputError(f"{owner!r} compares {a!r} with itself")
        if value is DISPREF:
            a, b, value = b, a, PREF
        elif value in (INCOMP, BOTH) and idx[a] > idx[b]:
            a, b = b, a
        key = frozenset((a, b))
        previous = declared.get(key)
        if previous is not None and previous != (a, b, value):
            raise ConflictingPair(f"{owner!r} gives inconsistent relations for {a!r} and {b!r}")
        declared[key] = (a, b, value)

    entries = {(a, b): v for a, b, v in declared.values() if v is not INCOMP}
    return Relation(owner, universe, entries)


def _is_transitive(succ: dict[str, set[str]]) -> bool:
    for a, out in succ.items():
        for b in out:
            if not succ[b] <= out:
                return False
    return True


def _is_acyclic(succ: dict[str, set[str]]) -> bool:
    indeg = {a: 0 for a in succ}
    for out in succ.values():
        for b in out:
            indeg[b] += 1
    stack = [a for a, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        a = stack.pop()
        seen += 1
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                stack.append(b)
    return seen == len(succ)


def _is_strict(r: Relation, succ: dict[str, set[str]]) -> bool:
    n = len(r.universe)
    strict_count = sum(len(out) for out in succ.values())
    return strict_count == n * (n - 1) // 2 and _is_transitive(succ)


def classify(r: Relation) -> OrderClass:
    """Most restrictive orderedness class the relation satisfies."""
    cached = r.__dict__.get("_class_cache")
    if cached is None:
        cached = _classify(r)
        object.__setattr__(r, "_class_cache", cached)
    return cached


def _classify(r: Relation) -> OrderClass:
    if r.has_both:
        return OrderClass.ARBITRARY
    succ = r.successors()
    if _is_strict(r, succ):
        return OrderClass.STRICT
    try:
        ties_decomposition(r)
        return OrderClass.TIES
    except NotTies:
        pass
    if _is_transitive(succ):
        return OrderClass.POSET
    if _is_acyclic(succ):
        return OrderClass.ACYCLIC
    return OrderClass.ASYMMETRIC


def linear_extension(r: Relation) -> list[str]:
    """Topological order of the universe; index order breaks ties.

    Raises:
        CyclicRelation: if strict preferences (or a ``||`` pair, which is a
            two-cycle) form a cycle.
    """
    if r.has_both:
        raise CyclicRelation(f"relation of {r.owner!r} contains a '||' pair")
    succ = r.successors()
    idx = {a: i for i, a in enumerate(r.universe)}
    indeg = {a: 0 for a in r.universe}
    for out in succ.values():
        for b in out:
            indeg[b] += 1
    heap = [idx[a] for a in r.universe if indeg[a] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        a = r.universe[heapq.heappop(heap)]
        order.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, idx[b])
    if len(order) != len(r.universe):
        raise CyclicRelation(f"relation of {r.owner!r} has a preference cycle")
    return order


@dataclass(frozen=True)
class TieDecomposition:
    """Ordered blocks ``N_1, ..., N_k``; earlier blocks are strictly preferred."""

    blocks: tuple[tuple[str, ...], ...]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def to_relation(self, owner: str, universe: Sequence[str] | None = None) -> Relation:
        if universe is None:
            universe = [a for block in self.blocks for a in block]
        entries = {}
        for i, upper in enumerate(self.blocks):
            for lower in self.blocks[i + 1:]:
                for a in upper:
                    for b in lower:
                        entries[(a, b)] = PREF
        return Relation(owner, tuple(universe), entries)


def ties_decomposition(r: Relation) -> TieDecomposition:
    """The unique split of the universe into tie blocks, if one exists.

    In a list with ties every member of block ``i`` has exactly
    ``|N_1| + ... + |N_{i-1}|`` strictly better neighbours, so grouping by
    that count recovers the only candidate, which is then verified.
    """
    cached = r.__dict__.get("_ties_cache")
    if cached is None:
        try:
            cached = _ties_decomposition(r)
        except NotTies as exc:
            cached = exc
        object.__setattr__(r, "_ties_cache", cached)
    if isinstance(cached, NotTies):
        raise NotTies(str(cached))
    return cached


def _ties_decomposition(r: Relation) -> TieDecomposition:
    if r.has_both:
        raise NotTies(f"relation of {r.owner!r} contains a '||' pair")
    better_count = {a: 0 for a in r.universe}
    for (a, b), v in r.entries.items():
        better_count[b] += 1
    levels: dict[int, list[str]] = {}
    for a in r.universe:
        levels.setdefault(better_count[a], []).append(a)
    blocks = tuple(tuple(levels[k]) for k in sorted(levels))

    # every stored pair must point from an earlier block to a later one; since
    # each unordered pair is stored at most once, the count then shows that
    # all cross-block pairs are present and no within-block pair is
    level = {}
    expected = cross = 0
    for i, block in enumerate(blocks):
        if better_count[block[0]] != expected:
            raise NotTies(f"relation of {r.owner!r} is not a list with ties")
        cross += expected * len(block)
        expected += len(block)
        for a in block:
            level[a] = i
    if len(r.entries) != cross or any(level[a] >= level[b] for a, b in r.entries):
        raise NotTies(f"relation of {r.owner!r} is not a list with ties")
    return TieDecomposition(blocks)


def maximal_elements(r: Relation, remaining: Iterable[str]) -> set[str]:
    """Members of ``remaining`` not dominated by another member of ``remaining``."""
    rem = set(remaining)
    if not rem:
        return set()
    sub = r.restricted(rem)
    if sub.has_both or not _is_acyclic(sub.successors()):
        raise CyclicRelation(f"relation of {r.owner!r} is cyclic on the remaining agents")
    dominated = {b for (a, b), v in sub.entries.items() if v is PREF}
    return rem - dominated
