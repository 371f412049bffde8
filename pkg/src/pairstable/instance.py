"""Instances, matchings, their JSON form, and random instance generation."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    InputError,
    InvalidMatching,
    NonEdgePreference,
    ParseError,
    UnknownAgent,
)
from .prefs import BOTH, OrderClass, Relation, classify, normalize_relation

Edge = tuple[str, str]


@dataclass(frozen=True)
class Instance:
    """Bipartite acceptability graph with one relation per agent.

    ``men`` and ``women`` are in index order; ``edges`` is sorted by
    ``(man index, woman index)``.  Each relation's universe is exactly the
    owner's neighbourhood, listed in the other side's index order.
    """

    men: tuple[str, ...]
    women: tuple[str, ...]
    edges: tuple[Edge, ...]
    prefs: Mapping[str, Relation]

    def __post_init__(self):
        men, women = set(self.men), set(self.women)
        if len(men) != len(self.men) or len(women) != len(self.women):
            raise InputError("duplicate agent id")
        if men & women:
            raise InputError(f"agents on both sides: {sorted(men & women)}")
        if len(set(self.edges)) != len(self.edges):
            raise InputError("duplicate edge")
        for m, w in self.edges:
            if m not in men or w not in women:
                raise UnknownAgent(f"edge ({m!r}, {w!r}) does not join a man and a woman")
        nbrs = self.neighbors
        for agent, rel in self.prefs.items():
            if agent not in nbrs:
                raise UnknownAgent(f"preferences given for unknown agent {agent!r}")
            if rel.universe != nbrs[agent]:
                raise NonEdgePreference(f"relation universe of {agent!r} differs from its neighbourhood")

    def __hash__(self):
        return hash((self.men, self.women, self.edges))

    @classmethod
    def build(
        cls,
        men: Iterable[str],
        women: Iterable[str],
        edges: Iterable[Edge],
        prefs: Mapping[str, Iterable[tuple[str, str, str]]] | None = None,
    ) -> Instance:
        """Validate raw pieces and normalize every agent's comparisons."""
        men, women = tuple(men), tuple(women)
        man_idx = {m: i for i, m in enumerate(men)}
        woman_idx = {w: i for i, w in enumerate(women)}
        edge_list = []
        for m, w in edges:
            if m not in man_idx or w not in woman_idx:
                raise UnknownAgent(f"edge ({m!r}, {w!r}) does not join a man and a woman")
            edge_list.append((m, w))
        edge_list.sort(key=lambda e: (man_idx[e[0]], woman_idx[e[1]]))

        nbrs: dict[str, list[str]] = {a: [] for a in men + women}
        for m, w in edge_list:
            nbrs[m].append(w)
            nbrs[w].append(m)
        for m in men:
            nbrs[m].sort(key=woman_idx.__getitem__)
        for w in women:
            nbrs[w].sort(key=man_idx.__getitem__)

        raw = dict(prefs or {})
        relations = {}
        for agent, entries in raw.items():
            if agent not in nbrs:
                raise UnknownAgent(f"preferences given for unknown agent {agent!r}")
            entries = list(entries)
            universe = set(nbrs[agent])
            for a, b, _ in entries:
                for x in (a, b):
                    if x not in nbrs:
                        raise UnknownAgent(f"{agent!r} compares unknown agent {x!r}")
                    if x not in universe:
                        raise NonEdgePreference(f"{agent!r} compares non-neighbour {x!r}")
            relations[agent] = normalize_relation(entries, agent, nbrs[agent])
        for agent in men + women:
            if agent not in relations:
                relations[agent] = Relation(agent, tuple(nbrs[agent]))
        return cls(men, women, tuple(edge_list), relations)

    @cached_property
    def neighbors(self) -> dict[str, tuple[str, ...]]:
        man_idx = self.man_index
        woman_idx = self.woman_index
        nbrs: dict[str, list[str]] = {a: [] for a in self.men + self.women}
        for m, w in self.edges:
            nbrs[m].append(w)
            nbrs[w].append(m)
        out = {}
        for m in self.men:
            out[m] = tuple(sorted(nbrs[m], key=woman_idx.__getitem__))
        for w in self.women:
            out[w] = tuple(sorted(nbrs[w], key=man_idx.__getitem__))
        return out

    @cached_property
    def man_index(self) -> dict[str, int]:
        return {m: i for i, m in enumerate(self.men)}

    @cached_property
    def woman_index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.women)}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def classes(self) -> dict[str, OrderClass]:
        return {a: classify(self.prefs[a]) for a in self.men + self.women}

    def is_man(self, agent: str) -> bool:
        return agent in self.man_index

    def transposed(self) -> Instance:
        """Same market with the roles of men and women swapped."""
        edges = tuple(sorted(((w, m) for m, w in self.edges),
                             key=lambda e: (self.woman_index[e[0]], self.man_index[e[1]])))
        return Instance(self.women, self.men, edges, dict(self.prefs))


@dataclass(frozen=True)
class Matching:
    """Set of vertex-disjoint ``(man, woman)`` pairs."""

    pairs: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        seen = set()
        for m, w in self.pairs:
            for agent in (m, w):
                if agent in seen:
                    raise InvalidMatching(f"agent {agent!r} appears in two pairs")
                seen.add(agent)

    @cached_property
    def _partner(self) -> dict[str, str]:
        out = {}
        for m, w in self.pairs:
            out[m] = w
            out[w] = m
        return out

    def partner(self, agent: str) -> str | None:
        return self._partner.get(agent)

    def covered(self) -> frozenset[str]:
        return frozenset(self._partner)

    def __contains__(self, edge) -> bool:
        return tuple(edge) in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def sorted_pairs(self, instance: Instance | None = None) -> list[Edge]:
        if instance is None:
            return sorted(self.pairs)
        return sorted(self.pairs, key=lambda e: (instance.man_index[e[0]], instance.woman_index[e[1]]))

    def transposed(self) -> Matching:
        return Matching(frozenset((w, m) for m, w in self.pairs))


def validate_matching(instance: Instance, matching: Matching) -> None:
    for edge in matching.pairs:
        if edge not in instance.edge_set:
            raise InvalidMatching(f"pair {edge} is not an edge of the instance")


# -- JSON ---------------------------------------------------------------------


def _load_json(text: str):
    try:
        return json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _pair_list(value, what: str) -> list[tuple[str, str]]:
    if not isinstance(value, list):
        raise ParseError(f"{what} must be a list")
    out = []
    for item in value:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            raise ParseError(f"{what} entries must be [id, id] string pairs")
        out.append((item[0], item[1]))
    return out


def parse_instance(text: str) -> Instance:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    for key in ("men", "women", "edges"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    men, women = doc["men"], doc["women"]
    if not (isinstance(men, list) and all(isinstance(x, str) for x in men)):
        raise ParseError("'men' must be a list of strings")
    if not (isinstance(women, list) and all(isinstance(x, str) for x in women)):
        raise ParseError("'women' must be a list of strings")
    edges = _pair_list(doc["edges"], "edges")
    prefs_doc = doc.get("prefs", {})
    if not isinstance(prefs_doc, dict):
        raise ParseError("'prefs' must be an object")
    prefs = {}
    for agent, entries in prefs_doc.items():
        if not isinstance(entries, list):
            raise ParseError(f"prefs of {agent!r} must be a list")
        triples = []
        for entry in entries:
            if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(x, str) for x in entry)):
                raise ParseError(f"prefs of {agent!r}: entries must be [a, b, rel]")
            triples.append(tuple(entry))
        prefs[agent] = triples
    return Instance.build(men, women, edges, prefs)


def _canonical_entries(rel: Relation) -> list[list[str]]:
    idx = {a: i for i, a in enumerate(rel.universe)}
    rows = []
    for (a, b), v in rel.entries.items():
        rows.append(((idx[a], idx[b]), [a, b, v.value]))
    # strict entries first by (better, worse) index, then '||'
    rows.sort(key=lambda r: (r[1][2] == BOTH.value, r[0]))
    return [r[1] for r in rows]


def instance_to_dict(instance: Instance) -> dict:
    prefs = {}
    for agent in instance.men + instance.women:
        rows = _canonical_entries(instance.prefs[agent])
        if rows:
            prefs[agent] = rows
    return {
        "men": list(instance.men),
        "women": list(instance.women),
        "edges": [list(e) for e in instance.edges],
        "prefs": prefs,
    }


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=1, ensure_ascii=False) + "\n"


def matching_to_dict(matching: Matching, instance: Instance | None = None) -> dict:
    return {"pairs": [list(e) for e in matching.sorted_pairs(instance)]}


def serialize_matching(matching: Matching, instance: Instance | None = None) -> str:
    return json.dumps(matching_to_dict(matching, instance), ensure_ascii=False) + "\n"


def parse_matching(text: str, instance: Instance | None = None) -> Matching:
    doc = _load_json(text)
    if not isinstance(doc, dict) or "pairs" not in doc:
        raise ParseError("matching document must be an object with 'pairs'")
    matching = Matching(frozenset(_pair_list(doc["pairs"], "pairs")))
    if len(matching) != len(doc["pairs"]):
        raise InvalidMatching("duplicate pair in matching")
    if instance is not None:
        validate_matching(instance, matching)
    return matching


# -- generation ---------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorParams:
    men_count: int
    women_count: int
    edge_density: float = 0.5
    men_class: OrderClass = OrderClass.STRICT
    women_class: OrderClass = OrderClass.STRICT
    seed: int = 0

    def __post_init__(self):
        if self.men_count < 1 or self.women_count < 1:
            raise InputError("agent counts must be at least 1")
        if not 0.0 <= self.edge_density <= 1.0:
            raise InputError("edge density must lie in [0, 1]")
        object.__setattr__(self, "men_class", OrderClass(self.men_class))
        object.__setattr__(self, "women_class", OrderClass(self.women_class))


def random_relation_entries(rng: random.Random, nbrs: list[str], cls: OrderClass) -> list[tuple[str, str, str]]:
    """Random comparisons over ``nbrs`` classifying at or below ``cls``."""
    entries: list[tuple[str, str, str]] = []
    if cls is OrderClass.STRICT:
        order = nbrs[:]
        rng.shuffle(order)
        for i, a in enumerate(order):
            for b in order[i + 1:]:
                entries.append((a, b, "<"))
    elif cls is OrderClass.TIES:
        order = nbrs[:]
        rng.shuffle(order)
        blocks: list[list[str]] = []
        for a in order:
            if not blocks or rng.random() < 0.5:
                blocks.append([a])
            else:
                blocks[-1].append(a)
        for i, upper in enumerate(blocks):
            for lower in blocks[i + 1:]:
                entries.extend((a, b, "<") for a in upper for b in lower)
    elif cls in (OrderClass.POSET, OrderClass.ACYCLIC):
        order = nbrs[:]
        rng.shuffle(order)
        succ = {a: set() for a in order}
        for i, a in enumerate(order):
            for b in order[i + 1:]:
                if rng.random() < 0.5:
                    succ[a].add(b)
        if cls is OrderClass.POSET:
            for a in reversed(order):
                for b in list(succ[a]):
                    succ[a] |= succ[b]
        entries.extend((a, b, "<") for a in order for b in order if b in succ[a])
    else:
        tokens = ["<", ">", "~"] if cls is OrderClass.ASYMMETRIC else ["<", ">", "~", "||"]
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                token = rng.choice(tokens)
                if token != "~":
                    entries.append((a, b, token))
    return entries


def generate_instance(params: GeneratorParams) -> Instance:
    rng = random.Random(params.seed)
    men = [f"m{i}" for i in range(params.men_count)]
    women = [f"w{j}" for j in range(params.women_count)]
    edges = [(m, w) for m in men for w in women if rng.random() < params.edge_density]
    nbrs: dict[str, list[str]] = {a: [] for a in men + women}
    for m, w in edges:
        nbrs[m].append(w)
        nbrs[w].append(m)
    prefs = {}
    for m in men:
        prefs[m] = random_relation_entries(rng, nbrs[m], params.men_class)
    for w in women:
        prefs[w] = random_relation_entries(rng, nbrs[w], params.women_class)
    return Instance.build(men, women, edges, prefs)


def classify_sides(instance: Instance) -> tuple[OrderClass, OrderClass]:
    """Least restrictive class found on each side."""
    cls = instance.classes
    men = max((cls[m] for m in instance.men), default=OrderClass.STRICT)
    women = max((cls[w] for w in instance.women), default=OrderClass.STRICT)
    return men, women

