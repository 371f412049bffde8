"""Blocking edges for weak, strong and super stability."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import EdgeNotInInstance, InputError
from .instance import Edge, Instance, Matching
from .prefs import BOTH, INCOMP, PREF, Relation, RelationValue


class StabilityNotion(Enum):
    WEAK = "weak"
    STRONG = "strong"
    SUPER = "super"

    @classmethod
    def parse(cls, text: str | StabilityNotion) -> StabilityNotion:
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise InputError(f"unknown stability notion {text!r}") from None


WEAK = StabilityNotion.WEAK
STRONG = StabilityNotion.STRONG
SUPER = StabilityNotion.SUPER


@dataclass(frozen=True)
class BlockingWitness:
    edge: Edge
    notion: StabilityNotion
    man_side: RelationValue
    woman_side: RelationValue

    def to_dict(self) -> dict:
        return {
            "edge": list(self.edge),
            "notion": self.notion.value,
            "man_side": self.man_side.value,
            "woman_side": self.woman_side.value,
        }


def partner_relation(r: Relation, candidate: str, current_partner: str | None) -> RelationValue:
    """How the owner of ``r`` compares ``candidate`` with its current partner.

    Being unmatched is worse than any acceptable partner.
    """
    if current_partner is None:
        return PREF
    return r.value(candidate, current_partner)


def _strict(v: RelationValue) -> bool:
    # '||' counts as strictly preferring the candidate
    return v is PREF or v is BOTH


def _not_worse(v: RelationValue) -> bool:
    return v is PREF or v is BOTH or v is INCOMP


def blocking_predicate(notion: StabilityNotion, s_man: RelationValue, s_woman: RelationValue) -> bool:
    if notion is WEAK:
        return _strict(s_man) and _strict(s_woman)
    if notion is STRONG:
        return (_not_worse(s_man) and _strict(s_woman)) or (_strict(s_man) and _not_worse(s_woman))
    return _not_worse(s_man) and _not_worse(s_woman)


def side_values(instance: Instance, matching: Matching, edge: Edge) -> tuple[RelationValue, RelationValue]:
    m, w = edge
    s_man = partner_relation(instance.prefs[m], w, matching.partner(m))
    s_woman = partner_relation(instance.prefs[w], m, matching.partner(w))
    return s_man, s_woman


def blocks(notion: StabilityNotion, instance: Instance, matching: Matching, edge: Edge) -> bool:
    edge = tuple(edge)
    if edge not in instance.edge_set:
        raise EdgeNotInInstance(f"{edge} is not an edge of the instance")
    if edge in matching.pairs:
        return False
    return blocking_predicate(notion, *side_values(instance, matching, edge))


def find_blocking(notion: StabilityNotion, instance: Instance, matching: Matching) -> BlockingWitness | None:
    """First blocking edge in ``(man index, woman index)`` order, or ``None``."""
    for pair in matching.pairs:
        if pair not in instance.edge_set:
            raise EdgeNotInInstance(f"matching pair {pair} is not an edge of the instance")
    for edge in instance.edges:
        if edge in matching.pairs:
            continue
        s_man, s_woman = side_values(instance, matching, edge)
        if blocking_predicate(notion, s_man, s_woman):
            return BlockingWitness(edge, notion, s_man, s_woman)
    return None


def is_stable(notion: StabilityNotion, instance: Instance, matching: Matching) -> bool:
    return find_blocking(notion, instance, matching) is None
