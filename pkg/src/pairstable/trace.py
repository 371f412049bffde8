"""Event logs written by the strong and super solvers."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import IO, Iterator

EdgeT = tuple[str, str]


@dataclass(frozen=True)
class Propose:
    man: str
    tie: int
    edges: tuple[EdgeT, ...]
    kind: str = "Propose"


@dataclass(frozen=True)
class RejectStrict:
    """A proposal along ``cause`` made the woman reject a worse edge."""

    cause: EdgeT
    rejected: EdgeT
    kind: str = "RejectStrict"


@dataclass(frozen=True)
class RejectIncomparable:
    cause_man: str
    rejected: EdgeT
    kind: str = "RejectIncomparable"


@dataclass(frozen=True)
class RejectCritical:
    man: str
    edges: tuple[EdgeT, ...]
    kind: str = "RejectCritical"


@dataclass(frozen=True)
class Phase2Round:
    critical_set: tuple[str, ...]
    kind: str = "Phase2Round"


@dataclass(frozen=True)
class Accept:
    man: str
    woman: str
    kind: str = "Accept"


@dataclass(frozen=True)
class DeleteEdge:
    edge: EdgeT
    kind: str = "DeleteEdge"


@dataclass(frozen=True)
class BreakEngagement:
    woman: str
    man: str
    kind: str = "BreakEngagement"


@dataclass(frozen=True)
class ProposeOne:
    """Single proposal of the super solver."""

    man: str
    woman: str
    kind: str = "Propose"


REJECTIONS = (RejectStrict, RejectIncomparable, RejectCritical)


@dataclass
class SolverTrace:
    """Ordered events plus the per-woman summary flags the output test uses.

    ``flagged_women`` holds the women a final matching must cover: women
    that ever had an active edge (strong solver) or ever received a
    proposal (super solver).
    """

    events: list = field(default_factory=list)
    flagged_women: set[str] = field(default_factory=set)

    def append(self, event) -> None:
        self.events.append(event)

    def __iter__(self) -> Iterator:
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    def rejected_edges(self) -> list[EdgeT]:
        out = []
        for ev in self.events:
            if isinstance(ev, (RejectStrict, RejectIncomparable)):
                out.append(ev.rejected)
            elif isinstance(ev, RejectCritical):
                out.extend(ev.edges)
            elif isinstance(ev, DeleteEdge):
                out.append(ev.edge)
        return out

    def write_jsonl(self, fh: IO[str]) -> None:
        for ev in self.events:
            fh.write(json.dumps(asdict(ev)) + "\n")


def event_from_dict(doc: dict):
    kind = doc["kind"]
    if kind == "Propose" and "tie" in doc:
        return Propose(doc["man"], doc["tie"], tuple(tuple(e) for e in doc["edges"]))
    if kind == "Propose":
        return ProposeOne(doc["man"], doc["woman"])
    if kind == "RejectStrict":
        return RejectStrict(tuple(doc["cause"]), tuple(doc["rejected"]))
    if kind == "RejectIncomparable":
        return RejectIncomparable(doc["cause_man"], tuple(doc["rejected"]))
    if kind == "RejectCritical":
        return RejectCritical(doc["man"], tuple(tuple(e) for e in doc["edges"]))
    if kind == "Phase2Round":
        return Phase2Round(tuple(doc["critical_set"]))
    if kind == "Accept":
        return Accept(doc["man"], doc["woman"])
    if kind == "DeleteEdge":
        return DeleteEdge(tuple(doc["edge"]))
    if kind == "BreakEngagement":
        return BreakEngagement(doc["woman"], doc["man"])
    raise ValueError(f"unknown trace event kind {kind!r}")


def read_jsonl(text: str) -> list:
    return [event_from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]
