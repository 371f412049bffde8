"""Hardness gadgets turning (2,2)-E3-SAT formulas into matching markets.

Each variable ``i`` becomes a 4-cycle ``t{i} - x{i} - f{i} - nx{i}``; each
clause ``j`` becomes a complete bipartite graph between ``c{j}u1..u3`` and
``c{j}w1..w3``; ``c{j}u{k}`` is joined to ``x{v}`` or ``nx{v}`` for the
``k``-th literal of clause ``j``.  Men are the ``t``, ``f`` and ``u``
vertices, women the literal and ``w`` vertices.

Two preference profiles are built on this skeleton: one where satisfiable
formulas are exactly those with a weakly stable matching (strict men,
cyclic literal vertices) and one for super stability (acyclic relations on
both sides).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import AssignmentNotSatisfying, InputError, MalformedStableMatching, NotTwoTwoE3
from .instance import Edge, Instance, Matching
from .sat import Formula, validate_22e3
from .stability import StabilityNotion

# stable perfect matchings of the super clause gadget, keyed by the u on w3
_SUPER_CLAUSE_COMPLETION = {
    1: {1: 3, 2: 2, 3: 1},
    2: {1: 1, 2: 3, 3: 2},
    3: {1: 2, 2: 1, 3: 3},
}

# strict order over the clause women seen from each u (super gadget)
_SUPER_U_ORDER = {1: (1, 3, 2), 2: (3, 2, 1), 3: (2, 1, 3)}
# strict order over the clause men seen from each w (super gadget)
_SUPER_W_ORDER = {1: (2, 3, 1), 2: (1, 2, 3), 3: (3, 1, 2)}


def var_names(i: int) -> dict[str, str]:
    return {"t": f"t{i}", "f": f"f{i}", "x": f"x{i}", "nx": f"nx{i}"}


def clause_names(j: int) -> dict[str, str]:
    names = {f"u{k}": f"c{j}u{k}" for k in (1, 2, 3)}
    names.update({f"w{k}": f"c{j}w{k}" for k in (1, 2, 3)})
    return names


def literal_vertex(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"nx{-lit}"


@dataclass(frozen=True)
class GadgetInstance:
    """A gadget market plus maps back to the formula it encodes."""

    instance: Instance
    formula: Formula
    notion: StabilityNotion
    variables: dict[int, dict[str, str]] = field(default_factory=dict)
    clauses: dict[int, dict[str, str]] = field(default_factory=dict)
    interconnect: dict[tuple[int, int], Edge] = field(default_factory=dict)

    def interconnecting_edges(self) -> set[Edge]:
        return set(self.interconnect.values())

    def provenance(self) -> dict:
        return {
            "notion": self.notion.value,
            "variables": {str(i): names for i, names in self.variables.items()},
            "clauses": {str(j): names for j, names in self.clauses.items()},
            "interconnect": [
                {"clause": j, "position": k, "literal": self.formula.clauses[j - 1][k - 1], "edge": list(e)}
                for (j, k), e in sorted(self.interconnect.items())
            ],
        }

    def provenance_json(self) -> str:
        return json.dumps(self.provenance(), indent=1) + "\n"


def _skeleton(f: Formula):
    problems = validate_22e3(f)
    if problems:
        raise NotTwoTwoE3("; ".join(problems))
    variables = {i: var_names(i) for i in range(1, f.num_vars + 1)}
    clauses = {j: clause_names(j) for j in range(1, len(f.clauses) + 1)}
    men: list[str] = []
    women: list[str] = []
    edges: list[Edge] = []
    # clause men come first; it keeps the oracle's edge order local
    for j, c in clauses.items():
        men += [c["u1"], c["u2"], c["u3"]]
        women += [c["w1"], c["w2"], c["w3"]]
    for i, v in variables.items():
        men += [v["t"], v["f"]]
        women += [v["x"], v["nx"]]
    interconnect = {}
    lit_partners: dict[str, list[str]] = {w: [] for i in variables for w in (f"x{i}", f"nx{i}")}
    for j, c in clauses.items():
        for k in (1, 2, 3):
            u = c[f"u{k}"]
            for kk in (1, 2, 3):
                edges.append((u, c[f"w{kk}"]))
            lv = literal_vertex(f.clauses[j - 1][k - 1])
            edges.append((u, lv))
            interconnect[(j, k)] = (u, lv)
            lit_partners[lv].append(u)
    for i, v in variables.items():
        edges += [(v["t"], v["x"]), (v["t"], v["nx"]), (v["f"], v["x"]), (v["f"], v["nx"])]
    return variables, clauses, men, women, edges, interconnect, lit_partners


def _variable_prefs(variables, lit_partners, u_vs_f: str) -> dict[str, list]:
    prefs: dict[str, list] = {}
    for i, v in variables.items():
        t, f_, x, nx = v["t"], v["f"], v["x"], v["nx"]
        prefs[t] = [(x, nx, "<")]
        prefs[f_] = [(nx, x, "<")]
        for lit, first in ((x, (f_, t)), (nx, (t, f_))):
            entries = [(*first, "<")]
            for u in lit_partners[lit]:
                entries.append((t, u, "<"))
                if u_vs_f == "<":
                    entries.append((u, f_, "<"))
            prefs[lit] = entries
    return prefs


def _strict(order: list[str]) -> list:
    return [(a, b, "<") for i, a in enumerate(order) for b in order[i + 1:]]


def build_weak_gadget(f: Formula) -> GadgetInstance:
    """Market with a weakly stable matching iff ``f`` is satisfiable."""
    variables, clauses, men, women, edges, interconnect, lit_partners = _skeleton(f)
    prefs = _variable_prefs(variables, lit_partners, "<")
    for j, c in clauses.items():
        for k in (1, 2, 3):
            lv = interconnect[(j, k)][1]
            prefs[c[f"u{k}"]] = _strict([c["w3"], c["w2"], lv, c["w1"]])
    inst = Instance.build(men, women, edges, prefs)
    return GadgetInstance(inst, f, StabilityNotion.WEAK, variables, clauses, interconnect)


def build_super_gadget(f: Formula) -> GadgetInstance:
    """Market with a super stable matching iff ``f`` is satisfiable."""
    variables, clauses, men, women, edges, interconnect, lit_partners = _skeleton(f)
    prefs = _variable_prefs(variables, lit_partners, "~")
    for j, c in clauses.items():
        for k in (1, 2, 3):
            lv = interconnect[(j, k)][1]
            entries = _strict([c[f"w{q}"] for q in _SUPER_U_ORDER[k]])
            entries += [(c["w1"], lv, "<"), (c["w2"], lv, "<")]
            prefs[c[f"u{k}"]] = entries
        for k in (1, 2, 3):
            prefs[c[f"w{k}"]] = _strict([c[f"u{q}"] for q in _SUPER_W_ORDER[k]])
    inst = Instance.build(men, women, edges, prefs)
    return GadgetInstance(inst, f, StabilityNotion.SUPER, variables, clauses, interconnect)


def build_gadget(f: Formula, notion: StabilityNotion) -> GadgetInstance:
    notion = StabilityNotion.parse(notion)
    if notion is StabilityNotion.WEAK:
        return build_weak_gadget(f)
    if notion is StabilityNotion.SUPER:
        return build_super_gadget(f)
    raise InputError("gadgets exist for weak and super stability only")


def assignment_to_matching(f: Formula, assignment, notion: StabilityNotion) -> Matching:
    """The stable matching a satisfying assignment induces on the gadget."""
    notion = StabilityNotion.parse(notion)
    if notion is StabilityNotion.STRONG:
        raise InputError("gadgets exist for weak and super stability only")
    if len(assignment) != f.num_vars or not f.evaluate(assignment):
        raise AssignmentNotSatisfying("assignment does not satisfy the formula")
    pairs: list[Edge] = []
    for i in range(1, f.num_vars + 1):
        v = var_names(i)
        if assignment[i - 1]:
            pairs += [(v["t"], v["x"]), (v["f"], v["nx"])]
        else:
            pairs += [(v["f"], v["x"]), (v["t"], v["nx"])]
    for j, clause in enumerate(f.clauses, 1):
        c = clause_names(j)
        chosen = next(k for k, lit in enumerate(clause, 1) if (lit > 0) == bool(assignment[abs(lit) - 1]))
        if notion is StabilityNotion.WEAK:
            pairs.append((c[f"u{chosen}"], c["w1"]))
            rest = [k for k in (1, 2, 3) if k != chosen]
            pairs += [(c[f"u{rest[0]}"], c["w2"]), (c[f"u{rest[1]}"], c["w3"])]
        else:
            for k, q in _SUPER_CLAUSE_COMPLETION[chosen].items():
                pairs.append((c[f"u{k}"], c[f"w{q}"]))
    return Matching(frozenset(pairs))


def extract_assignment(g: GadgetInstance, m: Matching) -> tuple[bool, ...]:
    """Truth values read off the variable gadgets of a stable matching.

    Raises:
        MalformedStableMatching: if an interconnecting edge is used or a
            variable gadget holds neither ``{tx, f nx}`` nor ``{fx, t nx}``.
    """
    used = g.interconnecting_edges() & m.pairs
    if used:
        raise MalformedStableMatching(f"interconnecting edge {sorted(used)[0]} is matched")
    values = []
    for i in range(1, g.formula.num_vars + 1):
        v = g.variables[i]
        true_pattern = (v["t"], v["x"]) in m.pairs and (v["f"], v["nx"]) in m.pairs
        false_pattern = (v["f"], v["x"]) in m.pairs and (v["t"], v["nx"]) in m.pairs
        if true_pattern == false_pattern:
            raise MalformedStableMatching(f"variable gadget {i} is not matched in either pattern")
        values.append(true_pattern)
    return tuple(values)
