import itertools
from collections import Counter

import pytest

from pairstable.errors import AssignmentNotSatisfying, MalformedStableMatching, NotTwoTwoE3
from pairstable.gadgets import (
    assignment_to_matching,
    build_gadget,
    build_super_gadget,
    build_weak_gadget,
    extract_assignment,
)
from pairstable.instance import Matching, classify_sides
from pairstable.prefs import OrderClass
from pairstable.sat import Formula, generate_22e3
from pairstable.stability import STRONG, SUPER, WEAK, find_blocking

BUILDERS = [(WEAK, build_weak_gadget), (SUPER, build_super_gadget)]


def satisfying(f):
    return [a for a in itertools.product((False, True), repeat=f.num_vars) if f.evaluate(a)]


@pytest.mark.parametrize("notion,build", BUILDERS)
@pytest.mark.parametrize("n", [3, 6, 9])
def test_structure(notion, build, n):
    f = generate_22e3(n, seed=n)
    g = build(f)
    inst = g.instance
    m = len(f.clauses)
    assert len(inst.men) + len(inst.women) == 4 * n + 6 * m
    assert len(inst.edges) == 4 * n + 9 * m + 3 * m
    assert max(len(v) for v in inst.neighbors.values()) <= 4
    assert len(g.interconnecting_edges()) == 3 * m


def test_n3_counts():
    g = build_weak_gadget(generate_22e3(3, seed=0))
    assert len(g.instance.men) + len(g.instance.women) == 36
    assert len(g.instance.edges) == 60


def test_weak_gadget_classes():
    g = build_weak_gadget(generate_22e3(3, seed=1))
    inst = g.instance
    assert classify_sides(inst) == (OrderClass.STRICT, OrderClass.ASYMMETRIC)
    for i in range(1, 4):
        assert inst.classes[f"x{i}"] is OrderClass.ASYMMETRIC
        nbrs = set(inst.neighbors[f"x{i}"])
        assert {f"t{i}", f"f{i}"} < nbrs and len(nbrs) == 4
        assert all(v.startswith("c") for v in nbrs - {f"t{i}", f"f{i}"})
    for a in inst.men:
        assert inst.classes[a] is OrderClass.STRICT


def test_negated_literal_vertex_is_not_cyclic():
    # t over f, t over both u's, u's over f: transitive with u's tied
    inst = build_weak_gadget(generate_22e3(3, seed=1)).instance
    for i in range(1, 4):
        assert inst.classes[f"nx{i}"] is OrderClass.TIES


def test_super_gadget_classes():
    inst = build_super_gadget(generate_22e3(3, seed=1)).instance
    men, women = classify_sides(inst)
    assert men <= OrderClass.ACYCLIC and women <= OrderClass.ACYCLIC
    # frozen per-position classes of the clause men
    assert [inst.classes[f"c1u{k}"] for k in (1, 2, 3)] == [OrderClass.ACYCLIC, OrderClass.ACYCLIC, OrderClass.TIES]


def test_super_clause_lists():
    g = build_super_gadget(generate_22e3(3, seed=1))
    inst = g.instance
    lit = g.interconnect[(1, 1)][1]
    r = inst.prefs["c1u1"]
    assert r.prefers("c1w1", "c1w3") and r.prefers("c1w3", "c1w2")
    assert r.prefers("c1w1", lit) and r.prefers("c1w2", lit)
    assert r.value("c1w3", lit).value == "~"
    w1 = inst.prefs["c1w1"]
    assert w1.prefers("c1u2", "c1u3") and w1.prefers("c1u3", "c1u1")


def test_bad_formula_rejected():
    with pytest.raises(NotTwoTwoE3):
        build_weak_gadget(Formula(3, ((1, 2, 3),)))
    with pytest.raises(ValueError):
        build_gadget(generate_22e3(3), STRONG)


@pytest.mark.parametrize("notion", [WEAK, SUPER])
@pytest.mark.parametrize("seed", range(15))
def test_forward_soundness_and_round_trip(notion, seed):
    f = generate_22e3(6, seed)
    g = build_gadget(f, notion)
    for a in satisfying(f)[:4]:
        m = assignment_to_matching(f, a, notion)
        assert find_blocking(notion, g.instance, m) is None
        assert extract_assignment(g, m) == a
        for i, value in enumerate(a, 1):
            pattern = {(f"t{i}", f"x{i}"), (f"f{i}", f"nx{i}")}
            assert (pattern <= m.pairs) == value
        for j in range(1, len(f.clauses) + 1):
            clause_pairs = [(u, w) for u, w in m.pairs if u.startswith(f"c{j}u")]
            assert len(clause_pairs) == 3 and all(w.startswith(f"c{j}w") for _, w in clause_pairs)


def test_non_satisfying_assignment_rejected():
    f = Formula(3, ((1, 2, 3), (1, -2, -3), (-1, 2, -3), (-1, -2, 3)))
    a = next(a for a in itertools.product((False, True), repeat=3) if not f.evaluate(a))
    with pytest.raises(AssignmentNotSatisfying):
        assignment_to_matching(f, a, WEAK)


def test_extract_rejects_interconnecting_edge():
    f = generate_22e3(3, seed=0)
    g = build_weak_gadget(f)
    edge = g.interconnect[(1, 1)]
    with pytest.raises(MalformedStableMatching):
        extract_assignment(g, Matching(frozenset({edge})))


def test_extract_rejects_missing_pattern():
    g = build_weak_gadget(generate_22e3(3, seed=0))
    with pytest.raises(MalformedStableMatching):
        extract_assignment(g, Matching(frozenset()))


def test_provenance_maps():
    f = generate_22e3(3, seed=4)
    g = build_super_gadget(f)
    p = g.provenance()
    assert p["notion"] == "super" and len(p["interconnect"]) == 12
    counts = Counter(e["edge"][1] for e in p["interconnect"])
    assert all(c == 2 for c in counts.values()) and len(counts) == 6
