import pytest

from conftest import example1, make, random_instance
from pairstable.errors import ClassGateViolation
from pairstable.instance import Matching
from pairstable.oracle import enumerate_stable
from pairstable.prefs import OrderClass, classify
from pairstable.stability import WEAK, find_blocking
from pairstable.weak import deferred_acceptance, extend_to_strict, solve_weak


def test_strict_instance_extends_to_itself():
    inst = make(["u"], ["w1", "w2"], [("u", "w1"), ("u", "w2")], {"u": [("w2", "w1", "<")]})
    s = extend_to_strict(inst)
    assert s.rankings["u"] == ("w2", "w1")
    assert s.instance == inst


def test_acyclic_agent_ranked_by_topological_order():
    inst = make(["v"], ["a", "b", "c"], [("v", "a"), ("v", "b"), ("v", "c")],
                {"v": [("a", "b", "<"), ("b", "c", "<")]})
    s = extend_to_strict(inst)
    assert s.rankings["v"] == ("a", "b", "c")
    assert all(classify(r) is OrderClass.STRICT for r in s.instance.prefs.values())


def test_cyclic_side_is_out_of_gate():
    with pytest.raises(ClassGateViolation):
        extend_to_strict(example1())
    with pytest.raises(ClassGateViolation):
        solve_weak(example1())


def test_two_by_two_strict():
    # both men rank w1 first; w1 and w2 both rank u1 first
    inst = make(
        ["u1", "u2"], ["w1", "w2"],
        [("u1", "w1"), ("u1", "w2"), ("u2", "w1"), ("u2", "w2")],
        {"u1": [("w1", "w2", "<")], "u2": [("w1", "w2", "<")],
         "w1": [("u1", "u2", "<")], "w2": [("u1", "u2", "<")]},
    )
    expected = Matching(frozenset({("u1", "w1"), ("u2", "w2")}))
    assert solve_weak(inst) == expected
    assert expected in enumerate_stable(inst, WEAK).matchings


def test_single_edge():
    inst = make(["u"], ["w"], [("u", "w")])
    assert solve_weak(inst) == Matching(frozenset({("u", "w")}))


def test_deferred_acceptance_proposals_bounded():
    rankings = {"a": ["x", "y"], "b": ["x", "y"], "x": ["b", "a"], "y": ["a", "b"]}
    assert deferred_acceptance(["a", "b"], rankings) == {"a": "y", "b": "x"}


@pytest.mark.parametrize("seed", range(200))
def test_output_weakly_stable_on_original(seed):
    inst = random_instance(seed, OrderClass(seed % 4), OrderClass((seed // 4) % 4), 7, 7)
    assert find_blocking(WEAK, inst, solve_weak(inst)) is None
