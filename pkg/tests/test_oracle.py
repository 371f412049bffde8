import pytest

from conftest import example1, make, random_instance
from pairstable.errors import EmptyList, InputError
from pairstable.instance import Matching
from pairstable.oracle import OracleLimits, Verdict, all_matchings, enumerate_stable, rural_hospitals
from pairstable.prefs import OrderClass
from pairstable.stability import STRONG, SUPER, WEAK, StabilityNotion, find_blocking, is_stable

NOTIONS = list(StabilityNotion)


def M(*pairs):
    return Matching(frozenset(pairs))


@pytest.mark.parametrize("notion", NOTIONS)
def test_example1_not_exists(notion):
    assert enumerate_stable(example1(), notion).verdict is Verdict.NOT_EXISTS


@pytest.mark.parametrize("notion", NOTIONS)
def test_single_edge_exists(notion):
    ans = enumerate_stable(make(["u"], ["w"], [("u", "w")]), notion)
    assert ans.verdict is Verdict.EXISTS and ans.matchings == [M(("u", "w"))]


def test_all_incomparable_weak_has_exactly_the_perfect_matchings():
    inst = make(["u1", "u2"], ["w1", "w2"], [("u1", "w1"), ("u1", "w2"), ("u2", "w1"), ("u2", "w2")])
    got = set(enumerate_stable(inst, WEAK).matchings)
    assert got == {M(("u1", "w1"), ("u2", "w2")), M(("u1", "w2"), ("u2", "w1"))}


def small_instances(count, limit=12):
    seed = 0
    while count:
        inst = random_instance(seed, OrderClass(seed % 6), OrderClass((seed * 7) % 6), 4, 4)
        seed += 1
        if len(inst.edges) <= limit:
            count -= 1
            yield inst


@pytest.mark.parametrize("inst", list(small_instances(80)))
def test_pruned_search_equals_brute_force(inst):
    every = list(all_matchings(inst))
    for notion in NOTIONS:
        found = set(enumerate_stable(inst, notion).matchings)
        for m in every:
            assert (m in found) == (find_blocking(notion, inst, m) is None)


@pytest.mark.parametrize("seed", range(60))
def test_stable_families_are_nested(seed):
    inst = random_instance(seed, OrderClass(seed % 6), OrderClass(5 - seed % 6), 4, 4)
    weak = set(enumerate_stable(inst, WEAK).matchings)
    strong = set(enumerate_stable(inst, STRONG).matchings)
    sup = set(enumerate_stable(inst, SUPER).matchings)
    assert sup <= strong <= weak


@pytest.mark.parametrize("seed", range(10))
def test_parallel_search_gives_identical_result(seed):
    inst = random_instance(seed, OrderClass.ASYMMETRIC, OrderClass.ASYMMETRIC, 5, 5, density=0.8)
    serial = enumerate_stable(inst, WEAK)
    parallel = enumerate_stable(inst, WEAK, jobs=2)
    assert serial.verdict is parallel.verdict and serial.matchings == parallel.matchings


def test_first_only_stops_early():
    inst = make(["u1", "u2"], ["w1", "w2"], [("u1", "w1"), ("u1", "w2"), ("u2", "w1"), ("u2", "w2")])
    ans = enumerate_stable(inst, WEAK, first_only=True)
    assert ans.exists and len(ans.matchings) == 1


def test_limits():
    inst = random_instance(3, OrderClass.ASYMMETRIC, OrderClass.ASYMMETRIC, 5, 5, density=1.0)
    assert enumerate_stable(inst, WEAK, OracleLimits(max_edges=3)).verdict is Verdict.LIMIT_EXCEEDED
    small = enumerate_stable(inst, WEAK, OracleLimits(max_nodes_expanded=2))
    assert small.verdict is Verdict.LIMIT_EXCEEDED and small.exists is None
    with pytest.raises(InputError):
        OracleLimits(max_edges=0)
    with pytest.raises(InputError):
        OracleLimits(time_budget=-1)


def test_every_enumerated_matching_is_stable():
    for seed in range(30):
        inst = random_instance(seed, OrderClass.ACYCLIC, OrderClass.ASYMMETRIC, 5, 5)
        for notion in NOTIONS:
            for m in enumerate_stable(inst, notion).matchings:
                assert is_stable(notion, inst, m)


# -- rural hospitals ----------------------------------------------------------------

def weak_counterexample():
    # u1 accepts only w1; u2 ties w1 and w2; w1 ties u1 and u2; w2 empty
    return make(["u1", "u2"], ["w1", "w2"], [("u1", "w1"), ("u2", "w1"), ("u2", "w2")])


def test_weak_counterexample_reports_false():
    inst = weak_counterexample()
    a, b = M(("u1", "w1"), ("u2", "w2")), M(("u2", "w1"))
    assert is_stable(WEAK, inst, a) and is_stable(WEAK, inst, b)
    assert set(enumerate_stable(inst, WEAK).matchings) == {a, b}
    ok, witness = rural_hospitals([a, b], inst)
    assert not ok
    assert witness == (a, b, "u1")


def test_singleton_list_holds():
    assert rural_hospitals([M(("u", "w"))]) == (True, None)


def test_empty_list():
    with pytest.raises(EmptyList):
        rural_hospitals([])


@pytest.mark.parametrize("seed", range(60))
def test_rural_hospitals_for_strong_and_super(seed):
    inst = random_instance(seed, OrderClass.TIES, OrderClass.ASYMMETRIC, 5, 5)
    for notion in (STRONG, SUPER):
        ms = enumerate_stable(inst, notion).matchings
        if ms:
            assert rural_hospitals(ms, inst)[0]
