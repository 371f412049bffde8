import json
import random

import pytest

from conftest import example1, make, random_instance
from pairstable.cli import main
from pairstable.instance import parse_matching, serialize_instance
from pairstable.prefs import OrderClass
from pairstable.sat import generate_22e3
from pairstable.trace import read_jsonl


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_example1(capsys, write):
    code, out, _ = run(capsys, "classify", write("i.json", serialize_instance(example1())))
    doc = json.loads(out)
    assert code == 0 and (doc["men"], doc["women"]) == ("Strict", "Asymmetric")
    assert doc["agents"]["w"] == "Asymmetric"


def test_classify_all_empty(capsys, write):
    inst = make(["u1", "u2"], ["w1", "w2"], [("u1", "w1"), ("u1", "w2"), ("u2", "w1"), ("u2", "w2")])
    doc = json.loads(run(capsys, "classify", write("i.json", serialize_instance(inst)))[1])
    assert (doc["men"], doc["women"]) == ("Ties", "Ties")


def test_malformed_json_exits_2(capsys, write):
    code, _, err = run(capsys, "classify", write("i.json", "{oops"))
    assert code == 2 and err.startswith("error:")


def test_missing_file_exits_2(capsys, tmp_path):
    assert run(capsys, "classify", str(tmp_path / "nope.json"))[0] == 2


def test_solve_weak_acyclic(capsys, write):
    inst = random_instance(3, OrderClass.ACYCLIC, OrderClass.ACYCLIC, 6, 6)
    assert run(capsys, "solve", "--notion", "weak", write("i.json", serialize_instance(inst)))[0] == 0


def test_solve_strong_example1_none(capsys, write, tmp_path):
    trace = tmp_path / "t.jsonl"
    code, out, _ = run(capsys, "solve", "--notion", "strong", write("i.json", serialize_instance(example1())), "--trace", str(trace))
    assert code == 1 and out.strip() == "NONE"
    assert read_jsonl(trace.read_text())


def test_solve_super_acyclic_is_np_cell(capsys, write):
    men, women = ["u", "v", "x"], ["a", "b", "c"]
    edges = [(m, w) for m in men for w in women]
    inst = make(men, women, edges, {"u": [("a", "b", "<"), ("b", "c", "<")], "a": [("u", "v", "<"), ("v", "x", "<")]})
    code, _, err = run(capsys, "solve", "--notion", "super", write("i.json", serialize_instance(inst)))
    assert code == 2 and "NP-complete" in err and "oracle" in err


def test_solve_weak_example1_is_np_cell(capsys, write):
    assert run(capsys, "solve", "--notion", "weak", write("i.json", serialize_instance(example1())))[0] == 2


def test_solve_strong_transposed_orientation(capsys, write):
    inst = random_instance(8, OrderClass.ASYMMETRIC, OrderClass.TIES, 4, 4)
    code, out, _ = run(capsys, "solve", "--notion", "strong", write("i.json", serialize_instance(inst)))
    assert code in (0, 1)
    if code == 0:
        m = parse_matching(out, inst)
        assert run(capsys, "check", "--notion", "strong", write("i2.json", serialize_instance(inst)),
                   "--matching", write("m.json", out))[0] == 0
        assert all(e in inst.edge_set for e in m.pairs)


def test_check(capsys, write):
    inst_path = write("i.json", serialize_instance(example1()))
    code, out, _ = run(capsys, "check", "--notion", "weak", inst_path, "--matching", write("m.json", '{"pairs": [["u1", "w"]]}'))
    assert code == 1 and json.loads(out)["edge"] == ["u3", "w"]
    single = write("s.json", serialize_instance(make(["u"], ["w"], [("u", "w")])))
    code, out, _ = run(capsys, "check", "--notion", "super", single, "--matching", write("m2.json", '{"pairs": [["u", "w"]]}'))
    assert code == 0 and out.strip() == "STABLE"
    code, _, _ = run(capsys, "check", "--notion", "weak", inst_path, "--matching", write("m3.json", '{"pairs": [["u1", "x"]]}'))
    assert code == 2


def test_oracle_command(capsys, write):
    code, out, _ = run(capsys, "oracle", "--notion", "super", write("i.json", serialize_instance(example1())))
    assert code == 1 and json.loads(out)["verdict"] == "not_exists"
    code, out, _ = run(capsys, "oracle", "--notion", "weak", "--max-edges", "2", write("j.json", serialize_instance(example1())))
    assert code == 3 and json.loads(out)["verdict"] == "limit_exceeded"


def test_generate_is_deterministic(capsys):
    args = ["generate", "--men", "4", "--women", "3", "--men-class", "ties", "--women-class", "asymmetric", "--seed", "9"]
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first
    assert json.loads(first)["men"] == ["m0", "m1", "m2", "m3"]


def test_reduce_and_verify(capsys, write, tmp_path):
    cnf = write("f.cnf", generate_22e3(3, seed=0).to_dimacs())
    prov = tmp_path / "p.json"
    code, out, _ = run(capsys, "reduce", "--notion", "weak", cnf, "--provenance", str(prov))
    assert code == 0 and len(json.loads(out)["edges"]) == 60
    assert json.loads(prov.read_text())["notion"] == "weak"
    for notion in ("weak", "super"):
        code, out, _ = run(capsys, "verify-reduction", "--notion", notion, cnf)
        doc = json.loads(out)
        assert code == 0 and doc["sat"] is True and doc["agree"] is True and doc["stable_exists"] is True


def test_verify_reduction_large_formula_is_constructive_only(capsys, write):
    cnf = write("f.cnf", generate_22e3(30, seed=2).to_dimacs())
    code, out, _ = run(capsys, "verify-reduction", "--notion", "super", cnf)
    doc = json.loads(out)
    assert code == 3 and doc["stable_exists"] == "limit" and doc["agree"] == "unknown" and doc["forward_sound"] is True


def test_verify_reduction_invalid_formula(capsys, write):
    assert run(capsys, "verify-reduction", "--notion", "weak", write("f.cnf", "p cnf 3 1\n1 2 3 0\n"))[0] == 2


def test_solve_then_check_pipeline(capsys, write):
    rng = random.Random(0)
    cells = [("weak", OrderClass.ACYCLIC, OrderClass.ACYCLIC), ("strong", OrderClass.TIES, OrderClass.ASYMMETRIC),
             ("super", OrderClass.POSET, OrderClass.ASYMMETRIC)]
    for seed in range(1000):
        notion, mc, wc = cells[seed % 3]
        inst = random_instance(seed, OrderClass(rng.randint(0, mc)), OrderClass(rng.randint(0, wc)), 5, 5)
        path = write("i.json", serialize_instance(inst))
        code, out, _ = run(capsys, "solve", "--notion", notion, path)
        if code == 0:
            assert run(capsys, "check", "--notion", notion, path, "--matching", write("m.json", out))[0] == 0
        else:
            assert code == 1 and notion != "weak"
