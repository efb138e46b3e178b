import io
import json
import os
import re
from contextlib import redirect_stderr, redirect_stdout

import pytest

from semirep.bergman import BratteliTower
from semirep.boolean import synth_boolean_tower
from semirep.bergman import synth_tower
from semirep.cli import main
from semirep.dot import emit_dot
from semirep.order import FinitePoset
from semirep.semilattice import AxiomError, chain
from semirep.serialization import DocumentError, dumps, load, to_document

DATA = os.path.join(os.path.dirname(__file__), "data")
CORPUS = sorted(f for f in os.listdir(DATA) if f.endswith(".json") and not f.startswith("bad_"))


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


def d(name):
    return os.path.join(DATA, name)


def test_load_examples():
    S = load('{"kind":"semilattice","elements":["0","1","2"],"join":[[0,1,2],[1,1,2],[2,2,2]]}')
    assert S == chain(3)
    P = load('{"kind":"poset","elements":["p","q"],"covers":[["p","q"]]}')
    assert P == FinitePoset.chain(2).__class__(["p", "q"], [("p", "q")]) and P.leq(0, 1)
    with pytest.raises(AxiomError) as e:
        load(d("bad_idempotent.json"))
    assert e.value.axiom == "idempotence" and "1" in str(e.value)


def test_load_errors_name_the_field():
    with pytest.raises(DocumentError) as e:
        load('{"kind":"semilattice","elements":["0"]}')
    assert e.value.field == "join"
    with pytest.raises(DocumentError) as e:
        load('{"kind":"tower","levels":[{"sizes":[1]}],"maps":[[[1]]]}')
    assert e.value.field == "maps"
    with pytest.raises(DocumentError):
        load('{"kind":"rational_vector","entries":["1/0"]}')
    with pytest.raises(DocumentError):
        load("{not json")
    with pytest.raises(DocumentError):
        load('{"kind":"graph"}')


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip(name):
    obj = load(d(name))
    text = dumps(obj)
    again = load(text, DATA)
    assert again == obj
    assert dumps(again) == text


def test_canonical_text_is_sorted_and_ordered():
    text = dumps(load(d("3chain.json")))
    assert text == open(d("3chain.json")).read()
    doc = json.loads(text)
    assert list(doc) == sorted(doc)


def check_dot(text):
    assert text.count("{") == text.count("}") and text.count("[") == text.count("]")
    assert text.count("(") == text.count(")")
    declared = set()
    for line in text.splitlines():
        m = re.findall(r"(\w+) \[label=", line)
        declared.update(m)
        e = re.match(r"\s*(\w+) -> (\w+)", line)
        if e:
            assert e.group(1) in declared and e.group(2) in declared


DRAWABLE = [n for n in CORPUS if json.load(open(d(n)))["kind"] in ("poset", "semilattice", "tower")]


@pytest.mark.parametrize("name", DRAWABLE)
def test_dot_is_well_formed(name):
    check_dot(emit_dot(load(d(name))))


def test_dot_examples():
    text = emit_dot(chain(3))
    assert len(re.findall(r"\[label=", text)) == 3 and text.count("->") == 2
    assert "rankdir=BT" in text
    system = synth_boolean_tower(chain(3), 3, "zero_one")[0]
    tower = synth_tower(system, 3, unital=True)
    text = emit_dot(tower)
    labels = re.findall(r"L(\d)_(\d) \[label=\"(\d+)\"\]", text)
    assert [(int(i), int(t)) for i, _, t in labels] == [(0, 1), (0, 1), (1, 2), (1, 1), (2, 3), (2, 1)]
    edges = re.findall(r"L(\d)_(\d) -> L(\d)_(\d);", text)
    assert edges == [("0", "0", "1", "0"), ("0", "1", "1", "0"), ("0", "1", "1", "1"),
                     ("1", "0", "2", "0"), ("1", "1", "2", "0"), ("1", "1", "2", "1")]
    assert emit_dot(BratteliTower((), ())) == "digraph bratteli {\n}\n"


def test_dot_collapses_heavy_edges():
    t = load('{"kind":"tower","levels":[{"sizes":[1]},{"sizes":[5]}],"maps":[[[5]]],"unital":true}')
    text = emit_dot(t)
    assert 'L0_0 -> L1_0 [label="5"];' in text and text.count("->") == 1
    t = load('{"kind":"tower","levels":[{"sizes":[1]},{"sizes":[3]}],"maps":[[[3]]],"unital":true}')
    assert emit_dot(t).count("->") == 3


def test_check_distributive():
    code, out, _ = run("check", "--distributive", d("3chain.json"))
    assert code == 0 and json.loads(out)["distributive"] is True
    code, out, err = run("check", "--distributive", d("m3join.json"))
    rep = json.loads(out)
    assert code == 1 and rep["distributive"] is False and rep["witness"] == ["a", "b", "c"]
    assert err


def test_tower_report():
    code, out, _ = run("tower", d("3chain.json"), "--depth", 3, "--variant", "zero-one")
    rep = json.loads(out)
    assert code == 0
    assert rep["stages"] == [["{}", "{a}", "{b}", "{a,b}"]] * 3
    assert rep["transitions"] == [{"{}": "{}", "{a}": "{a}", "{b}": "{a,b}", "{a,b}": "{a,b}"}] * 2
    assert all(leg["{a}"] == "1" and leg["{b}"] == "2" for leg in rep["cone"])
    assert rep["certificate"]["stabilization_offset"] == 1


def test_verify_cone_on_system_documents():
    code, out, _ = run("verify-cone", d("s3_system.json"))
    assert code == 0 and json.loads(out)["stabilization_offset"] == 1
    code, out, _ = run("verify-cone", d("bad_cone_system.json"))
    rep = json.loads(out)
    assert code == 1 and rep["defect"]["condition"] == "compatibility"
    assert rep["defect"]["witness"] == ["{b}"]


def test_usage_errors():
    assert run("frobnicate", d("3chain.json"))[0] == 2
    assert run("check", d("3chain.json"), "--bogus")[0] == 2
    assert run("check", d("missing.json"))[0] == 2
    assert run("check", "--distributive", d("z2.json"))[0] == 2
    assert run("tower", d("3chain.json"), "--variant", "odd")[0] == 2
    assert run("rip-witness", d("3chain.json"))[0] == 2
    code, _, err = run("check", d("bad_idempotent.json"))
    assert code == 2 and "idempotence" in err


def test_out_flag(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run("nabla", d("trunc3.json"), "--out", target)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["semilattice"]["elements"] == ["[0]", "[1,2]"]


def test_rip_and_temperate_commands():
    code, out, _ = run("rip-witness", d("rip.json"))
    rep = json.loads(out)
    assert code == 0 and rep["u"] == [1, 0]
    bad = '{"kind":"rip","n":2,"a":[1],"b":[1],"c":[1],"d":[2]}'
    code, _, _ = run("rip-witness", bad)
    assert code == 2
    code, out, _ = run("temperate", d("setlattice.json"), "--seed", 4, "--samples", 50)
    rep = json.loads(out)
    assert code == 0 and rep["refinement"]["failed"] == 0 and rep["lift_dlat"]["ok"]


EXIT_CODES = [
    (("check", "--distributive", "3chain.json"), 0),
    (("check", "--distributive", "m3join.json"), 1),
    (("check", "--lattice", "vee.json"), 1),
    (("check", "--boolean", "square.json"), 0),
    (("check", "--riesz", "trunc3.json"), 0),
    (("check", "--conical", "z2.json"), 1),
    (("check", "vector.json"), 0),
    (("birkhoff", "square.json"), 0),
    (("birkhoff", "n5.json"), 1),
    (("birkhoff", "vee.json"), 1),
    (("embed", "3chain.json"), 0),
    (("embed", "vee.json", "--mode", "powerset"), 0),
    (("embed", "vee.json"), 2),
    (("extend", "partial_hom.json"), 0),
    (("factor", "collapse_hom.json"), 0),
    (("factor", "into_m3_hom.json"), 1),
    (("factor", "3chain.json"), 2),
    (("tower", "3chain.json", "--depth", "3", "--variant", "zero-one"), 0),
    (("tower", "m3join.json"), 1),
    (("verify-cone", "s3_system.json"), 0),
    (("verify-cone", "bad_cone_system.json"), 1),
    (("verify-cone", "square.json", "--depth", "4"), 0),
    (("nabla", "trunc3.json"), 0),
    (("nabla", "3chain.json"), 2),
    (("idc", "z2.json"), 0),
    (("idc", "chainmonoid.json"), 0),
    (("rip-witness", "rip.json"), 0),
    (("temperate", "setlattice.json"), 0),
    (("lift", "lowerset_hom.json"), 0),
    (("lift", "chain_stages.json"), 0),
    (("lift", "3chain.json"), 2),
    (("bergman", "3chain.json", "--unital", "--depth", "4"), 0),
    (("bergman", "s3_system.json", "--af-cstar"), 0),
    (("bergman", "m3join.json"), 1),
    (("dot", "tower3.json"), 0),
    (("dot", "vposet.json"), 0),
    (("dot", "z2.json"), 2),
]


@pytest.mark.parametrize("argv,code", EXIT_CODES, ids=[" ".join(a) for a, _ in EXIT_CODES])
def test_exit_code_contract(argv, code):
    cmd, *rest = argv
    args = [cmd] + [d(a) if a.endswith(".json") else a for a in rest]
    got, out, err = run(*args)
    assert got == code, err
    if cmd != "dot" and code != 2:
        rep = json.loads(out)
        assert rep["ok"] == (code == 0)
    if code == 2:
        assert out == "" and err


GOLDEN = os.path.join(DATA, "golden")


@pytest.mark.parametrize("name", sorted(os.listdir(GOLDEN)) if os.path.isdir(GOLDEN) else [])
def test_golden_reports(name):
    case = json.loads(open(os.path.join(GOLDEN, name)).read())
    args = [d(a) if a.endswith(".json") else a for a in case["argv"]]
    code, out, _ = run(*args)
    assert code == case["exit"]
    assert out == case["stdout"]
