import json

import pytest

from reeslab import corpus
from reeslab.cli import main
from reeslab.errors import SchemaError
from reeslab.selfsim import ReesElement
from reeslab.serialize import dump, dump_element, dumps, load, load_element, loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


@pytest.mark.parametrize("kind,name", [(k, n) for k, names in corpus.listing().items() for n in names])
def test_corpus_round_trip(kind, name):
    obj = corpus.lookup(name, (kind,))[1]
    doc = dump(obj, name)
    assert doc["kind"] == kind
    kind2, back = loads(json.dumps(doc))
    assert kind2 == kind
    assert dump(back, name) == doc


def test_group_reference_by_name():
    doc = dump(corpus.action("c2-swap"))
    doc["group"] = "C2"
    _, a = load(doc, corpus.group)
    assert a.same_tables(corpus.action("c2-swap"))
    with pytest.raises(SchemaError):
        load(doc)


def test_permutation_group_doc():
    _, G = load({"kind": "group", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})
    assert G.order == 6


def test_schema_errors():
    with pytest.raises(SchemaError):
        load({"mul": [[0]]})
    with pytest.raises(SchemaError):
        load({"kind": "nonsense"})
    with pytest.raises(SchemaError):
        load({"kind": "action", "group": "C2", "alphabet": ["a"]}, corpus.group)
    with pytest.raises(SchemaError):
        load({"kind": "action", "group": "C2", "alphabet": ["a"], "act": [[0]], "res": [[0]]}, corpus.group)


def test_element_round_trip():
    e = ReesElement((0, 1), 1)
    assert load_element(dump_element(e)) == e
    with pytest.raises(SchemaError):
        load_element({"word": "ab"})


def test_dumps_rejects_unknown():
    with pytest.raises(TypeError):
        dumps(object())


# ----------------------------------------------------------------------------- CLI


def test_cli_validate(capsys, tmp_path):
    assert run(capsys, "validate", "c2-swap") == (0, "OK", "")
    bad = dump(corpus.broken_ss8())
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1
    report = json.loads(out)
    assert report["axiom"] == "SS8" and report["witness"] == [1, 1, 0]


def test_cli_parse_failures(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert run(capsys, "validate", str(path))[0] == 2
    path.write_text(json.dumps({"kind": "action", "group": "C2"}))
    assert run(capsys, "validate", str(path))[0] == 2
    assert run(capsys, "mul", "c2-swap", "(zz,1)", "(a,1)")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_cli_unknown_name(capsys):
    code, _, err = run(capsys, "analyze", "nothing-here")
    assert code == 1 and "nothing" in err


def test_cli_mul_and_green(capsys):
    assert run(capsys, "mul", "c2-swap", "(a,s)", "(b,1)")[:2] == (0, "(aa,1)")
    assert run(capsys, "green", "c2-swap", "R", "(a,1)", "(a,s)")[:2] == (0, "true")
    assert run(capsys, "green", "c2-swap", "R", "(a,1)", "(b,1)")[:2] == (0, "false")


def test_cli_analyze_and_kernel(capsys):
    code, out, _ = run(capsys, "analyze", "c2-kernel")
    rep = json.loads(out)
    assert code == 0 and rep["right_cancellative"] is False and rep["kernel_size"] == 2
    code, out, _ = run(capsys, "kernel", "c2-flat")
    k = json.loads(out)
    assert k["size"] == 2 and k["bruteforce_agrees"] and k["quotient"]["kind"] == "action"


def test_cli_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "c2-flat", "(aab,s)")
    d = json.loads(out)
    assert [r["word"] for r in d["runs"]] == [["a", "a"], ["b"]] and d["unit"] == "s"


def test_cli_tensor(capsys):
    assert run(capsys, "tensor", "eq", "free2", "a*b", "a*b")[:2] == (0, "true")
    assert run(capsys, "tensor", "eq", "free2", "a*b", "b*a")[:2] == (0, "false")
    assert run(capsys, "tensor", "mul", "free2", "a", "b*b")[:2] == (0, "a*b*b")
    code, out, _ = run(capsys, "tensor", "length", "s3-a3", "[0,1,2]")
    assert json.loads(out) == {"length": 3, "ideal_chain": 4, "audit_ok": True}
    code, out, _ = run(capsys, "tensor", "equidiv", "free2", "a", "b*a", "a*b", "a")
    assert json.loads(out) == {"side": "left", "witness": "b"}
    assert run(capsys, "tensor", "eq", "free2", "a")[0] == 2


def test_cli_hnn(capsys):
    assert run(capsys, "hnn", "eq", "bs12", "t^-1 2 t", "1")[:2] == (0, "true")
    assert run(capsys, "hnn", "reduce", "bs12", "t^-1 2 t")[:2] == (0, "1")
    assert run(capsys, "hnn", "reduce", "c2-swap", "s t t^-1 s")[:2] == (0, "1")
    code, out, _ = run(capsys, "hnn", "embed-check", "c2-twist", "--max-len", "3")
    assert code == 0 and json.loads(out)["injective"]
    code, out, _ = run(capsys, "hnn", "embed-check", "rees-c4-square", "--max-len", "3")
    assert code == 1 and "collision" in json.loads(out)
    code, out, _ = run(capsys, "hnn", "embed-check", "free2", "--max-len", "2")
    assert code == 0


def test_cli_construct(capsys):
    code, out, _ = run(capsys, "construct", "rees", "C4", "--alpha", "1,r2,1,r2", "--name", "sq")
    a = json.loads(out)
    assert code == 0 and a["res"] == [[0], [2], [0], [2]]
    code, out, _ = run(capsys, "construct", "recurrent", "C4", "--alpha", "1,r3,r2,r")
    assert code == 0 and json.loads(out)["res"] == [[0], [3], [2], [1]]
    code, out, _ = run(capsys, "construct", "recurrent", "C4", "--alpha", "1,r2,1,r2")
    assert code == 1 and json.loads(out)["ok"] is False
    code, out, _ = run(capsys, "construct", "group-data", "s3-a3-identity")
    assert code == 0 and len(json.loads(out)["alphabet"]) == 2
    code, out, _ = run(capsys, "construct", "covering", "c2-bifree")
    assert code == 0 and len(json.loads(out)["alphabet"]) == 2
    assert run(capsys, "construct", "rees", "C4")[0] == 2


def test_cli_corpus(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "bs12" in out
    code, out, _ = run(capsys, "corpus", "show", "bs23")
    assert json.loads(out)["integer"] == {"m": 2, "n": 3}
    code, out, _ = run(capsys, "corpus", "list", "--json")
    assert "action" in json.loads(out)
