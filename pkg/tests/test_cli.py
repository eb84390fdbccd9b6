import json

import pytest

from truncs.cli import main
from truncs.formats import (
    InputError, element_from_text, frame_bundle_from_data, parse_json, poset_from_data,
    trunc_from_data,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_error_has_position():
    with pytest.raises(InputError) as e:
        parse_json('{"kind": \n  "finvec",, }')
    assert e.value.line == 2 and e.value.column is not None


def test_trunc_description():
    spec = trunc_from_data({"kind": "finvec", "unit": ["1/2", 3], "generators": [[1, 0]]})
    assert spec.carrier.dim == 2 and len(spec.generators) == 1
    with pytest.raises(InputError):
        trunc_from_data({"kind": "finvec", "unit": [0.5]})
    with pytest.raises(InputError):
        trunc_from_data({"kind": "finvec", "unit": [1], "generators": [[1, 2]]})
    with pytest.raises(InputError):
        trunc_from_data({"kind": "matrix"})


def test_element_text():
    c = trunc_from_data({"kind": "finvec", "unit": [1, 1]}).carrier
    assert element_from_text(c, "3, 1/2").coords[1].denominator == 2


def test_poset_and_filter():
    data = {"labels": ["a", "b"], "covers": [["a", "b"]], "filter": [["a"]]}
    L, F = frame_bundle_from_data(data)
    assert len(L) == 3 and len(F) == 2
    with pytest.raises(InputError):
        poset_from_data({"labels": ["a"], "covers": [["a", "z"]]})
    with pytest.raises(InputError):
        frame_bundle_from_data({"labels": ["a", "b"], "covers": [["a", "b"]], "filter": [["b"]]})


def test_check_axioms_exit_codes(capsys):
    assert run(capsys, "check-axioms", "--unit", "1,2", "--samples", "30")[0] == 0
    code, out, _ = run(capsys, "check-axioms", "--kind", "evseq", "--mutate", "identity",
                       "--samples", "30", "--format", "json")
    assert code == 1 and json.loads(out)["passed"] is False


def test_bad_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "finvec",\n "unit": [1,}')
    code, _, err = run(capsys, "kernel-frame", "--trunc", str(bad))
    assert code == 2 and "line 2" in err
    assert run(capsys, "check-axioms", "--unit", "1,x")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_kernel_frame_and_spectrum(capsys, tmp_path):
    dot = tmp_path / "k.dot"
    code, out, _ = run(capsys, "kernel-frame", "--unit", "1,1", "--format", "json", "--dot", str(dot))
    assert code == 0 and json.loads(out)["size"] == 4 and "digraph" in dot.read_text()
    code, out, _ = run(capsys, "spectrum", "--kind", "evseq", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["classification"]["unital"] is False and not data["isolated"]


def test_represent(capsys):
    code, out, _ = run(capsys, "represent", "--unit", "1,2", "--element", "3,1/2", "--format", "json")
    rep = json.loads(out)["representations"][0]
    assert code == 0 and rep["underline"][-1]["value"] == "{}"


def test_demo_and_induce(capsys):
    code, out, _ = run(capsys, "demo", "ex1")
    assert code == 0 and "frame maps K A -> K B: 1" in out
    code, out, _ = run(capsys, "induce-g", "--format", "json")
    assert code == 0 and json.loads(out)["unique"] is True
    code, _, _ = run(capsys, "induce-g", "--theta", "[[1, -1]]")
    assert code == 1


def test_reflect(capsys):
    code, out, _ = run(capsys, "reflect", "--kind", "evseq", "--samples", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["b0_is_top"] and data["factorizations"]["unique"] == 5


def test_frame_command(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"labels": ["a", "b", "c"], "covers": [["a", "c"], ["b", "c"]],
                             "filter": [["a", "b"]]}))
    code, out, _ = run(capsys, "frame", str(p), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["size"] == 5 and data["two_sub_F"]["size"] == 5 + 2


def test_suite_subset_and_mutation(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "suite", "--module", "lattice-core", "--samples", "10",
                       "--format", "json", "--output", str(out_path))
    assert code == 0 and out_path.read_text() == out
    code, out, _ = run(capsys, "suite", "--only", "check_axioms", "--mutate", "zero")
    assert code == 1 and "FAIL check_axioms" in out and "witness" in out
    assert run(capsys, "suite", "--only", "not an anchor")[0] == 2
