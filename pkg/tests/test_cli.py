import json

import pytest

from markedlin.algebra import QQ
from markedlin.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_UNSTABLE, run
from markedlin.serialize import instance_from_json, verdict_from_json
from markedlin.stability import Status, verify_witness

DIM_ONE = {"N": 1, "field": {"kind": "Q"}, "T": [[1, 0], [0, 2]], "points": [[1, 0], [1, 0]],
           "sheaf": {"q": 1, "m": [1, 1]}}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_census():
    code, out, _ = run(["census", "2"])
    assert code == EXIT_OK and out.strip() == "9 profiles"


def test_stability_dim_one(tmp_path):
    path = write(tmp_path, "i.json", DIM_ONE)
    code, out, _ = run(["stability", path])
    assert code == EXIT_OK
    assert "verdict: UNSTABLE" in out and "TYPE_I" in out
    code, _, _ = run(["stability", path, "--fail-on-unstable"])
    assert code == EXIT_UNSTABLE


def test_stability_json_round_trip(tmp_path):
    path = write(tmp_path, "i.json", DIM_ONE)
    code, out, _ = run(["stability", path, "--json"])
    rep = json.loads(out)
    inst = instance_from_json(rep["instance"])
    v = verdict_from_json(rep["verdict"], inst.mm.T.size, inst.mm.field)
    assert v.status is Status.UNSTABLE
    assert verify_witness(inst.mm, inst.sheaf, v.witness)
    assert rep["witness_verified"] is True


def test_reports_are_byte_identical(tmp_path):
    path = write(tmp_path, "i.json", DIM_ONE)
    assert run(["stability", path, "--json"]) == run(["stability", path, "--json"])
    assert run(["oracle-compare", "--samples", "5", "--seed", "7", "--json"]) == \
        run(["oracle-compare", "--samples", "5", "--seed", "7", "--json"])


def test_sweep_records_seed():
    code, out, _ = run(["oracle-compare", "--samples", "10", "--seed", "4", "--json"])
    rep = json.loads(out)
    assert code == EXIT_OK and rep["seed"] == 4 and rep["disagreements"] == 0


def test_manifest_order_is_kept(tmp_path):
    a = {"field": {"kind": "gfp", "p": 2}, "T": [[1, 0], [0, 1]], "points": [[1, 0]]}
    b = {"field": {"kind": "gfp", "p": 2}, "T": [[0, 1], [1, 0]], "points": [[1, 1]]}
    write(tmp_path, "b.json", b)
    man = write(tmp_path, "m.json", [a, "b.json"])
    code, out, _ = run(["oracle-compare", "--manifest", man, "--json"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert [r["instance"]["T"] for r in rep["results"]] == [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]


def test_profile_and_polytope():
    code, out, _ = run(["profile", "--matrix", "[[0,0,0],[1,0,0],[0,1,0]]", "--json"])
    rep = json.loads(out)
    assert rep["profile"] == {"word": "DDRDRR", "orientation": "lower"}
    assert rep["control_matrix"]["columns"] == [[-1, 0], [0, -1]]
    code, out, _ = run(["polytope", "--matrix", "[[0,1,0],[0,0,1],[0,0,0]]", "--json"])
    rep = json.loads(out)
    assert [f["c"] for f in rep["facets"]] == ["0", "0", "1"]


def test_classify_flag(tmp_path):
    path = write(tmp_path, "f.json", {"T": [[0, 1], [0, 0]], "flag": [[[1, 0]]]})
    code, out, _ = run(["classify-flag", path, "--json"])
    assert code == EXIT_OK and json.loads(out)["type"] == "TYPE_III"


def test_normal_form(tmp_path):
    path = write(tmp_path, "n.json", {"T": [[1, 0], [0, 2]], "points": [[1, 1]]})
    code, out, _ = run(["normal-form", path, "--json"])
    assert json.loads(out)["alpha"] == ["-2", "3"]
    bad = write(tmp_path, "b.json", {"T": [[0, 1], [0, 0]], "points": [[0, 1]]})
    assert run(["normal-form", bad])[0] == EXIT_INPUT


def test_reference_replay_reports_mismatch_count():
    code, out, _ = run(["verify-paper-examples", "--json"])
    rep = json.loads(out)
    assert rep["mismatches"] == sum(not c["ok"] for c in rep["checks"])
    assert code == (EXIT_OK if rep["mismatches"] == 0 else EXIT_MISMATCH)


@pytest.mark.parametrize("doc,needle", [
    ("{not json", "malformed JSON"),
    ({"T": [[1, 0], [0, 1]], "points": [[1, 0, 0]]}, "point of length"),
    ({"T": [[1, 0], [0, 1]], "points": [[1, 0]], "sheaf": {"q": 1, "m": [1, 1]}}, "weights"),
    ({"field": {"kind": "gfp", "p": 4}, "T": [[1]], "points": []}, "prime"),
    ({"T": [[0.5, 0], [0, 1]], "points": [[1, 0]]}, "floating"),
])
def test_input_errors(tmp_path, doc, needle):
    path = write(tmp_path, "bad.json", doc)
    code, out, err = run(["stability", path])
    assert code == EXIT_INPUT and out == ""
    assert needle in err


def test_budget_error(tmp_path):
    path = write(tmp_path, "g.json", {"field": {"kind": "gfp", "p": 3}, "T": [[1, 0, 0], [0, 2, 0], [0, 0, 1]],
                                      "points": [[1, 1, 1]], "sheaf": {"q": 1}})
    code, out, _ = run(["stability", path, "--mode", "exact", "--budget", "5", "--json"])
    assert code == EXIT_BUDGET and json.loads(out)["error"]["kind"] == "budget"


def test_exact_unavailable_is_an_input_error(tmp_path):
    doc = {"T": [[1, 1, 0], [0, 1, 1], [1, 0, 2]], "points": [[1, 0, 0], [0, 1, 0]]}
    path = write(tmp_path, "e.json", doc)
    assert run(["stability", path, "--mode", "exact"])[0] == EXIT_INPUT
    assert "SEARCH" in run(["stability", path])[1]


def test_field_is_reported():
    doc = {"field": {"kind": "gfp", "p": 5}, "T": [[1, 0], [0, 2]], "points": [[1, 1]]}
    inst = instance_from_json(doc)
    assert inst.mm.field != QQ and inst.mm.T.rows == ((1, 0), (0, 2))
