import json

import pytest

from galcoh.cli import InputError, main, parse_spec, run

TRIVIAL_C2 = {"group": {"kind": "cyclic", "order": 2},
              "module": {"invariants": [2], "action": {"g": [[1]]}}}

S3_ON_F2 = {"group": {"kind": "table", "table": [[0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3],
                                                [2, 0, 1, 5, 3, 4], [3, 5, 4, 0, 2, 1],
                                                [4, 3, 5, 1, 0, 2], [5, 4, 3, 2, 1, 0]],
                      "generators": {"r": 1, "s": 3}},
            "module": {"invariants": [2, 2], "action": {"r": [[0, 1], [1, 1]], "s": [[0, 1], [1, 0]]}},
            "subgroup": [0, 3]}


def call(capsys, tmp_path, command, doc=None, *flags):
    argv = [command, *flags]
    if doc is not None:
        path = tmp_path / "in.json"
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc, indent=2))
        argv += ["--input", str(path)]
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    job = parse_spec(json.dumps(TRIVIAL_C2))
    assert job.inputs["module"].is_trivial_action()
    job = parse_spec(json.dumps({"group": {"kind": "table", "table": [[0]]}}), "cohomology")
    assert job.inputs["group"].order == 1


def test_non_involution_named():
    doc = json.dumps({"group": {"kind": "cyclic", "order": 2},
                      "module": {"invariants": [5], "action": {"g": [[2]]}}}, indent=2)
    with pytest.raises(InputError, match="'g'"):
        parse_spec(doc)


def test_syntax_error_has_position():
    with pytest.raises(InputError, match="line 2"):
        parse_spec('{"group":\n  {"kind": cyclic}}')


def test_cohomology_degree_zero_is_fixed_points(capsys, tmp_path):
    doc = {"group": {"kind": "cyclic", "order": 2},
           "module": {"invariants": [4], "action": {"g": [[3]]}}}
    code, out, _ = call(capsys, tmp_path, "cohomology", doc, "--degree", "0", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["results"][0]["invariant_factors"] == [2]
    assert set(rep) == {"command", "inputs_echo", "results", "checks"}


def test_local_example(capsys, tmp_path):
    code, out, _ = call(capsys, tmp_path, "local", None, *"--p 2 --e 1 --f 1 --a 1 --l 2".split(),
                        "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert any(r["name"].startswith("K^x/(K^x)^2") and r["order"] == 8 for r in rep["results"])
    assert all(c["pass"] and c["lhs"] == -1 for c in rep["checks"])


@pytest.mark.parametrize("command", ["cohomology", "tate", "maps", "shapiro", "les", "reptheory"])
def test_commands_on_s3(capsys, tmp_path, command):
    doc = dict(S3_ON_F2)
    if command == "les":
        doc = {**doc, "submodule": [[1, 1]]}
        doc["module"] = {"invariants": [2, 2], "action": {"r": [[1, 0], [0, 1]], "s": [[0, 1], [1, 0]]}}
    code, out, err = call(capsys, tmp_path, command, doc, "--format", "json")
    assert code == 0, err
    rep = json.loads(out)
    assert rep["command"] == command
    assert all(c["pass"] for c in rep["checks"])


def test_round_trip_is_byte_identical(capsys, tmp_path):
    code, first, _ = call(capsys, tmp_path, "maps", S3_ON_F2, "--format", "json", "--seed", "3")
    assert code == 0
    code, second, _ = call(capsys, tmp_path, "maps", first, "--format", "json")
    assert code == 0 and second == first


def test_reruns_are_deterministic(capsys, tmp_path):
    runs = [call(capsys, tmp_path, "verify", None, "herbrand", "--trials", "20", "--seed", "5",
                 "--format", "json")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_exit_codes(capsys, tmp_path):
    assert call(capsys, tmp_path, "arch", {"places": [{"kind": "real", "module": {
        "invariants": [3], "action": {"g": [[2]]}}}]})[0] == 0
    ledger = {"places": [{"kind": "real", "module": {"invariants": [3], "action": {"g": [[1]]}}}],
              "module_order": 3}
    assert call(capsys, tmp_path, "global-ledger", {**ledger, "orders": [3, 3, 1]})[0] == 0
    assert call(capsys, tmp_path, "global-ledger", {**ledger, "orders": [3, 9, 1]})[0] == 1
    assert call(capsys, tmp_path, "cohomology", '{"group": ')[0] == 2
    assert call(capsys, tmp_path, "cohomology", {"group": {"kind": "table", "table": [[0, 1], [0, 0]]}})[0] == 2
    big = {"group": {"kind": "cyclic", "order": 8},
           "module": {"invariants": [2, 2, 2, 2], "action": {}}}
    code, _, err = call(capsys, tmp_path, "cohomology", big, "--degree", "4")
    assert code == 3 and "exceeds budget" in err


def test_non_multiplicative_action_reports_pair(capsys, tmp_path):
    doc = {"group": {"kind": "product", "factors": [{"kind": "cyclic", "order": 2},
                                                   {"kind": "cyclic", "order": 2}]},
           "module": {"invariants": [2, 2], "action": {"g0": [[1, 1], [0, 1]], "g1": [[1, 0], [1, 1]]}}}
    code, _, err = call(capsys, tmp_path, "cohomology", doc)
    assert code == 2 and "g0" in err and "g1" in err


def test_run_returns_schema():
    rep = run(parse_spec(json.dumps(TRIVIAL_C2), "tate"))
    assert {"name", "invariant_factors", "order"} <= set(rep["results"][0])
    assert all({"name", "pass", "lhs", "rhs"} == set(c) for c in rep["checks"])


def test_text_output(capsys, tmp_path):
    code, out, _ = call(capsys, tmp_path, "cohomology", TRIVIAL_C2, "--degree", "1")
    assert code == 0 and "H^1" in out
