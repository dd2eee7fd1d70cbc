import json

import pytest

from nilinj import cli
from nilinj.reports import VerificationReport, dumps, emit_report
from nilinj.spec import SpecError, build_group, parse_group_spec
from nilinj.suites import exit_status, generated_family, run_suite

S3_GENS = {"construct": "generators", "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]}


def test_parse_examples():
    s = parse_group_spec({"construct": "symmetric", "n": 4})
    assert build_group(s).order == 24
    j = parse_group_spec('{"construct":"jrv","p":2,"a":1}')
    assert build_group(j).order == 24 and j.label == "jrv(2,1)"
    g = parse_group_spec(S3_GENS)
    assert build_group(g).order == 6


@pytest.mark.parametrize("doc", [
    {"construct": "symmetric", "n": 4},
    S3_GENS,
    {"construct": "direct", "factors": [{"construct": "symmetric", "n": 3}, {"construct": "cyclic", "n": 2}]},
    {"construct": "semidirect", "normal": {"construct": "cyclic", "n": 7}, "complement": {"construct": "cyclic", "n": 3},
     "action": {"1": [0, 2, 4, 6, 1, 3, 5]}},
])
def test_spec_round_trip(doc):
    s = parse_group_spec(doc)
    assert parse_group_spec(s.to_json()) == s
    assert parse_group_spec(json.dumps(doc)) == s


def test_semidirect_spec_builds_frobenius_group():
    C7 = build_group(parse_group_spec({"construct": "cyclic", "n": 7}))
    C3 = build_group(parse_group_spec({"construct": "cyclic", "n": 3}))
    square = [int(C7.mul(g, g)) for g in range(7)]
    doc = {"construct": "semidirect", "normal": {"construct": "cyclic", "n": 7},
           "complement": {"construct": "cyclic", "n": 3}, "action": {str(C3.generators[0]): square}}
    G = build_group(parse_group_spec(doc))
    assert G.order == 21 and not G.is_abelian()


@pytest.mark.parametrize("doc,field", [
    ({"construct": "monster"}, "construct"),
    ({"construct": "symmetric"}, "'n'"),
    ({"construct": "symmetric", "n": "4"}, "spec.n"),
    ({"construct": "symmetric", "n": 4, "extra": 1}, "extra"),
    ({"construct": "generators", "degree": 3, "gens": [[0, 0, 1]]}, "gens[0]"),
    ({"construct": "direct", "factors": []}, "factors"),
    ({"construct": "direct", "factors": [{"construct": "nope"}]}, "factors[0]"),
    ({"construct": "semidirect", "normal": {"construct": "cyclic", "n": 7},
      "complement": {"construct": "cyclic", "n": 3}, "action": {"1": [0] * 7}}, "action"),
    ("{not json", "JSON"),
])
def test_spec_errors_name_the_field(doc, field):
    with pytest.raises(SpecError) as info:
        parse_group_spec(doc)
    assert field in str(info.value)


def test_emit_report_examples(tmp_path):
    assert dumps([]) == "[]"
    p = emit_report([], tmp_path / "empty.json")
    assert json.loads(p.read_text()) == []
    ok = VerificationReport("thmA", "pass", {"order": "24"}, {"m_G": 2})
    data = json.loads(emit_report([ok], tmp_path / "one.json").read_text())
    assert len(data) == 1 and data[0]["status"] == "pass" and data[0]["values"]["m_G"] == "2"
    bad = VerificationReport("thmA", "fail", {"order": "24"}, {}, [{"order": 2, "elements": [0, 5]}])
    data = json.loads(dumps([bad]))
    assert data[0]["witnesses"][0]["elements"] == ["0", "5"]


def test_report_contract():
    with pytest.raises(ValueError):
        VerificationReport("x", "fail", {}, {})
    with pytest.raises(ValueError):
        VerificationReport("x", "maybe", {}, {})


def test_run_suite_examples():
    j21 = parse_group_spec({"construct": "jrv", "p": 2, "a": 1})
    (r,) = run_suite("thmC", [j21])
    assert r["status"] == "pass"
    assert (r["values"]["theta"], r["values"]["injector_order"], r["values"]["ratio"]) == ("-4", "8", "-2")
    s34 = parse_group_spec({"construct": "direct", "factors": [{"construct": "symmetric", "n": 3},
                                                               {"construct": "symmetric", "n": 4}]})
    thm_b = [r for r in run_suite("thmB", [s34]) if r["check"] == "thmB"]
    assert thm_b[0]["status"] == "pass" and int(thm_b[0]["values"]["theta_at_F"]) % 2 == 0
    (d,) = run_suite("thmD")
    assert d["status"] == "pass" and (d["values"]["nu"], d["values"]["divisor"]) == ("972", "243")


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("thmZ")


def test_family_shape():
    fam = generated_family()
    labels = [s.label for s in fam]
    assert len(set(labels)) == len(labels)
    assert "symmetric(3) x symmetric(4)" in labels and "jrv(2,2)" in labels
    orders = {s.label: build_group(s).order for s in fam}
    assert all(o <= 400 for o in orders.values())
    small = generated_family(30, extras=False)
    assert all(build_group(s).order <= 30 for s in small)


def test_reports_are_deterministic_and_parallel_safe():
    fam = generated_family(60)
    serial = run_suite("thmA", fam)
    again = run_suite("thmA", fam)
    parallel = run_suite("thmA", fam, jobs=3)
    assert json.dumps(serial, sort_keys=True) == json.dumps(again, sort_keys=True)
    assert json.dumps(serial, sort_keys=True) == json.dumps(parallel, sort_keys=True)


def test_exit_status():
    assert exit_status([]) == 0
    assert exit_status([{"status": "pass"}, {"status": "boundary"}, {"status": "empirical"}]) == 0
    assert exit_status([{"status": "skipped-cap"}, {"status": "pass"}]) == 2
    assert exit_status([{"status": "skipped-cap"}, {"status": "fail"}]) == 1


def test_cap_becomes_skipped():
    big = parse_group_spec({"construct": "symmetric", "n": 4})
    reports = run_suite("thmA", [big], caps={"max_lattice_order": 10})
    assert [r["status"] for r in reports] == ["skipped-cap"]
    assert exit_status(reports) == 2


@pytest.fixture
def spec_file(tmp_path):
    def write(doc):
        p = tmp_path / "g.json"
        p.write_text(json.dumps(doc))
        return str(p)
    return write


def test_cli_verbs(spec_file, tmp_path, capsys):
    path = spec_file({"construct": "symmetric", "n": 4})
    assert cli.main(["construct", "--spec", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["fingerprint"]["order"] == "24" and out["spec"] == {"construct": "symmetric", "n": 4}
    assert cli.main(["lattice", "--spec", path]) == 0
    assert json.loads(capsys.readouterr().out)["subgroups"] == "30"
    assert cli.main(["injectors", "--spec", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["m_G"], out["index"], out["injectors"]) == ("2", "3", "3")
    assert cli.main(["carter", "--spec", path]) == 0
    assert json.loads(capsys.readouterr().out)["carters"] == "3"
    assert cli.main(["mobius", "--spec", path]) == 0
    assert json.loads(capsys.readouterr().out)["theta"]["F"] == "-2"
    assert cli.main(["mobius", "--spec", path, "--poset", "nilpotent"]) == 0
    assert json.loads(capsys.readouterr().out)["theta"]["1"] == "-4"
    report = tmp_path / "r.json"
    assert cli.main(["verify", "--check", "thmA", "--spec", path, "--out", str(report)]) == 0
    assert {r["status"] for r in json.loads(report.read_text())} == {"pass"}


def test_cli_exit_codes(spec_file, capsys):
    path = spec_file({"construct": "symmetric", "n": 4})
    assert cli.main(["verify", "--check", "thmA", "--spec", path, "--max-order", "10"]) == 2
    assert cli.main(["lattice", "--spec", path, "--max-order", "10"]) == 2
    bad = spec_file({"construct": "symmetric"})
    assert cli.main(["lattice", "--spec", bad]) == 1
    capsys.readouterr()


def test_cli_survey_appends_json_lines(tmp_path):
    out = tmp_path / "survey.jsonl"
    assert cli.main(["survey", "--max-order", "24", "--out", str(out)]) == 0
    first = out.read_text().splitlines()
    assert cli.main(["survey", "--max-order", "24", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2 * len(first)
    records = [json.loads(x) for x in first]
    assert all(parse_group_spec(r["spec"]).label == r["label"] for r in records)
    s4 = next(r for r in records if r["label"] == "symmetric(4)")
    assert s4["question_one"] == {"injector_order": "8", "ratio": "-2", "theta_nilpotent": "-4"}
    assert s4["question_scan"]["consistent"] is True
