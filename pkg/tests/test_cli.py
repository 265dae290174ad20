"""End-to-end runs of the command line."""

import json
import logging

import pytest

from src.cli import main


@pytest.fixture
def run(tmp_path, capsys):
    """Run the CLI against an isolated output directory; returns (code, stdout)."""

    def _run(*argv):
        code = main(["--out", str(tmp_path / "out"), "--log-level", "WARNING", *argv])
        return code, capsys.readouterr().out

    yield _run
    logging.getLogger().handlers.clear()


def _record(run, *argv):
    code, out = run("--json", *argv)
    assert code == 0
    return json.loads(out)


def test_classes_text_report(run):
    code, out = run("classes", "sym:4")
    assert code == 0
    assert "sym:4: order 24, 5 classes" in out


def test_classes_json_record(run):
    record = _record(run, "classes", "sl2:gf2_2")
    assert record["command"] == "classes"
    assert record["outputs"]["order"] == 60
    assert sorted(c["size"] for c in record["outputs"]["classes"]) == [1, 12, 12, 15, 20]
    assert record["config"]["groups"] == "sym:2..5"


def test_repeated_run_is_served_from_the_cache(run, tmp_path):
    first = run("--json", "ct", "sl2:gf2_2")
    second = run("--json", "ct", "sl2:gf2_2")
    assert first == second
    assert len(list((tmp_path / "out" / "records").glob("*.json"))) == 1


def test_no_cache_leaves_no_records(run, tmp_path):
    code, _ = run("--no-cache", "ct", "sl2:gf2_1")
    assert code == 0
    assert not list((tmp_path / "out" / "records").glob("*.json"))


def test_centralizer_report(run):
    outputs = _record(run, "centralizer", "sl2:gf2_2", "[[2,0],[0,3]]")["outputs"]
    assert outputs["order"] == 3
    assert outputs["agreement"] is True
    assert outputs["non_ct_witness"] is False


def test_ct_fails_over_gf3(run):
    outputs = _record(run, "ct", "sl2:gfp_3")["outputs"]
    assert outputs["holds"] is False
    assert len(outputs["witness"]) == 3


def test_icc_with_growth(run):
    outputs = _record(run, "icc", "sl2:gf2_2", "[[2,0],[0,3]]", "--degrees", "2,4")["outputs"]
    assert len(outputs["conjugates"]) == 3
    assert [row["class_size"] for row in outputs["growth"]] == [20, 272]


def test_cfolner_search(run):
    outputs = _record(run, "cfolner", "sym:3", "--epsilon", "1/2")["outputs"]
    assert outputs["status"] == "exact"
    assert outputs["certificate"]["T"]


def test_folner_exhausted_is_a_refusal(run):
    code, out = run("folner", "sym:3", "--epsilon", "1/2", "--min-size", "7")
    assert code == 2
    assert "No witness" in out


def test_folner_given_T_refused(run):
    code, _ = run("folner", "sym:3", "--epsilon", "1/2", "--S", "(1 2)", "--T", "e")
    assert code == 2


def test_folner_given_T_certified(run):
    outputs = _record(
        run, "folner", "sym:3", "--epsilon", "1/2", "--S", "(1 2)", "--T", "e;(1 2)",
    )["outputs"]
    assert outputs["status"] == "certified"
    assert outputs["certificate"]["defect"] == "0/1"


def test_budget_exhaustion(run):
    code, _ = run("--budget", "10", "folner", "sym:4", "--epsilon", "1/3")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["classes", "alt:4"],
    ["centralizer", "sym:3", "(1 2)"],
    ["folner", "sym:3", "--epsilon", "0.5"],
    ["fo", "sym:3", "--sentence", "A x. ("],
])
def test_input_errors(run, argv):
    code, _ = run(*argv)
    assert code == 4


def test_fo_named_sentence_over_a_family(run):
    outputs = _record(run, "fo", "sym:2..3", "--named", "commutativity")["outputs"]
    assert [r["value"] for r in outputs["results"]] == [True, False]
    assert "counterexample" in outputs["results"][1]


def test_fo_sentence_file(run, tmp_path):
    path = tmp_path / "sentences.fo"
    path.write_text("# two sentences\nA x. x * e = x\n\nE x. x != e\n", encoding="utf-8")
    outputs = _record(run, "fo", "cyclic:1", str(path))["outputs"]
    assert [(r["line"], r["value"]) for r in outputs["results"]] == [(2, True), (4, False)]


def test_fo_folner_sentence(run):
    outputs = _record(run, "fo", "sym:3", "--folner", "1,2", "--mode", "translation")["outputs"]
    assert len(outputs["results"]) == 1


def test_fo_without_sentence(run):
    code, _ = run("fo", "sym:3")
    assert code == 4


def test_freewords(run):
    outputs = _record(run, "freewords", "--max-len", "3")["outputs"]
    assert outputs["relations"] == []


def test_create_template(run, tmp_path):
    path = tmp_path / "folnerlab.ini"
    code, _ = run("--create-template", str(path))
    assert code == 0
    assert "GROUPS" in path.read_text(encoding="utf-8")


def test_missing_command(run):
    code, _ = run()
    assert code == 1


def test_cache_info_and_clear(run):
    run("classes", "sym:3")
    code, out = run("--json", "cache", "info")
    assert code == 0
    assert json.loads(out)["size"]["records"] == 1
    code, out = run("cache", "clear")
    assert code == 0
    assert "Removed 1 cached records" in out


def test_exclude_identity_flag(run):
    record = _record(run, "--exclude-identity", "false", "cfolner", "cyclic:6", "--epsilon", "1")
    assert record["inputs"]["exclude_identity"] is False
    assert record["outputs"]["certificate"]["T"] == ["int:0"]


def test_profile_writes_csv(run):
    outputs = _record(run, "--seed", "3", "profile", "sym:2..3", "--mode", "translation", "--n-range", "1..2")["outputs"]
    # generators, two random draws and adversarial per cell
    assert outputs["rows"] == 2 * 2 * 4
    with open(outputs["csv"], encoding="utf-8") as f:
        assert f.readline().startswith("# folnerlab-profile-csv")


def test_icc_escalates_through_the_tower(run):
    outputs = _record(run, "icc", "sl2:gf2_1", "[[1,1],[0,1]]", "--count", "3")["outputs"]
    assert outputs["degree"] == 2
    assert outputs["escalated"] is True
    assert len(set(outputs["conjugates"])) == 3
    assert all(c.endswith("@gf2_2") for c in outputs["conjugates"])
    code, out = run("--no-cache", "icc", "sl2:gf2_1", "[[1,1],[0,1]]", "--count", "3")
    assert code == 0
    assert "escalated to gf2_2" in out


def test_icc_escalation_follows_tower_levels(run, tmp_path):
    path = tmp_path / "flat.ini"
    path.write_text("TOWER_LEVELS = 1\n", encoding="utf-8")
    code, _ = run("--config", str(path), "icc", "sl2:gf2_1", "[[1,1],[0,1]]", "--count", "3")
    assert code == 4
    outputs = _record(run, "icc", "sl2:gf2_1", "[[1,1],[0,1]]", "--count", "1")["outputs"]
    assert outputs["escalated"] is False


def test_centralizer_reports_the_jordan_form(run):
    outputs = _record(run, "centralizer", "sl2:gf2_2", "[[2,0],[0,3]]")["outputs"]
    assert outputs["jordan"] is not None
    outputs = _record(run, "centralizer", "sl2:gfp_3", "[[1,1],[0,1]]")["outputs"]
    assert outputs["jordan"] is None


def test_folner_sweeps_the_configured_epsilons(run):
    record = _record(run, "folner", "sym:3")
    assert record["command"] == "folner_sweep"
    assert record["inputs"]["epsilons"] == ["1/1", "1/2", "1/3"]
    cells = record["outputs"]["cells"]
    assert len(cells) == 3
    assert all(c["group"] == "sym:3" and c["status"] == "exact" for c in cells)


def test_cfolner_sweeps_the_configured_groups(run, tmp_path):
    path = tmp_path / "sweep.ini"
    path.write_text("GROUPS = sym:2..3, cyclic:4\nEPSILONS = 1/2\n", encoding="utf-8")
    record = _record(run, "--config", str(path), "cfolner")
    assert record["command"] == "cfolner_sweep"
    assert [c["group"] for c in record["outputs"]["cells"]] == ["sym:2", "sym:3", "cyclic:4"]


def test_profile_defaults_to_the_configured_groups(run, tmp_path):
    path = tmp_path / "profile.ini"
    path.write_text("GROUPS = sym:2..3\nN_RANGE = 1..1\n", encoding="utf-8")
    record = _record(run, "--config", str(path), "profile", "--mode", "translation")
    assert record["inputs"]["family"] == ["sym:2", "sym:3"]
    assert record["outputs"]["rows"] == 2 * 1 * 4


def test_profile_lifted_sampler(run):
    record = _record(run, "profile", "sym:2..4", "--sampler", "lifted", "--mode", "translation", "--n-range", "1..2")
    assert record["inputs"]["samplers"] == ["lifted"]
    assert record["outputs"]["rows"] == 3 * 2 * 2


def test_fo_folner_excludes_the_identity_in_conjugation_mode(run):
    auto = _record(run, "fo", "sym:3", "--folner", "1,1")
    assert "!(t1 = e)" in auto["inputs"]["sentences"][0]
    translation = _record(run, "fo", "sym:3", "--folner", "1,1", "--mode", "translation")
    assert "!(t1 = e)" not in translation["inputs"]["sentences"][0]
    off = _record(run, "--exclude-identity", "false", "fo", "sym:3", "--folner", "1,1")
    assert "!(t1 = e)" not in off["inputs"]["sentences"][0]


def test_freewords_rejects_empty_length(run):
    code, _ = run("freewords", "--max-len", "0")
    assert code == 4
