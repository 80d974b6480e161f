import json
from io import StringIO
from pathlib import Path

import pytest

from heytinglab import cli, corpus
from heytinglab.frames import Frame
from heytinglab.suites import run_suites

INPUTS = Path(__file__).resolve().parent.parent / "demos" / "inputs"


def call(*argv):
    out, err = StringIO(), StringIO()
    code = cli.run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def three_chain(tmp_path):
    p = tmp_path / "three_chain.top"
    p.write_text(corpus.topology_text("chain2"))
    return p


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_check_topology_ok(three_chain):
    code, out, _ = call("check-topology", three_chain)
    assert code == 0 and json.loads(out)["valid"]


def test_check_topology_reports_violations():
    code, out, _ = call("check-topology", INPUTS / "broken.top")
    rep = json.loads(out)
    assert code == 1 and not rep["valid"] and rep["violations"]


def test_frame_and_booleanize(three_chain):
    code, out, _ = call("frame", three_chain)
    assert code == 0 and json.loads(out)["elements"] == [[], ["0"], ["0", "1"]]
    code, out, _ = call("frame", three_chain, "--booleanize")
    rep = json.loads(out)
    assert rep["elements"] == [[], ["0", "1"]] and rep["is_boolean"]


def test_names_counts(three_chain):
    code, out, _ = call("names", three_chain)
    assert code == 0 and json.loads(out)["count"] == 3
    code, out, _ = call("names", three_chain, "--rank", 2, "--width", 2)
    assert json.loads(out)["count"] == 19


def test_eval_modes(three_chain, tmp_path):
    lem = write(tmp_path, "lem.hl", "let b = name{ empty: [0] }\nempty in b | ~(empty in b)\n")
    code, out, _ = call("eval", lem, three_chain)
    rep = json.loads(out)
    assert code == 0 and rep["value"] == ["0"] and not rep["is_top"]
    code, out, _ = call("eval", lem, three_chain, "--mode", "boolean")
    assert json.loads(out)["is_top"]


def test_eval_relativized_labels_universe(three_chain, tmp_path):
    src = write(tmp_path, "u.hl", "let a = check({{}})\nexists y. a in y\n")
    code, out, _ = call("eval", src, three_chain, "--mode", "relativized")
    rep = json.loads(out)
    assert code == 0 and rep["truncation"]["rank"] is None and rep["truncation"]["universe"] >= 1


def test_eval_bot_is_empty(three_chain, tmp_path):
    code, out, _ = call("eval", write(tmp_path, "b.hl", "bot\n"), three_chain)
    assert code == 0 and json.loads(out)["value"] == []


@pytest.mark.parametrize(
    "text,fragment",
    [("x in empty\n", "unbound identifier 'x'"), ("empty in (\n", "error:")],
)
def test_eval_input_errors(three_chain, tmp_path, text, fragment):
    code, out, err = call("eval", write(tmp_path, "bad.hl", text), three_chain)
    assert code == 2 and fragment in err and out == ""


def test_missing_file_exits_2(tmp_path):
    code, _, err = call("frame", tmp_path / "nope.top")
    assert code == 2 and "error" in err


def test_ceiling_exit_and_override(three_chain):
    assert call("names", three_chain, "--rank", 9)[0] == 3
    assert call("census", "--max-rank", 5)[0] == 3
    code, _, err = call("names", three_chain, "--rank", 4, "--width", 1, "--override-ceilings", "bogus=1")
    assert code == 2 and "unknown ceiling" in err
    code, out, _ = call("names", three_chain, "--rank", 4, "--width", 1, "--override-ceilings", "rank=4")
    assert code == 0 and json.loads(out)["rank"] == 4


def test_env_ceilings(three_chain, monkeypatch):
    monkeypatch.setenv("HEYTINGLAB_CEILINGS", "rank=1")
    assert call("names", three_chain, "--rank", 2)[0] == 3
    monkeypatch.setenv("HEYTINGLAB_CEILINGS", "rank=4")
    assert call("names", three_chain, "--rank", 4, "--width", 1)[0] == 0


def test_census_rows():
    code, out, _ = call("census", "--max-rank", 2)
    rows = json.loads(out)
    assert code == 0 and [r["set"] for r in rows] == ["{}", "{{}}", "{{},{{}}}"]
    assert call("census", "--min-size", 5, "--max-size", 3)[1].strip() == "[]"


def test_inductive(tmp_path):
    rules = write(tmp_path, "r.rules", "=> 0\n0 => 1\n0, 1 => 2\n3 => 3\n")
    code, out, _ = call("inductive", rules)
    rep = json.loads(out)
    assert code == 0 and rep["least_fixed_point"] == ["0", "1", "2"] and rep["minimal"]
    assert rep["stabilization_index"] == 2
    assert call("inductive", write(tmp_path, "bad.rules", "0 -> 1\n"))[0] == 2


def test_markdown_output(three_chain):
    code, out, _ = call("frame", three_chain, "--format", "md")
    assert code == 0 and out.startswith("# frame") and "**is_boolean**" in out
    code, out, _ = call("census", "--max-rank", 2, "--format", "md")
    assert "| bcst_regular |" in out.splitlines()[2]


def test_suite_filter_and_stream():
    code, out, err = call("suite", "--filter", "frame_core")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert {s["module"] for s in rep["suites"]} == {"frame_core"}
    assert all(line.startswith("PASS frame_core.") for line in err.splitlines())
    assert "seconds" not in out


def test_suite_md_carries_timing():
    code, out, _ = call("suite", "--filter", "hf_canonical", "--format", "md")
    assert code == 0 and "## timing" in out


class CorruptMeet(Frame):
    """A frame whose meet forgets one atom."""

    def meet_m(self, p, q):
        return (p & q) & ~1 if p & q != self.top_m else p & q


def test_fault_injection_is_caught():
    faulty = CorruptMeet(corpus.topology("chain2"), frame_id="chain2")
    (res,) = run_suites(frames=[faulty], filter_text="adjunction")
    assert not res.passed and "chain2" in res.detail
    out, err = StringIO(), StringIO()
    with pytest.raises(cli.Failure) as exc:
        cli.cmd_suite(cli.RunConfig("suite"), "adjunction", frames=[faulty], stream=err)
    assert not exc.value.report["passed"] and err.getvalue().startswith("FAIL")


def test_run_config_rejects_bad_values():
    with pytest.raises(Exception):
        cli.RunConfig("eval", rank=-1)
    with pytest.raises(Exception):
        cli.RunConfig("eval", mode="quantum")
