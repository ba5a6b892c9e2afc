"""Command-line interface: subcommands, formats, and exit codes."""

import io
import json

import pytest

from coxwide.cli import main

from conftest import make_aff_tri, make_c4, make_c5, make_g6, make_inf_pair

C5_TEXT = "\n".join(
    ["v s1; v s2; v s3; v s4; v s5"]
    + [f"e s{i} s{i % 5 + 1} 2" for i in range(1, 6)])

C4_TEXT = "\n".join(
    ["v s1; v s2; v s3; v s4"]
    + [f"e s{i} s{i % 4 + 1} 2" for i in range(1, 5)])

G6_TEXT = ("v s1; v s2; v s3; v s4; v a; v b\n"
           "e s1 s2 2; e s2 s3 2; e s3 s4 2; e s4 s1 2\n"
           "e a s1 2; e a s2 2; e a s3 2\n"
           "e b s2 2; e b s3 2; e b s4 2")

AFF_TRI_TEXT = "v a; v b; v c; e a b 3; e b c 3; e a c 3"

INF_PAIR_TEXT = "v a; v b"


@pytest.fixture
def c5_file(tmp_path):
    p = tmp_path / "c5.cox"
    p.write_text(C5_TEXT + "\n", encoding="utf-8")
    return str(p)


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.cox"
    p.write_text(C4_TEXT + "\n", encoding="utf-8")
    return str(p)


@pytest.fixture
def g6_file(tmp_path):
    p = tmp_path / "g6.cox"
    p.write_text(G6_TEXT + "\n", encoding="utf-8")
    return str(p)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# classify / constants


def test_classify_json(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["classify", c5_file])
    assert code == 0
    assert list(obj.keys()) == ["case", "racg", "constants", "ends",
                                "hypotheses", "witness"]
    assert obj["case"] == "Connected_LocallyConnected"
    assert obj["racg"] is True


def test_classify_pretty(capsys, c5_file):
    code, out, _ = run(capsys, ["classify", c5_file, "--format", "pretty"])
    assert code == 0
    assert out.startswith("case: Connected_LocallyConnected")
    assert "hypotheses:" in out


def test_classify_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(C4_TEXT))
    code, obj, _ = run_json(capsys, ["classify", "-"])
    assert code == 0
    assert obj["case"] == "EmptyBoundary_FiniteOrWide"


def test_constants(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["constants", c5_file])
    assert code == 0
    assert obj == {"V": 5, "M": 2, "R": 2}


# ---------------------------------------------------------------------------
# check


def test_check_wide_positive(capsys, c4_file):
    code, obj, _ = run_json(capsys, ["check", "wide", c4_file])
    assert code == 0
    assert obj["wide"] is True
    assert obj["decomposition"] is not None


def test_check_wide_negative(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["check", "wide", c5_file])
    assert code == 1
    assert obj == {"wide": False, "decomposition": None}


def test_check_wide_avoidant(capsys, c5_file, g6_file):
    code, obj, _ = run_json(capsys, ["check", "wide-avoidant", c5_file])
    assert code == 0 and obj["holds"] is True
    code, obj, _ = run_json(capsys, ["check", "wide-avoidant", g6_file])
    assert code == 1 and obj["holds"] is False
    assert len(obj["witness"]["pair"]) == 2
    assert obj["witness"]["blocking_set"]


def test_check_wsa(capsys, c5_file, c4_file):
    code, obj, _ = run_json(capsys, ["check", "wsa", c5_file])
    assert code == 0 and obj["holds"] is True
    code, obj, _ = run_json(capsys, ["check", "wsa", c4_file])
    assert code == 1 and obj["holds"] is False


def test_check_affine_free(capsys, c5_file, tmp_path):
    code, obj, _ = run_json(capsys, ["check", "affine-free", c5_file])
    assert code == 0 and obj == {"affine_free": True}
    p = tmp_path / "afftri.cox"
    p.write_text(AFF_TRI_TEXT, encoding="utf-8")
    code, obj, _ = run_json(capsys, ["check", "affine-free", str(p)])
    assert code == 1 and obj == {"affine_free": False}


def test_check_ends(capsys, c5_file, tmp_path):
    code, obj, _ = run_json(capsys, ["check", "ends", c5_file])
    assert code == 0
    assert obj["kind"] == "OneEnded"
    p = tmp_path / "pair.cox"
    p.write_text(INF_PAIR_TEXT, encoding="utf-8")
    code, obj, _ = run_json(capsys, ["check", "ends", str(p)])
    assert code == 0  # an ends verdict is informational, never negative
    assert obj["kind"] == "TwoEnded"


# ---------------------------------------------------------------------------
# word


def test_word_normalize(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["word", "normalize", c5_file,
                                     "--word", "s2 s1 s2"])
    assert code == 0
    assert obj == {"normal_form": ["s1"], "length": 1}


def test_word_geodesic(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["word", "geodesic", c5_file,
                                     "--word", "s1 s3 s1"])
    assert code == 0 and obj == {"geodesic": True}
    code, obj, _ = run_json(capsys, ["word", "geodesic", c5_file,
                                     "--word", "s1 s1"])
    assert code == 1 and obj == {"geodesic": False}


def test_word_ending_letters(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["word", "ending-letters", c5_file,
                                     "--word", "s1 s2"])
    assert code == 0
    assert obj == {"ending_letters": ["s1", "s2"]}


def test_word_wide_tail(capsys, c5_file, c4_file):
    code, obj, _ = run_json(capsys, ["word", "wide-tail", c5_file,
                                     "--word", "s1 s3"])
    assert code == 0
    assert obj == {"tail": [], "wide_subgraph": None}
    code, obj, _ = run_json(capsys, ["word", "wide-tail", c4_file,
                                     "--word", "s1 s3"])
    assert code == 0
    assert obj["tail"] == ["s1", "s3"]
    assert sorted(obj["wide_subgraph"]) == ["s1", "s2", "s3", "s4"]


def test_word_extend(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["word", "extend", c5_file,
                                     "--word", "s1", "--target-len", "6"])
    assert code == 0
    assert obj["word"] == ["s1", "s2", "s3", "s1", "s3", "s1"]


def test_word_extend_needs_target(capsys, c5_file):
    code, out, err = run(capsys, ["word", "extend", c5_file, "--word", "s1"])
    assert code == 2
    assert "target-len" in err


# ---------------------------------------------------------------------------
# ball / pencil / morse-window


def test_ball(capsys, c5_file, tmp_path):
    dot_file = tmp_path / "ball.dot"
    code, obj, _ = run_json(capsys, ["ball", c5_file, "--radius", "2",
                                     "--dot", str(dot_file)])
    assert code == 0
    assert list(obj.keys()) == ["radius", "elements", "edges"]
    assert len(obj["elements"]) == 21
    dot = dot_file.read_text(encoding="utf-8")
    assert dot.startswith("graph cayley_ball {")


def test_ball_dot_format(capsys, c5_file):
    code, out, _ = run(capsys, ["ball", c5_file, "--radius", "1",
                                "--format", "dot"])
    assert code == 0
    assert out.startswith("graph cayley_ball {")


def test_pencil(capsys, c4_file):
    code, obj, _ = run_json(capsys, ["pencil", c4_file,
                                     "--word", "s1 s3 s1 s3"])
    assert code == 0
    assert obj["positions"] == [1, 2, 3, 4]


def test_morse_window(capsys, c4_file, c5_file):
    code, obj, _ = run_json(capsys, ["morse-window", c4_file,
                                     "--word", "s1 s3 s1 s3", "-k", "2"])
    assert code == 1
    assert obj["passes"] is False
    assert obj["window"] == [1, 3]
    code, obj, _ = run_json(capsys, ["morse-window", c5_file,
                                     "--word", "s1 s3 s1", "-k", "1"])
    assert code == 0
    assert obj["passes"] is True


# ---------------------------------------------------------------------------
# fan / filter / mtf


def test_fan(capsys, c5_file):
    code, obj, _ = run_json(capsys, ["fan", c5_file, "--base", "",
                                     "-x", "s1", "-y", "s2"])
    assert code == 0
    assert obj["labels"] == ["s1", "s2", "s1", "s2"]
    assert obj["check"]["ok"] is True


def test_fan_blocked(capsys, g6_file):
    code, out, err = run(capsys, ["fan", g6_file, "--base", "s1 s3 s2 s4",
                                  "-x", "a", "-y", "b"])
    assert code == 1
    assert "construction impossible" in err


def test_filter(capsys, c5_file, tmp_path):
    dot_file = tmp_path / "filt.dot"
    code, obj, _ = run_json(capsys, [
        "filter", c5_file, "--alpha", "s1 s2 s3 s1 s3 s1",
        "--beta", "s2 s1 s3 s1 s3 s1", "--depth", "2",
        "--dot", str(dot_file)])
    assert code == 0
    assert list(obj.keys()) == ["alpha", "beta", "depth", "vertices",
                                "edges", "cells", "fans", "check"]
    assert len(obj["vertices"]) == 30
    assert obj["check"]["ok"] is True
    assert dot_file.read_text(encoding="utf-8").startswith("digraph")


def test_mtf(capsys, c5_file):
    code, obj, _ = run_json(capsys, [
        "mtf", c5_file, "--alpha", "s1 s3 s1 s3 s1 s3 s1 s3",
        "--beta", "s2 s4 s2 s4 s2 s4 s2 s4", "-n", "1", "--depth", "1"])
    assert code == 0
    assert list(obj.keys()) == ["alpha", "beta", "n", "sigma", "cases",
                                "rays", "tails", "boundaries", "filters",
                                "check"]
    assert obj["sigma"] == "s1 s2"
    assert len(obj["filters"]) == 2
    assert obj["check"]["ok"] is True


# ---------------------------------------------------------------------------
# output plumbing and error exits


def test_out_file_writes_json_and_prints_pretty(capsys, c5_file, tmp_path):
    out_file = tmp_path / "verdict.json"
    code, out, _ = run(capsys, ["classify", c5_file, "--out", str(out_file)])
    assert code == 0
    saved = json.loads(out_file.read_text(encoding="utf-8"))
    assert saved["case"] == "Connected_LocallyConnected"
    assert out.startswith("case: Connected_LocallyConnected")


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, ["classify", str(tmp_path / "no-such.cox")])
    assert code == 2
    assert "io error" in err


def test_malformed_graph_exits_2(capsys, tmp_path):
    p = tmp_path / "bad.cox"
    p.write_text("v a\nq nonsense\n", encoding="utf-8")
    code, _, err = run(capsys, ["classify", str(p)])
    assert code == 2
    assert "input error" in err


def test_unknown_generator_exits_2(capsys, c5_file):
    code, _, err = run(capsys, ["word", "normalize", c5_file, "--word", "zz"])
    assert code == 2
    assert "input error" in err


def test_non_geodesic_fan_base_exits_2(capsys, c5_file):
    code, _, err = run(capsys, ["fan", c5_file, "--base", "s1 s1",
                                "-x", "s2", "-y", "s3"])
    assert code == 2
    assert "input error" in err


def test_negative_radius_exits_2(capsys, c5_file):
    code, _, err = run(capsys, ["ball", c5_file, "--radius", "-1"])
    assert code == 2
    assert "input error" in err


def test_mtf_level_out_of_range_exits_2(capsys, c4_file):
    code, _, err = run(capsys, ["mtf", c4_file, "--alpha", "s1 s3",
                                "--beta", "s2 s4", "-n", "9"])
    assert code == 2
    assert "input error" in err


def test_orbit_cap_exits_2(capsys, c5_file):
    code, _, err = run(capsys, ["word", "normalize", c5_file,
                                "--word", "s1 s2", "--orbit-cap", "1"])
    assert code == 2
    assert "resource cap exceeded" in err


def test_dot_format_unavailable_exits_2(capsys, c5_file):
    code, _, err = run(capsys, ["classify", c5_file, "--format", "dot"])
    assert code == 2
    assert "input error" in err


def test_bad_subcommand_is_usage_error(capsys, c5_file):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", c5_file])
    assert exc.value.code == 2
