import json
import re

import jsonschema
import pytest

from msoct.cli import main
from msoct.report import load_schema, rounded

PARABOLIC = ["--a", "1", "--x1", "1.7", "--x2", "3"]


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_case_parabolic(capsys):
    code, out, _ = run(capsys, "case", *PARABOLIC)
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, load_schema())
    assert rep["extrema"]["tau"] == pytest.approx(0.121766, abs=5e-6)
    assert rep["extrema"]["d_tau"] == pytest.approx(18.6065, abs=5e-4)
    assert rep["criticality"]["passes"]
    assert rep["spec"]["kind"] == "parabolic"


def test_case_elliptic_from_y(capsys):
    code, out, _ = run(capsys, "case", "--y", "0.5", "--x1", "2", "--x2", "6")
    assert code == 0
    rep = json.loads(out)
    assert rep["spec"]["kind"] == "elliptic"
    assert rep["extrema"]["M"] == pytest.approx(3.85532, abs=5e-5)


def test_case_hyperbolic_from_y(capsys):
    code, out, _ = run(capsys, "case", "--y", "0.5", "--kind", "hyperbolic", "--x1", "2.11803", "--x2", "4.06155")
    assert code == 0
    assert json.loads(out)["spec"]["a"] == pytest.approx(0.6)


def test_case_at_t(capsys):
    code, out, _ = run(capsys, "case", *PARABOLIC, "--t", "0.5")
    assert json.loads(out)["at_t"]["t"] == 0.5


@pytest.mark.parametrize("argv", [
    ["case", "--a", "1", "--x1", "3", "--x2", "1.7"],
    ["case", "--a", "1", "--y", "0.5", "--x1", "1.7", "--x2", "3"],
    ["case", "--x1", "1.7", "--x2", "3"],
    ["case", "--a", "1", "--x1", "nan", "--x2", "3"],
    ["case", "--y", "2", "--x1", "2", "--x2", "6"],
])
def test_bad_flags_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_pair_parabolic(capsys, tmp_path):
    path = tmp_path / "pair.json"
    code, _, _ = run(capsys, "pair", *PARABOLIC, "--d", "20", "--json", str(path))
    assert code == 0
    rep = json.loads(path.read_text())
    jsonschema.validate(rep, load_schema())
    pair = rep["pair"]
    assert pair["t"] < rep["extrema"]["tau"] < pair["t_prime"]
    assert pair["certificate"]["verdict"] == "not_equivalent"
    assert all(p["passes"] for p in pair["packings"])


@pytest.mark.parametrize("d", ["18.6", "29.0515"])
def test_pair_out_of_band(capsys, d):
    code, out, err = run(capsys, "pair", *PARABOLIC, "--d", d)
    assert code == 2
    assert "band" in err
    assert "pair" not in json.loads(out)


def test_json_is_deterministic_and_rounded(capsys):
    _, a, _ = run(capsys, "case", *PARABOLIC)
    _, b, _ = run(capsys, "case", *PARABOLIC)
    assert a == b
    for num in re.findall(r"-?\d+\.\d+(?:e-?\d+)?", a):
        digits = num.split("e")[0].replace("-", "").replace(".", "").lstrip("0")
        assert len(digits) <= 12


def test_rounded():
    assert rounded(1 / 3) == 0.333333333333
    assert rounded(1 + 2j) == [1.0, 2.0]
    assert rounded({"x": (float("inf"), True)}) == {"x": [None, True]}


def test_flow_figure(tmp_path):
    out = tmp_path / "flow.svg"
    assert main(["figure", "flow", *PARABOLIC, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.count('class="base"') == 3
    assert text.count('class="envelope"') == 2
    assert text.count('class="flowed"') == 12
    assert 'viewBox="0 0 1000 1000"' in text


def test_graph_figure_marks_extrema(tmp_path):
    out = tmp_path / "graph.svg"
    assert main(["figure", "graph", *PARABOLIC, "--out", str(out)]) == 0
    text = out.read_text()
    assert 'data-name="tau" data-t="0.121766"' in text
    assert 'data-name="m" data-t="0.866025"' in text


def test_sphere_figure(tmp_path):
    out = tmp_path / "sphere.svg"
    assert main(["figure", "sphere", *PARABOLIC, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.count('class="center"') == 6


@pytest.mark.parametrize("kind", ["flow", "graph", "sphere"])
def test_figures_are_byte_identical(tmp_path, kind):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    main(["figure", kind, "--y", "0.5", "--x1", "2", "--x2", "6", "--out", str(a)])
    main(["figure", kind, "--y", "0.5", "--x1", "2", "--x2", "6", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_figure_write_failure(tmp_path, capsys):
    out = tmp_path / "missing" / "flow.svg"
    assert main(["figure", "flow", *PARABOLIC, "--out", str(out)]) == 1
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []
