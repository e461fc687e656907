import json

import pytest
from click.testing import CliRunner

from relcert import corpus
from relcert.cli import main


@pytest.fixture(scope="session")
def runner():
    return CliRunner()


def _path(name):
    return str(corpus.path(name))


def test_validate(runner):
    result = runner.invoke(main, ["validate", _path("c2of3")])
    assert result.exit_code == 0
    assert "valid: 3 objects" in result.output
    assert "two-out-of-three: False" in result.output


def test_nerve_homology_text_and_json(runner):
    result = runner.invoke(main, ["nerve-homology", _path("bz2"), "--d", "3"])
    assert result.exit_code == 0
    assert "H_1: Z/2" in result.output and "H_3: Z/2" in result.output
    as_json = runner.invoke(main, ["nerve-homology", _path("bz2"), "--d", "3", "--format", "json"])
    assert as_json.exit_code == 0
    json.loads(as_json.output)


def test_zigzag_enumeration(runner):
    result = runner.invoke(
        main, ["zigzag", _path("c2of3"), "--shape", "[-1,1,-1]", "--src", "0", "--tgt", "1"]
    )
    assert result.exit_code == 0
    assert result.output.splitlines()[0].endswith("zigzags")


def test_check_fibration_exit_codes(runner):
    ok = runner.invoke(main, ["check-fibration", _path("c2of3"), "--leg", "dom"])
    assert ok.exit_code == 0
    assert "verdict=True split=True" in ok.output
    shaped = runner.invoke(
        main, ["check-fibration", _path("c2of3"), "--leg", "dom", "--shape", "[-1,1,-1]"]
    )
    assert shaped.exit_code == 0


def test_two_sided(runner):
    result = runner.invoke(main, ["two-sided", _path("c2of3"), "--shape", "[-1,1,-1]"])
    assert result.exit_code == 0
    assert "canonical-iso: True" in result.output


def test_htac_pass_and_refuse(runner):
    ok = runner.invoke(main, ["htac", _path("c2of3"), "--K", "1"])
    assert ok.exit_code == 0
    assert "verdict=True" in ok.output
    refused = runner.invoke(main, ["htac", _path("htac_fail"), "--K", "2"])
    assert refused.exit_code == 1
    assert "failing cell" in refused.output


def test_hom_space(runner):
    result = runner.invoke(main, ["hom-space", _path("c2of3"), "--src", "0", "--tgt", "1"])
    assert result.exit_code == 0
    assert "kind=pasted verdict=True" in result.output


def test_classify_and_segal(runner):
    table = runner.invoke(main, ["classify", _path("c2of3"), "--n", "2"])
    assert table.exit_code == 0
    assert table.output.count("level") == 3
    seg = runner.invoke(main, ["segal", _path("c2of3"), "--n", "1"])
    assert seg.exit_code == 0
    assert "front-strict=True back-strict=True" in seg.output


def test_ho_hom_and_saturation(runner):
    hh = runner.invoke(main, ["ho-hom", _path("walkiso"), "--src", "a", "--tgt", "b", "--L", "2"])
    assert hh.exit_code == 0
    assert "1 classes" in hh.output
    sat = runner.invoke(main, ["saturation", _path("walkiso"), "--L", "1"])
    assert sat.exit_code == 0
    assert "2 violations" in sat.output


def test_completeness_exit_codes(runner):
    ok = runner.invoke(main, ["completeness", _path("c2of3"), "--L", "4"])
    assert ok.exit_code == 0
    assert "complete-at-(4,2)" in ok.output
    bad = runner.invoke(main, ["completeness", _path("walkiso"), "--L", "2"])
    assert bad.exit_code == 1


def test_verify_goldens(runner):
    for name in corpus.names():
        result = runner.invoke(main, ["verify", str(corpus.golden_path(name))])
        assert result.exit_code == 0, name
        assert "consistent=True" in result.output


def test_input_error_exit_code(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json", encoding="utf-8")
    result = runner.invoke(main, ["validate", str(bad)])
    assert result.exit_code == 2
    assert "error:" in result.output

    missing_comp = tmp_path / "broken.json"
    missing_comp.write_text(
        json.dumps(
            {
                "objects": [0, 1, 2],
                "morphisms": [
                    {"id": "i0", "src": 0, "tgt": 0},
                    {"id": "i1", "src": 1, "tgt": 1},
                    {"id": "i2", "src": 2, "tgt": 2},
                    {"id": "f", "src": 0, "tgt": 1},
                    {"id": "g", "src": 1, "tgt": 2},
                ],
                "identities": [[0, "i0"], [1, "i1"], [2, "i2"]],
                "composition": [],
                "weq_generators": [],
            }
        ),
        encoding="utf-8",
    )
    result = runner.invoke(main, ["validate", str(missing_comp)])
    assert result.exit_code == 2


def test_budget_exceeded_exit_code(runner):
    result = runner.invoke(main, ["htac", _path("c2of3"), "--K", "1", "--budget", "1"])
    assert result.exit_code == 2


def test_json_output_is_deterministic_across_jobs(runner, tmp_path):
    outputs = []
    for jobs in ("1", "4", "1"):
        out = tmp_path / f"htac-{len(outputs)}.json"
        result = runner.invoke(
            main,
            ["htac", _path("c2of3"), "--K", "1", "--jobs", jobs, "--format", "json", "--out", str(out)],
        )
        assert result.exit_code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_out_writes_file(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(
        main, ["nerve-homology", _path("pt"), "--format", "json", "--out", str(out)]
    )
    assert result.exit_code == 0
    assert out.is_file()
    json.loads(out.read_text(encoding="utf-8"))
