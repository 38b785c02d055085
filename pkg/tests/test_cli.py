import json

import pytest

pytest.importorskip("galois")

from gamma2kit.cli import EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def quick_settings(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("GAMMA2_RANDOM_WORDS", "20")
    monkeypatch.setenv("GAMMA2_RANDOM_WORD_LENGTH", "12")
    monkeypatch.setenv("GAMMA2_LEVEL2_SAMPLES", "20")
    monkeypatch.delenv("GAMMA2_FORMAT", raising=False)


def _run_json(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_eval_prints_all_three_images(capsys: pytest.CaptureFixture[str]) -> None:
    code, data = _run_json(capsys, "--genus", "3", "eval", "A2")
    assert code == EXIT_OK
    assert data["command"] == "eval"
    assert data["result"]["rho"] == [["1", "1"], ["0", "1"]]
    assert data["result"]["h1"] == [["1", "0", "0"], ["0", "0", "1"], ["0", "-1", "2"]]
    assert {check["name"] for check in data["checks"]} == {"determinant-unit", "torsion-fixed", "mod2-form-preserved"}
    assert all(check["status"] == "pass" for check in data["checks"])


def test_eval_of_the_empty_word(capsys: pytest.CaptureFixture[str]) -> None:
    code, data = _run_json(capsys, "--genus", "4", "eval")
    assert code == EXIT_OK
    assert data["result"]["rho"] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def test_csv_and_plain_renderers(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--genus", "3", "--format", "csv", "eval", "Y"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "section,key,value,params"
    assert "meta,genus,3," in lines
    assert "result,rho,-1 2;0 1," in lines
    assert {len(row.split(",", 3)) for row in lines} == {4}

    assert main(["--genus", "3", "--format", "plain", "eval", "Y"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "rho: -1 2;0 1" in out
    assert "[pass] torsion-fixed Y[1;1,2]" in out


def test_level2_accepts_matrices_and_words(capsys: pytest.CaptureFixture[str]) -> None:
    _, data = _run_json(capsys, "--genus", "3", "level2", "-1", "2", "0", "1")
    assert data["result"]["level2"] is True
    assert data["result"]["f"] == [["1", "1"], ["0", "0"]]

    _, data = _run_json(capsys, "--genus", "3", "level2", "A1")
    assert data["result"] == {"input": "word", "word": "A1", "level2": False}


def test_decompose_matrix(capsys: pytest.CaptureFixture[str]) -> None:
    code, data = _run_json(capsys, "--genus", "3", "decompose", "3 4 2 3")
    assert code == EXIT_OK
    assert data["result"]["stu"]
    assert data["result"]["mcg"]
    assert data["result"]["level2"]
    assert [check["name"] for check in data["checks"]] == ["stu-roundtrip", "mcg-roundtrip", "level2-roundtrip"]


def test_decompose_word_checks_the_word_problem(capsys: pytest.CaptureFixture[str]) -> None:
    code, data = _run_json(capsys, "--genus", "3", "decompose", "A1 A2")
    assert code == EXIT_OK
    assert data["result"]["word"] == "A1 A2"
    assert data["result"]["level2"] is None
    assert "mcg-equal" in [check["name"] for check in data["checks"]]


def test_decompose_random_is_seeded(capsys: pytest.CaptureFixture[str]) -> None:
    _, first = _run_json(capsys, "--genus", "3", "--seed", "11", "decompose", "--random")
    _, second = _run_json(capsys, "--genus", "3", "--seed", "11", "decompose", "--random")
    assert first == second
    assert first["result"]["input"] == "random"


def test_decompose_outside_genus_three_is_a_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--genus", "4", "decompose", "1 0 0 1"]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_syntax_errors_are_usage_errors(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--genus", "3", "eval", "A1A2"]) == EXIT_USAGE
    assert "position 2" in capsys.readouterr().err
    assert main(["--genus", "1", "eval", ""]) == EXIT_USAGE


def test_syntax_errors_point_at_the_offending_text(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--genus", "3", "eval", "A1 A2 Q"]) == EXIT_USAGE
    err = capsys.readouterr().err.splitlines()
    assert err[1:] == ["  A1 A2 Q", "        ^"]


def test_catalog_and_rank(capsys: pytest.CaptureFixture[str]) -> None:
    _, data = _run_json(capsys, "--genus", "3", "catalog")
    assert data["result"]["size"] == 4
    assert [e["label"] for e in data["result"]["elements"]][0] == "Y[1;1,2]"

    _, data = _run_json(capsys, "--genus", "4", "catalog", "--alt")
    assert data["result"]["alternative"] is True
    assert data["result"]["elements"][-1]["label"] == "T[1,2,3,4]^2"

    code, data = _run_json(capsys, "--genus", "4", "rank")
    assert code == EXIT_OK
    assert data["result"]["rank"] == data["result"]["target"] == 9
    assert len(data["result"]["witness_labels"]) == 9


def test_verify_is_deterministic(capsys: pytest.CaptureFixture[str]) -> None:
    code, first = _run_json(capsys, "--genus", "3", "verify")
    assert code == EXIT_OK
    assert first["result"]["failures"] == 0
    assert first["result"]["total"] == len(first["checks"])
    _, second = _run_json(capsys, "--genus", "3", "verify")
    assert first == second


def test_decompose_identity_and_y(capsys: pytest.CaptureFixture[str]) -> None:
    _, data = _run_json(capsys, "--genus", "3", "decompose", "1 0 0 1")
    assert (data["result"]["stu"], data["result"]["mcg"], data["result"]["level2"]) == ("", "", "")

    _, data = _run_json(capsys, "--genus", "3", "decompose", "-1", "2", "0", "1")
    assert data["result"]["level2"] == "Y[1;1,2]"


def test_odd_twist_is_a_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--genus", "4", "eval", "T[1,2,3]"]) == EXIT_USAGE
    assert "one-sided" in capsys.readouterr().err


def test_genus_four_catalog_and_genus_three_rank(capsys: pytest.CaptureFixture[str]) -> None:
    _, data = _run_json(capsys, "--genus", "4", "catalog")
    assert len(data["result"]["elements"]) == 10
    _, data = _run_json(capsys, "--genus", "3", "rank")
    assert data["result"]["rank"] == 4
