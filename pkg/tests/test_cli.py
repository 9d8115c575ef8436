"""Tests for the command-line interface."""

import json

import pytest

from pfaffian_atlas.cli import CommandConfig, main, run
from pfaffian_atlas.config import Settings

TABLEAU = '{"columns":[[1,3,4,5],[2,3],[2,5]]}'


def invoke(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def test_multiplicity(capsys):
    status, out = invoke(capsys, "multiplicity", "--alpha", "4,8,9,12", "--n", "15")
    assert status == 0
    data = json.loads(out)
    assert data["multiplicity"] == "50752"
    assert data["reduced_alpha"] == [1, 5, 6, 9]
    assert data["reduced_n"] == 12


def test_bkrs(capsys):
    status, out = invoke(capsys, "bkrs", "--tableau", TABLEAU)
    assert status == 0
    data = json.loads(out)
    assert data["monomial"] == [[[1, 3], 1], [[2, 5], 2], [[3, 4], 1]]
    assert data["width"] == 2


def test_krs(capsys):
    status, out = invoke(capsys, "krs", "--tableau", TABLEAU)
    assert status == 0
    assert json.loads(out)["monomial"] == [[[1, 3], 2], [[2, 5], 4], [[3, 4], 2]]


def test_bkrs_inverse(capsys):
    status, out = invoke(capsys, "bkrs-inverse", "--array", '{"pairs":[[5,2],[5,2],[4,3],[3,1]]}')
    assert status == 0
    assert json.loads(out)["columns"] == [[1, 3, 4, 5], [2, 3], [2, 5]]


def test_verify_gbasis_violation(capsys):
    status, out = invoke(capsys, "verify", "--check", "gbasis", "--alpha", "1,2,4,5", "--n", "6")
    assert status == 2
    data = json.loads(out)
    assert data["verified"] is False
    assert data["certificate"]["witness"] == [[[1, 3], 1], [[1, 5], 1], [[2, 4], 1]]


def test_verify_purity(capsys):
    status, out = invoke(capsys, "verify", "--check", "purity", "--alpha", "1,3,4,6", "--n", "6")
    assert status == 0
    assert json.loads(out)["corpus_size"] == 7


def test_generators_count_only(capsys):
    status, out = invoke(capsys, "generators", "--alpha", "1,2,4,5", "--n", "6", "--count-only")
    assert status == 0
    data = json.loads(out)
    assert data["count"] == 4
    assert "generators" not in data


def test_facets(capsys):
    status, out = invoke(capsys, "facets", "--alpha", "1,3,4,6", "--n", "6")
    data = json.loads(out)
    assert status == 0
    assert data["count"] == 7
    assert data["facet_size"] == 10
    assert data["facets"][0]["paths"][0] == [[1, 3], [1, 4]]


def test_counterexample(capsys):
    status, out = invoke(capsys, "counterexample", "--alpha", "1,2,4,5", "--n", "6")
    assert status == 0
    data = json.loads(out)
    assert data["gap_index"] == 2
    assert data["witness"] == [[[1, 3], 1], [[1, 5], 1], [[2, 4], 1]]


def test_pfaffian_text_output(capsys):
    status, out = invoke(capsys, "pfaffian", "--alpha", "1,2,3,4", "--n", "4", "--output", "text")
    assert status == 0
    assert "adiag: [[[1,4],1],[[2,3],1]]" in out.splitlines()
    assert "terms: 3" in out.splitlines()


def test_output_is_deterministic(capsys):
    _, first = invoke(capsys, "initial-ideal", "--alpha", "1,3,4,6", "--n", "6", "--minimal")
    _, second = invoke(capsys, "initial-ideal", "--alpha", "1,3,4,6", "--n", "6", "--minimal")
    assert first == second


@pytest.mark.parametrize("argv", [
    ["multiplicity", "--alpha", "1,2,2,5", "--n", "6"],
    ["multiplicity", "--alpha", "1,2,4,5", "--n", "6"],
    ["counterexample", "--alpha", "1,3,4,6", "--n", "6"],
    ["bkrs", "--tableau", "{not json"],
    ["verify", "--check", "purity"],
    ["generators", "--alpha", "1,2,4,5", "--n", "6", "--generator-cap", "0"],
])
def test_invalid_input_exits_one(capsys, argv):
    assert main(argv) == 1
    assert "error" in capsys.readouterr().err


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["no-such-command"])
    assert excinfo.value.code == 1


def test_run_with_config():
    config = CommandConfig(subcommand="multiplicity", alpha="1,3,4,6", n=6, settings=Settings())
    status, payload = run(config)
    assert status == 0
    assert payload["multiplicity"] == "7"
    assert [term["value"] for term in payload["terms"]] == [1, 1, 2, 3]
