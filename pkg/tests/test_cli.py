"""Command-line entry points: exit codes, formats, determinism."""

import json

import pytest

from singval.cli import EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, EXIT_VERIFY, main

from conftest import CORPUS


def corpus_file(name):
    return str(CORPUS / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------------- happy path

def test_info_text(capsys):
    code, out, err = run(capsys, "info", corpus_file("cusp"))
    assert code == EXIT_OK and not err
    assert "branches: 1" in out
    assert "delta: 1" in out
    assert "conductor: [2]" in out
    assert "gorenstein by lengths: yes" in out
    assert "gorenstein by symmetry: yes" in out


def test_info_non_gorenstein(capsys):
    code, out, _ = run(capsys, "info", corpus_file("semigroup345"))
    assert code == EXIT_OK
    assert "type: 2" in out
    assert "gorenstein by lengths: no" in out
    assert "verdicts agree: yes" in out


def test_info_json(capsys):
    code, out, _ = run(capsys, "info", corpus_file("node"), "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["branches"] == 2
    assert data["delta"] == 1
    assert data["conductor"] == [1, 1]
    assert data["gorenstein_by_lengths"] is True


def test_ideal_info_text(capsys):
    code, out, _ = run(
        capsys, "ideal-info", corpus_file("semigroup345"), "--ideal", "can"
    )
    assert code == EXIT_OK
    assert "degree: 1" in out
    assert "self-dual direct: no" in out
    assert "routes agree: yes" in out


def test_series_text_with_specialization(capsys):
    code, out, _ = run(
        capsys, "series", corpus_file("cusp"), "--which", "pg",
        "--margin", "1", "--q", "2",
    )
    assert code == EXIT_OK
    assert "L^-1" in out
    assert "1/2" in out
    assert "1/8" in out


def test_series_json_round_trips(capsys):
    code, out, _ = run(
        capsys, "series", corpus_file("node"), "--which", "pg,lg",
        "--format", "json",
    )
    assert code == EXIT_OK
    data = json.loads(out)
    assert set(data["series"]) == {"pg", "lg"}
    assert data["ideal"] == "ring"


def test_series_on_abstract_table(capsys):
    code, out, _ = run(capsys, "series", corpus_file("abstract_e8"), "--which", "pg")
    assert code == EXIT_OK
    assert "pg" in out


def test_verify_corpus_all_ideals(capsys):
    for name in ["cusp", "e8", "semigroup345", "node", "tacnode"]:
        code, out, _ = run(capsys, "verify", corpus_file(name), "--all-ideals")
        assert code == EXIT_OK, name
        assert "result: pass" in out, name
        assert "0 failed" in out, name


def test_verify_abstract(capsys):
    code, out, _ = run(capsys, "verify", corpus_file("abstract_e8"))
    assert code == EXIT_OK
    assert "result: pass" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", corpus_file("cusp"), "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["result"] == "pass"
    assert data["counts"]["fail"] == 0
    assert all(row["status"] in {"pass", "fail", "skip", "defect"} for row in data["rows"])
    assert data["counts"]["pass"] > 0


def test_count_text(capsys):
    code, out, _ = run(
        capsys, "count", corpus_file("cusp"), "--q", "2", "--level", "4"
    )
    assert code == EXIT_OK
    assert "agreement: yes" in out
    assert "counted=8" in out


# ------------------------------------------------------------------ exit codes

def test_missing_file_is_input_error(capsys, tmp_path):
    code, _, err = run(capsys, "info", str(tmp_path / "nope.json"))
    assert code == EXIT_INPUT
    assert "cannot read" in err


def test_malformed_json_is_input_error(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json", encoding="utf-8")
    code, _, err = run(capsys, "info", str(p))
    assert code == EXIT_INPUT
    assert "invalid JSON" in err


def test_unknown_ideal_is_input_error(capsys):
    code, _, err = run(
        capsys, "ideal-info", corpus_file("cusp"), "--ideal", "mystery"
    )
    assert code == EXIT_INPUT
    assert "mystery" in err and "max" in err


def test_abstract_file_rejected_where_a_curve_is_needed(capsys):
    code, _, err = run(capsys, "info", corpus_file("abstract_e8"))
    assert code == EXIT_INPUT
    code, _, err = run(
        capsys, "count", corpus_file("abstract_e8"), "--q", "2", "--level", "3"
    )
    assert code == EXIT_INPUT


def test_bad_margin_is_input_error(capsys):
    code, _, err = run(capsys, "series", corpus_file("cusp"), "--margin", "0")
    assert code == EXIT_INPUT
    assert "margin" in err


def test_composite_q_is_input_error(capsys):
    code, _, err = run(
        capsys, "count", corpus_file("cusp"), "--q", "4", "--level", "3"
    )
    assert code == EXIT_INPUT


def test_unknown_series_key_is_input_error(capsys):
    code, _, err = run(capsys, "series", corpus_file("cusp"), "--which", "pg,bogus")
    assert code == EXIT_INPUT
    assert "bogus" in err


def test_non_gorenstein_ring_cannot_be_canonical(capsys):
    code, _, err = run(
        capsys, "verify", corpus_file("semigroup345"), "--canonical", "ring"
    )
    assert code == EXIT_INPUT
    assert "Gorenstein" in err


def test_wrong_canonical_fails_verification(capsys):
    # the maximal ideal of the cusp is not a canonical module
    code, out, _ = run(
        capsys, "verify", corpus_file("cusp"), "--canonical", "max"
    )
    assert code == EXIT_VERIFY
    assert "result: fail" in out


def test_enumeration_ceiling_is_resource_error(capsys):
    code, _, err = run(
        capsys, "count", corpus_file("node"), "--q", "2", "--level", "4",
        "--ceiling", "100",
    )
    assert code == EXIT_RESOURCE
    assert "ceiling" in err or "enumerat" in err.lower()


# ---------------------------------------------------------------- determinism

@pytest.mark.parametrize("fmt", ["text", "json"])
def test_output_is_deterministic(capsys, fmt):
    argv_sets = [
        ["info", corpus_file("tacnode"), "--format", fmt],
        ["ideal-info", corpus_file("semigroup345"), "--ideal", "can", "--format", fmt],
        ["series", corpus_file("node"), "--which", "pg,lhat", "--format", fmt],
        ["verify", corpus_file("e8"), "--all-ideals", "--format", fmt],
    ]
    for argv in argv_sets:
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second, argv