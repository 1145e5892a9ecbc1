"""
Tests for the eigenflats command line

Run with: pytest tests/
"""

import json

import pytest

from eigenflats.cli import main
import eigenflats.cli as cli
from eigenflats.errors import EXIT_OK, EXIT_RESOURCE, EXIT_THEOREM, EXIT_USAGE, TheoremViolation


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info(capsys):
    """Test group facts for A3."""
    code, out, _ = run(capsys, "info", "--type", "A3")
    assert code == EXIT_OK
    (entry,) = json.loads(out)
    assert entry["group"]["type"] == "A3"
    assert entry["base_conductor"] == 1
    assert sorted(entry["coxeter_exponents"]) == [1, 2, 3]
    assert entry["exponents_match_degrees"]
    assert entry["b_values"] == [1, 2, 3, 4]
    assert entry["max_parabolic"]["type"] == "A2"


def test_info_rank_two(capsys):
    """Test rank-two types carry no quadratic step."""
    _, out, _ = run(capsys, "info", "--type", "I2(5)")
    (entry,) = json.loads(out)
    assert entry["base_conductor"] == 5
    assert entry["quadratic_step_bound"] is None


def test_verify_passes(capsys):
    """Test A2 and B2 verify cleanly."""
    code, out, _ = run(
        capsys, "verify", "--type", "A2", "--type", "B2", "--workers", "1", "--no-timing"
    )
    assert code == EXIT_OK
    data = json.loads(out)
    assert [r["group"]["type"] for r in data["reports"]] == ["A2", "B2"]
    assert all(row["passes"] for r in data["reports"] for row in r["results"])
    assert data["skipped"] == []


def test_violation_keeps_other_types(capsys, monkeypatch):
    """Test a violation in one type still reports the others and exits 1."""
    real_min_N = cli.min_N

    def failing_min_N(rs, elements, b, **kwargs):
        if str(rs.label) == "B2" and b == 4:
            raise TheoremViolation("min N below b*n", {"type": "B2", "b": b})
        return real_min_N(rs, elements, b, **kwargs)

    monkeypatch.setattr(cli, "min_N", failing_min_N)
    code, out, err = run(
        capsys, "verify", "--type", "A2", "--type", "B2", "--workers", "1", "--no-timing"
    )
    assert code == EXIT_THEOREM
    data = json.loads(out)
    a2, b2 = data["reports"]
    assert a2["group"]["type"] == "A2"
    assert a2["results"] and "error" not in a2
    assert b2["error"] == "min N below b*n"
    assert [row["b"] for row in b2["results"]] == [1, 2]
    assert "counterexample" in err


def test_verify_is_deterministic(capsys):
    """Test reruns without timing are byte-identical across worker counts."""
    argv = ["verify", "--type", "A3", "--b", "2,3,4", "--no-timing"]
    _, first, _ = run(capsys, *argv, "--workers", "1")
    _, second, _ = run(capsys, *argv, "--workers", "2")
    assert first == second


def test_verify_output_file(capsys, tmp_path):
    """Test CSV reports go to the output file."""
    target = tmp_path / "report.csv"
    code, out, _ = run(
        capsys, "verify", "--type", "A2", "--format", "csv",
        "--output", str(target), "--workers", "1",
    )
    assert code == EXIT_OK
    assert out == ""
    assert len(target.read_text(encoding="utf-8").splitlines()) == 4


def test_verify_optional_properties(capsys):
    """Test the exponent and regularity checks pass for H3."""
    code, _, _ = run(
        capsys, "verify", "--type", "H3", "--b", "10", "--optional-properties", "--workers", "1"
    )
    assert code == EXIT_OK


def test_e7_skipped_without_flag(capsys):
    """Test E7 is skipped with the resource exit code."""
    code, out, _ = run(capsys, "verify", "--type", "A1", "--type", "E7", "--workers", "1")
    assert code == EXIT_RESOURCE
    data = json.loads(out)
    assert [s["type"] for s in data["skipped"]] == ["E7"]
    assert len(data["reports"]) == 1


def test_cap_skips_type(capsys):
    """Test groups above the cap are skipped while the rest still runs."""
    code, out, _ = run(
        capsys, "verify", "--type", "A3", "--type", "B3", "--cap", "30", "--workers", "1"
    )
    assert code == EXIT_RESOURCE
    data = json.loads(out)
    assert [r["group"]["type"] for r in data["reports"]] == ["A3"]
    assert data["skipped"][0]["type"] == "B3"


def test_bad_label(capsys):
    """Test an unknown type label is a usage error."""
    code, out, _ = run(capsys, "verify", "--type", "Z9", "--workers", "1")
    assert code == EXIT_USAGE
    assert json.loads(out)["skipped"][0]["type"] == "Z9"
    code, _, err = run(capsys, "info", "--type", "E8")
    assert code == EXIT_USAGE
    assert "E8" in err


def test_bad_b_selector():
    """Test --b rejects non-positive values."""
    with pytest.raises(SystemExit):
        main(["verify", "--type", "A2", "--b", "0"])


def test_eigen_list(capsys):
    """Test the zeta_4 eigenspaces of A3 are regular lines."""
    code, out, _ = run(capsys, "eigen", "list", "--type", "A3", "--b", "4")
    assert code == EXIT_OK
    (entry,) = json.loads(out)
    spaces = entry["eigenspaces"]
    assert sum(s["elements"] for s in spaces) == 6
    assert all(s["dimension"] == 1 and s["min_N"] == 12 for s in spaces)


def test_stab(capsys):
    """Test the stabilizer of a model-coordinate vector."""
    code, out, _ = run(capsys, "stab", "--type", "A3", "--x", "1,z4,-1,-z4", "--coords", "model")
    assert code == EXIT_OK
    (entry,) = json.loads(out)
    assert entry["regular"]
    assert entry["N"] == 12
    assert entry["group_order"] == 1


def test_laurent_check(capsys, tmp_path):
    """Test single and batched leading-term documents."""
    single = tmp_path / "term.json"
    single.write_text(json.dumps({"type": "A3", "a": 1, "b": 4, "x": ["1", "z4", "-1", "-z4"]}))
    code, out, _ = run(capsys, "laurent", "check", "--input", str(single))
    assert code == EXIT_OK
    verdict = json.loads(out)
    assert verdict["conclusion"] == "PassesNecessaryCondition"
    assert verdict["equality"]

    batch = tmp_path / "terms.json"
    batch.write_text(json.dumps([
        {"type": "A1", "a": 1, "b": 3, "x": ["1"]},
        {"type": "A1", "a": 1, "b": 2, "x": ["1"]},
    ]))
    code, out, _ = run(capsys, "laurent", "check", "--input", str(batch), "--workers", "2")
    assert code == EXIT_OK
    assert [v["conclusion"] for v in json.loads(out)] == [
        "FailsNecessaryCondition",
        "PassesNecessaryCondition",
    ]


def test_laurent_check_errors(capsys, tmp_path):
    """Test malformed input and missing files exit with the usage code."""
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type": "A1", "a": 2, "b": 4, "x": ["1"]}))
    code, _, err = run(capsys, "laurent", "check", "--input", str(bad))
    assert code == EXIT_USAGE
    assert "gcd" in err
    code, _, _ = run(capsys, "laurent", "check", "--input", str(tmp_path / "missing.json"))
    assert code == EXIT_USAGE


def test_version():
    """Test version is available."""
    from eigenflats import __version__
    assert isinstance(__version__, str)


class TestIntegration:
    """Integration tests."""

    def test_full_workflow(self):
        """Test a type B witness through verification and the Laurent check."""
        from eigenflats import (
            CycloNum,
            TypeLabel,
            build_root_system,
            check_rationality_necessary,
            construct_eigenvector,
            enumerate_group,
            invariant_polynomials,
            min_N,
            parse_leading_term,
        )

        rs = build_root_system(TypeLabel.parse("B3"))
        record = min_N(rs, enumerate_group(rs, cap=1000), b=6)
        assert record.equality

        # Coxeter eigenvector of B3 in the orthonormal model
        witness = construct_eigenvector("B", 3, 6, 1, [CycloNum.one()])
        assert witness.is_eigenvector()
        inv = invariant_polynomials(rs.label)
        assert len(inv.from_model(witness.vector)) == 3

        ll = parse_leading_term(json.dumps({
            "type": "B3",
            "a": 5,
            "b": 6,
            "x": [str(c) for c in witness.vector],
        }))
        verdict = check_rationality_necessary(ll)
        assert verdict.conclusion == "PassesNecessaryCondition"
        assert verdict.N == record.min_N == 18
