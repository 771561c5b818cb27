"""End-to-end CLI behavior through the argparse entry point."""

import json

import pytest

from wbslab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestSchreierCommands:
    def test_unrank(self, capsys):
        code, payload = run_cli(capsys, "schreier", "unrank", "5")
        assert code == 0
        assert payload["set"] == [3, 4, 5]

    def test_rank(self, capsys):
        code, payload = run_cli(capsys, "schreier", "rank", "3,4,5")
        assert code == 0
        assert payload["rank"] == "5"

    def test_rank_json_form(self, capsys):
        code, payload = run_cli(capsys, "schreier", "rank", "[2, 3]")
        assert payload["rank"] == "2"

    def test_count(self, capsys):
        code, payload = run_cli(capsys, "schreier", "count", "15")
        assert payload["count_max_at_most"] == "610"

    def test_alt_enumeration_flag(self, capsys):
        code, payload = run_cli(
            capsys, "schreier", "rank", "3,4,5", "--enumeration", "alt"
        )
        assert payload["rank"] == "4"

    def test_invalid_set_exits_nonzero(self, capsys):
        code = main(["schreier", "rank", "2,3,4"])
        assert code == 2
        err = capsys.readouterr().err
        assert "InvalidInputError" in err


class TestCesaroCommand:
    def test_identity(self, capsys):
        code, payload = run_cli(
            capsys, "cesaro", "certify", "--subsequence", "identity", "--N", "2"
        )
        assert code == 0
        assert payload["A_N"] == [3, 4, 5]
        assert payload["i0"] == "5"
        assert payload["mean"] == "1/2"
        assert payload["prefix_len"] == 5

    def test_rule_and_enumeration(self, capsys):
        code, payload = run_cli(
            capsys,
            "cesaro", "certify",
            "--subsequence", "affine:2,0",
            "--N", "3",
            "--enumeration", "alt",
        )
        assert code == 0
        assert payload["A_N"] == list(range(8, 24, 2))
        assert payload["enumeration"] == "alt"

    def test_terms_file(self, capsys, tmp_path):
        terms = tmp_path / "terms.json"
        terms.write_text(json.dumps(list(range(1, 40))))
        code, payload = run_cli(
            capsys, "cesaro", "certify", "--subsequence", str(terms), "--N", "4"
        )
        assert code == 0
        num, den = payload["mean"].split("/")
        assert int(num) * 2 >= int(den)

    def test_short_prefix_fails_cleanly(self, capsys):
        code = main(["cesaro", "certify", "--subsequence", "1,2,3", "--N", "4"])
        assert code == 2
        assert "NeedsMoreDataError" in capsys.readouterr().err


@pytest.fixture
def space_file(tmp_path):
    path = tmp_path / "line.json"
    path.write_text(json.dumps({"points": [[float(i)] for i in range(8)]}))
    return path


class TestMetricAndPairs:
    def test_validate_ok(self, capsys, space_file):
        code, payload = run_cli(capsys, "metric", "validate", str(space_file))
        assert code == 0 and payload["ok"]

    def test_validate_bad_matrix(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"matrix": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]}))
        code, payload = run_cli(capsys, "metric", "validate", str(path))
        assert code == 1
        assert payload["violations"]

    def test_find_then_verify(self, capsys, space_file, tmp_path):
        fam_path = tmp_path / "family.json"
        code, payload = run_cli(
            capsys,
            "pairs", "find", str(space_file),
            "--K", "0.25", "--count", "3",
            "--out", str(fam_path),
        )
        assert code == 0 and payload["ok"] and payload["found"] == 3
        code, payload = run_cli(
            capsys, "pairs", "verify", str(space_file), str(fam_path)
        )
        assert code == 0 and payload["ok"]

    def test_find_failure_reports_best(self, capsys, space_file):
        code, payload = run_cli(
            capsys, "pairs", "find", str(space_file), "--K", "0.25", "--count", "7"
        )
        assert code == 1
        assert payload["found"] == 4
        assert not payload["ok"]


class TestHolderAndEmbed:
    def test_seminorm(self, capsys, space_file, tmp_path):
        field = tmp_path / "field.json"
        field.write_text(json.dumps([0.0, 1.0, 0.0, 2.0, 0.0, 1.0, 0.0, 0.0]))
        code, payload = run_cli(
            capsys,
            "holder", "seminorm", str(space_file), str(field), "--alpha", "1.0",
        )
        assert code == 0
        assert payload["seminorm"] == 2.0
        assert payload["holder_norm"] == payload["sup_norm"] + payload["seminorm"]

    def test_bump(self, capsys, space_file):
        code, payload = run_cli(
            capsys,
            "holder", "bump", str(space_file),
            "--kind", "pair", "--pair", "p0,p1", "--K", "0.5", "--alpha", "1.0",
        )
        assert code == 0
        assert payload["support"] == ["p1"]

    def test_embed_holder_report(self, capsys, space_file, tmp_path):
        fam_path = tmp_path / "family.json"
        run_cli(
            capsys,
            "pairs", "find", str(space_file),
            "--K", "0.5", "--count", "3", "--out", str(fam_path),
        )
        code, payload = run_cli(
            capsys,
            "embed", "holder", str(space_file), str(fam_path),
            "--alpha", "0.5", "--vector", "random:4:10",
        )
        assert code == 0
        assert 1.0 <= payload["lower"] <= payload["upper"] <= payload["bound_upper"] + 1e-9

    def test_embed_cb(self, capsys, space_file):
        code, payload = run_cli(
            capsys,
            "embed", "cb", str(space_file),
            "--centers", "p0,p2,p4",
            "--radii", "0.4,0.4,0.4",
            "--vector", "1.0,-2.0,0.5",
        )
        assert code == 0
        assert payload["isometric"]
        assert payload["image_sup"] == 2.0

    def test_embed_linf(self, capsys):
        code, payload = run_cli(
            capsys,
            "embed", "linf", "--masses", "1,2,3", "--vector", "0.5,-1.5,1.0",
        )
        assert code == 0
        assert payload["isometric"]


class TestClassifyCommands:
    def test_ordinal(self, capsys):
        code, payload = run_cli(capsys, "classify", "ordinal", "w^2*3 + w*2 + 5")
        assert code == 0 and payload["wbs"]

    def test_ordinal_infinite_rank(self, capsys):
        code, payload = run_cli(capsys, "classify", "ordinal", "w^w")
        assert not payload["wbs"]

    def test_cb_noncompact(self, capsys):
        code, payload = run_cli(capsys, "classify", "cb", "--assume", "noncompact")
        assert not payload["wbs"]
        assert "assumption" in payload

    def test_cb_with_ordinal(self, capsys):
        code, payload = run_cli(capsys, "classify", "cb", "w*5")
        assert payload["wbs"]

    def test_linf(self, capsys):
        code, payload = run_cli(capsys, "classify", "linf", "--masses", "1,2")
        assert payload["wbs"]
        code, payload = run_cli(
            capsys, "classify", "linf", "--masses", "1,2", "--more-sets"
        )
        assert not payload["wbs"]

    def test_calpha(self, capsys):
        code, payload = run_cli(capsys, "classify", "calpha", "--points", "10")
        assert payload["wbs"]
        code, payload = run_cli(capsys, "classify", "calpha", "--assume", "infinite")
        assert not payload["wbs"]


class TestExperimentCommand:
    def test_isometry_suite(self, capsys, tmp_path):
        code, payload = run_cli(
            capsys,
            "experiment", "run", "isometry-suite",
            "--seed", "5", "--report-dir", str(tmp_path),
        )
        assert code == 0 and payload["ok"]
        assert (tmp_path / "isometry-suite.json").exists()
        assert (tmp_path / "isometry-suite.csv").exists()

    def test_unknown_experiment_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["experiment", "run", "bogus"])
