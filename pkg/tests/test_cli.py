import json

import pytest

from liechar import cli

from test_decomp import a2_p2_document


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCharCommand:
    def test_pretty_default(self, capsys):
        code, out, _ = run(capsys, ["char", "weyl(2)"])
        assert code == 0
        assert out == "(-2): 1\n(0): 1\n(2): 1\ndimension: 3\n"

    def test_tsv(self, capsys):
        code, out, _ = run(capsys, ["char", "--format", "tsv", "weyl(1)"])
        assert code == 0
        assert out == "-1\t1\n1\t1\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, ["char", "--format", "json", "weyl(1)*weyl(1)"])
        assert code == 0
        doc = json.loads(out)
        assert doc["rank"] == 1
        entries = {tuple(e["weight"]): e["mult"] for e in doc["entries"]}
        assert entries == {(-2,): 1, (0,): 2, (2,): 1}

    def test_st_and_twist(self, capsys):
        code, out, _ = run(capsys, ["char", "--format", "tsv", "twist(st,1)"])
        assert code == 0
        assert out == "-6\t1\n0\t1\n6\t1\n"

    def test_simple_uses_provider(self, capsys):
        code, out, _ = run(capsys, ["char", "--format", "tsv", "simple(4)"])
        assert code == 0
        assert out == "-4\t1\n-2\t1\n2\t1\n4\t1\n"

    def test_dual_and_sum_chain(self, capsys):
        code, out, _ = run(
            capsys, ["char", "--format", "tsv", "dual(weyl(3))+weyl(1)+weyl(1)"]
        )
        assert code == 0
        assert out == "-3\t1\n-1\t3\n1\t3\n3\t1\n"

    def test_parenthesized_mixed_operators(self, capsys):
        code, out, _ = run(
            capsys, ["char", "--format", "tsv", "(weyl(1)+weyl(1))*weyl(0)"]
        )
        assert code == 0
        assert out == "-1\t2\n1\t2\n"

    def test_a2_weight_parsing(self, capsys):
        code, out, _ = run(
            capsys, ["char", "--type", "A2", "-p", "2", "weyl(1,1)"]
        )
        assert code == 0
        assert "dimension: 8" in out


class TestInputErrors:
    def test_mixed_operators_need_parens(self, capsys):
        code, _, err = run(capsys, ["char", "weyl(1)+weyl(1)*weyl(1)"])
        assert code == 2
        assert "parentheses" in err

    def test_unknown_atom(self, capsys):
        code, _, err = run(capsys, ["char", "verma(1)"])
        assert code == 2
        assert "parse error" in err

    def test_trailing_garbage(self, capsys):
        code, _, err = run(capsys, ["char", "weyl(1))"])
        assert code == 2
        assert "parse error" in err

    def test_weight_rank_mismatch(self, capsys):
        code, _, err = run(capsys, ["char", "--type", "A2", "weyl(1)"])
        assert code == 2
        assert "rank" in err

    def test_non_prime_p(self, capsys):
        code, _, err = run(capsys, ["char", "-p", "4", "weyl(1)"])
        assert code == 2
        assert "prime" in err

    def test_missing_data_file(self, capsys):
        code, _, err = run(
            capsys, ["char", "--decomp-data", "no-such-file.json", "weyl(1)"]
        )
        assert code == 2
        assert "not found" in err

    def test_rank_two_simple_needs_data(self, capsys):
        code, _, err = run(capsys, ["char", "--type", "B2", "simple(1,1)"])
        assert code == 2
        assert "decomposition data" in err

    def test_corrupted_json(self, capsys, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        code, _, err = run(
            capsys, ["char", "--decomp-data", str(bad), "weyl(1)"]
        )
        assert code == 2
        assert "error" in err

    def test_invalid_decomposition_data(self, capsys, tmp_path):
        doc = a2_p2_document()
        doc["rows"][0]["factors"] = [{"mu": [0, 0], "mult": 2}]
        path = tmp_path / "decomp.json"
        path.write_text(json.dumps(doc))
        code, _, err = run(
            capsys,
            ["char", "--type", "A2", "-p", "2", "--decomp-data", str(path), "weyl(1,0)"],
        )
        assert code == 2
        assert "must be 1" in err


class TestDataResolution:
    def test_decomp_data_file(self, capsys, tmp_path):
        path = tmp_path / "a2p2.json"
        path.write_text(json.dumps(a2_p2_document()))
        code, out, _ = run(
            capsys,
            [
                "char",
                "--type",
                "A2",
                "-p",
                "2",
                "--decomp-data",
                str(path),
                "simple(1,1)",
            ],
        )
        assert code == 0
        assert "dimension: 8" in out

    def test_data_dir_env(self, capsys, tmp_path, monkeypatch):
        (tmp_path / "a2p2.json").write_text(json.dumps(a2_p2_document()))
        monkeypatch.setenv(cli.DATA_DIR_ENV, str(tmp_path))
        code, out, _ = run(
            capsys,
            ["char", "--type", "A2", "-p", "2", "--decomp-data", "a2p2.json", "simple(0,1)"],
        )
        assert code == 0
        assert "dimension: 3" in out

    def test_wrong_p_for_data(self, capsys, tmp_path):
        path = tmp_path / "a2p2.json"
        path.write_text(json.dumps(a2_p2_document()))
        code, _, err = run(
            capsys,
            ["char", "--type", "A2", "-p", "3", "--decomp-data", str(path), "weyl(0,0)"],
        )
        assert code == 2
        assert "p=2" in err

    def test_cartan_file(self, capsys, tmp_path):
        path = tmp_path / "cartan.json"
        path.write_text(json.dumps({"rank": 1, "matrix": [[2]]}))
        code, out, _ = run(
            capsys, ["char", "--cartan", str(path), "--format", "tsv", "weyl(2)"]
        )
        assert code == 0
        assert out == "-2\t1\n0\t1\n2\t1\n"


class TestCjTableCommand:
    def test_golden_tsv(self, capsys):
        code, out, _ = run(capsys, ["cj-table", "--format", "tsv"])
        assert code == 0
        assert out == (
            "# route=lhs\n"
            "\t0\t1\t2\n"
            "0\t1\t0\t1\n"
            "1\t0\t1\t0\n"
            "2\t0\t0\t1\n"
            "# route=rhs\n"
            "\t0\t1\t2\n"
            "0\t1\t0\t1\n"
            "1\t0\t1\t0\n"
            "2\t0\t0\t1\n"
        )

    def test_golden_json(self, capsys):
        code, out, _ = run(capsys, ["cj-table", "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["lhs"] == [[1, 0, 1], [0, 1, 0], [0, 0, 1]]
        assert doc["rhs"] == doc["lhs"]
        assert doc["mismatches"] == []

    def test_method_direct(self, capsys):
        code, out, _ = run(
            capsys, ["cj-table", "--format", "json", "--method", "direct"]
        )
        assert code == 0
        assert json.loads(out)["mismatches"] == []

    def test_rank_two_without_data_fails(self, capsys):
        code, _, err = run(capsys, ["cj-table", "--type", "A2", "-p", "2"])
        assert code == 2
        assert "data" in err


class TestDeterminism:
    def test_repeat_runs_byte_identical(self, capsys):
        argv = ["cj-table", "--format", "json", "-p", "3"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second

    def test_jobs_do_not_change_output(self, capsys):
        base = ["cj-table", "--format", "tsv", "-p", "3", "-r", "1"]
        _, serial, _ = run(capsys, base + ["--jobs", "1"])
        _, parallel, _ = run(capsys, base + ["--jobs", "4"])
        assert serial == parallel

    def test_widen_does_not_change_output(self, capsys):
        argv = ["cj-table", "--format", "json"]
        _, narrow, _ = run(capsys, argv)
        _, wide, _ = run(capsys, argv + ["--widen"])
        assert narrow == wide


class TestVerifyCommand:
    def test_prop44delta(self, capsys):
        code, out, _ = run(capsys, ["verify", "prop44delta", "-p", "2"])
        assert code == 0
        assert out == "target=prop44delta checks=4 mismatches=0 seed=0\n"

    def test_thm41(self, capsys):
        code, out, _ = run(capsys, ["verify", "thm41", "-p", "3"])
        assert code == 0
        assert out.startswith("target=thm41 checks=9 mismatches=0")

    @pytest.mark.parametrize("target", ["prop31", "prop32"])
    def test_route_agreement(self, capsys, target):
        code, out, _ = run(capsys, ["verify", target, "-p", "2", "--bound", "6"])
        assert code == 0
        assert "mismatches=0" in out

    def test_lemma33(self, capsys):
        code, out, _ = run(capsys, ["verify", "lemma33", "-p", "2", "--bound", "4"])
        assert code == 0
        assert "mismatches=0" in out

    def test_thm45a(self, capsys):
        code, out, _ = run(capsys, ["verify", "thm45a", "-p", "3"])
        assert code == 0
        assert "checks=9 mismatches=0" in out

    def test_timing_goes_to_stderr(self, capsys):
        _, out, err = run(capsys, ["verify", "thm41", "-p", "2"])
        assert "verify thm41" in err
        assert "running" in err
        assert "verify" not in out
