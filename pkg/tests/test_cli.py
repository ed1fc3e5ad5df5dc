import io
import json

from incidencelab import cli


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestExitCodes:
    def test_usage_error(self):
        code, _, _ = run(["count", "--mode", "warp"])
        assert code == cli.EXIT_USAGE

    def test_unknown_command(self):
        code, _, _ = run(["frobnicate"])
        assert code == cli.EXIT_USAGE

    def test_infeasible_spec(self):
        code, _, err = run(["count", "--kind", "pencil", "--m", "3", "--n", "5"])
        assert code == cli.EXIT_INFEASIBLE
        assert "infeasible" in err

    def test_ok(self):
        code, _, _ = run(["count", "--kind", "pencil", "--m", "1", "--n", "5"])
        assert code == cli.EXIT_OK


class TestGenerateAndCount:
    def test_generate_then_count_file(self, tmp_path):
        inst_path = tmp_path / "inst.json"
        code, _, _ = run(["generate", "--kind", "pencil", "--m", "1", "--n", "9",
                          "--seed", "3", "--out", str(inst_path)])
        assert code == 0
        code, out, _ = run(["count", "--input", str(inst_path)])
        assert code == 0
        assert json.loads(out)["total"] == 9

    def test_count_csv(self):
        code, out, _ = run(["count", "--kind", "pencil", "--m", "1", "--n", "7",
                            "--format", "csv"])
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "m,n,total,mode,seconds"
        assert row.split(",")[:4] == ["1", "7", "7", "exact"]

    def test_histograms_flag(self):
        code, out, _ = run(["count", "--kind", "pencil", "--m", "1", "--n", "4",
                            "--histograms"])
        payload = json.loads(out)
        assert payload["per_point"] == [4]

    def test_modes_match(self):
        _, out1, _ = run(["count", "--kind", "circle-sampled", "--m", "50", "--n", "10",
                          "--seed", "4", "--mode", "exact"])
        _, out2, _ = run(["count", "--kind", "circle-sampled", "--m", "50", "--n", "10",
                          "--seed", "4", "--mode", "prefilter"])
        assert json.loads(out1)["total"] == json.loads(out2)["total"]


class TestConfigPrecedence:
    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"kind": "pencil", "m": 1, "n": 6, "seed": 1}))
        code, out, _ = run(["count", "--config", str(cfg), "--n", "11"])
        assert code == 0
        assert json.loads(out)["total"] == 11

    def test_config_used_when_no_flag(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"kind": "pencil", "m": 1, "n": 6, "seed": 1}))
        code, out, _ = run(["count", "--config", str(cfg)])
        assert json.loads(out)["total"] == 6

    def test_config_parse_error_reports_position(self, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text('{"kind": "pencil",\n  broken\n}')
        code, _, err = run(["count", "--config", str(cfg)])
        assert code == cli.EXIT_USAGE
        assert "line 2" in err

    def test_unknown_config_field_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        code, _, err = run(["count", "--config", str(cfg)])
        assert code == cli.EXIT_USAGE
        assert "bogus" in err


class TestRich:
    def test_pencil_point_rich(self):
        code, out, _ = run(["rich", "--kind", "pencil", "--m", "1", "--n", "8", "--t", "2"])
        payload = json.loads(out)
        assert payload["count"] == 1


class TestPartitionCmd:
    def test_partition_json(self):
        code, out, _ = run(["partition", "--kind", "random-tangency", "--m", "64",
                            "--n", "0", "--seed", "9", "--levels", "2",
                            "--epsilon", "0.2"])
        assert code == 0
        payload = json.loads(out)
        assert len(payload["factors"]) == 2
        assert sum(payload["populations"].values()) + payload["zero_set_points"] == 64

    def test_partition_csv(self):
        code, out, _ = run(["partition", "--kind", "random-tangency", "--m", "32",
                            "--n", "0", "--seed", "9", "--levels", "1",
                            "--epsilon", "0.3", "--format", "csv"])
        assert code == 0
        assert out.splitlines()[0] == "index,cell"


class TestDualCmd:
    def test_dual_emission(self):
        code, out, _ = run(["dual", "--kind", "pencil", "--m", "1", "--n", "3",
                            "--seed", "2", "--q", "2"])
        payload = json.loads(out)
        assert len(payload["dual_points"]) == 3
        assert len(payload["dual_lines"]) == 1
        assert "rich_planes" in payload


class TestScan:
    def test_pencil_exponent_near_one(self):
        code, out, _ = run(["scan", "--family", "pencil", "--base", "64",
                            "--steps", "5", "--seed", "3"])
        payload = json.loads(out)
        assert abs(payload["exponent"] - 1.0) <= 0.05

    def test_csv_columns(self):
        code, out, _ = run(["scan", "--family", "pencil", "--base", "16",
                            "--steps", "3", "--format", "csv"])
        assert out.splitlines()[0] == "family,m,n,total,bound_ratio,seconds"

    def test_reproducible_modulo_seconds(self):
        def strip(s):
            rows = [r.split(",") for r in s.strip().splitlines()[1:]]
            return [r[:-1] for r in rows]

        _, out1, _ = run(["scan", "--family", "circle-sampled", "--base", "32",
                          "--steps", "3", "--seed", "8", "--format", "csv"])
        _, out2, _ = run(["scan", "--family", "circle-sampled", "--base", "32",
                          "--steps", "3", "--seed", "8", "--format", "csv"])
        assert strip(out1) == strip(out2)


class TestVerifyCmd:
    def test_quick_suite_passes(self):
        code, out, _ = run(["verify", "--quick", "--seed", "11"])
        assert code == cli.EXIT_OK
        assert "[FAIL]" not in out
        assert out.count("[PASS]") == len(__import__("incidencelab.verify", fromlist=["CHECKS"]).CHECKS)
