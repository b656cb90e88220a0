"""Config validation, report assembly, determinism, and exit codes."""

import json

import pytest

from tltau.cli import (
    CHECK_NAMES,
    ConfigError,
    format_text,
    main,
    run_suite,
    validate_config,
)


class TestConfig:
    def test_defaults_fill_in(self):
        cfg = validate_config({})
        assert cfg["field_mode"] == "rational"
        assert cfg["N"] == 2 and cfg["M"] == 2
        assert cfg["checks"] == list(CHECK_NAMES)

    def test_unknown_key_named(self):
        with pytest.raises(ConfigError) as e:
            validate_config({"bogus": 1})
        assert "bogus" in str(e.value)

    def test_all_violations_collected(self):
        with pytest.raises(ConfigError) as e:
            validate_config({"N": 0, "field_mode": "decimal"})
        msg = str(e.value)
        assert "config key N" in msg
        assert "config key field_mode" in msg

    def test_vector_length_checked(self):
        with pytest.raises(ConfigError) as e:
            validate_config({"M": 2, "u": ["2"]})
        assert "config key u" in str(e.value)

    def test_checks_enum(self):
        with pytest.raises(ConfigError):
            validate_config({"checks": ["not-a-check"]})
        cfg = validate_config({"checks": ["pluecker"]})
        assert cfg["checks"] == ["pluecker"]


class TestSuite:
    def test_empty_checks(self):
        cfg = validate_config({"checks": []})
        report = run_suite(cfg)
        assert report["summary"]["total"] == 0
        assert report["summary"]["failed"] == 0

    def test_diagram_counts_all_pass(self):
        cfg = validate_config({"checks": ["diagram-counts"], "M": 2})
        report = run_suite(cfg)
        assert report["summary"]["total"] > 0
        assert report["summary"]["failed"] == 0
        assert all(r["check"] == "diagram-counts" for r in report["records"])

    def test_repeated_roots_become_error_record(self):
        cfg = validate_config(
            {"checks": ["theorem-quotient"], "M": 2, "u": ["2", "2"], "instances": 1}
        )
        report = run_suite(cfg)
        assert report["summary"]["failed"] == report["summary"]["total"] > 0
        assert any("error" in r for r in report["records"])

    def test_boundary_violation_becomes_error_records(self):
        # an irrational deformation parameter cannot build rational params
        cfg = validate_config({"checks": ["diagram-counts"], "Q": "2", "spin_twice": 2})
        report = run_suite(cfg)
        assert report["summary"]["failed"] == report["summary"]["total"] > 0

    def test_report_shape(self):
        cfg = validate_config({"checks": ["diagram-counts"]})
        report = run_suite(cfg)
        assert report["tool"] == "tltau"
        assert "timestamp" in report
        assert "out" not in report["config"]
        for rec in report["records"]:
            assert set(rec) >= {"check", "params", "instance_seed", "residual", "pass"}

    def test_text_format_smoke(self):
        cfg = validate_config({"checks": ["diagram-counts"]})
        report = run_suite(cfg)
        text = format_text(report)
        assert "summary:" in text
        assert "diagram-counts" in text


class TestMain:
    def test_exit_codes(self, tmp_path, capsys):
        good = tmp_path / "good.json"
        good.write_text(json.dumps({"checks": ["diagram-counts"]}))
        assert main(["verify", "--config", str(good)]) == 0
        capsys.readouterr()

        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"N": 0}))
        assert main(["verify", "--config", str(bad)]) == 2
        err = capsys.readouterr().err
        assert "config key N" in err

        failing = tmp_path / "failing.json"
        failing.write_text(
            json.dumps({"checks": ["theorem-quotient"], "u": ["2", "2"], "instances": 1})
        )
        assert main(["verify", "--config", str(failing)]) == 1
        capsys.readouterr()

    def test_subcommand_restricts_checks(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["count-diagrams", "--seed", "7", "--out", str(out)]) == 0
        capsys.readouterr()
        report = json.loads(out.read_text())
        assert {r["check"] for r in report["records"]} == {"diagram-counts"}
        assert report["config"]["seed"] == 7

    def test_reruns_byte_identical_modulo_timestamp(self, tmp_path, capsys):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            code = main(
                ["count-diagrams", "--seed", "5", "--json", "--out", str(out)]
            )
            assert code == 0
            capsys.readouterr()
            blob = json.loads(out.read_text())
            blob.pop("timestamp")
            outs.append(json.dumps(blob, sort_keys=True))
        assert outs[0] == outs[1]

    def test_unreadable_config(self, tmp_path, capsys):
        missing = tmp_path / "nope.json"
        assert main(["verify", "--config", str(missing)]) == 2
        assert "cannot read config" in capsys.readouterr().err
