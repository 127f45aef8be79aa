"""CLI: commands, exit codes, determinism, round-trips."""

import json
import subprocess
import sys

from splitrank.cli import main

F4_RANK1 = json.dumps(
    {
        "f4": {
            "octonion": {"field": {"kind": "Q"}, "params": ["-1", "-1", "-1"]},
            "gamma": ["1", "-1", "1"],
        }
    }
)
G2_GRAVES = json.dumps({"g2": {"field": {"kind": "Q"}, "params": ["-1", "-1", "-1"]}})


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestClassify:
    def test_f4_rank1(self, capsys):
        code, out = run_cli(["classify", "--json", F4_RANK1], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["group"] == "F4" and report["rank"] == 1
        assert report["certificate"]["kind"] == "nilpotent_element"

    def test_g2(self, capsys):
        code, out = run_cli(["classify", "--json", G2_GRAVES], capsys)
        assert code == 0
        assert json.loads(out)["rank"] == 0

    def test_bare_descriptor_autodetect(self, capsys):
        bare = json.dumps(json.loads(F4_RANK1)["f4"])
        code, out = run_cli(["classify", "--json", bare], capsys)
        assert code == 0 and json.loads(out)["group"] == "F4"

    def test_file_input(self, tmp_path, capsys):
        path = tmp_path / "alg.json"
        path.write_text(F4_RANK1)
        code, out = run_cli(["classify", "--in", str(path)], capsys)
        assert code == 0 and json.loads(out)["rank"] == 1

    def test_deterministic_bytes(self, capsys):
        _, out1 = run_cli(["classify", "--json", F4_RANK1], capsys)
        _, out2 = run_cli(["classify", "--json", F4_RANK1], capsys)
        assert out1 == out2


class TestWitt:
    def test_example(self, capsys):
        form = json.dumps({"field": {"kind": "Q"}, "coeffs": ["1", "-1", "1"]})
        code, out = run_cli(["witt", "--json", form], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["index"] == 1 and report["anisotropic"] == ["1"]
        assert "witness" in report

    def test_roundtrip_anisotropic_part(self, capsys):
        form = json.dumps({"field": {"kind": "Q"}, "coeffs": ["1", "-1", "-1", "-1"]})
        code, out = run_cli(["witt", "--json", form], capsys)
        part = json.loads(out)["anisotropic"]
        code2, out2 = run_cli(
            ["witt", "--json", json.dumps({"field": {"kind": "Q"}, "coeffs": part})], capsys
        )
        assert code2 == 0 and json.loads(out2)["index"] == 0


class TestKernel:
    def test_rank1_kernel(self, capsys):
        code, out = run_cli(["kernel", "--json", F4_RANK1], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["kind"] == "spin_form"
        assert report["form"]["coeffs"] == ["-1"] * 7

    def test_g2_input_rejected(self, capsys):
        code, out = run_cli(["kernel", "--json", G2_GRAVES], capsys)
        assert code == 2


class TestExcellence:
    def test_rank_jump(self, capsys):
        code, out = run_cli(
            ["excellence", "--ext", '{"kind":"QSqrt","d":-1}', "--json", F4_RANK1], capsys
        )
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "excellent_witnessed"
        assert report["rank_base"]["rank"] == 1 and report["rank_ext"]["rank"] == 4

    def test_g2_panel_entry(self, capsys):
        code, out = run_cli(
            ["excellence", "--ext", '{"kind":"QSqrt","d":2}', "--json", G2_GRAVES], capsys
        )
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "excellent_witnessed"
        assert report["kernel_ext"]["kind"] == "whole_group"

    def test_fp_extension_unsupported(self, capsys):
        code, out = run_cli(
            ["excellence", "--ext", '{"kind":"Fp","p":7}', "--json", F4_RANK1], capsys
        )
        assert code == 3
        assert json.loads(out)["error"]["kind"] == "UnsupportedExtension"


class TestExitCodes:
    def test_bad_json(self, capsys):
        code, out = run_cli(["classify", "--json", "{not json"], capsys)
        assert code == 2

    def test_missing_input(self, capsys):
        code, out = run_cli(["classify"], capsys)
        assert code == 2

    def test_both_inputs(self, tmp_path, capsys):
        path = tmp_path / "x.json"
        path.write_text(F4_RANK1)
        code, _ = run_cli(["classify", "--json", F4_RANK1, "--in", str(path)], capsys)
        assert code == 2

    def test_char_3_rejected(self, capsys):
        bad = json.dumps({"g2": {"field": {"kind": "Fp", "p": 3}, "params": ["1", "1", "1"]}})
        code, out = run_cli(["classify", "--json", bad], capsys)
        assert code == 2

    def test_qsqrt_small_dim_unsupported_exit(self, capsys):
        form = json.dumps({"field": {"kind": "QSqrt", "d": 2}, "coeffs": ["1", "1", "1", "1"]})
        code, out = run_cli(["witt", "--json", form], capsys)
        assert code == 3
        assert json.loads(out)["error"]["kind"] == "UnsupportedCase"

    def test_nonnormalizable_gamma_exit(self, capsys):
        alg = json.dumps(
            {
                "f4": {
                    "octonion": {"field": {"kind": "Q"}, "params": ["-1", "-1", "-1"]},
                    "gamma": ["2", "-2", "1"],
                }
            }
        )
        code, out = run_cli(["kernel", "--json", alg], capsys)
        assert code == 3
        assert json.loads(out)["error"]["kind"] == "NonNormalizableGamma"


class TestVerify:
    def test_single_suite(self, capsys):
        code, out = run_cli(["verify", "--suite", "fields", "--seed", "7"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["passed"] and report["seed"] == 7

    def test_unknown_suite(self, capsys):
        code, _ = run_cli(["verify", "--suite", "nope"], capsys)
        assert code == 2

    def test_seeded_reruns_identical(self, capsys):
        _, out1 = run_cli(["verify", "--suite", "fields", "--seed", "3"], capsys)
        _, out2 = run_cli(["verify", "--suite", "fields", "--seed", "3"], capsys)
        assert out1 == out2


class TestOutFile:
    def test_out_writes_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out = run_cli(["classify", "--json", G2_GRAVES, "--out", str(target)], capsys)
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["rank"] == 0


def test_console_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "splitrank.cli", "classify", "--json", G2_GRAVES],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rank"] == 0
