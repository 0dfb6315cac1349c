"""CLI surface tests."""

from chirplab import ALL_SCHEMES, BER_COLUMNS
from chirplab.cli import main


class TestListSchemes:
    def test_prints_all_schemes(self, capsys):
        assert main(["--list-schemes"]) == 0
        out = capsys.readouterr().out
        for scheme in ALL_SCHEMES:
            assert scheme.value in out
        assert "noncoherent" in out


class TestBerCommand:
    def test_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "ber.csv"
        rc = main([
            "ber", "--scheme", "lora", "--lambda", "4", "--mode", "noncoherent",
            "--ebn0", "0", "4", "--trials", "400", "--seed", "7", "--out", str(out),
        ])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(BER_COLUMNS)
        assert len(lines) == 3
        assert lines[1].startswith("lora,4,noncoherent,0,")

    def test_range_flag(self, capsys):
        rc = main([
            "ber", "--scheme", "ssk-lora", "--lambda", "4", "--mode", "coherent",
            "--ebn0-range", "0:2:1", "--trials", "200", "--seed", "1",
        ])
        assert rc == 0
        assert len(capsys.readouterr().out.splitlines()) == 4

    def test_missing_grid_errors(self, capsys):
        rc = main(["ber", "--scheme", "lora", "--lambda", "4", "--mode", "coherent"])
        assert rc == 2

    def test_unknown_scheme_errors(self, capsys):
        rc = main(["ber", "--scheme", "nope", "--lambda", "4", "--mode", "coherent",
                   "--ebn0", "0"])
        assert rc == 2


class TestEeCommand:
    def test_reports_crossing(self, tmp_path):
        out = tmp_path / "ee.csv"
        rc = main([
            "ee", "--scheme", "lora", "--lambda", "4", "--mode", "noncoherent",
            "--target-ber", "0.02", "--ebn0-range", "0:12:0.25",
            "--trials", "3000", "--seed", "3", "--out", str(out),
        ])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[1].startswith("lora,4,noncoherent,0.02,")

    def test_unbracketed_exit_code(self, capsys):
        rc = main([
            "ee", "--scheme", "lora", "--lambda", "4", "--mode", "noncoherent",
            "--target-ber", "1e-4", "--ebn0-range=-30:-29.5:0.25",
            "--trials", "200", "--seed", "3",
        ])
        assert rc == 1


class TestSeCommand:
    def test_table(self, capsys):
        rc = main(["se", "--scheme", "lora", "dm-css", "--lambda", "8"])
        assert rc == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "scheme,lambda,bits_per_symbol,se,group"
        assert "lora,8,8,0.03125,1" in out
        assert "dm-css,8,17,0.06640625,5" in out


class TestRunCommand:
    def test_run(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text(f"""
seed: 4
trials: 128
out: {tmp_path}/r
sweeps:
  - schemes: [lora]
    lambda: [4]
    modes: [noncoherent]
    ebn0_db: [0]
""")
        assert main(["run", str(cfg)]) == 0
        assert (tmp_path / "r.csv").exists()
        assert (tmp_path / "r.manifest.json").exists()
