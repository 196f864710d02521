import pytest

from shishkinfem.meshgen import Region
from shishkinfem.cli import (RunConfig, ConfigError, parse_config, run, main,
                             OUTDIR_ENV, DEFAULT_EPS, DEFAULT_N)


@pytest.fixture(autouse=True)
def clean_outdir_env(monkeypatch):
    monkeypatch.delenv(OUTDIR_ENV, raising=False)


def read_lines(path):
    with open(path) as fh:
        return fh.read().splitlines()


class TestParseConfig:
    def test_empty_gives_defaults(self):
        cfg = parse_config("")
        assert cfg.mode == "errors"
        assert cfg.problem == "example51"
        assert cfg.eps_list == DEFAULT_EPS
        assert cfg.N_list == DEFAULT_N

    def test_full_example(self):
        cfg = parse_config("\n".join([
            "# a comment",
            "mode = green",
            "eps = 1e-4,1e-6",
            "N = 8,16",
            "quad_order = 2",
            "probe_coarse = -0.5,0.1",
            "output = /tmp/somewhere",
        ]))
        assert cfg.mode == "green"
        assert cfg.eps_list == (1e-4, 1e-6)
        assert cfg.N_list == (8, 16)
        assert cfg.quad_order == 2
        assert cfg.probes[Region.COARSE] == (-0.5, 0.1)
        assert cfg.output_dir == "/tmp/somewhere"

    def test_bad_N_names_the_key(self):
        with pytest.raises(ConfigError, match="N"):
            parse_config("N = 15")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config("foo = 1")

    def test_missing_equals(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("just words")

    def test_malformed_float(self):
        with pytest.raises(ConfigError, match="eps"):
            parse_config("eps = abc")

    def test_unknown_mode(self):
        with pytest.raises(ConfigError, match="mode"):
            parse_config("mode = bogus")

    def test_mms_allows_eps_one(self):
        cfg = parse_config("mode = mms\neps = 1.0\nN = 8")
        assert cfg.eps_list == (1.0,)
        with pytest.raises(ConfigError):
            parse_config("mode = errors\neps = 1.0")


class TestRunModes:
    def test_errors_csv(self, tmp_path):
        cfg = parse_config(f"mode = errors\neps = 1e-4\nN = 8\n"
                           f"output = {tmp_path}")
        assert run(cfg) == 0
        lines = read_lines(tmp_path / "errors.csv")
        header = [l for l in lines if l.startswith("#")]
        assert any("mode = errors" in l for l in header)
        assert any("version" in l for l in header)
        body = [l for l in lines if not l.startswith("#")]
        assert body[0] == "eps,N,region,error"
        assert len(body) == 1 + 4  # one (eps, N) pair, four regions
        for row in body[1:]:
            eps, N, region, err = row.split(",")
            assert float(err) > 0.0

    def test_rates_csv(self, tmp_path):
        cfg = parse_config(f"mode = rates\neps = 1e-4\nN = 8,16\n"
                           f"output = {tmp_path}")
        assert run(cfg) == 0
        body = [l for l in read_lines(tmp_path / "rates.csv")
                if not l.startswith("#")]
        assert body[0] == "eps,N,region,rate"
        # rate defined only at N = 8 (needs errors at 8 and 16)
        assert len(body) == 1 + 4
        assert all(row.split(",")[1] == "8" for row in body[1:])

    def test_green_csv(self, tmp_path):
        cfg = parse_config(f"mode = green\neps = 1e-4\nN = 8\n"
                           f"output = {tmp_path}")
        assert run(cfg) == 0
        body = [l for l in read_lines(tmp_path / "green.csv")
                if not l.startswith("#")]
        assert body[0] == "eps,N,region,source_x,source_y,l2_norm,energy_norm"
        assert len(body) == 1 + 4
        for row in body[1:]:
            parts = row.split(",")
            assert float(parts[6]) >= float(parts[5]) > 0.0

    def test_field_txt(self, tmp_path):
        N = 8
        cfg = parse_config(f"mode = field\neps = 1e-4\nN = {N}\n"
                           f"output = {tmp_path}")
        assert run(cfg) == 0
        body = [l for l in read_lines(tmp_path / "field.txt")
                if not l.startswith("#")]
        nx, ny = 2 * N + 1, N + 1
        assert body[0] == f"{nx} {ny}"
        assert len(body) == 1 + nx * ny
        # boundary rows carry u = 0
        for line in body[1:]:
            x, y, u = map(float, line.split())
            if abs(abs(x) - 1.0) < 1e-14 or abs(abs(y) - 1.0) < 1e-14:
                assert u == 0.0

    def test_interp_csv(self, tmp_path):
        cfg = parse_config(f"mode = interp\neps = 1e-6\nN = 8,16\n"
                           f"template = smooth\noutput = {tmp_path}")
        assert run(cfg) == 0
        body = [l for l in read_lines(tmp_path / "interp.csv")
                if not l.startswith("#")]
        assert len(body) == 1 + 2 * 4

    def test_mms_csv(self, tmp_path):
        cfg = parse_config(f"mode = mms\nproblem = mms\neps = 1.0\nN = 8,16\n"
                           f"output = {tmp_path}")
        assert run(cfg) == 0
        body = [l for l in read_lines(tmp_path / "mms.csv")
                if not l.startswith("#")]
        assert body[0] == "N,error,rate"
        assert len(body) == 3
        n8 = body[1].split(",")
        assert float(n8[2]) == pytest.approx(2.0, abs=0.3)
        assert body[2].split(",")[2] == ""  # no rate at the last N

    def test_reruns_byte_identical(self, tmp_path):
        text = f"mode = errors\neps = 1e-4\nN = 8\noutput = {tmp_path}"
        run(parse_config(text))
        first = (tmp_path / "errors.csv").read_bytes()
        run(parse_config(text))
        assert (tmp_path / "errors.csv").read_bytes() == first

    def test_outdir_env_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv(OUTDIR_ENV, str(tmp_path / "env"))
        cfg = parse_config("mode = field\neps = 1e-4\nN = 8\noutput = /nope")
        assert run(cfg) == 0
        assert (tmp_path / "env" / "field.txt").exists()

    def test_run_failure_returns_2(self, tmp_path, capsys):
        cfg = RunConfig(mode="interp", eps_list=(1e-6,), N_list=(8,),
                        template="bogus", output_dir=str(tmp_path))
        assert run(cfg) == 2
        assert not (tmp_path / "interp.csv").exists()
        assert "error" in capsys.readouterr().err


class TestMain:
    def test_flags_round_trip(self, tmp_path):
        code = main(["--mode", "field", "--eps", "1e-4", "--N", "8",
                     "-o", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "field.txt").exists()

    def test_config_file_plus_override(self, tmp_path):
        conf = tmp_path / "run.conf"
        conf.write_text("mode = field\neps = 1e-3\nN = 8\n")
        code = main(["--config", str(conf), "--N", "12",
                     "-o", str(tmp_path)])
        assert code == 0
        body = [l for l in read_lines(tmp_path / "field.txt")
                if not l.startswith("#")]
        assert body[0] == "25 13"  # flag N=12 overrides the file

    def test_bad_config_value(self, capsys):
        assert main(["--N", "15"]) == 1
        assert "config error" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["--config", str(tmp_path / "absent.conf")]) == 1
        assert "config error" in capsys.readouterr().err
