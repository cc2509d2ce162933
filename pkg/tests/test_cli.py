import json
import os

import pytest

from planarpush import cli


def write(path, text):
    path.write_text(text)
    return str(path)


SQUARE_CFG = """
[slider]
type = square
side = 1.0

[limit_surface]
f_max = 1.0
tau_max = uniform

[contact]
mu_c = 0.5

[gains]
k_f = 0.1
k_y = 0.01
speed = 0.1

[sim]
dt = 0.01
duration = 1.0
"""


class TestSimulate:
    def test_happy_path(self, tmp_path, capsys):
        cfg = write(tmp_path / "sq.cfg", SQUARE_CFG)
        out = str(tmp_path / "traj.csv")
        code = cli.main(["simulate", "--config", cfg, "--out", out])
        assert code == 0
        lines = open(out).read().splitlines()
        assert lines[0] == "t,x,y,phi,s,fx,fy,theta_f,theta_p,alpha,mode"
        assert len(lines) == 1 + 101  # header + records for 1 s at 10 ms
        summary = json.loads(open(out + ".summary.json").read())
        assert summary["status"]["kind"] == "completed"
        assert summary["final"]["y"] == 0.0
        assert summary["config"]["limit_surface"]["tau_max"] == pytest.approx(0.382597858)

    def test_paper_duration_row_count(self, tmp_path):
        # full-length run: floor(600 / 0.01) + 1 records
        cfg = write(tmp_path / "sq.cfg", SQUARE_CFG.replace("duration = 1.0", "duration = 600.0"))
        out = str(tmp_path / "traj.csv")
        assert cli.main(["simulate", "--config", cfg, "--out", out]) == 0
        with open(out) as fh:
            n = sum(1 for _ in fh)
        assert n == 1 + 60001

    def test_invalid_dt(self, tmp_path, capsys):
        cfg = write(tmp_path / "bad.cfg", SQUARE_CFG.replace("dt = 0.01", "dt = 0"))
        code = cli.main(["simulate", "--config", cfg, "--out", str(tmp_path / "t.csv")])
        assert code == 1
        assert "dt must be > 0" in capsys.readouterr().err

    def test_unknown_key_section(self, tmp_path, capsys):
        cfg = write(tmp_path / "bad.cfg", SQUARE_CFG + "\n[bogus]\nkey = 1\n")
        code = cli.main(["simulate", "--config", cfg, "--out", str(tmp_path / "t.csv")])
        assert code == 1
        assert "bogus" in capsys.readouterr().err

    def test_contact_lost_exit_code(self, tmp_path):
        cfg = write(tmp_path / "rev.cfg", SQUARE_CFG + "\n[path]\ndirection = -1, 0\n")
        out = str(tmp_path / "t.csv")
        code = cli.main(["simulate", "--config", cfg, "--out", out])
        assert code == 2
        summary = json.loads(open(out + ".summary.json").read())
        assert summary["status"]["kind"] == "contact_lost"
        assert summary["status"]["t"] == pytest.approx(0.01)

    def test_csv_is_locale_independent(self, tmp_path):
        cfg = write(tmp_path / "sq.cfg", SQUARE_CFG)
        out = str(tmp_path / "traj.csv")
        cli.main(["simulate", "--config", cfg, "--out", out])
        blob = open(out, "rb").read()
        assert b"\r" not in blob
        assert b";" not in blob
        body = blob.decode().splitlines()[1:]
        assert all(len(line.split(",")) == 11 for line in body)


GRID_1PT = """
[grid]
y0 = 0.0
s0 = 0.0
phi0 = 0.0
mu_c = 0.5
tau_max = uniform
"""


class TestSweep:
    def test_custom_single_point_grid(self, tmp_path):
        grid = write(tmp_path / "grid.cfg", GRID_1PT)
        out = str(tmp_path / "sweepdir")
        code = cli.main(
            ["sweep", "square", "--out", out, "--grid", grid, "--duration", "1.0", "--jobs", "1", "--trajectories"]
        )
        assert code == 0
        lines = open(os.path.join(out, "summary.csv")).read().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("y0,s0,phi0,mu_c,tau_max,final_yc,max_abs_y,status,slip_fraction")
        manifest = json.loads(open(os.path.join(out, "manifest.json")).read())
        assert manifest["runs"] == 1
        assert manifest["statuses"] == {"completed": 1}
        traj = manifest["outputs"]["trajectories"]
        assert len(traj) == 1 and os.path.exists(traj[0])

    def test_full_grid_row_count_short(self, tmp_path):
        out = str(tmp_path / "sweepdir")
        code = cli.main(["sweep", "square", "--out", out, "--duration", "0.05", "--jobs", "2"])
        assert code == 0
        lines = open(os.path.join(out, "summary.csv")).read().splitlines()
        assert len(lines) == 1 + 243

    def test_circle_tau_column(self, tmp_path):
        out = str(tmp_path / "c")
        code = cli.main(["sweep", "circle", "--out", out, "--duration", "0.05", "--jobs", "2"])
        assert code == 0
        lines = open(os.path.join(out, "summary.csv")).read().splitlines()[1:]
        taus = sorted({line.split(",")[4] for line in lines})
        assert taus == ["0.0333333333", "0.333333333", "0.5"]

    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
        for out, jobs in ((out1, 1), (out2, 2)):
            code = cli.main(["sweep", "square", "--out", out, "--duration", "0.2", "--jobs", str(jobs)])
            assert code == 0
        a = open(os.path.join(out1, "summary.csv"), "rb").read()
        b = open(os.path.join(out2, "summary.csv"), "rb").read()
        assert a == b


class TestCheck:
    def test_small_check_passes(self, capsys):
        code = cli.main(["check", "--seed", "1", "--count", "25", "--grid-points", "20001"])
        assert code == 0
        assert "PASS" in capsys.readouterr().out

    def test_zero_count_rejected(self, capsys):
        code = cli.main(["check", "--count", "0"])
        assert code == 1
        assert "count" in capsys.readouterr().err

    def test_corrupted_solver_exits_4(self, capsys):
        from planarpush.dynamics import solve_motion

        def corrupted(ls, frame, v_p):
            r = solve_motion(ls, frame, v_p)
            r.alpha += 0.01
            return r

        args = cli.build_parser().parse_args(
            ["check", "--seed", "2", "--count", "10", "--grid-points", "20001"]
        )
        code = cli.cmd_check(args, solve_fn=corrupted)
        assert code == 4
        err = capsys.readouterr().err
        assert "instance" in err  # failing instance serialized for reproduction


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
