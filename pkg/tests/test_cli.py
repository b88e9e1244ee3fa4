import json

import pytest

from shiftlab import cli, sysio
from shiftlab.ca import rule_from_formula
from shiftlab.corpus import squares_shift
from shiftlab.groups import Zd
from shiftlab.shifts import Alphabet, FullShift


def write_min_system(tmp_path):
    system = sysio.SystemFile(Zd(1), FullShift(Zd(1), Alphabet(("0", "1"))),
                              rules={"min": rule_from_formula("min")})
    path = tmp_path / "system.json"
    path.write_text(system.serialize())
    return path


def write_config(tmp_path, entries, name="config.json"):
    obj = {"kind": "finite", "entries": [[[int(i)], s] for i, s in entries]}
    path = tmp_path / name
    path.write_text(sysio.dumps(obj))
    return path


class TestSimulate:
    def test_min_block_dies(self, tmp_path):
        sys_path = write_min_system(tmp_path)
        cfg_path = write_config(tmp_path, [(i, "1") for i in range(5)])
        rc = cli.main(["simulate", "--system", str(sys_path),
                       "--config", str(cfg_path), "--steps", "6",
                       "--out-dir", str(tmp_path)])
        assert rc == 0
        out = json.loads((tmp_path / "simulate.json").read_text())
        assert out["final_is_zero"] is True
        pgm = (tmp_path / "spacetime.pgm").read_text()
        assert pgm.startswith("P2\n")
        rows = pgm.strip().split("\n")[3:]
        assert len(rows) == 7  # time 0..6

    def test_svg_render(self, tmp_path):
        sys_path = write_min_system(tmp_path)
        cfg_path = write_config(tmp_path, [(0, "1")])
        rc = cli.main(["simulate", "--system", str(sys_path),
                       "--config", str(cfg_path), "--steps", "2",
                       "--render", "svg", "--out-dir", str(tmp_path)])
        assert rc == 0
        assert (tmp_path / "spacetime.svg").exists()

    def test_missing_file_is_input_error(self, tmp_path):
        rc = cli.main(["simulate", "--system", str(tmp_path / "none.json"),
                       "--config", str(tmp_path / "none2.json"),
                       "--out-dir", str(tmp_path)])
        assert rc == cli.EXIT_INPUT_ERROR

    def test_malformed_json_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        rc = cli.main(["simulate", "--system", str(bad),
                       "--config", str(bad), "--out-dir", str(tmp_path)])
        assert rc == cli.EXIT_INPUT_ERROR


class TestAnalyze:
    def test_min_report(self, tmp_path):
        sys_path = write_min_system(tmp_path)
        rc = cli.main(["analyze", "--system", str(sys_path),
                       "--horizon", "32", "--radius", "4",
                       "--render", "png", "--out-dir", str(tmp_path)])
        assert rc == 0
        report = json.loads((tmp_path / "analyze.json").read_text())
        assert report["bounded_nilpotency"]["verdict"] == "No"
        assert report["finite_ring"]["weak_nilpotent"] is False
        assert report["spaceship"] is None
        assert (tmp_path / "profile.csv").exists()
        assert (tmp_path / "profile.png").exists()
        csv_lines = (tmp_path / "profile.csv").read_text().strip().split("\n")
        assert csv_lines[0] == "radius,max_mortality_steps,exhaustive,alive_seeds"
        assert len(csv_lines) == 6  # header + radii 0..4

    def test_spaceship_certificate_in_report(self, tmp_path):
        from shiftlab.corpus import spaceship_shift
        system = sysio.SystemFile(
            Zd(1), spaceship_shift(),
            rules={"spaceship": rule_from_formula("spaceship")})
        sys_path = tmp_path / "ship.json"
        sys_path.write_text(system.serialize())
        rc = cli.main(["analyze", "--system", str(sys_path),
                       "--horizon", "16", "--radius", "3",
                       "--render", "none", "--out-dir", str(tmp_path)])
        assert rc == 0
        report = json.loads((tmp_path / "analyze.json").read_text())
        assert report["spaceship"] is not None
        assert report["spaceship"]["verified"] is True
        assert report["spaceship"]["period"] == 1

    def test_budget_exit_code(self, tmp_path):
        sys_path = write_min_system(tmp_path)
        rc = cli.main(["analyze", "--system", str(sys_path),
                       "--horizon", "8", "--radius", "15",
                       "--render", "none", "--out-dir", str(tmp_path)])
        assert rc == cli.EXIT_BUDGET


class TestGlue:
    def test_two_squares(self, tmp_path):
        system = sysio.SystemFile(Zd(2), squares_shift())
        sys_path = tmp_path / "squares.json"
        sys_path.write_text(system.serialize())
        sched = {
            "R": 2,
            "entries": [
                {"offset": [1, 1],
                 "pattern": [[[0, 0], "1"], [[0, 1], "1"], [[1, 0], "1"], [[1, 1], "1"]]},
                {"offset": [6, 6],
                 "pattern": [[[0, 0], "1"], [[0, 1], "1"], [[1, 0], "1"], [[1, 1], "1"]]},
            ],
        }
        sched_path = tmp_path / "sched.json"
        sched_path.write_text(json.dumps(sched))
        rc = cli.main(["glue", "--system", str(sys_path),
                       "--schedule", str(sched_path), "--window", "0,0,9,9",
                       "--out-dir", str(tmp_path)])
        assert rc == 0
        out = json.loads((tmp_path / "glued.json").read_text())
        cells = {tuple(e): s for e, s in out["pattern"]}
        assert cells[(1, 1)] == "1" and cells[(7, 7)] == "1"
        assert (tmp_path / "glued.pgm").exists()


class TestPeriodize:
    def test_single_cell(self, tmp_path):
        system = sysio.SystemFile(Zd(2), FullShift(Zd(2), Alphabet(("0", "1"))))
        sys_path = tmp_path / "full2.json"
        sys_path.write_text(system.serialize())
        cfg = tmp_path / "one.json"
        cfg.write_text(sysio.dumps(
            {"kind": "finite", "entries": [[[0, 0], "1"]]}))
        rc = cli.main(["periodize", "--system", str(sys_path),
                       "--config", str(cfg), "--direction", "0,1",
                       "--radius", "0", "--out-dir", str(tmp_path)])
        assert rc == 0
        out = json.loads((tmp_path / "periodize.json").read_text())
        assert out["report"]["periodic"] is True
        assert out["point"]["kind"] == "strip_periodic"


class TestReproduce:
    def test_even_shift_bundle(self, tmp_path, capsys):
        rc = cli.main(["reproduce", "even-shift", "--out-dir", str(tmp_path)])
        assert rc == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert all(line.startswith("[PASS]") for line in lines)
        assert (tmp_path / "even-shift.csv").exists()
        assert (tmp_path / "even-shift.json").exists()

    def test_unknown_bundle_rejected(self, tmp_path):
        with pytest.raises(SystemExit):
            cli.main(["reproduce", "not-a-bundle", "--out-dir", str(tmp_path)])
