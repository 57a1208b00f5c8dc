import csv
import io as stdio
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from gaussbc import cli, io, tolerances
from gaussbc.families import FAMILIES, generate


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def protocol_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    assert run(["gen", "thermal-pair", "--param", "x1=0.5", "-o", path], capsys)[0] == 0
    return path


class TestGen:
    @pytest.mark.parametrize("family", sorted(FAMILIES))
    def test_deterministic(self, family, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(["gen", family, "--seed", 3, "-o", a], capsys)[0] == 0
        assert run(["gen", family, "--seed", 3, "-o", b], capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_changes_output(self, capsys):
        _, a, _ = run(["gen", "squeezed-random", "--seed", 1], capsys)
        _, b, _ = run(["gen", "squeezed-random", "--seed", 2], capsys)
        assert a != b

    def test_metadata(self, capsys):
        _, out, _ = run(["gen", "thermal-pair", "--param", "x1=0.25", "--seed", 4], capsys)
        meta = json.loads(out)["metadata"]
        assert meta == {"family": "thermal-pair", "seed": 4,
                        "params": {"x0": 0.0, "x1": 0.25, "n": 1}}

    def test_unknown_parameter(self, capsys):
        code, _, err = run(["gen", "thermal-pair", "--param", "y=1"], capsys)
        assert code == 2 and "y" in err

    def test_invalid_parameter_value(self, capsys):
        code, _, err = run(["gen", "thermal-pair", "--param", "x1=1.5"], capsys)
        assert code == 2 and "thermal parameter" in err

    def test_unknown_family(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["gen", "nope"])
        assert info.value.code == 2


class TestRoundTrip:
    @pytest.mark.parametrize("family", sorted(FAMILIES))
    def test_byte_stable(self, family):
        protocol, params = generate(family, seed=11)
        text = io.dumps(io.protocol_to_dict(protocol, {"params": params}))
        parsed, meta = io.parse_protocol(text)
        assert io.dumps(io.protocol_to_dict(parsed, meta)) == text

    def test_atomic_write_replaces(self, tmp_path):
        path = tmp_path / "f.txt"
        io.atomic_write(path, "one")
        io.atomic_write(path, "two")
        assert path.read_text() == "two"
        assert os.listdir(tmp_path) == ["f.txt"]


class TestAttack:
    def test_json(self, protocol_file, capsys):
        code, out, _ = run(["attack", protocol_file], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["certified"] is True
        assert report["delta"] == pytest.approx(np.sqrt(0.5), abs=1e-12)
        assert report["metadata"]["family"] == "thermal-pair"

    def test_csv(self, protocol_file, capsys):
        code, out, _ = run(["attack", protocol_file, "--format", "csv"], capsys)
        assert code == 0
        rows = list(csv.DictReader(stdio.StringIO(out)))
        assert len(rows) == 1
        assert rows[0]["param"] == "0.5" and rows[0]["certified"] == "true"
        assert rows[0]["error"] == ""

    def test_deterministic_output(self, protocol_file, capsys):
        assert run(["attack", protocol_file], capsys)[1] == run(["attack", protocol_file], capsys)[1]

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(["attack", tmp_path / "missing.json"], capsys)
        assert code == 2 and "missing.json" in err

    def test_certification_failure_is_internal(self, protocol_file, capsys, monkeypatch):
        from gaussbc.errors import CertificationError

        def fail(protocol):
            raise CertificationError("forced")

        monkeypatch.setattr(cli, "build_attack", fail)
        code, _, err = run(["attack", protocol_file], capsys)
        assert code == 3 and "CertificationError" in err


def corrupt(path, edit):
    obj = json.loads(path.read_text())
    edit(obj)
    path.write_text(json.dumps(obj))


class TestBadInput:
    def test_asymmetric_gamma(self, protocol_file, capsys):
        def edit(obj):
            obj["psi1"]["gamma"][0][1] += 0.5
        corrupt(protocol_file, edit)
        for command in ("attack", "validate"):
            code, _, err = run([command, protocol_file], capsys)
            assert code == 2
            assert "psi1.gamma" in err

    def test_unphysical_gamma(self, protocol_file, capsys):
        def edit(obj):
            obj["psi0"]["gamma"][0][0] = 0.1
        corrupt(protocol_file, edit)
        code, out, err = run(["validate", protocol_file], capsys)
        assert code == 2 and "psi0.gamma" in err and "Heisenberg" in err
        assert json.loads(out)["ok"] is False

    def test_mixed_state(self, protocol_file, capsys):
        def edit(obj):
            obj["psi0"]["gamma"] = (3 * np.eye(4)).tolist()
        corrupt(protocol_file, edit)
        code, _, err = run(["attack", protocol_file], capsys)
        assert code == 2 and "psi0.gamma" in err and "not pure" in err

    def test_malformed_json(self, protocol_file, capsys):
        protocol_file.write_text('{"n": 1,\n  "psi0": [}')
        code, _, err = run(["attack", protocol_file], capsys)
        assert code == 2 and "line 2" in err

    @pytest.mark.parametrize("edit,field", [
        (lambda o: o.pop("psi1"), "psi1: missing"),
        (lambda o: o["psi0"].pop("mu"), "psi0.mu: missing"),
        (lambda o: o["psi0"]["mu"].pop(), "psi0.mu: expected 4 entries"),
        (lambda o: o["psi1"]["gamma"][2].__setitem__(1, "x"), "psi1.gamma[2][1]"),
        (lambda o: o.__setitem__("n", 0), "n: expected a positive integer"),
        (lambda o: o.__setitem__("convention", "other"), "convention"),
    ])
    def test_field_named(self, protocol_file, capsys, edit, field):
        corrupt(protocol_file, edit)
        code, _, err = run(["validate", protocol_file], capsys)
        assert code == 2 and field in err

    def test_non_finite(self, protocol_file, capsys):
        protocol_file.write_text(protocol_file.read_text().replace("0.0", "NaN", 1))
        code, _, err = run(["attack", protocol_file], capsys)
        assert code == 2 and "non-finite" in err


class TestValidate:
    def test_ok(self, protocol_file, capsys):
        code, out, _ = run(["validate", protocol_file], capsys)
        report = json.loads(out)
        assert code == 0 and report["ok"]
        assert report["psi0"]["pure"] and report["psi1"]["valid"]
        lo, up = report["concealment"]["epsilon_lower"], report["concealment"]["epsilon_upper"]
        assert lo <= 0.5 <= up


class TestSweep:
    def test_rows(self, capsys):
        code, out, _ = run(["sweep", "thermal-pair", "--grid", "0:0.9:10"], capsys)
        assert code == 0
        rows = list(csv.DictReader(stdio.StringIO(out)))
        assert len(rows) == 10
        deltas = [float(r["delta"]) for r in rows]
        assert deltas == sorted(deltas)
        assert all(r["certified"] == "true" for r in rows)

    def test_list_grid_and_workers(self, capsys):
        a = run(["sweep", "squeezed-random", "--grid", "0.1,0.2,0.3"], capsys)[1]
        b = run(["sweep", "squeezed-random", "--grid", "0.1,0.2,0.3", "--workers", 3], capsys)[1]
        assert a == b

    def test_row_failure_recorded(self, capsys):
        code, out, _ = run(["sweep", "thermal-pair", "--grid", "0.1,2.0"], capsys)
        rows = list(csv.DictReader(stdio.StringIO(out)))
        assert code == 0
        assert rows[1]["error"].startswith("ValueError") and rows[1]["certified"] == "false"

    def test_bad_grid(self, capsys):
        code, _, err = run(["sweep", "thermal-pair", "--grid", "a:b"], capsys)
        assert code == 2 and "--grid" in err

    def test_empty_grid(self, capsys):
        code, out, _ = run(["sweep", "thermal-pair", "--grid", ""], capsys)
        assert code == 0 and out.strip() == ",".join(
            ["param", "eps_lower", "eps_upper", "delta", "bound_rhs", "certified", "error"])


class TestOracle:
    def test_worked_point(self, capsys):
        code, out, _ = run(["oracle", "0", "0.5"], capsys)
        result = json.loads(out)
        assert code == 0
        assert result["B"] == pytest.approx(np.sqrt(0.5), abs=1e-12)
        assert result["F"] == pytest.approx(0.5, abs=1e-12)
        assert result["D"] == pytest.approx(0.5, abs=1e-12)

    def test_out_of_range(self, capsys):
        assert run(["oracle", "0", "1.0"], capsys)[0] == 2


def test_csv_numpy_scalars():
    from gaussbc.attack import SweepRow
    text = io.rows_to_csv([SweepRow(np.float64(0.5), 0.1, 0.2, 0.3, np.float64(0.4), True)])
    assert text.splitlines()[1] == "0.5,0.1,0.2,0.3,0.4,true,"


class TestTolerances:
    def test_parse_float(self):
        assert tolerances.parse_override("1e-6") == {"eig": 1e-6}

    def test_parse_list(self):
        assert tolerances.parse_override("eig=1e-6, dec=1e-7") == {"eig": 1e-6, "dec": 1e-7}

    def test_parse_empty(self):
        assert tolerances.parse_override("  ") == {}

    def test_parse_bad(self):
        with pytest.raises(ValueError):
            tolerances.parse_override("speed=3")

    def test_scoped(self):
        before = tolerances.get()
        with tolerances.using(eig=1e-3, dec=None):
            assert tolerances.get().eig == 1e-3
            assert tolerances.get().dec == before.dec
        assert tolerances.get() == before

    def test_flag(self, protocol_file, capsys):
        # a looser Heisenberg slack admits a slightly sub-vacuum entry
        def edit(obj):
            obj["psi0"]["gamma"][0][0] -= 1e-6
        corrupt(protocol_file, edit)
        assert run(["validate", protocol_file], capsys)[0] == 2
        code, out, _ = run(["--tol-eig", "1e-4", "validate", protocol_file], capsys)
        assert json.loads(out)["psi0"]["valid"]

    def test_environment_variable(self, protocol_file):
        def edit(obj):
            obj["psi0"]["gamma"][0][0] -= 1e-6
        corrupt(protocol_file, edit)
        cmd = [sys.executable, "-m", "gaussbc", "validate", str(protocol_file)]
        strict = subprocess.run(cmd, capture_output=True, text=True)
        loose = subprocess.run(cmd, capture_output=True, text=True,
                               env=dict(os.environ, GBC_DEFAULT_TOL="eig=1e-4"))
        assert strict.returncode == 2
        assert json.loads(loose.stdout)["psi0"]["valid"]
