import json
import subprocess
import sys

import jsonschema
import pytest

from fpgroups import __version__, data_path
from fpgroups.cli import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, main, p_series_main

SCHEMA = json.loads(data_path("report.schema.json").read_text())
A = str(data_path("A.pres"))
F2 = str(data_path("F2.pres"))
B = str(data_path("B.sub"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report_of(text):
    rep = json.loads(text)
    jsonschema.validate(rep, SCHEMA)
    return rep


def test_coset_enum(capsys):
    code, out, _ = run(capsys, "coset-enum", "--presentation", A, "--subgroup", B, "--seed", "7")
    rep = report_of(out)
    assert code == EXIT_OK and rep["exit_code"] == 0 and rep["status"] == "pass"
    assert rep["result"]["index"] == 8 and len(rep["result"]["transversal"]) == 8
    assert rep["seed"] == 7 and rep["version"] == __version__
    assert rep["config"]["max_cosets"] == 200000


def test_coset_enum_limit(capsys):
    code, out, _ = run(capsys, "coset-enum", "--presentation", A, "--subgroup", B, "--max-cosets", "1")
    assert code == EXIT_INCONCLUSIVE
    assert report_of(out)["status"] == "inconclusive"


def test_subgroup_presentation(capsys):
    code, out, _ = run(capsys, "subgroup-presentation", "--presentation", A, "--subgroup", B)
    res = report_of(out)["result"]
    assert code == EXIT_OK
    assert (res["index"], res["n_generators"], res["n_relators"]) == (8, 3, 0)


def test_p_series(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "p-series", "--presentation", F2, "--prime", "2", "--depth", "2", "--out", str(out_file))
    assert code == EXIT_OK and out == ""
    rep = report_of(out_file.read_text())
    assert rep["result"]["orders"] == [1, 4, 128]


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "p-series", "--presentation", F2, "--prime", "4", "--depth", "2")[0] == EXIT_USAGE
    assert run(capsys, "coset-enum", "--presentation", A)[0] == EXIT_USAGE
    assert run(capsys, "coset-enum", "--presentation", str(tmp_path / "missing"), "--subgroup", B)[0] == EXIT_USAGE
    assert run(capsys, "bogus")[0] == EXIT_USAGE
    assert run(capsys, "triangle-lab", "--spec", "2,3,6", "--radius", "2")[0] == EXIT_USAGE
    assert run(capsys, "coset-enum", "--presentation", A, "--subgroup", B, "--max-cosets", "0")[0] == EXIT_USAGE
    bad = tmp_path / "bad.pres"
    bad.write_text("gens: x\nrels: z^2\n")
    code, _, err = run(capsys, "coset-enum", "--presentation", str(bad), "--subgroup", B)
    assert code == EXIT_USAGE and err


def test_omega_run(capsys):
    sched = str(data_path("F2_demo.schedule"))
    sub = str(data_path("F2_whole.sub"))
    code, out, _ = run(capsys, "omega-run", "--presentation", F2, "--subgroup", sub, "--prime", "2",
                       "--bits", "01", "--schedule", sched)
    res = report_of(out)["result"]
    assert code == EXIT_OK and res["bits"] == "01"
    assert [s["exponent"] for s in res["steps"]] == [2, 8]
    assert run(capsys, "omega-run", "--presentation", F2, "--subgroup", sub, "--prime", "2",
               "--bits", "012", "--schedule", sched)[0] == EXIT_USAGE


def test_triangle_lab(capsys, tmp_path):
    export = tmp_path / "ball.json"
    code, out, _ = run(capsys, "triangle-lab", "--radius", "4", "--slimness-samples", "20",
                       "--quasifit", "x*y^2", "--aperiodic", "x", "--export-ball", str(export))
    res = report_of(out)["result"]
    assert code == EXIT_OK
    assert res["ball"]["sphere_sizes"] == [1, 3, 5, 8, 13]
    assert max(res["residuals"].values()) <= 1e-9
    assert res["aperiodic"]["verdict"] == "aperiodic-at-scale"
    edges = json.loads(export.read_text())
    assert len(edges) > 0 and all(len(e) == 4 for e in edges)
    code, _, _ = run(capsys, "triangle-lab", "--radius", "4", "--aperiodic", "x", "--t", "100")
    assert code == EXIT_INCONCLUSIVE


def test_wiegold_verify(capsys, tmp_path):
    out_file = tmp_path / "w.json"
    code, out, _ = run(capsys, "wiegold-verify", "--json", str(out_file))
    assert code == EXIT_OK
    assert out.startswith("verdict: pass")
    rep = report_of(out_file.read_text())
    assert rep["result"]["verdict"] == "pass"
    code, out, _ = run(capsys, "wiegold-verify", "--max-cosets", "4")
    assert code == EXIT_INCONCLUSIVE and "incomplete" in out


def test_deterministic_result(capsys):
    args = ("p-series", "--presentation", F2, "--prime", "3", "--depth", "2")
    r1 = report_of(run(capsys, *args)[1])
    r2 = report_of(run(capsys, *args)[1])
    r1.pop("wall_clock_s"), r2.pop("wall_clock_s")
    assert r1 == r2


def test_entry_point_and_module():
    assert p_series_main(["--presentation", F2, "--prime", "2", "--depth", "1", "--out", "/dev/null"]) == EXIT_OK
    proc = subprocess.run([sys.executable, "-m", "fpgroups.cli", "p-series", "--presentation", F2,
                           "--prime", "9", "--depth", "1"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE


@pytest.mark.parametrize("flag", ["--version"])
def test_version(capsys, flag):
    with pytest.raises(SystemExit) as exc:
        main([flag])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out
