import json
import subprocess
import sys

import numpy as np
import pytest

from orthogroups import SparseVector, basis, random_orthogonal
from orthogroups.cli import main
from orthogroups.decomposition import matrix_to_json


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_decompose_identity(tmp_path, capsys):
    code, out = run(["decompose", write(tmp_path, "m.json", matrix_to_json(np.eye(4)))], capsys)
    assert code == 0
    assert out["word"]["factors"] == [] and out["residual"] == 0.0
    assert out["report"]["passed"]


def test_decompose_swap(tmp_path, capsys):
    f = write(tmp_path, "m.json", {"n": 2, "rows": [[0, 1], [1, 0]]})
    code, out = run(["decompose", f], capsys)
    assert code == 0 and len(out["word"]["factors"]) == 1


def test_decompose_not_orthogonal(tmp_path, capsys):
    f = write(tmp_path, "m.json", {"n": 2, "rows": [[1, 0.2], [0, 1]]})
    code, out = run(["decompose", f], capsys)
    assert code == 3
    (check,) = out["report"]["checks"]
    assert not check["pass"] and check["worst"] == pytest.approx(0.2)


def test_decompose_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["decompose", str(bad)]) == 2
    assert main(["decompose", write(tmp_path, "m.json", {"rows": [[1]]})]) == 2
    assert main(["decompose", str(tmp_path / "missing.json")]) == 2


def test_verify_reflections(capsys):
    code, out = run(["verify", "reflections", "--samples", "200", "--seed", "1"], capsys)
    assert code == 0 and out["passed"]
    assert {c["name"] for c in out["checks"]} == {
        "reflection_involution", "reflection_self_adjoint", "reflection_norm_preservation"}


def test_verify_frechet(capsys):
    code, out = run(["verify", "frechet", "--samples", "100", "--seed", "7"], capsys)
    (check,) = out["checks"]
    assert code == 0 and check["worst"] <= 1e-6


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "unknown"])
    assert info.value.code == 2


def test_verify_is_deterministic_and_job_independent(tmp_path):
    paths = [tmp_path / f"r{k}.json" for k in range(3)]
    main(["verify", "quotient", "--samples", "40", "--seed", "3", "--out", str(paths[0])])
    main(["verify", "quotient", "--samples", "40", "--seed", "3", "--out", str(paths[1])])
    main(["--jobs", "2", "verify", "quotient", "--samples", "40", "--seed", "3", "--out", str(paths[2])])
    a, b, c = (p.read_bytes() for p in paths)
    assert a == b == c


def test_timing_is_opt_in(capsys):
    _, out = run(["verify", "charts", "--samples", "5"], capsys)
    assert "wall_time_ms" not in out
    _, out = run(["verify", "charts", "--samples", "5", "--timing"], capsys)
    assert isinstance(out["wall_time_ms"], int)


def test_contract_e1(tmp_path, capsys):
    f = write(tmp_path, "x.json", basis(1).to_json())
    code, out = run(["contract", f, "--steps", "4"], capsys)
    assert code == 0
    ts = [s["t"] for s in out["samples"]]
    assert ts == pytest.approx([0, 1 / 3, 2 / 3, 1], abs=1e-15)
    assert SparseVector.from_json(out["samples"][-1]["point"]) == basis(0)
    assert all(s["norm_residual"] <= 1e-9 for s in out["samples"])
    assert all(c["pass"] for c in out["certificate"]["checks"])


def test_contract_e0_is_closed_loop(tmp_path, capsys):
    f = write(tmp_path, "x.json", basis(0).to_json())
    code, out = run(["contract", f, "--steps", "9"], capsys)
    first, last = (SparseVector.from_json(out["samples"][k]["point"]) for k in (0, -1))
    assert code == 0 and first == last == basis(0)


def test_contract_normalizes_nearly_unit_input(tmp_path, capsys):
    f = write(tmp_path, "x.json", {"entries": {"2": 1.0 + 5e-7}})
    code, _ = run(["contract", f, "--steps", "3"], capsys)
    assert code == 0


def test_contract_rejects_bad_input(tmp_path, capsys):
    assert main(["contract", write(tmp_path, "z.json", {"entries": {}})]) == 3
    assert main(["contract", write(tmp_path, "x.json", {"entries": {"0": 2.0}})]) == 3
    assert main(["contract", write(tmp_path, "y.json", {"entries": {"0": 1.0}}), "--steps", "1"]) == 2


def test_fibre_command(capsys):
    code, out = run(["fibre", "--dim", "1", "--samples", "100"], capsys)
    worst = {c["name"]: c["worst"] for c in out["checks"]}
    assert code == 0 and worst["fibre_round_trip"] <= 1e-8
    code, out = run(["fibre", "--dim", "3", "--samples", "100"], capsys)
    assert code == 0 and all(c["pass"] for c in out["checks"])


def test_fibre_dim_guard(capsys):
    assert main(["fibre", "--dim", "0"]) == 2
    assert main(["fibre", "--dim", "9"]) == 2


def test_out_flag_writes_file(tmp_path, capsys):
    out = tmp_path / "o.json"
    f = write(tmp_path, "m.json", matrix_to_json(random_orthogonal(3, 0)))
    assert main(["decompose", f, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["report"]["passed"]


def test_module_entry_point(tmp_path):
    f = write(tmp_path, "m.json", matrix_to_json(np.eye(2)))
    proc = subprocess.run([sys.executable, "-m", "orthogroups", "decompose", f],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["word"]["n"] == 2
