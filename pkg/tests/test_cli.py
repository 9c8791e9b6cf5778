import json

import pytest

from ftplane import CertificateError, Vec2, ft_solve, make_lambda_norm
from ftplane.cli import main

from conftest import SQRT3


@pytest.fixture()
def hex_norm_file(tmp_path):
    path = tmp_path / "hex.json"
    path.write_text(json.dumps({"type": "lambda", "lambda": 3}))
    return str(path)


@pytest.fixture()
def diamond_norm_file(tmp_path):
    path = tmp_path / "diamond.json"
    path.write_text(json.dumps(
        {"type": "polygon", "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]}))
    return str(path)


@pytest.fixture()
def triangle_points_file(tmp_path):
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(
        {"points": [[0, 0], [1, 0], [0.5, SQRT3 / 2]]}))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_document(capsys, hex_norm_file, triangle_points_file):
    code, out, _ = run(capsys, ["solve", "--norm", hex_norm_file,
                                "--points", triangle_points_file])
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "polygon"
    assert doc["objective"] == pytest.approx(2.0, abs=1e-9)
    assert len(doc["vertices"]) == 3
    sx = sum(f[0] for f in doc["certificate"]["functionals"])
    sy = sum(f[1] for f in doc["certificate"]["functionals"])
    assert abs(sx) <= 1e-9 and abs(sy) <= 1e-9


def test_solve_round_trip(capsys, hex_norm_file, triangle_points_file):
    code, out, _ = run(capsys, ["solve", "--norm", hex_norm_file,
                                "--points", triangle_points_file])
    doc = json.loads(out)
    norm = make_lambda_norm(3).norm
    sol = ft_solve(norm, [Vec2(0, 0), Vec2(1, 0), Vec2(0.5, SQRT3 / 2)])
    assert doc["kind"] == sol.region.kind
    assert doc["objective"] == pytest.approx(sol.objective, abs=1e-9)
    for got, want in zip(doc["vertices"], sol.region.vertices):
        assert got[0] == pytest.approx(want.x, abs=1e-9)
        assert got[1] == pytest.approx(want.y, abs=1e-9)
    assert doc["certificate"]["p"][0] == pytest.approx(sol.certificate.base.x, abs=1e-9)


def test_solve_deterministic_bytes(capsys, hex_norm_file, triangle_points_file):
    argv = ["solve", "--norm", hex_norm_file, "--points", triangle_points_file,
            "--seed", "1"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_uniqueness_documents(capsys, diamond_norm_file, hex_norm_file):
    code, out, _ = run(capsys, ["uniqueness", "--norm", diamond_norm_file])
    assert code == 0
    assert json.loads(out) == {"verdict": "unique"}
    code, out, _ = run(capsys, ["uniqueness", "--norm", hex_norm_file])
    doc = json.loads(out)
    assert doc["verdict"] == "nonunique"
    assert doc["condition"] == 1
    assert doc["region_kind"] == "polygon"
    assert len(doc["witness"]) == 3


def test_lambda_table(capsys):
    code, out, _ = run(capsys, ["lambda", "--max", "12"])
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip() and not l.startswith("lambda")]
    assert len(lines) == 11
    for line in lines:
        fields = line.split()
        lam = int(fields[0])
        want = "nonunique" if lam % 3 == 0 else "unique"
        assert fields[1] == want


def test_lambda_json(capsys):
    code, out, _ = run(capsys, ["lambda", "--max", "6", "--json"])
    docs = json.loads(out)
    assert [d["lambda"] for d in docs] == [2, 3, 4, 5, 6]
    assert [d["verdict"] for d in docs] == [
        "unique", "nonunique", "unique", "unique", "nonunique"]


def test_witness_command(capsys, hex_norm_file, diamond_norm_file):
    code, out, _ = run(capsys, ["witness", "--norm", hex_norm_file])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "nonunique"
    assert doc["region"]["kind"] == "polygon"
    code, out, _ = run(capsys, ["witness", "--norm", diamond_norm_file])
    assert json.loads(out) == {"verdict": "unique"}


def test_lambda_flag_replaces_norm_file(capsys, triangle_points_file):
    code, out, _ = run(capsys, ["solve", "--lambda", "3",
                                "--points", triangle_points_file])
    assert code == 0
    assert json.loads(out)["objective"] == pytest.approx(2.0, abs=1e-9)


def test_svg_structure(tmp_path, capsys, hex_norm_file, triangle_points_file):
    svg_path = tmp_path / "fig.svg"
    code, _, _ = run(capsys, ["render", "--norm", hex_norm_file,
                              "--points", triangle_points_file,
                              "--svg", str(svg_path)])
    assert code == 0
    svg = svg_path.read_text()
    assert svg.count('class="norm"') == 1
    assert svg.count('class="terminal"') == 3
    assert svg.count('class="region"') == 1
    assert svg.count('class="cone"') == 3
    assert 'fill="#d33"' in svg  # region is filled


def test_svg_point_region_marker(tmp_path, capsys, diamond_norm_file):
    pts = tmp_path / "collinear.json"
    pts.write_text(json.dumps({"points": [[0, 0], [1, 0], [5, 0]]}))
    svg_path = tmp_path / "point.svg"
    code, _, _ = run(capsys, ["render", "--norm", diamond_norm_file,
                              "--points", str(pts), "--svg", str(svg_path)])
    assert code == 0
    svg = svg_path.read_text()
    # relaxed certificate: no cones drawn, region is a circle marker
    assert svg.count('class="cone"') == 0
    assert '<circle class="region"' in svg
    assert svg.count('class="terminal"') == 3


def test_validation_exit_codes(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    code, _, err = run(capsys, ["uniqueness", "--norm", missing])
    assert code == 1 and err.strip()

    bad_norm = tmp_path / "bad.json"
    bad_norm.write_text(json.dumps(
        {"type": "polygon", "vertices": [[1, 0], [0, 1], [-1, 0]]}))
    code, _, err = run(capsys, ["uniqueness", "--norm", str(bad_norm)])
    assert code == 1 and "vertex" in err

    pts = tmp_path / "p.json"
    pts.write_text(json.dumps({"points": [[0, 0]]}))
    code, _, err = run(capsys, ["solve", "--lambda", "1", "--points", str(pts)])
    assert code == 1

    code, _, err = run(capsys, ["solve", "--lambda", "3", "--points", str(pts),
                                "--tol", "0.5"])
    assert code == 1 and "tolerance" in err

    nan_pts = tmp_path / "nan.json"
    nan_pts.write_text('{"points": [[0, 0], [NaN, 1]]}')
    code, _, err = run(capsys, ["solve", "--lambda", "3", "--points", str(nan_pts)])
    assert code == 1 and "finite" in err


def test_usage_error_is_validation(capsys):
    assert main(["solve"]) == 1  # missing required --points


def test_internal_failure_exit_code(monkeypatch, capsys, tmp_path,
                                    diamond_norm_file):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps({"points": [[0, 0], [2, 0], [0, 2]]}))

    import ftplane.cli as cli_mod

    def boom(*args, **kwargs):
        raise CertificateError("forced failure")

    monkeypatch.setattr(cli_mod, "ft_solve", boom)
    code, _, err = run(capsys, ["solve", "--norm", diamond_norm_file,
                                "--points", str(pts)])
    assert code == 2 and "certificate" in err
