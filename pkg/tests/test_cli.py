import json

import numpy as np
import pytest

from poncelet_loci.cli import main, read_samples_csv
from poncelet_loci.locus import ConicCoeffs, fit_conic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_locus_json(tmp_path, capsys):
    out = tmp_path / "out.json"
    code, stdout, _ = run(capsys, "locus", "--a", "2", "--b", "1", "--center", "circumcenter",
                          "--n", "720", "--json", str(out))
    assert code == 0
    rep = json.loads(out.read_text(encoding="utf-8"))
    assert rep["schema"] == 1
    assert rep["class"]["kind"] == "ellipse"
    assert rep["max_residual"] <= 1e-8
    assert rep["n"] == 720 and rep["center_kind"] == "circumcenter"
    assert len(rep["foci_line_points"]) == 2
    assert set(rep) >= {"ellipse", "caustic", "fit", "symmetry_defect", "collapsed", "tolerances"}
    assert "circumcenter\tellipse" in stdout


def test_locus_circle_collapsed(tmp_path, capsys):
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "locus", "--a", "1", "--b", "1", "--center", "circumcenter",
                     "--n", "64", "--json", str(out))
    assert code == 0
    rep = json.loads(out.read_text(encoding="utf-8"))
    assert rep["collapsed"] is True
    assert rep["fit"] is None


def test_locus_several_kinds(tmp_path, capsys):
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "locus", "--center", "centroid,incenter", "--n", "64", "--json", str(out))
    assert code == 0
    for kind in ("centroid", "incenter"):
        assert json.loads((tmp_path / f"out.{kind}.json").read_text())["center_kind"] == kind


def test_csv_round_trip(tmp_path, capsys):
    js, cs = tmp_path / "r.json", tmp_path / "r.csv"
    assert run(capsys, "locus", "--n", "720", "--json", str(js), "--csv", str(cs))[0] == 0
    rows = read_samples_csv(str(cs))
    assert len(rows) == 720
    stored = np.array(json.loads(js.read_text())["fit"])
    refit = fit_conic([(x, y) for _, x, y in rows]).as_array()
    assert np.max(np.abs(refit - ConicCoeffs.normalized(stored).as_array())) <= 1e-12
    assert cs.read_text().splitlines()[0] == "t,x,y"


def test_svg_output(tmp_path, capsys):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        assert run(capsys, "locus", "--n", "64", "--svg", str(p))[0] == 0
    text = paths[0].read_text(encoding="utf-8")
    assert '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"' in text
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_caustic_and_orbit(capsys):
    code, out, _ = run(capsys, "caustic", "--a", "2", "--b", "1")
    assert code == 0
    lam = float(out.split("\n")[0].split("\t")[1])
    assert lam == pytest.approx(0.98271, abs=1e-4)
    code, out, _ = run(capsys, "orbit", "--a", "2", "--b", "1", "--t", "0")
    assert code == 0
    assert out.startswith("v1\tt=0\tx=2\ty=0")
    closure = float(out.split("closure_residual\t")[1].split("\n")[0])
    assert closure <= 1e-9


def test_cp2_foci(capsys):
    code, out, _ = run(capsys, "cp2", "foci", "--a", "5", "--b", "3")
    assert code == 0
    points = {line.split("\t")[0] for line in out.strip().splitlines()}
    assert points == {"(4, 0)", "(-4, 0)", "(0, 4i)", "(0, -4i)"}


def test_cp2_tangents_and_confocal(capsys):
    code, out, _ = run(capsys, "cp2", "tangents", "--a", "5", "--b", "3")
    assert code == 0 and len(out.strip().splitlines()) == 4
    code, out, _ = run(capsys, "cp2", "check-confocal", "--a2", "25", "--b2", "9", "--lam", "5")
    assert code == 0 and "same isotropic tangents" in out


def test_domain_error_exit_1(capsys):
    code, _, err = run(capsys, "cp2", "foci", "--a", "2", "--b", "1")
    assert code == 1
    assert "FieldExtensionError" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["locus", "--n", "10"],
        ["locus", "--a", "1", "--b", "2"],
        ["locus", "--center", "nine-point"],
        ["verify", "--tol", "bogus=1"],
        ["verify", "--tol", "closure=-1"],
        ["orbit"],
        ["cp2", "foci", "--a", "pi"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_verify_failure_exit_3(capsys):
    code, out, err = run(capsys, "verify", "--tol", "fit_residual=1e-300")
    assert code == 3
    assert "FAIL  theorem_circumcenter_locus_is_ellipse" in out
    assert "theorem_circumcenter_locus_is_ellipse" in err


def test_verify_deterministic(tmp_path, capsys):
    paths = [tmp_path / "v1.json", tmp_path / "v2.json"]
    for p in paths:
        assert run(capsys, "verify", "--json", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    data = json.loads(paths[0].read_text())
    assert data["passed"] is True and data["seed"] == 0
