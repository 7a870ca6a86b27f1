import json
import math

import numpy as np
import pytest

from tmsvortex.cli import (
    DEFAULTS,
    UsageError,
    config_lines,
    csv_bytes,
    main,
    parse_config,
    parse_grid,
    read_config_file,
    read_heatmap,
    render_heatmap,
)
from tmsvortex.fock import SqueezeParams
from tmsvortex.grid import GridSpec
from tmsvortex.wigner import WignerSliceSpec, slice_field


def test_defaults():
    cfg = parse_config(["wigner"])
    assert cfg.params.r == 0.8
    assert cfg.params.theta == pytest.approx(math.pi / 2)
    assert cfg.k == 1
    assert cfg.grid == GridSpec((-3.0, 3.0), (-3.0, 3.0), 201, 201)
    assert cfg.formats == ("csv", "json")
    assert cfg.slice.plane == "xy"


def test_flag_beats_file_beats_default(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("# comment\nr=0.7\nk=2\n")
    cfg = parse_config(["wigner", "--r", "1.5", "--config", str(f)])
    assert cfg.params.r == 1.5
    assert cfg.k == 2
    assert cfg.tol == float(DEFAULTS["tol"])


def test_unknown_config_key_rejected(tmp_path):
    f = tmp_path / "bad.cfg"
    f.write_text("radius=0.7\n")
    with pytest.raises(UsageError, match="radius"):
        read_config_file(f)


@pytest.mark.parametrize(
    "argv, name",
    [
        (["wigner", "--k", "-1"], "k"),
        (["wigner", "--r", "-0.2"], "r"),
        (["wigner", "--tol", "0"], "tol"),
        (["wigner", "--k", "two"], "k"),
        (["herald", "--transmittance", "1.5"], "transmittance"),
        (["wigner", "--slice", "ab"], "slice"),
        (["wigner", "--format", "png"], "format"),
        (["reproduce", "fig9"], "figure"),
        (["bogus"], "command"),
    ],
)
def test_bad_values_name_the_key(argv, name):
    with pytest.raises(UsageError, match=name):
        parse_config(argv)


def test_usage_error_exit_code(capsys):
    assert main(["wigner", "--k", "-1"]) == 2
    assert "k" in capsys.readouterr().err


def test_negative_grid_values_parse():
    cfg = parse_config(["wigner", "--grid", "-2:2:11", "--fixed", "px=-1,py=0.5"])
    assert cfg.grid == GridSpec((-2.0, 2.0), (-2.0, 2.0), 11, 11)
    assert cfg.slice.fixed == {"px": -1.0, "py": 0.5}


def test_grid_with_separate_axes():
    g = parse_grid("-1:1:5,-2:3:7")
    assert g.x_range == (-1.0, 1.0) and g.ny == 7 and g.y_range == (-2.0, 3.0)
    with pytest.raises(UsageError):
        parse_grid("1:1:5")


def test_config_lines_roundtrip(tmp_path):
    cfg = parse_config(["wigner", "--r", "0.3", "--k", "2", "--grid", "-1:1:9", "--slice", "xpx"])
    f = tmp_path / "again.cfg"
    f.write_text(config_lines(cfg))
    again = parse_config(["wigner", "--config", str(f)])
    assert again.params == cfg.params and again.k == cfg.k and again.grid == cfg.grid
    assert again.slice == cfg.slice


# --- heatmaps -----------------------------------------------------------------------


def test_heatmap_linear_mapping_and_orientation():
    data = render_heatmap(np.array([[0.0, 1.0], [2.0, 3.0]]))
    assert data.startswith(b"P5\n# tmsvortex")
    pix, lo, hi, flagged = read_heatmap(data)
    # field[ix, iy]; the top row is the largest y
    np.testing.assert_array_equal(pix, [[21845, 65535], [0, 43690]])
    assert (lo, hi, flagged) == (0.0, 3.0, False)
    assert pix.dtype.byteorder == ">"


def test_heatmap_symmetric_puts_zero_mid_gray():
    pix, lo, hi, _ = read_heatmap(render_heatmap(np.array([[-1.0, 0.0], [0.5, 1.0]]), "symmetric"))
    assert (lo, hi) == (-1.0, 1.0)
    assert pix[1, 0] == 0 and pix[0, 1] == 65535 and pix[0, 0] == 32768


def test_heatmap_constant_field_flagged():
    data = render_heatmap(np.full((3, 4), 2.5))
    pix, lo, hi, flagged = read_heatmap(data)
    assert flagged and b"flag=constant" in data
    assert pix.shape == (4, 3) and np.all(pix == 32768)


def test_heatmap_rejects_bad_input():
    with pytest.raises(ValueError):
        render_heatmap(np.array([[np.nan, 1.0]]))
    with pytest.raises(ValueError):
        render_heatmap(np.zeros(3))
    with pytest.raises(ValueError):
        render_heatmap(np.eye(2), "log")


def test_k1_xy_slice_darkest_at_center():
    spec = WignerSliceSpec("xy", {}, GridSpec((-3, 3), (-3, 3), 41, 41))
    pix, *_ = read_heatmap(render_heatmap(slice_field(SqueezeParams(0.8, math.pi / 2), 1, spec)))
    i, j = np.unravel_index(np.argmin(pix), pix.shape)
    assert (i, j) == (20, 20) and pix[i, j] == 0


def test_csv_is_lf_and_repr_floats():
    data = csv_bytes(["a", "b"], [(1, 0.1), (2, 1 / 3)])
    assert data == b"a,b\n1,0.1\n2,0.3333333333333333\n"


# --- end to end -------------------------------------------------------------------------


def test_numerical_failure_exit_code(tmp_path, capsys):
    assert main(["herald", "--cutoff", "3", "--r", "1.5", "--out", str(tmp_path)]) == 3
    assert "cutoff" in capsys.readouterr().err


def test_wigner_run_writes_manifest(tmp_path):
    out = tmp_path / "w"
    assert main(["wigner", "--k", "1", "--grid", "-2:2:21", "--format", "csv,json,pgm", "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["wigner.csv", "wigner.json", "wigner.pgm", "wigner_manifest.json", "wigner_run.cfg"]
    man = json.loads((out / "wigner_manifest.json").read_text())
    assert man["k"] == 1 and man["r"] == 0.8
    assert man["results"]["center"] < 0
    assert "wigner.pgm" in man["outputs"]
    assert "time" not in json.dumps(man)


def test_runs_are_byte_identical(tmp_path):
    for d in ("a", "b"):
        assert main(["scan", "--k", "2", "--rgrid", "0.1:1.5:8", "--out", str(tmp_path / d)]) == 0
    for name in ("scan.csv", "scan.json", "scan_manifest.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_vortex_command(tmp_path):
    assert main(["vortex", "--k", "3", "--out", str(tmp_path)]) == 0
    man = json.loads((tmp_path / "vortex_manifest.json").read_text())
    assert man["results"]["count"] == 3 and man["results"]["contour_charge"] == -3


def test_herald_command(tmp_path):
    assert main(["herald", "--k", "2", "--r", "0.5", "--out", str(tmp_path)]) == 0
    rows = (tmp_path / "herald.csv").read_text().splitlines()
    assert rows[0] == "k,probability,fidelity_ideal,fidelity_sub_vs_add"
    k1 = [float(v) for v in rows[1].split(",")]
    assert k1[2] == pytest.approx(0.99998, abs=1e-5)
    assert k1[3] == pytest.approx(1.0, abs=1e-12)
