import csv
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.cli import PipelineConfig, main, pipeline_service
from src.cli.main import EXIT_INVALID, EXIT_IO, EXIT_OK, build_parser, config_from_args
from src.config import settings
from src.loaders import parse_ksp, read_ksp, read_text
from src.phantom import sample_phantom
from src.segmentation import interpolate_path
from src.spectral import ImageGrid, energy
from src.wavefront import Surfel
from src.writers import (
    MAXVAL,
    encode_pgm,
    format_ksp,
    render_svg,
    scale_path,
    write_curves_csv,
    write_pgm,
    write_surfels_csv,
)

DEFAULT = str(settings.PHANTOM_DIR / "default.phantom")
DISK = str(settings.PHANTOM_DIR / "disk.phantom")
SQUARE = str(settings.PHANTOM_DIR / "square.phantom")


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


class TestKsp:
    def test_layout(self, disk_spec):
        grid = sample_phantom(disk_spec, 3)
        data = format_ksp(grid)
        assert data.startswith(b"KSP1 m=3\n")
        assert len(data) == len(b"KSP1 m=3\n") + 2 * 64 * 8
        first = np.frombuffer(data[9:25], dtype="<f8")
        assert first[0] == grid.samples[0, 0].real and first[1] == grid.samples[0, 0].imag
        assert_allclose(parse_ksp(data).samples, grid.samples, rtol=0, atol=0)

    @pytest.mark.parametrize("data", [b"KSP2 m=3\n" + bytes(1024), b"no header at all", b"KSP1 m=3\n" + bytes(100)])
    def test_malformed(self, data):
        with pytest.raises(ValueError):
            parse_ksp(data)

    def test_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_ksp(tmp_path / "absent.ksp")


class TestPgm:
    def image(self):
        values = np.zeros((8, 8))
        values[0, 7] = 2.0    # small x, large y: top-left
        values[7, 0] = -1.0   # large x, small y: bottom-right
        return ImageGrid(3, values)

    def test_header_and_orientation(self):
        data, scale = encode_pgm(self.image())
        header = f"P5\n8 8\n{MAXVAL}\n".encode("ascii")
        assert data.startswith(header)
        raster = np.frombuffer(data[len(header):], dtype=">u2").reshape(8, 8)
        assert raster[0, 0] == MAXVAL
        assert raster[7, 7] == 32768
        assert np.count_nonzero(raster) == 2
        assert scale == pytest.approx(2.0 / MAXVAL)

    def test_zero_image(self):
        data, scale = encode_pgm(ImageGrid(3, np.zeros((8, 8))))
        assert scale == 0.0
        assert not any(data[len(f"P5\n8 8\n{MAXVAL}\n"):])

    def test_sidecar(self, tmp_path):
        path = write_pgm(self.image(), tmp_path / "edges_01.pgm")
        sidecar = scale_path(path)
        assert sidecar.name == "edges_01.scale.txt"
        assert "max_magnitude 2.0" in sidecar.read_text()


class TestTables:
    def test_surfels(self, tmp_path):
        path = write_surfels_csv([Surfel(0.25, 0.5, 0.1, 2.0), Surfel(0.75, 0.5, 3.0, 1.0)], tmp_path / "s.csv")
        rows = read_csv(path)
        assert rows[0] == ["x", "y", "theta", "strength"]
        assert len(rows) == 3
        assert float(rows[1][0]) == 0.25

    def test_curves(self, tmp_path):
        curve = interpolate_path(np.array([[0.1, 0.1], [0.3, 0.1]]), np.full(2, math.pi / 2), False, 4)
        rows = read_csv(write_curves_csv([curve, curve], tmp_path / "c.csv"))
        assert rows[0] == ["curve_id", "seq", "x", "y"]
        assert len(rows) == 1 + 2 * len(curve.points)
        assert rows[-1][:2] == ["1", str(len(curve.points) - 1)]

    def test_svg(self):
        open_curve = interpolate_path(np.array([[0.1, 0.2], [0.3, 0.2]]), np.full(2, math.pi / 2), False, 2)
        angles = 2 * np.pi * np.arange(6) / 6
        closed = interpolate_path(0.5 + 0.2 * np.column_stack([np.cos(angles), np.sin(angles)]), angles, True, 2)
        svg = render_svg([closed, open_curve], surfels=[Surfel(0.5, 0.5, 0.0, 1.0)])
        assert svg.startswith("<svg")
        assert svg.count("<polygon") == 1 and svg.count("<polyline") == 1
        assert "0.100000,0.800000" in svg
        assert "<circle" in svg


def test_read_text_fallback(tmp_path):
    path = tmp_path / "notes.txt"
    assert read_text(path, fallback="none") == "none"
    with pytest.raises(FileNotFoundError):
        read_text(path)
    path.write_text("ellipse\n", encoding="utf-8")
    assert read_text(path) == "ellipse\n"


class TestConfig:
    def test_needs_a_source(self):
        with pytest.raises(ValueError):
            PipelineConfig()

    def test_missing_phantom(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            PipelineConfig(phantom=tmp_path / "absent.phantom")

    def test_absolute_needs_value(self):
        with pytest.raises(ValueError):
            PipelineConfig(phantom=DISK, tau_mode="absolute")

    def test_grid_exponent_range(self):
        with pytest.raises(ValueError):
            PipelineConfig(phantom=DISK, m=2)

    def test_flags_override_manifest(self, tmp_path):
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps({"config": {"phantom": DISK, "m": 5, "seed": 9}}))
        args = build_parser().parse_args(["run", "--manifest", str(manifest), "--m", "4", "--no-svg"])
        config = config_from_args(args)
        assert (config.m, config.seed, config.svg) == (4, 9, False)
        assert str(config.phantom) == DISK

    def test_manifest_without_config(self, tmp_path):
        manifest = tmp_path / "manifest.json"
        manifest.write_text("{}")
        args = build_parser().parse_args(["run", "--manifest", str(manifest)])
        with pytest.raises(ValueError):
            config_from_args(args)


class TestCommands:
    def test_phantom_then_noise(self, tmp_path, disk_spec):
        clean, noisy = tmp_path / "disk.ksp", tmp_path / "noisy.ksp"
        assert main(["phantom", "--config", DISK, "--m", "4", "--out", str(clean)]) == EXIT_OK
        assert_allclose(read_ksp(clean).samples, sample_phantom(disk_spec, 4).samples, rtol=0, atol=0)
        assert main(["noise", "--in", str(clean), "--level", "0.05", "--seed", "1", "--out", str(noisy)]) == EXIT_OK
        a, b = read_ksp(clean), read_ksp(noisy)
        assert energy(b.with_samples(b.samples - a.samples)) / energy(a) == pytest.approx(0.0025, rel=1e-9)

    def test_filter(self, tmp_path):
        out = tmp_path / "edges.pgm"
        assert main(["filter", "--config", DISK, "--theta", "0.5", "--out", str(out)]) == EXIT_OK
        assert out.read_bytes().startswith(b"P5\n64 64\n")

    def test_extract_and_segment(self, tmp_path):
        surfels, curves, svg = tmp_path / "s.csv", tmp_path / "c.csv", tmp_path / "c.svg"
        common = ["--config", DISK, "--tau-mode", "fraction"]
        assert main(["extract", *common, "--out", str(surfels)]) == EXIT_OK
        assert len(read_csv(surfels)) > 1
        assert main(["segment", *common, "--out", str(curves), "--svg", str(svg)]) == EXIT_OK
        assert read_csv(curves)[0] == ["curve_id", "seq", "x", "y"]
        assert svg.read_text().startswith("<svg")

    def test_input_ksp(self, tmp_path):
        data, out = tmp_path / "disk.ksp", tmp_path / "s.csv"
        assert main(["phantom", "--config", DISK, "--m", "6", "--out", str(data)]) == EXIT_OK
        assert main(["extract", "--in", str(data), "--tau-mode", "fraction", "--out", str(out)]) == EXIT_OK
        assert len(read_csv(out)) > 1

    def test_constants_report(self, tmp_path):
        out = tmp_path / "constants.txt"
        assert main(["constants", "--config", DEFAULT, "--out", str(out)]) == EXIT_OK
        text = out.read_text()
        assert "example C(W,V,alpha)" in text
        for quoted in ("0.3", "25", "85"):
            assert quoted in text
        assert "two-sided vs one-sided" in text

    def test_constants_square_regime(self, capsys):
        assert main(["constants", "--config", SQUARE]) == EXIT_OK
        assert "theory constants unavailable (square regime)" in capsys.readouterr().out

    def test_asymptotics(self, tmp_path):
        out = tmp_path / "asym.csv"
        args = ["asymptotics", "--config", DISK, "--kmin", "100", "--kmax", "1000", "--samples", "5", "--report", str(out)]
        assert main(args) == EXIT_OK
        rows = read_csv(out)
        assert rows[0] == ["k", "exact_re", "exact_im", "leading_re", "leading_im", "error"]
        assert len(rows) == 6

    def test_asymptotics_rejects_polygons(self, tmp_path):
        args = ["asymptotics", "--config", SQUARE, "--kmin", "100", "--kmax", "1000", "--report", str(tmp_path / "a.csv")]
        assert main(args) == EXIT_INVALID

    def test_missing_input_is_io_error(self, tmp_path):
        out = tmp_path / "run"
        assert main(["run", "--config", str(tmp_path / "absent.phantom"), "--out-dir", str(out)]) == EXIT_IO
        assert not out.exists()

    def test_invalid_config_writes_nothing(self, tmp_path):
        out = tmp_path / "run"
        assert main(["run", "--config", DEFAULT, "--m", "2", "--out-dir", str(out)]) == EXIT_INVALID
        assert main(["run", "--config", DEFAULT, "--alpha", "1.0", "--out-dir", str(out)]) == EXIT_INVALID
        assert not out.exists()

    def test_output_path_is_a_file(self, tmp_path):
        out = tmp_path / "taken"
        out.write_text("")
        assert main(["run", "--config", DISK, "--out-dir", str(out)]) == EXIT_IO


class TestRun:
    @pytest.mark.slow
    def test_artifacts_and_rerun(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        assert main(["run", "--config", DEFAULT, "--tau-mode", "fraction", "--noise", "0.05", "--seed", "7",
                     "--out-dir", str(first)]) == EXIT_OK
        names = {p.name for p in first.iterdir()}
        assert {"data.ksp", "surfels.csv", "curves.csv", "curves.svg", "constants.txt", "manifest.json"} <= names
        assert {f"edges_{i:02d}.pgm" for i in range(1, 17)} <= names

        manifest = json.loads((first / "manifest.json").read_text())
        assert manifest["config"]["noise_level"] == 0.05
        assert manifest["config"]["scene"]["geometry"]["M"] == 5
        assert len(manifest["thresholds"]) == 16

        assert main(["run", "--manifest", str(first / "manifest.json"), "--out-dir", str(second)]) == EXIT_OK
        for name in ("data.ksp", "surfels.csv", "curves.csv", "constants.txt", "edges_05.pgm"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    @pytest.mark.slow
    def test_noise_ladder(self):
        config = PipelineConfig(phantom=DEFAULT, tau_mode="fraction", seed=3)
        ladder = pipeline_service.noise_ladder(config, [0.025, 0.05, 0.075, 0.10])
        assert [level for level, _, _ in ladder] == [0.025, 0.05, 0.075, 0.10]
        assert all(count > 0 for _, count, _ in ladder)
        # noise stays harmless up to 5%
        assert all(spurious <= 0.05 for level, _, spurious in ladder if level <= 0.05)
        assert ladder[-1][2] >= ladder[0][2]
