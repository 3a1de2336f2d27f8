"""
Command-line surface for the wavefront pipeline.

Run with: python main.py <subcommand> --help

Exit status: 0 on success, 2 for invalid configuration or arguments,
3 for I/O failures.
"""

import argparse
import json
import logging
import math
import sys
from typing import Any, Optional

from src.config import settings
from src.filters import Detector, apply_detector
from src.loaders import load_phantom, read_ksp, read_text
from src.phantom import sample_phantom
from src.spectral import Convention, add_noise
from src.wavefront import ThresholdMode
from src.writers import write_asymptotics_csv, write_curves_csv, write_ksp, write_pgm, write_surfels_csv, write_svg

from .models import PipelineConfig
from .service import format_constants_table, pipeline_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3

# argparse dest -> PipelineConfig field
CONFIG_FLAGS = {
    "config": "phantom",
    "input": "input_ksp",
    "m": "m",
    "ktex": "k_tex",
    "kmax": "k_max",
    "alpha": "alpha",
    "strict_parabolic": "strict_parabolic",
    "angles": "num_angles",
    "kappa_low": "kappa_low",
    "kappa_bar": "kappa_bar",
    "convention": "convention",
    "unit_height": "unit_height",
    "detector": "detector",
    "tau_mode": "tau_mode",
    "tau_fraction": "tau_fraction",
    "tau": "tau_absolute",
    "noise": "noise_level",
    "seed": "seed",
    "strict": "strict_segmentation",
    "samples": "samples_per_edge",
    "out_dir": "output_dir",
}


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    """Manifest config (if any), then flags on top."""
    base: dict[str, Any] = {}
    manifest = getattr(args, "manifest", None)
    if manifest is not None:
        try:
            base = json.loads(read_text(manifest))["config"]
        except KeyError:
            raise ValueError(f"Manifest {manifest} has no 'config' section") from None
    overrides = {
        field: getattr(args, dest)
        for dest, field in CONFIG_FLAGS.items()
        if getattr(args, dest, None) is not None
    }
    if "phantom" in overrides:
        base.pop("scene", None)
    if getattr(args, "no_svg", False):
        overrides["svg"] = False
    return PipelineConfig.model_validate({**base, **overrides})


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="Phantom scene file")
    parser.add_argument("--in", dest="input", help="KSP1 k-space file (overrides synthesis from --config)")
    parser.add_argument("--m", type=int, help=f"Grid exponent (default {settings.DEFAULT_M})")
    parser.add_argument("--ktex", type=float, help="Texture bandwidth (default k_max / 2)")
    parser.add_argument("--kmax", type=float, help="Upper pass-band edge (default: the grid's)")
    parser.add_argument("--alpha", type=float, help="Angular half-width in radians (default pi/16)")
    parser.add_argument("--strict-parabolic", action="store_true", default=None, help="alpha from the parabolic equality")
    parser.add_argument("--angles", type=int, help=f"Number of directions A (default {settings.DEFAULT_NUM_ANGLES})")
    parser.add_argument("--kappa-low", type=float, help="Curvature lower bound (default: from the scene)")
    parser.add_argument("--kappa-bar", type=float, help="Curvature upper bound (default: from the scene)")
    parser.add_argument("--convention", choices=[c.value for c in Convention], help="Inverse transform normalization")
    parser.add_argument("--unit-height", action="store_true", default=None, help="Scale W V to unit peak height")
    parser.add_argument("--detector", choices=[d.value for d in Detector], help="Edge detector")
    parser.add_argument("--tau-mode", choices=[t.value for t in ThresholdMode], help="Threshold policy")
    parser.add_argument("--tau-fraction", type=float, help=f"Fraction of the peak (default {settings.TAU_FRACTION})")
    parser.add_argument("--tau", type=float, help="Absolute threshold (with --tau-mode absolute)")
    parser.add_argument("--noise", type=float, help="Relative noise level added before filtering")
    parser.add_argument("--seed", type=int, help="Noise seed")


def cmd_phantom(args: argparse.Namespace) -> None:
    spec = load_phantom(args.config)
    grid = add_noise(sample_phantom(spec, args.m), args.noise, args.seed)
    write_ksp(grid, args.out)
    logger.info("Wrote %s", args.out)


def cmd_noise(args: argparse.Namespace) -> None:
    grid = add_noise(read_ksp(args.input), args.level, args.seed)
    write_ksp(grid, args.out)
    logger.info("Wrote %s", args.out)


def cmd_filter(args: argparse.Namespace) -> None:
    run = pipeline_service.prepare(config_from_args(args))
    image = apply_detector(run.grid, args.theta, run.params, run.config.detector)
    write_pgm(image, args.out)
    logger.info("Wrote %s", args.out)


def cmd_extract(args: argparse.Namespace) -> None:
    run = pipeline_service.prepare(config_from_args(args))
    extraction = pipeline_service.extract(run)
    write_surfels_csv(extraction.surfels, args.out)
    logger.info("Wrote %d surfels to %s", len(extraction.surfels), args.out)


def cmd_segment(args: argparse.Namespace) -> None:
    run = pipeline_service.prepare(config_from_args(args))
    extraction = pipeline_service.extract(run)
    segmentation = pipeline_service.segment(run, extraction.surfels)
    write_curves_csv(segmentation.curves, args.out)
    if args.svg:
        write_svg(segmentation.curves, args.svg, surfels=segmentation.merged)
    logger.info("Wrote %d curves to %s", len(segmentation.curves), args.out)


def cmd_constants(args: argparse.Namespace) -> None:
    table = format_constants_table(pipeline_service.report_constants(config_from_args(args)))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(table)
    else:
        sys.stdout.write(table)


def cmd_asymptotics(args: argparse.Namespace) -> None:
    spec = load_phantom(args.config)
    samples = pipeline_service.asymptotics(spec, args.direction, args.kmin, args.kmax, args.samples)
    write_asymptotics_csv(samples, args.report)
    logger.info("Wrote %d samples to %s", len(samples), args.report)


def cmd_run(args: argparse.Namespace) -> None:
    manifest = pipeline_service.run_pipeline(config_from_args(args))
    print(f"{manifest.surfel_count} surfels, {manifest.curve_count} curves, {len(manifest.artifacts)} artifacts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wfk", description="Wavefront extraction from k-space data")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phantom", help="Sample a phantom scene on the k-space lattice")
    p.add_argument("--config", required=True, help="Phantom scene file")
    p.add_argument("--m", type=int, default=settings.DEFAULT_M, help="Grid exponent")
    p.add_argument("--noise", type=float, default=0.0, help="Relative noise level")
    p.add_argument("--seed", type=int, default=0, help="Noise seed")
    p.add_argument("--out", required=True, help="Output .ksp file")
    p.set_defaults(handler=cmd_phantom)

    p = sub.add_parser("noise", help="Add calibrated complex Gaussian noise")
    p.add_argument("--in", dest="input", required=True, help="Input .ksp file")
    p.add_argument("--level", type=float, required=True, help="Relative noise level (0.05 = 5%%)")
    p.add_argument("--seed", type=int, default=0, help="Noise seed")
    p.add_argument("--out", required=True, help="Output .ksp file")
    p.set_defaults(handler=cmd_noise)

    p = sub.add_parser("filter", help="One directional filter pass to a PGM edge map")
    _add_data_flags(p)
    p.add_argument("--theta", type=float, required=True, help="Filter direction in radians")
    p.add_argument("--out", required=True, help="Output .pgm file")
    p.set_defaults(handler=cmd_filter)

    p = sub.add_parser("extract", help="Surfels over the filter fan")
    _add_data_flags(p)
    p.add_argument("--out", required=True, help="Output surfel CSV")
    p.set_defaults(handler=cmd_extract)

    p = sub.add_parser("segment", help="Curves of discontinuity")
    _add_data_flags(p)
    p.add_argument("--strict", action="store_true", default=None, help="Enforce separation conditions and thinning")
    p.add_argument("--samples", type=int, help="Hermite samples per edge")
    p.add_argument("--out", required=True, help="Output curve CSV")
    p.add_argument("--svg", help="Optional SVG overlay")
    p.set_defaults(handler=cmd_segment)

    p = sub.add_parser("constants", help="Report theorem constants")
    _add_data_flags(p)
    p.add_argument("--out", help="Write the table here instead of stdout")
    p.set_defaults(handler=cmd_constants)

    p = sub.add_parser("asymptotics", help="Exact vs leading-order curve transform")
    p.add_argument("--config", required=True, help="Phantom scene file (ellipses only)")
    p.add_argument("--kmin", type=float, required=True, help="Smallest |k|")
    p.add_argument("--kmax", type=float, required=True, help="Largest |k|")
    p.add_argument("--samples", type=int, default=40, help="Log-spaced samples")
    p.add_argument("--direction", type=float, default=math.pi / 4, help="Direction of k in radians")
    p.add_argument("--report", required=True, help="Output CSV")
    p.set_defaults(handler=cmd_asymptotics)

    p = sub.add_parser("run", help="Full pipeline with artifacts and manifest")
    _add_data_flags(p)
    p.add_argument("--manifest", help="Re-run the configuration recorded in a manifest (flags override it)")
    p.add_argument("--strict", action="store_true", default=None, help="Enforce separation conditions and thinning")
    p.add_argument("--samples", type=int, help="Hermite samples per edge")
    p.add_argument("--out-dir", help="Artifact directory")
    p.add_argument("--no-svg", action="store_true", help="Skip the SVG overlay")
    p.set_defaults(handler=cmd_run)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.handler(args)
    except ValueError as e:
        # pydantic's ValidationError is a ValueError
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
