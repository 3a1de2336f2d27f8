"""
Pipeline service - resolves configurations and runs the three stages
(filter fan, surfel extraction, segmentation) with artifact output.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from src.asymptotics import ErrorSample, asymptotic_error_report, geometry_constant
from src.config import settings
from src.filters import (
    SUBOPTIMAL_EXAMPLE,
    FilterConstants,
    FilterParams,
    RectangularAngularWindow,
    StepRadialWindow,
    TheoryChecks,
    filter_bank,
    filter_constants,
    parabolic_alpha,
    step_filter_constant,
    theory_checks,
)
from src.loaders import load_phantom, read_ksp
from src.phantom import PhantomSpec, sample_phantom
from src.segmentation import NoiseBounds, Segmentation, segment_surfels
from src.spectral import ImageGrid, SpectralGrid, add_noise, energy
from src.wavefront import (
    Surfel,
    choose_threshold,
    cluster_radius,
    fan_surfels,
    spurious_fraction,
    surfel_distance_report,
)
from src.writers import write_curves_csv, write_ksp, write_pgm, write_surfels_csv, write_svg

from .models import ConstantRow, PipelineConfig, RunManifest

logger = logging.getLogger(__name__)

SPURIOUS_DISTANCE_PX = 2.0


@dataclass
class PreparedRun:
    """A validated configuration with its data loaded; nothing has been written yet."""

    config: PipelineConfig
    spec: Optional[PhantomSpec]
    clean: SpectralGrid
    grid: SpectralGrid
    params: FilterParams
    constants: Optional[FilterConstants]
    checks: Optional[TheoryChecks]


@dataclass
class Extraction:
    thetas: list[float]
    images: list[ImageGrid]
    thresholds: list[float]
    surfels: list[Surfel]


def format_constants_table(rows: list[ConstantRow]) -> str:
    """Fixed-width text rendering of the constants report."""

    def cell(value: Optional[float]) -> str:
        return "-" if value is None else f"{value:.6g}"

    width = max([len(r.name) for r in rows] + [8])
    lines = [f"{'quantity':<{width}}  {'value':>12}  {'reference':>12}  note"]
    lines += [f"{r.name:<{width}}  {cell(r.value):>12}  {cell(r.reference):>12}  {r.note}" for r in rows]
    return "\n".join(lines) + "\n"


class PipelineService:
    """Service class that resolves configurations and runs the pipeline stages."""

    def load_scene(self, config: PipelineConfig) -> Optional[PhantomSpec]:
        if config.scene is not None:
            return config.scene
        if config.phantom is not None:
            return load_phantom(config.phantom)
        return None

    def resolve_params(
        self, config: PipelineConfig, spec: Optional[PhantomSpec], grid: SpectralGrid
    ) -> FilterParams:
        """Fill omitted filter parameters from the grid and the scene geometry."""
        g = spec.geometry if spec is not None else None
        kappa_low = config.kappa_low if config.kappa_low is not None else (g.kappa_low if g else 0.0)
        kappa_bar = config.kappa_bar if config.kappa_bar is not None else (g.kappa_bar if g else 0.0)
        k_max = config.k_max if config.k_max is not None else grid.k_max
        k_tex = config.k_tex if config.k_tex is not None else k_max / 2
        alpha = config.alpha
        if alpha is None:
            alpha = parabolic_alpha(k_max, k_tex, kappa_low) if config.strict_parabolic else settings.DEFAULT_ALPHA
        return FilterParams(
            k_tex=k_tex,
            k_max=k_max,
            alpha=alpha,
            num_angles=config.num_angles,
            kappa_low=kappa_low,
            kappa_bar=kappa_bar,
            strict_scaling=config.strict_parabolic,
            convention=config.convention,
            unit_height=config.unit_height,
        )

    def prepare(self, config: PipelineConfig) -> PreparedRun:
        """
        Load and validate every input of a run.

        Raises:
            ValueError: if the scene or the filter parameters are inconsistent
            FileNotFoundError: if an input file vanished since validation
        """
        spec = self.load_scene(config)
        if config.input_ksp is not None:
            clean = read_ksp(config.input_ksp)
        else:
            clean = sample_phantom(spec, config.m)
        grid = add_noise(clean, config.noise_level, config.seed)
        params = self.resolve_params(config, spec, grid)

        constants = checks = None
        if spec is not None and spec.curve_count > 0 and params.kappa_low > 0:
            constants = filter_constants(params, spec)
            checks = theory_checks(params, constants, spec)
            if not checks.all_hold:
                logger.warning("Theorem hypotheses do not all hold: %s", checks.model_dump())

        resolved = config.model_copy(update={"scene": spec, "m": grid.m})
        logger.info("Prepared run: m=%d, A=%d, alpha=%.4f, noise=%.3f", grid.m, params.num_angles, params.alpha, config.noise_level)
        return PreparedRun(resolved, spec, clean, grid, params, constants, checks)

    def extract(self, run: PreparedRun, thetas: Optional[list[float]] = None) -> Extraction:
        """Filter fan, per-direction thresholds and pooled surfels."""
        cfg = run.config
        thetas = run.params.thetas() if thetas is None else list(thetas)
        images = filter_bank(run.grid, run.params, thetas, cfg.detector)
        radius = cluster_radius(run.constants, run.grid.m)
        thresholds = [
            choose_threshold(image, cfg.tau_mode, run.constants, cfg.tau_fraction, cfg.tau_absolute, run.params.theory_scale)
            for image in images
        ]
        surfels = fan_surfels(thetas, images, thresholds, radius)
        return Extraction(thetas, images, thresholds, surfels)

    def segment(self, run: PreparedRun, surfels: list[Surfel]) -> Segmentation:
        cfg = run.config
        bounds = NoiseBounds.from_constants(run.params, run.grid.m, run.constants, strict=cfg.strict_segmentation)
        delta = run.spec.geometry.delta if run.spec is not None else None
        return segment_surfels(
            surfels, bounds, run.params.alpha, run.params.kappa_bar, delta, cfg.samples_per_edge,
            convex=run.params.kappa_low > 0,
        )

    def report_constants(self, config: PipelineConfig) -> list[ConstantRow]:
        """Scene geometry, theorem constants, hypotheses and the suboptimality comparison."""
        return self.constant_rows(self.prepare(config))

    def constant_rows(self, run: PreparedRun) -> list[ConstantRow]:
        rows: list[ConstantRow] = []
        spec, params, constants = run.spec, run.params, run.constants
        rows += [
            ConstantRow(name="k_tex", value=params.k_tex),
            ConstantRow(name="k_max", value=params.k_max),
            ConstantRow(name="alpha", value=params.alpha, note="parabolic" if params.strict_scaling else ""),
            ConstantRow(name="A", value=params.num_angles),
        ]
        if spec is None or spec.curve_count == 0:
            rows.append(ConstantRow(name="scene", note="no analytic curves; theory constants unavailable"))
        else:
            g = spec.geometry
            rows += [
                ConstantRow(name="M", value=g.M),
                ConstantRow(name="delta", value=g.delta),
                ConstantRow(name="kappa_low", value=g.kappa_low),
                ConstantRow(name="kappa_bar", value=g.kappa_bar),
                ConstantRow(name="rho_low", value=g.rho_low),
                ConstantRow(name="rho_bar", value=g.rho_bar),
                ConstantRow(name="gamma3_sup", value=g.gamma3_sup),
                ConstantRow(name="total_arclength", value=g.total_arclength),
            ]
            if params.kappa_low <= 0:
                rows.append(ConstantRow(name="theory constants unavailable (square regime)", note="kappa_low = 0"))

        if constants is not None:
            rows += [
                ConstantRow(name="C_geo", value=constants.C_geo),
                ConstantRow(name="C(W,V,alpha) step", value=constants.C_filter),
                ConstantRow(name="C(W,V,alpha) general", value=constants.C_filter_general, note="2 M rho_bar prefactor"),
                ConstantRow(
                    name="||k_r^-1/2 W||", value=constants.norm_halfinv,
                    reference=constants.norm_halfinv_reference, note="two-sided vs one-sided",
                ),
                ConstantRow(
                    name="||W_check(z)(z+1)||", value=constants.kernel_sup,
                    reference=constants.kernel_sup_reference, note="sampled sup",
                ),
                ConstantRow(name="inf W_p", value=constants.inf_Wp),
                ConstantRow(name="T", value=constants.threshold_T),
                ConstantRow(name="D", value=constants.resolution_D),
            ]
            rows += [ConstantRow(name="discrepancy", note=d) for d in constants.discrepancies]
            rows += [ConstantRow(name="diagnostic", note=d) for d in constants.diagnostics]
        if run.checks is not None:
            rows += [
                ConstantRow(name=f"check {name}", value=float(held), note="holds" if held else "fails")
                for name, held in run.checks.model_dump().items()
            ]
        rows += self.suboptimal_example_rows(spec)
        return rows

    def suboptimal_example_rows(self, spec: Optional[PhantomSpec]) -> list[ConstantRow]:
        """Recompute the quoted example (rectangular V, step W) next to its quoted values."""
        ex = SUBOPTIMAL_EXAMPLE
        params = FilterParams(k_tex=ex.k_tex, k_max=ex.k_max, alpha=ex.alpha, kappa_low=ex.kappa_low)
        v_prime = RectangularAngularWindow(ex.alpha).derivative_norm()
        C = step_filter_constant(params, ex.gamma3_sup, v_prime)
        rows = [
            ConstantRow(name="example C(W,V,alpha)", value=C, reference=ex.reported_C, note=f"||V'|| = {v_prime:.4g}"),
            ConstantRow(name="example C / pixel", value=C / ex.pixel, reference=ex.reported_decay_term),
        ]
        halfinv = StepRadialWindow(ex.k_tex, ex.k_max).half_inverse_norm()
        if spec is not None and spec.curve_count > 0 and spec.geometry.kappa_low > 0:
            remainder = halfinv * geometry_constant(spec).C_geo
            rows.append(ConstantRow(
                name="example ||k_r^-1/2 W|| C_geo", value=remainder,
                reference=ex.reported_remainder_term, note="C_geo of this scene",
            ))
        else:
            rows.append(ConstantRow(
                name="example ||k_r^-1/2 W|| C_geo", reference=ex.reported_remainder_term,
                note="needs a scene with kappa_low > 0",
            ))
        return rows

    def asymptotics(
        self, spec: PhantomSpec, direction: float, k_min: float, k_max: float, samples: int
    ) -> list[ErrorSample]:
        if samples < 2:
            raise ValueError(f"Need at least 2 samples, got {samples}")
        unit = (math.cos(direction), math.sin(direction))
        return asymptotic_error_report(spec, unit, np.geomspace(k_min, k_max, samples))

    def noise_ladder(self, config: PipelineConfig, levels: list[float]) -> list[tuple[float, int, float]]:
        """(level, surfel count, spurious fraction beyond 2 px) for each noise level, same seed."""
        results = []
        for level in levels:
            run = self.prepare(config.model_copy(update={"noise_level": level}))
            surfels = self.extract(run).surfels
            pixel = 1.0 / run.grid.side
            fraction = spurious_fraction(surfel_distance_report(surfels, run.spec), SPURIOUS_DISTANCE_PX * pixel)
            logger.info("Noise %.3f: %d surfels, %.3f spurious", level, len(surfels), fraction)
            results.append((level, len(surfels), fraction))
        return results

    def run_pipeline(self, config: PipelineConfig) -> RunManifest:
        """
        Full run: data, edge maps, surfels, curves, constants table and manifest.

        Every input is validated before the first write.
        """
        run = self.prepare(config)
        out = Path(config.output_dir)
        if out.exists() and not out.is_dir():
            raise NotADirectoryError(f"Output path is not a directory: {out}")

        extraction = self.extract(run)
        segmentation = self.segment(run, extraction.surfels)
        rows = self.constant_rows(run)

        out.mkdir(parents=True, exist_ok=True)
        artifacts: list[Path] = [write_ksp(run.grid, out / "data.ksp")]
        for index, image in enumerate(extraction.images, start=1):
            artifacts.append(write_pgm(image, out / f"edges_{index:02d}.pgm"))
        artifacts.append(write_surfels_csv(extraction.surfels, out / "surfels.csv"))
        artifacts.append(write_curves_csv(segmentation.curves, out / "curves.csv"))
        if config.svg:
            backdrop = ImageGrid(run.grid.m, np.max([im.magnitude for im in extraction.images], axis=0))
            artifacts.append(write_svg(segmentation.curves, out / "curves.svg", backdrop, segmentation.merged))
        table = out / "constants.txt"
        table.write_text(format_constants_table(rows), encoding="utf-8")
        artifacts.append(table)

        manifest = RunManifest(
            config=run.config,
            params=run.params,
            constants=run.constants,
            checks=run.checks,
            constants_report=rows,
            thetas=extraction.thetas,
            thresholds=extraction.thresholds,
            signal_energy=energy(run.clean),
            surfel_count=len(extraction.surfels),
            curve_count=len(segmentation.curves),
            artifacts=[str(p) for p in artifacts],
        )
        manifest_path = out / "manifest.json"
        manifest.artifacts.append(str(manifest_path))
        manifest_path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
        for path in manifest.artifacts:
            logger.info("Wrote %s", path)
        return manifest


pipeline_service = PipelineService()
