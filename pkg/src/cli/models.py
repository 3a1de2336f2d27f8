"""Pydantic models for pipeline configuration and run manifests."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import settings
from src.filters import Detector, FilterConstants, FilterParams, TheoryChecks
from src.phantom import PhantomSpec
from src.spectral import Convention
from src.wavefront import ThresholdMode


class PipelineConfig(BaseModel):
    """Everything needed to reproduce one run of the pipeline."""

    phantom: Optional[Path] = Field(default=None, description="Phantom scene file")
    scene: Optional[PhantomSpec] = Field(
        default=None, description="Scene primitives; filled from `phantom` and preferred over it on re-runs"
    )
    input_ksp: Optional[Path] = Field(default=None, description="KSP1 file with k-space samples; overrides synthesis")
    m: int = Field(default=settings.DEFAULT_M, ge=3, le=12, description="Grid exponent (side 2^m)")
    k_tex: Optional[float] = Field(default=None, gt=0, description="Texture bandwidth; half of k_max when omitted")
    k_max: Optional[float] = Field(default=None, gt=0, description="Upper pass-band edge; the grid's k_max when omitted")
    alpha: Optional[float] = Field(default=None, gt=0, description="Angular half-width; pi/16 or parabolic when omitted")
    strict_parabolic: bool = Field(default=False, description="Take alpha from the parabolic equality")
    num_angles: int = Field(default=settings.DEFAULT_NUM_ANGLES, ge=1, description="Number of filter directions A")
    kappa_low: Optional[float] = Field(default=None, ge=0, description="Curvature lower bound; from the scene when omitted")
    kappa_bar: Optional[float] = Field(default=None, ge=0, description="Curvature upper bound; from the scene when omitted")
    convention: Convention = Field(default=Convention.CALIBRATED, description="Inverse transform normalization")
    unit_height: bool = Field(default=False, description="Scale the filter to unit peak height")
    detector: Detector = Field(default=Detector.DIRECTIONAL, description="Edge detector")
    tau_mode: ThresholdMode = Field(default=ThresholdMode.THEORY, description="Threshold policy")
    tau_fraction: float = Field(default=settings.TAU_FRACTION, gt=0, le=1, description="Fraction of the peak")
    tau_absolute: Optional[float] = Field(default=None, gt=0, description="Fixed threshold for tau_mode=absolute")
    noise_level: float = Field(default=0.0, ge=0, description="Relative noise amplitude")
    seed: int = Field(default=0, ge=0, description="Noise seed")
    strict_segmentation: bool = Field(default=False, description="Enforce separation conditions and thinning")
    samples_per_edge: int = Field(default=settings.HERMITE_SAMPLES, ge=1, description="Hermite samples per edge")
    output_dir: Path = Field(default=settings.OUTPUT_DIR, description="Directory for all artifacts")
    svg: bool = Field(default=True, description="Write the SVG overlay")

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "phantom": "data/phantoms/default.phantom",
                    "m": 6,
                    "num_angles": 16,
                    "tau_mode": "fraction",
                    "noise_level": 0.05,
                    "seed": 7,
                    "output_dir": "runs/default",
                }
            ]
        }
    }

    @model_validator(mode="after")
    def _sources_exist(self):
        # k-space data wins when both are given; the scene then only feeds the theory constants
        has_scene = self.phantom is not None or self.scene is not None
        if not has_scene and self.input_ksp is None:
            raise ValueError("Give a data source: a phantom scene, an input .ksp file, or both")
        if self.scene is None and self.phantom is not None and not self.phantom.is_file():
            raise FileNotFoundError(f"Phantom file not found: {self.phantom}")
        if self.input_ksp is not None and not self.input_ksp.is_file():
            raise FileNotFoundError(f"Input k-space file not found: {self.input_ksp}")
        if self.tau_mode is ThresholdMode.ABSOLUTE and self.tau_absolute is None:
            raise ValueError("tau_mode=absolute needs tau_absolute")
        return self


class ConstantRow(BaseModel):
    """One line of the constants report."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    name: str = Field(..., description="Quantity")
    value: Optional[float] = Field(default=None, description="Recomputed value")
    reference: Optional[float] = Field(default=None, description="Value quoted for the suboptimality example")
    note: str = Field(default="", description="Inputs or diagnostic")


class RunManifest(BaseModel):
    """Provenance record of a pipeline run."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    version: str = Field(default="0.1.0")
    config: PipelineConfig = Field(..., description="Resolved configuration, scene included")
    params: FilterParams = Field(..., description="Filter parameters actually used")
    constants: Optional[FilterConstants] = Field(default=None, description="Theorem constants, if available")
    checks: Optional[TheoryChecks] = Field(default=None, description="Theorem hypotheses for this run")
    constants_report: list[ConstantRow] = Field(default_factory=list, description="Rows of the constants table")
    thetas: list[float] = Field(default_factory=list, description="Filter directions")
    thresholds: list[float] = Field(default_factory=list, description="tau used per direction")
    signal_energy: float = Field(default=0.0, description="Energy of the k-space data before noise")
    surfel_count: int = Field(default=0, description="Pooled surfels before merging")
    curve_count: int = Field(default=0, description="Reconstructed curves")
    artifacts: list[str] = Field(default_factory=list, description="Files written, in order")
