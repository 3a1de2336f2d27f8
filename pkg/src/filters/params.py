"""Pydantic models for filter parameters and derived constants."""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import settings
from src.spectral import Convention, convention_scale, make_grid

MIN_BAND = 24 * math.pi
PARABOLIC_RTOL = 1e-12


class Detector(str, Enum):
    """Edge detector applied to the k-space data."""
    DIRECTIONAL = "directional"   # W(k_r) V(k_theta - theta)
    DERIVATIVE = "derivative"     # baseline i (k . theta_hat)


def parabolic_alpha(k_max: float, k_tex: float, kappa_low: float) -> float:
    """sqrt(pi kappa_low / (k_max + k_tex)), the parabolic constraint taken with equality."""
    if k_max <= 0 or k_tex <= 0 or kappa_low <= 0:
        raise ValueError(
            f"parabolic_alpha needs positive inputs, got k_max={k_max}, k_tex={k_tex}, kappa_low={kappa_low}"
        )
    return math.sqrt(math.pi * kappa_low / (k_max + k_tex))


class FilterParams(BaseModel):
    """Pass band, angular width and curvature bounds of a directional filter fan."""

    model_config = ConfigDict(frozen=True)

    k_tex: float = Field(..., gt=0, description="Texture bandwidth; lower edge of the pass band")
    k_max: float = Field(..., gt=0, description="Upper edge of the pass band")
    alpha: float = Field(..., description="Angular half-width in radians")
    num_angles: int = Field(default=16, ge=1, description="Number of filter directions A")
    kappa_low: float = Field(default=0.0, ge=0, description="Lower curvature bound")
    kappa_bar: float = Field(default=0.0, ge=0, description="Upper curvature bound")
    strict_scaling: bool = Field(default=False, description="Enforce alpha^2 (k_max + k_tex) / kappa_low <= pi")
    convention: Convention = Field(default=Convention.CALIBRATED, description="Inverse transform normalization")
    unit_height: bool = Field(default=False, description="Scale W V to unit peak height instead of unit mass")

    @model_validator(mode="after")
    def _consistent(self):
        if self.k_tex >= self.k_max:
            raise ValueError(f"k_tex={self.k_tex} must be below k_max={self.k_max}")
        if self.k_max - self.k_tex < MIN_BAND * (1 - PARABOLIC_RTOL):
            raise ValueError(
                f"Pass band k_max - k_tex = {self.k_max - self.k_tex:.4f} is narrower than 24 pi (12 lattice points)"
            )
        if not 0 < self.alpha < math.pi / 4:
            raise ValueError(f"alpha={self.alpha} must lie in (0, pi/4)")
        if self.kappa_bar and self.kappa_bar < self.kappa_low:
            raise ValueError(f"kappa_bar={self.kappa_bar} is below kappa_low={self.kappa_low}")
        if self.strict_scaling:
            if self.kappa_low <= 0:
                raise ValueError("Strict parabolic scaling needs kappa_low > 0")
            ratio = self.alpha**2 * (self.k_max + self.k_tex) / self.kappa_low
            if ratio > math.pi * (1 + PARABOLIC_RTOL):
                raise ValueError(f"alpha^2 (k_max + k_tex) / kappa_low = {ratio:.6f} exceeds pi")
        return self

    @classmethod
    def for_grid(
        cls,
        m: int,
        k_tex: Optional[float] = None,
        alpha: Optional[float] = None,
        num_angles: int = 16,
        kappa_low: float = 0.0,
        kappa_bar: float = 0.0,
        strict_scaling: bool = False,
        convention: Convention | str = Convention.CALIBRATED,
        unit_height: bool = False,
    ) -> "FilterParams":
        """Pass band up to the grid's k_max; k_tex defaults to half of it."""
        k_max = make_grid(m).k_max
        k_tex = k_max / 2 if k_tex is None else k_tex
        if alpha is None:
            alpha = parabolic_alpha(k_max, k_tex, kappa_low) if strict_scaling else settings.DEFAULT_ALPHA
        return cls(
            k_tex=k_tex, k_max=k_max, alpha=alpha, num_angles=num_angles,
            kappa_low=kappa_low, kappa_bar=kappa_bar, strict_scaling=strict_scaling,
            convention=Convention(convention), unit_height=unit_height,
        )

    @property
    def band(self) -> float:
        return self.k_max - self.k_tex

    @property
    def window_gain(self) -> float:
        """Factor applied to W V: 2 band alpha for unit-height windows, else 1."""
        return 2 * self.band * self.alpha if self.unit_height else 1.0

    @property
    def theory_scale(self) -> float:
        """Factor taking T (theorem-raw units, unit-mass windows) to this configuration's image units."""
        return convention_scale(self.convention) * self.window_gain / (2 * math.pi) ** 2

    def thetas(self) -> list[float]:
        """Filter directions j pi / A, j = 1..A."""
        return [j * math.pi / self.num_angles for j in range(1, self.num_angles + 1)]


class FilterConstants(BaseModel):
    """Window norms and the theorem constants built from them."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    C_W: float = Field(..., description="Decay constant of the radial kernel, 1 / (k_max - k_tex)")
    norm_halfinv: float = Field(..., description="||k_r^(-1/2) W||_L1, two-sided")
    norm_halfinv_reference: float = Field(..., description="Quoted one-sided value 1 / (sqrt(k_max) + sqrt(k_tex))")
    norm_inv: float = Field(..., description="||W / k_r||_L1")
    kernel_sup: float = Field(..., description="sup |W_check(z)| (z + 1), sampled")
    kernel_sup_reference: float = Field(..., description="Quoted bound 1 / (k_max - k_tex)")
    V_norm: float = Field(..., description="||V||_L1 on the circle")
    V_prime_norm: float = Field(..., description="||V'||_L1 on the circle")
    discrepancies: list[str] = Field(default_factory=list, description="Norms that differ from the quoted closed forms")

    C_geo: Optional[float] = Field(default=None, description="Stationary-phase remainder constant")
    C_filter: Optional[float] = Field(default=None, description="C(W, V, alpha), step-window form")
    C_filter_general: Optional[float] = Field(default=None, description="C(W, V, alpha), general form")
    inf_Wp: Optional[float] = Field(default=None, description="inf of W_p over [-alpha^2 / 2 kl, alpha^2 / 2 kl]")
    threshold_T: Optional[float] = Field(default=None, description="Lower bound of the response on edges")
    resolution_D: Optional[float] = Field(default=None, description="Localization radius of above-threshold points")
    diagnostics: list[str] = Field(default_factory=list, description="Why a constant is vacuous or degenerate")

    @property
    def theory_vacuous(self) -> bool:
        return self.threshold_T is None or self.threshold_T <= 0


class TheoryChecks(BaseModel):
    """Hypotheses of the edge and surfel theorems, evaluated for one configuration."""

    parabolic: bool = Field(..., description="alpha^2 (k_max + k_tex) / kappa_low <= pi")
    remainder_small: bool = Field(..., description="||k_r^(-1/2) W|| <= rho_low sqrt(pi / 2 kb) inf W_p / (4 C_geo)")
    resolution_fits: bool = Field(..., description="D <= delta / 3")
    threshold_positive: bool = Field(..., description="T > 0")

    @property
    def all_hold(self) -> bool:
        return self.parabolic and self.remainder_small and self.resolution_fits and self.threshold_positive


class SuboptimalExample(BaseModel):
    """A parameter set with the constants quoted for it, kept for side-by-side comparison."""

    model_config = ConfigDict(frozen=True)

    k_max: float = Field(..., description="Upper pass-band edge")
    k_tex: float = Field(..., description="Lower pass-band edge")
    alpha: float = Field(..., description="Angular half-width")
    kappa_low: float = Field(..., description="Curvature lower bound used in the constants")
    gamma3_sup: float = Field(..., description="Bound on |gamma'''|")
    pixel: float = Field(..., description="Distance at which the decay term is evaluated")
    reported_C: float = Field(..., description="Quoted C(W, V, alpha)")
    reported_decay_term: float = Field(..., description="Quoted C / pixel")
    reported_remainder_term: float = Field(..., description="Quoted remainder term")


SUBOPTIMAL_EXAMPLE = SuboptimalExample(
    k_max=64 * math.pi,
    k_tex=32 * math.pi,
    alpha=math.pi / 16,
    kappa_low=0.1,
    gamma3_sup=5.0,
    pixel=1 / 64,
    reported_C=0.3,
    reported_decay_term=25.0,
    reported_remainder_term=85.0,
)
