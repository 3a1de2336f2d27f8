"""Noise bounds on pooled surfels and the separation conditions they must satisfy."""

import logging
import math
from typing import Optional

from pydantic import BaseModel, Field

from src.config import settings
from src.filters import FilterConstants, FilterParams

logger = logging.getLogger(__name__)

THINNING_FACTOR = 1 + 2**1.5


class NoiseBounds(BaseModel):
    """
    zeta bounds the surfel position error, xi the normal-angle error and eps
    the arclength between neighbouring samples. link_radius is the distance
    within which surfels are considered for linking.
    """

    zeta: float = Field(..., ge=0, description="Position noise bound")
    xi: float = Field(..., ge=0, description="Angle noise bound in radians")
    eps: float = Field(..., gt=0, description="Maximum sample spacing")
    link_radius: float = Field(..., gt=0, description="Candidate neighbour distance")
    bridge_radius: float = Field(default=0.0, ge=0, description="Reach for joining chain ends; no bridging at or below link_radius")
    strict: bool = Field(default=False, description="Enforce the noisy separation conditions and min spacing")

    @classmethod
    def from_constants(
        cls,
        params: FilterParams,
        m: int,
        constants: Optional[FilterConstants] = None,
        strict: bool = False,
    ) -> "NoiseBounds":
        """
        zeta = min(D, ZETA_MAX_PX px), xi = alpha, eps = (2 alpha + pi / A) / kappa_low
        (the arclength between surfels of neighbouring directions), with the
        linking radius capped at LINK_RADIUS_PX px. Without a curvature lower
        bound eps falls back to that cap. Chain ends are bridged up to
        BRIDGE_RADIUS_PX px.
        """
        pixel = 1.0 / 2**m
        cap = settings.LINK_RADIUS_PX * pixel
        resolution = None if constants is None else constants.resolution_D
        if resolution is None or not math.isfinite(resolution):
            resolution = pixel
        zeta = min(resolution, settings.ZETA_MAX_PX * pixel)
        if params.kappa_low > 0:
            eps = (2 * params.alpha + math.pi / params.num_angles) / params.kappa_low
        else:
            eps = cap
        return cls(
            zeta=zeta, xi=params.alpha, eps=eps, link_radius=min(eps, cap),
            bridge_radius=settings.BRIDGE_RADIUS_PX * pixel, strict=strict,
        )

    @property
    def min_spacing(self) -> float:
        """(1 + 2^(3/2)) (2 xi eps + zeta): minimum distance between adjacent samples."""
        return THINNING_FACTOR * (2 * self.xi * self.eps + self.zeta)

    def check(self, delta: Optional[float], kappa_bar: float) -> bool:
        """delta > 4 zeta + 4 eps xi + 2.1 kappa_bar eps^2 and eps < 1 / (kappa_bar sqrt 2)."""
        separated = delta is None or delta > 4 * self.zeta + 4 * self.eps * self.xi + 2.1 * kappa_bar * self.eps**2
        return separated and self._eps_small(kappa_bar)

    def noiseless_check(self, delta: Optional[float], kappa_bar: float) -> bool:
        """delta > 2 kappa_bar eps^2 and eps < 1 / (kappa_bar sqrt 2)."""
        separated = delta is None or delta > 2 * kappa_bar * self.eps**2
        return separated and self._eps_small(kappa_bar)

    def _eps_small(self, kappa_bar: float) -> bool:
        return kappa_bar <= 0 or self.eps < 1 / (kappa_bar * math.sqrt(2))
