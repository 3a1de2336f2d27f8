"""
Window norms and the edge/surfel theorem constants C(W, V, alpha), T and D.

All quantities use the two-sided step radial window. The angular window is
chosen by name from the registry ("triangle" by default).
"""

import logging
import math

from src.asymptotics import geometry_constant
from src.phantom import PhantomSpec

from .params import FilterConstants, FilterParams, TheoryChecks
from .windows import StepRadialWindow

logger = logging.getLogger(__name__)

NORM_RTOL = 1e-9


def _windows(params: FilterParams, angular: str):
    # local import: the registry lives in the package __init__
    from . import get_window

    return get_window("step", k_tex=params.k_tex, k_max=params.k_max), get_window(angular, alpha=params.alpha)


def filter_norms(params: FilterParams, angular: str = "triangle") -> FilterConstants:
    """Closed-form window norms; flags the ones that differ from their quoted closed forms."""
    radial, window = _windows(params, angular)
    constants = FilterConstants(
        C_W=radial.decay_constant(),
        norm_halfinv=radial.half_inverse_norm(),
        norm_halfinv_reference=radial.half_inverse_norm_one_sided(),
        norm_inv=radial.inverse_norm(),
        kernel_sup=radial.kernel_weighted_sup(),
        kernel_sup_reference=1.0 / radial.band,
        V_norm=window.l1_norm(),
        V_prime_norm=window.derivative_norm(),
    )
    if not math.isclose(constants.norm_halfinv, constants.norm_halfinv_reference, rel_tol=NORM_RTOL):
        constants.discrepancies.append(
            "||k_r^-1/2 W||: two-sided integral is twice the one-sided 1/(sqrt(k_max)+sqrt(k_tex))"
        )
    if constants.kernel_sup > constants.kernel_sup_reference * (1 + NORM_RTOL):
        constants.discrepancies.append(
            f"||W_check(z)(z+1)||: sampled sup {constants.kernel_sup:.4f} exceeds 1/(k_max-k_tex) "
            f"= {constants.kernel_sup_reference:.4g} since W_check(0) = ||W||_L1 = 1"
        )
    return constants


def step_filter_constant(params: FilterParams, gamma3_sup: float, v_prime_norm: float) -> float:
    """
    Step-window form of C(W, V, alpha):

        sqrt(2 pi) / (sqrt(kl) cos(2 alpha) (k_max - k_tex))
            * max{1, 2 ln(k_max / k_tex) (||V'|| + gamma3 / (2 kl^2) + sqrt(kl))}
    """
    kl = params.kappa_low
    if kl <= 0:
        raise ValueError("C(W, V, alpha) is singular for kappa_low = 0")
    prefactor = math.sqrt(2 * math.pi) / (math.sqrt(kl) * math.cos(2 * params.alpha) * params.band)
    inner = 2 * math.log(params.k_max / params.k_tex) * (v_prime_norm + gamma3_sup / (2 * kl**2) + math.sqrt(kl))
    return prefactor * max(1.0, inner)


def general_filter_constant(params: FilterParams, spec: PhantomSpec, angular: str = "triangle") -> float:
    """
    General form of C(W, V, alpha) with the 2 M rho_bar prefactor:

        2 M rho_bar sqrt(2 pi) / (sqrt(kl) cos(2 alpha))
            * max{C_W ||V||, 2 ||W/k_r|| (||V'|| + ||V|| gamma3 / (2 kl^2)) + sqrt(kl) ||W_check(z)(z+1)||}
    """
    kl = params.kappa_low
    if kl <= 0:
        raise ValueError("C(W, V, alpha) is singular for kappa_low = 0")
    g = spec.geometry
    norms = filter_norms(params, angular)
    prefactor = 2 * g.M * g.rho_bar * math.sqrt(2 * math.pi) / (math.sqrt(kl) * math.cos(2 * params.alpha))
    decay = norms.C_W * norms.V_norm
    tangential = (
        2 * norms.norm_inv * (norms.V_prime_norm + norms.V_norm * g.gamma3_sup / (2 * kl**2))
        + math.sqrt(kl) * norms.kernel_sup
    )
    return prefactor * max(decay, tangential)


def filter_constants(params: FilterParams, spec: PhantomSpec, angular: str = "triangle") -> FilterConstants:
    """
    Norms plus C(W, V, alpha), the threshold T and the resolution D for a scene.

    T is reported as 0 (and D as infinite) when the interval
    [-alpha^2 / 2 kl, alpha^2 / 2 kl] leaves the pass band.
    """
    if params.kappa_low <= 0:
        raise ValueError("Theory constants are unavailable for kappa_low = 0 (polygonal scene)")
    g = spec.geometry
    constants = filter_norms(params, angular)
    constants.C_geo = geometry_constant(spec).C_geo
    constants.C_filter = step_filter_constant(params, g.gamma3_sup, constants.V_prime_norm)
    constants.C_filter_general = general_filter_constant(params, spec, angular)

    radial = StepRadialWindow(params.k_tex, params.k_max)
    half_width = params.alpha**2 / (2 * params.kappa_low)
    constants.inf_Wp = radial.profile_inf(half_width)
    kappa_bar = params.kappa_bar or g.kappa_bar
    M, C = g.M, constants.C_filter

    if constants.inf_Wp == 0:
        constants.threshold_T = 0.0
        constants.resolution_D = math.inf
        constants.diagnostics.append(
            f"alpha^2/(2 kappa_low) = {half_width:.4g} exceeds half the pass band {radial.band / 2:.4g}; T set to 0"
        )
        logger.warning("Threshold interval leaves the pass band; theory threshold is vacuous")
        return constants

    separation_term = 0.0 if g.delta is None else C * (2 * M - 1) / (2 * M * g.delta)
    constants.threshold_T = (
        math.sqrt(math.pi / (2 * kappa_bar)) * g.rho_low * constants.inf_Wp
        - (separation_term + constants.norm_halfinv) * constants.C_geo
    )
    constants.resolution_D = (
        (2 / g.rho_low) * math.sqrt(2 * kappa_bar / math.pi) / constants.inf_Wp
        * (4 * M - 1) * C / (2 * M) * constants.C_geo
    )
    if constants.threshold_T <= 0:
        constants.diagnostics.append("T <= 0: theory vacuous, use an empirical threshold")
        logger.warning("Theory threshold T = %.4g is not positive", constants.threshold_T)
    logger.debug(
        "C=%.4g C_general=%.4g T=%.4g D=%.4g",
        C, constants.C_filter_general, constants.threshold_T, constants.resolution_D,
    )
    return constants


def theory_checks(params: FilterParams, constants: FilterConstants, spec: PhantomSpec) -> TheoryChecks:
    """Evaluate the hypotheses under which T and D carry their guarantees."""
    g = spec.geometry
    kl = params.kappa_low
    kappa_bar = params.kappa_bar or g.kappa_bar
    parabolic = kl > 0 and params.alpha**2 * (params.k_max + params.k_tex) / kl <= math.pi
    remainder_small = bool(
        constants.C_geo
        and constants.inf_Wp
        and constants.norm_halfinv
        <= 0.25 * g.rho_low * math.sqrt(math.pi / (2 * kappa_bar)) * constants.inf_Wp / constants.C_geo
    )
    resolution_fits = bool(
        constants.resolution_D is not None
        and g.delta is not None
        and constants.resolution_D <= g.delta / 3
    )
    threshold_positive = bool(constants.threshold_T is not None and constants.threshold_T > 0)
    return TheoryChecks(
        parabolic=parabolic,
        remainder_small=remainder_small,
        resolution_fits=resolution_fits,
        threshold_positive=threshold_positive,
    )
