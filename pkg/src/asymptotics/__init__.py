"""
Stationary-phase asymptotics of curve transforms and their error constants.

Usage:
------
    from src.asymptotics import leading_order_ft, geometry_constant

    approx = leading_order_ft(spec, (150.0, 40.0))
    bound = geometry_constant(spec).C_geo
"""

from .stationary import (
    ErrorSample,
    StationaryPoint,
    asymptotic_error_report,
    curve_ft,
    leading_order_ft,
    remainder_decay_slope,
    stationary_points,
)
from .constants import GeometryConstants, arc_length_between_angles, geometry_constant
