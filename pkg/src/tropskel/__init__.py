"""Exact skeleta, slope potentials and tropicalizations of punctured curves."""

from .certify import CERTIFIED, NOT_CERTIFIED, REFUTED, Certificate, certify_faithful, kmm_check, vertex_mult_one, well_spaced_check
from .elimination import LatticeMap, LatticePolygon, newton_polygon_from_curve, newton_polygon_of, pushforward
from .errors import *  # noqa: F403
from .exactnum import INF, PuiseuxElement, fmt_rat, format_puiseux, parse_puiseux, rat, val
from .newton import TropicalPolynomial, corner_locus, crosscheck_parametric, dual_subdivision, verify_duality
from .potential import Divisor, PLFunction, change_of_slope, evaluate, gauss_value, solve_rational_function, solve_slope
from .render import render_svg, write_svg
from .scenarios import run_all, run_scenario, scenario_names
from .skeleton import Skeleton, build_p1_skeleton, build_tate_skeleton, subdivide
from .tropicalize import (
    EdgeExpansionReport,
    TropicalComplex,
    betti_one,
    bridgeless_core,
    check_balancing,
    cycle_length,
    trop_map,
)

__version__ = "0.1.0"
