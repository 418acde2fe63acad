"""Exact weighted gravitational descendants and their chamber combinatorics."""

from .chambers import CrossingEvent, crossing_path, enumerate_chambers, perturbed_pair
from .complexes import (CapacityError, SimplicialComplex, build_complex, cone, contract,
                        discrete, full_simplex, realize, skeleton)
from .core import MultiPoly, format_rational, parse_rational
from .descend import (generating_polynomial, kappa_number, verify_cone, verify_genpoly_wallcross,
                      verify_symmetric, verify_wallcross, wallcross_third_term,
                      weighted_descendant)
from .oracle import (POINT, OracleIncomplete, TargetModel, genus0_point, load_target,
                     unweighted_lookup, wk_kdv, wk_point)
from .weights import WeightData, in_domain, parse_weights, perturb_generic

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CrossingEvent",
    "MultiPoly",
    "OracleIncomplete",
    "POINT",
    "SimplicialComplex",
    "TargetModel",
    "WeightData",
    "build_complex",
    "cone",
    "contract",
    "crossing_path",
    "discrete",
    "enumerate_chambers",
    "format_rational",
    "full_simplex",
    "generating_polynomial",
    "genus0_point",
    "in_domain",
    "kappa_number",
    "load_target",
    "parse_rational",
    "parse_weights",
    "perturb_generic",
    "perturbed_pair",
    "realize",
    "skeleton",
    "unweighted_lookup",
    "verify_cone",
    "verify_genpoly_wallcross",
    "verify_symmetric",
    "verify_wallcross",
    "wallcross_third_term",
    "weighted_descendant",
    "wk_kdv",
    "wk_point",
]
