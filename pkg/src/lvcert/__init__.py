"""lvcert: certified construction of 3D competitive Lotka-Volterra systems
with multiple small-amplitude limit cycles.

Exact rational computer algebra end to end: Hopf eigenvalue condition,
block-diagonalization, center-manifold reduction, focal values, certified
bivariate real-root isolation, perturbation scheduling, and Zeeman class
certification, all emitting machine-checkable certificates.
"""

from .poly import SparsePoly, poly_arith, rational, rational_str
from .ratfunc import RatFunc, ratfunc_normalize
from .gcdres import poly_gcd, poly_divexact, poly_divides, resultant, squarefree_part
from .intervals import RatInterval, eval_interval, eval_interval_ratfunc, outward
from .sturm import sturm_isolate, refine_root

__version__ = "0.1.0"

# higher-level modules import __version__, so they come after it
from .lvmodel import (CLASS_31, OTHER_OR_UNKNOWN, ParamMatrix3, classify,
                      competitiveness_check, zeeman_invariants)
from .reduction import (build_transform, center_manifold, reduce_planar,
                        solve_for_mu, transform_system)
from .focal import (focal_values, lv0_sign, perturbation_schedule,
                    verify_schedule)
from .realroots import IsolatingBox, isolate_system, mrealroot
from .search import SearchConfig, rand_matrix, run_pipeline, search
from .certificate import (build_certificate, load_certificate,
                          save_certificate, verify_certificate)

# lvcert.numeric (float diagnostics) is deliberately not imported here:
# the certifying path must not depend on it, even transitively

__all__ = [
    "CLASS_31",
    "OTHER_OR_UNKNOWN",
    "ParamMatrix3",
    "IsolatingBox",
    "SearchConfig",
    "build_certificate",
    "build_transform",
    "center_manifold",
    "classify",
    "competitiveness_check",
    "focal_values",
    "isolate_system",
    "load_certificate",
    "lv0_sign",
    "mrealroot",
    "perturbation_schedule",
    "rand_matrix",
    "reduce_planar",
    "run_pipeline",
    "save_certificate",
    "search",
    "solve_for_mu",
    "transform_system",
    "verify_certificate",
    "verify_schedule",
    "zeeman_invariants",
    "SparsePoly",
    "RatFunc",
    "RatInterval",
    "poly_arith",
    "poly_gcd",
    "poly_divexact",
    "poly_divides",
    "resultant",
    "squarefree_part",
    "ratfunc_normalize",
    "eval_interval",
    "eval_interval_ratfunc",
    "outward",
    "sturm_isolate",
    "refine_root",
    "rational",
    "rational_str",
    "__version__",
]
