"""walkpoly: exact lattice-walk generating functions and unimodal q-polynomials."""

from .asym import asymptotic_base, excursion_bridge_ratio, fit_growth
from .bounded import bounded_bridge_gf, bounded_free_gf, bounded_gf
from .eliminate import (
    MinimalPolynomial,
    find_proper_root,
    groebner_eliminate,
    guess_algebraic,
    minimal_polynomial,
)
from .koh import KohOptions, gs, koh_depth, koh_general, q_one_limit, qbin, verify_size_s_recurrence
from .multipoly import MultiPoly, poly_resultant
from .oracle import count_irreducible, count_walks
from .partitions import PartitionConstraint, partitions
from .qnum import QQ, qq
from .qpoly import QPoly, analyze_qpoly
from .realroots import real_roots
from .recurrence import Recurrence, alg_to_rec, guess_rec, unroll_rec
from .series import iterate_minpoly_series, iterate_system_series
from .steps import Step, StepSet, WalkProblem, random_step_set, validate
from .systems import (
    add_combination_target,
    build_bridge_system,
    build_excursion_system,
    build_meander_system,
    ensure_f_variables,
    free_unbounded_gf,
)
from .unipoly import PowerSeries, RationalFunction, UniPoly, ratfun_normalize, series_of_ratfun

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
