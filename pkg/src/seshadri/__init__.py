"""Exact computation, certification and classification of multi-point Seshadri constants on surfaces."""

from .exact import Cmp, RadicalRational, parse_rr, rr_cmp, rr_mul, rr_normalize, rr_sqrt, rr_square
from .lattice import (
    BlowupExtension,
    DivisorClass,
    IntersectionLattice,
    LatticeError,
    arithmetic_genus,
    blowup_extend,
    check_signature,
    hodge_filter,
    intersect,
    is_nef_against,
)
from .bounds import (
    MAXIMAL,
    BoundsError,
    Certificate,
    KuechleHypothesisError,
    LatticeContext,
    MultiplicityVector,
    QuotientWitness,
    RefutationTrace,
    certify_lower_bound,
    enumeration_bound,
    epsilon_upper,
    kuechle_holds,
    kuechle_scan,
    min_quotient_over_catalog,
    reproduce_case_analysis,
    seshadri_quotient,
    verify_certificate,
    xu_floor,
)
from .classifier import Verdict, classify, classify_multi, classify_single, nagata_biran_table
from .catalog import CurveEntry, Profile, SurfaceError, SurfaceModel, builtin, load_surface, validate

__version__ = "0.1.0"
