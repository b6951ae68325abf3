"""Springer duality, Richardson polarizations and Prym covers for type B/C Hitchin systems."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:
    __version__ = "0.1.0"

from .errors import OrbitDualityError, ParityGuard, UnknownSuite
from .formal_local import LocalCharData, assumption_check, sample_generic_char, splitting_criterion
from .isotropic import CountReport, build_residue_model, count_report, enumerate_iota_isotropic
from .orbits import (
    HitchinContext,
    block_decompose,
    dimension_report,
    eta_sequence,
    kl_label,
    orbit_invariants,
    orbit_record,
    ramification_coefficients,
)
from .partitions import collapse, enumerate_partitions, is_special, springer_dual, transpose
from .prym_weil import WeilSpace, component_count, dual_check, hitchin_instance, weil_space
from .richardson import LeviType, component_groups, enumerate_polarizations, richardson_data, seesaw_check
from .verify import VerificationReport, run_verify
