"""Exact higher-rank Donaldson-Thomas series of affine 3-space by torus localization."""

from .algebra import Cyclotomic, LaurentHalf, TruncatedSeries, series_exp, series_inv, series_log, series_pow_scalar
from .characters import Monomial, VirtualCharacter, bar, tvir, vertex_term
from .measures import EvalPoint, LinearPoint, bracket, bracket_bseries, elliptic, euler
from .partitions import ColoredPartition, PlanePartition, enumerate_colored, enumerate_plane_partitions, ideal_character
from .series import dtcoh_closed, dtell_closed, dtk_closed, dtmot_closed, macmahon, pleth_exp
from .dt import VerificationReport, dtcoh_localization, dtell_localization, dtk_localization
from .toric import chern_integral, global_dt, load_toric, verify_gluing

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "LaurentHalf",
    "TruncatedSeries",
    "series_exp",
    "series_inv",
    "series_log",
    "series_pow_scalar",
    "Monomial",
    "VirtualCharacter",
    "bar",
    "tvir",
    "vertex_term",
    "EvalPoint",
    "LinearPoint",
    "bracket",
    "bracket_bseries",
    "elliptic",
    "euler",
    "ColoredPartition",
    "PlanePartition",
    "enumerate_colored",
    "enumerate_plane_partitions",
    "ideal_character",
    "pleth_exp",
    "macmahon",
    "dtk_closed",
    "dtcoh_closed",
    "dtell_closed",
    "dtmot_closed",
    "dtk_localization",
    "dtcoh_localization",
    "dtell_localization",
    "VerificationReport",
    "load_toric",
    "chern_integral",
    "global_dt",
    "verify_gluing",
]
