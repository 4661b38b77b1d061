"""Ribet sections on elliptic curves over finite fields and on the lattice model."""

__version__ = "0.1.0"

from .divisor_functions import Divisor, EvalPair, divisor_reduce, miller_eval
from .elliptic import Curve, CurvePoint, preset_curve, torsion_basis, torsion_point
from .endomorphism import EndoElement, alpha_of, endo_eval, parse_endo, rosati
from .finite_field import FieldElement, build_extension, mult_order
from .genjac import (
    GenJacCtx,
    gj_add,
    gj_from_divisor,
    gj_order,
    gj_project,
    ribet_point_direct,
    ribet_times_n,
    search_order_n2,
)
from .weil_pairing import weil_en_divisor, weil_en_miller

__all__ = [
    "__version__",
    "Divisor",
    "EvalPair",
    "divisor_reduce",
    "miller_eval",
    "Curve",
    "CurvePoint",
    "preset_curve",
    "torsion_basis",
    "torsion_point",
    "EndoElement",
    "alpha_of",
    "endo_eval",
    "parse_endo",
    "rosati",
    "FieldElement",
    "build_extension",
    "mult_order",
    "GenJacCtx",
    "gj_add",
    "gj_from_divisor",
    "gj_order",
    "gj_project",
    "ribet_point_direct",
    "ribet_times_n",
    "search_order_n2",
    "weil_en_divisor",
    "weil_en_miller",
]
