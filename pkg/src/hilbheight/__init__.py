"""Arithmetic Hilbert functions and normalized heights of projective varieties over Q."""

from .estimation import HeightReport, estimate_height
from .hilbert import consistency_report, h_arith, h_norm, hilbert_sample
from .ideal import VarietyInput, hilbert_geom
from .metrics import INF, monomial_norm_exact, monomial_norm_numeric
from .oracles import mahler_measure, weil_height_point

__all__ = [
    "INF",
    "HeightReport",
    "VarietyInput",
    "consistency_report",
    "estimate_height",
    "h_arith",
    "h_norm",
    "hilbert_geom",
    "hilbert_sample",
    "mahler_measure",
    "monomial_norm_exact",
    "monomial_norm_numeric",
    "weil_height_point",
]

__version__ = "0.1.0"
