"""Exact enumeration of simplex-duplex polyominoes by area and duplex columns."""

from .closed_form import assemble, column_convex_g, tilde
from .funceq import fixed_point_solve
from .oracle import classify, enumerate_counts
from .series import QSeries, QTSeries, SeriesRing, TJet, WPoly

__all__ = [
    "QSeries",
    "QTSeries",
    "SeriesRing",
    "TJet",
    "WPoly",
    "assemble",
    "classify",
    "column_convex_g",
    "enumerate_counts",
    "fixed_point_solve",
    "tilde",
]
