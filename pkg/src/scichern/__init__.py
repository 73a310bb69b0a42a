"""Exact-arithmetic geography of Chern ratios of complete intersection threefolds.

Every quantity is a :class:`fractions.Fraction`; floats appear only in plots
and decimal display columns.
"""
from .chern_core import (
    INF,
    ChernData,
    DegreeTuple,
    Line,
    Side,
    as_rational,
    chern_numbers,
    chern_of,
    corner,
    edge_line,
    power_sums,
)
from .cone import ConeVector, certificate, contains, edge, edges
from .enumeration import enumerate_points, partitions
from .errors import SciChernError
from .hull import convex_hull, halfplane_check, hull_of
from .report import RunConfig, build_report

__version__ = "0.1.0"

__all__ = [
    "INF", "ChernData", "DegreeTuple", "Line", "Side", "as_rational", "chern_numbers",
    "chern_of", "corner", "edge_line", "power_sums", "ConeVector", "certificate",
    "contains", "edge", "edges", "enumerate_points", "partitions", "SciChernError",
    "convex_hull", "halfplane_check", "hull_of", "RunConfig", "build_report",
]
