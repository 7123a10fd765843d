"""Bounded-degree hypercube spanners as implicit graphs, with routers and verifiers."""

from .add_spanner import AdditiveSpanner, RouteReport, SpannerParams, paper_params, validate_params
from .antipodal import AntipodalCycleGraph, CycleLocation
from .codes import HammingCode, NearlyPerfectCode
from .diam_spanner import DiameterSpanner

__version__ = "0.1.0"

__all__ = [
    "AdditiveSpanner", "AntipodalCycleGraph", "CycleLocation", "DiameterSpanner",
    "HammingCode", "NearlyPerfectCode", "RouteReport", "SpannerParams", "paper_params",
    "validate_params",
]
