"""Projections, contraction, Morse gauges, hulls and the cusped-space experiments."""

from .audits import AuditSummary, slim_audit, small_instances, stability_audit
from .contraction import (INCONCLUSIVE, LINEAR, SUBLINEAR, ContractionProfile, FqParams, NeighborTest,
                          ProjectionResult, TrendVerdict, brute_force_profile, contraction_profile,
                          dl_neighbor_test, fq_neighbor_test, k_of, pair_diameter, project,
                          sublinearity_trend)
from .cusps import power_path_distortion, vertical_ray_contraction_audit
from .gauge import (AuditRecord, Distances, MorseGaugeTable, QuasiGeodesic, morse_gauge_probe,
                    quasi_geodesic_families, slim_check_morse_pair, verify_quasi_geodesic,
                    verify_stability_bound)
from .hull import WeakHullResult, contracting_directions, hull_coverage_audit, stable_set_proxy, weak_hull

__all__ = [
    "AuditRecord", "AuditSummary", "ContractionProfile", "Distances", "FqParams", "INCONCLUSIVE", "LINEAR",
    "MorseGaugeTable", "NeighborTest", "ProjectionResult", "QuasiGeodesic", "SUBLINEAR", "TrendVerdict",
    "WeakHullResult", "brute_force_profile", "contracting_directions", "contraction_profile", "dl_neighbor_test", "fq_neighbor_test",
    "hull_coverage_audit", "k_of", "morse_gauge_probe", "pair_diameter", "power_path_distortion", "project",
    "quasi_geodesic_families", "slim_audit", "slim_check_morse_pair", "small_instances", "stability_audit",
    "stable_set_proxy", "sublinearity_trend", "verify_quasi_geodesic", "verify_stability_bound",
    "vertical_ray_contraction_audit", "weak_hull",
]
