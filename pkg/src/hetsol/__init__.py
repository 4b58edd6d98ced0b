"""Exact and floating-point checks for three-dimensional torsionless
Heterotic solitons.

The package is organized in layers:

- ``fields``: exact scalar fields (polynomials, rational functions, trig
  polynomials) closed under differentiation.
- ``curvature3``: pointwise curvature algebra in dimension three, where the
  full curvature tensor is a function of the Ricci tensor.
- ``charts``: metric-plus-dilaton charts and their curvature packets,
  computed symbolically from the field classes.
- ``fdcheck``: central-difference oracles for everything the chart layer
  produces analytically.
- ``soliton``: the coupled residual system in its two equivalent forms, the
  constant-dilaton classification, and the divergence-free-curvature
  consequences.
- ``linearize``: linearized curvature operators, gauge pairing on the
  torus, the essential-deformation arithmetic, and FD sweeps.
- ``homogeneous``: left-invariant geometry from structure constants and a
  damped least-squares soliton search over the family catalogue.
- ``sampling``/``suites``/``reportio``/``cli``: seeded random instances,
  the named check suites, machine-readable reports, and the command line.
"""

from .errors import (HetsolError, InvalidKappa, JacobiViolated, NotEinstein,
                     NotHarmonic, NotTT, NonpositiveDilaton, PoleAtPoint,
                     PreconditionViolated, SingularMetric,
                     StencilOutOfDomain, UnsupportedFieldCombination)
from .fields import Field, Poly3, RationalField, TrigField, field_add
from .curvature3 import (Curv3, EigenReport, Metric3, Sym2, covector_norm_sq,
                         curv_norm, curv_norm_direct, curv_square,
                         curv_square_direct, eigenreport,
                         harmonic_ricci_reduction, kn_product, ricci_contract,
                         riemann_from_ricci, sym_compose, sym_inner,
                         sym_trace, two_form_action)
from .charts import (ChartGeometry, DerivativePacket, GeometryPacket,
                     bianchi_residual, constant_metric_torus_chart,
                     derivative_packet, euclidean_chart, full_packets,
                     geometry_packet, perturbed_chart, poincare_ball_chart)
from .fdcheck import fd_oracle, packet_defect
from .soliton import (ClassificationReport, HarmonicReport, HarmonicSample,
                      SolitonParams, SolitonResidual,
                      classify_constant_dilaton, formulation_defects,
                      harmonic_dilaton_test, residuals, residuals_v2,
                      scalar_identity, ym_trace_identity)
from .linearize import (BackgroundConstants, EssentialChainReport,
                        FdSweepRow, PairingReport, deformation_ops,
                        einstein_def_check, einstein_def_residual,
                        essential_chain, gauge_adjoint, gauge_image,
                        gauge_pairing, lin_curv_einstein,
                        lin_curv_norm_independent, lin_ricci, lin_scalar,
                        linearization_fd_sweep, project_tt_jet, torus_mean)
from .homogeneous import (CATALOGUE, GridReport, LieFamily, SearchConfig,
                          SearchReport, build_family, catalogue_as_dict,
                          catalogue_from_dict, frame_bianchi_residual,
                          grid_scan, lie_geometry, lm_solve, multi_start,
                          soliton_objective, soliton_residual)
from .suites import CheckRecord, SuiteConfig, run_verify_suite
from .reportio import (Report, make_report, normalized_json, records_to_csv,
                       report_to_json, write_csv, write_report)

__version__ = "0.1.0"

__all__ = [
    "HetsolError", "InvalidKappa", "JacobiViolated", "NotEinstein",
    "NotHarmonic", "NotTT", "NonpositiveDilaton", "PoleAtPoint",
    "PreconditionViolated", "SingularMetric", "StencilOutOfDomain",
    "UnsupportedFieldCombination",
    "Field", "Poly3", "RationalField", "TrigField", "field_add",
    "Curv3", "EigenReport", "Metric3", "Sym2", "covector_norm_sq",
    "curv_norm", "curv_norm_direct", "curv_square", "curv_square_direct",
    "eigenreport", "harmonic_ricci_reduction", "kn_product",
    "ricci_contract", "riemann_from_ricci", "sym_compose", "sym_inner",
    "sym_trace", "two_form_action",
    "ChartGeometry", "DerivativePacket", "GeometryPacket",
    "bianchi_residual", "constant_metric_torus_chart", "derivative_packet",
    "euclidean_chart", "full_packets", "geometry_packet", "perturbed_chart",
    "poincare_ball_chart",
    "fd_oracle", "packet_defect",
    "ClassificationReport", "HarmonicReport", "HarmonicSample",
    "SolitonParams", "SolitonResidual", "classify_constant_dilaton",
    "formulation_defects", "harmonic_dilaton_test", "residuals",
    "residuals_v2", "scalar_identity", "ym_trace_identity",
    "BackgroundConstants", "EssentialChainReport", "FdSweepRow",
    "PairingReport", "deformation_ops", "einstein_def_check",
    "einstein_def_residual", "essential_chain", "gauge_adjoint",
    "gauge_image", "gauge_pairing", "lin_curv_einstein",
    "lin_curv_norm_independent", "lin_ricci", "lin_scalar",
    "linearization_fd_sweep", "project_tt_jet", "torus_mean",
    "CATALOGUE", "GridReport", "LieFamily", "SearchConfig", "SearchReport",
    "build_family", "catalogue_as_dict", "catalogue_from_dict",
    "frame_bianchi_residual", "grid_scan", "lie_geometry", "lm_solve",
    "multi_start", "soliton_objective", "soliton_residual",
    "CheckRecord", "SuiteConfig", "run_verify_suite",
    "Report", "make_report", "normalized_json", "records_to_csv",
    "report_to_json", "write_csv", "write_report",
]
