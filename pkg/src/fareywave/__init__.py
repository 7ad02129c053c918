"""Farey-map scaling function and wavelets.

The scaling function is the Farey map recentred on [-1, 1]; the mother
wavelet combines three of its half-scale copies.  Closed forms for both
functions and their Fourier transforms are checked against an adaptive
Gauss-Kronrod oracle, and sampled continuous and dyadic transforms are
provided for signals.
"""
from .core import (
    C_PAPER,
    FUNCTION_NAMES,
    K,
    K0,
    K1,
    DomainError,
    FareyConstants,
    FilterCoefficients,
    GaugeSpec,
    PiecewiseFunction,
    SignConvention,
    constants,
    eval_dyadic,
    eval_farey,
    eval_generalized_farey,
    eval_phi,
    eval_psi,
    eval_psi_antisym,
    eval_psi_tilde,
    filters,
    get_function,
    two_scale_residual,
)
from .quadrature import (
    MajorantError,
    QuadratureError,
    QuadratureResult,
    TailMajorant,
    integrate,
    integrate_tail,
)
from .spectral import (
    AdmissibilityEstimate,
    FourierMethod,
    OverlapProfile,
    RieszBoundEstimate,
    admissibility,
    ci_si,
    fourier_transform,
    gram_phi_orthonormal,
    moment,
    orthonormalized_phi_hat,
    overlap_gamma,
    overlap_profile,
    phi_hat,
    psi_hat,
    refinement_residual,
    riesz_bounds,
    symbols,
)
from .transform import CoefficientGrid, SampledSignal, ScaleGrid, cwt, dwt, icwt, series_partial_sum
from .signal_io import FunctionTable, SignalKind, read_csv, synthesize, tabulate, write_csv
from .verify import Status, VerificationReport, run_verify

__version__ = "0.1.0"

__all__ = [
    "C_PAPER",
    "FUNCTION_NAMES",
    "K",
    "K0",
    "K1",
    "DomainError",
    "FareyConstants",
    "FilterCoefficients",
    "GaugeSpec",
    "PiecewiseFunction",
    "SignConvention",
    "constants",
    "eval_dyadic",
    "eval_farey",
    "eval_generalized_farey",
    "eval_phi",
    "eval_psi",
    "eval_psi_antisym",
    "eval_psi_tilde",
    "filters",
    "get_function",
    "two_scale_residual",
    "MajorantError",
    "QuadratureError",
    "QuadratureResult",
    "TailMajorant",
    "integrate",
    "integrate_tail",
    "AdmissibilityEstimate",
    "FourierMethod",
    "OverlapProfile",
    "RieszBoundEstimate",
    "admissibility",
    "ci_si",
    "fourier_transform",
    "gram_phi_orthonormal",
    "moment",
    "orthonormalized_phi_hat",
    "overlap_gamma",
    "overlap_profile",
    "phi_hat",
    "psi_hat",
    "refinement_residual",
    "riesz_bounds",
    "symbols",
    "CoefficientGrid",
    "SampledSignal",
    "ScaleGrid",
    "cwt",
    "dwt",
    "icwt",
    "series_partial_sum",
    "FunctionTable",
    "SignalKind",
    "read_csv",
    "synthesize",
    "tabulate",
    "write_csv",
    "Status",
    "VerificationReport",
    "run_verify",
]
