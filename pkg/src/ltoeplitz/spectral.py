"""Singular-value analysis of truncations: norms, decay bounds, numerical rank.

Quantitative spectral laws checked here, for the truncation T_N of the
operator attached to (lambda, phi):

* |lambda| < 1: the full operator is Hilbert-Schmidt with norm
  l2_norm(phi) / sqrt(1 - |lambda|^2), and the Frobenius norms of the
  truncations increase to that value.
* |lambda| < 1: singular values decay as sigma_{2m+1} <= |lambda|^m * sigma_1
  (block argument: the tail block starting at row/column m is lambda^m times
  a smaller truncation), which makes the trace norm uniformly bounded.
* |lambda| = 1: truncation operator norms converge upward to the sup norm of
  the twisted symbol; for the bandlimited ramp with lambda = -1 they grow
  with N instead of converging.
* rank: lambda = 0 forces rank <= 2; one-sided symbols give exact
  corank-n_0 triangular structure; generic two-sided symbols with
  0 < |lambda| < 1 have numerical rank growing without bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .factorization import VerificationResult, WeightedCompositionSpec, build_weighted_comp
from .operator import LambdaToeplitzSpec, TruncatedOperator, powers, truncate
from .symbol import is_unimodular, sawtooth

__all__ = [
    "DEFAULT_RANK_TOL",
    "TRACE_BOUND_SLACK",
    "SpectralDecompositionError",
    "SpectralReport",
    "analyze",
    "singular_values",
    "operator_norm",
    "hs_norm_closed_form",
    "norm_convergence_study",
    "sawtooth_growth_study",
    "trace_norm_bound_check",
    "wco_spectrum_check",
    "finite_rank_study",
]

DEFAULT_RANK_TOL = 1e-8
TRACE_BOUND_SLACK = 1e-9


class SpectralDecompositionError(RuntimeError):
    """SVD failure, carrying the truncation size for diagnostics."""

    def __init__(self, size: int, message: str):
        super().__init__(message)
        self.size = size


@dataclass(frozen=True, eq=False)
class SpectralReport:
    """Singular-value summary of one truncation.

    decay_margins[m] = |lambda|^m * sigma_1 - sigma_{2m+1}; a negative margin
    beyond rounding would certify a violation of the decay bound.
    """

    size: int
    singular_values: np.ndarray
    operator_norm: float
    frobenius_norm: float
    trace_norm: float
    numerical_rank: int
    decay_margins: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "N": self.size,
            "singular_values": [float(s) for s in self.singular_values],
            "operator_norm": self.operator_norm,
            "frobenius_norm": self.frobenius_norm,
            "trace_norm": self.trace_norm,
            "numerical_rank": self.numerical_rank,
            "decay_margins": [float(v) for v in self.decay_margins],
        }

    def singular_value_rows(self):
        """(k, sigma_k) pairs, k starting at 1, for the CSV table."""
        return [(k + 1, float(s)) for k, s in enumerate(self.singular_values)]


def singular_values(op: TruncatedOperator) -> np.ndarray:
    if not np.all(np.isfinite(op.entries)):
        raise ValueError(f"truncation N={op.size} has non-finite entries")
    try:
        return np.linalg.svd(op.entries, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SpectralDecompositionError(op.size, f"SVD failed at N={op.size}: {exc}") from exc


def operator_norm(op: TruncatedOperator) -> float:
    return float(singular_values(op)[0])


def analyze(
    op: TruncatedOperator, lam: complex, rank_tol: float = DEFAULT_RANK_TOL
) -> SpectralReport:
    """Full SVD of a truncation, with norms, numerical rank, decay margins."""
    if not 0.0 < rank_tol < 1.0:
        raise ValueError("rank_tol must lie in (0, 1)")
    sing = singular_values(op)
    top = float(sing[0])
    frob = float(np.linalg.norm(op.entries))
    trace = float(np.sum(sing))
    rank = int(np.count_nonzero(sing > rank_tol * top)) if top > 0.0 else 0
    half = op.size // 2
    ms = np.arange(half)
    margins = (abs(complex(lam)) ** ms) * top - sing[2 * ms]
    return SpectralReport(
        size=op.size,
        singular_values=sing,
        operator_norm=top,
        frobenius_norm=frob,
        trace_norm=trace,
        numerical_rank=rank,
        decay_margins=margins,
    )


def hs_norm_closed_form(spec: LambdaToeplitzSpec) -> float:
    """Hilbert-Schmidt norm l2_norm(phi)/sqrt(1-|lambda|^2) of the full operator.

    Summing |lambda|^{2 min(n,m)} |a_{n-m}|^2 along each diagonal band gives a
    geometric series with ratio |lambda|^2 per band, hence the closed form.
    """
    mod = abs(spec.lam)
    if mod >= 1.0:
        raise ValueError("Hilbert-Schmidt closed form requires |lambda| < 1")
    return spec.symbol.l2_norm() / math.sqrt(1.0 - mod * mod)


def norm_convergence_study(
    spec: LambdaToeplitzSpec, sizes
) -> list[tuple[int, float]]:
    """Operator norms of increasing truncations for |lambda| = 1.

    For bounded twisted symbols these converge upward to its sup norm; the
    bandlimited ramp with lambda = -1 keeps growing instead.
    """
    if not is_unimodular(spec.lam):
        raise ValueError("norm convergence study requires |lambda| = 1")
    return [(int(n), operator_norm(truncate(spec, int(n)))) for n in sizes]


def sawtooth_growth_study(sizes) -> list[tuple[int, float]]:
    """Truncation norms of the lambda = -1 operator of the bandlimited ramp.

    Each size N uses the ramp symbol with bandlimit K = N, so the truncation
    carries every band the ramp provides at that size.
    """
    out = []
    for n in sizes:
        n = int(n)
        spec = LambdaToeplitzSpec(-1.0 + 0j, sawtooth(n))
        out.append((n, operator_norm(truncate(spec, n))))
    return out


def trace_norm_bound_check(
    report: SpectralReport, lam: complex, slack: float = TRACE_BOUND_SLACK
) -> VerificationResult:
    """trace_norm <= sigma_1 * (1 + 2/(1-|lambda|)) + slack, from the decay bound."""
    mod = abs(complex(lam))
    if mod >= 1.0:
        raise ValueError("trace-norm bound requires |lambda| < 1")
    majorant = report.operator_norm * (1.0 + 2.0 / (1.0 - mod))
    residual = report.trace_norm - majorant
    return VerificationResult(
        "trace-norm-bound", report.size, residual, slack, residual <= slack
    )


def wco_spectrum_check(
    w: WeightedCompositionSpec, size: int, tol: float = 1e-14
) -> VerificationResult:
    """Eigenvalues of the W truncation are exactly {multiplier^m * weight(0)}.

    The truncation is lower triangular, so its eigenvalues are read off the
    diagonal; for weight(0) != 0 and 0 < |multiplier| < 1 the predicted points
    must also be pairwise distinct (the tail of an infinite spectrum).
    """
    n = int(size)
    diag = np.diagonal(build_weighted_comp(w, n).entries)
    psi0 = w.weight.coefficient(0)
    predicted = powers(w.multiplier, n) * psi0
    residual = float(np.max(np.abs(diag - predicted)))
    ok = residual <= tol
    mod = abs(w.multiplier)
    if psi0 != 0 and 0.0 < mod < 1.0:
        ok = ok and len(set(predicted.tolist())) == n
    return VerificationResult("wco-spectrum", n, residual, tol, ok)


def finite_rank_study(
    spec: LambdaToeplitzSpec, sizes, rank_tol: float = DEFAULT_RANK_TOL
) -> list[tuple[int, int]]:
    """Numerical rank of each truncation size."""
    return [
        (int(n), analyze(truncate(spec, int(n)), spec.lam, rank_tol).numerical_rank)
        for n in sizes
    ]
