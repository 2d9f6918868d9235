"""Associate matrices, operator norms, and compactness gauges.

A matrix A acting on a mean-difference space becomes an associate matrix
acting on the plain sequence space through the coordinate change: row n of
the associate is R(A_n), and A x equals the associate applied to the
transformed sequence.  The operator norm is the sup of the associate rows'
absolute sums, and the Hausdorff measure of noncompactness of the induced
operator is estimated from their limsup behavior: an identity for null
targets, a two-sided sandwich for convergent targets, and an upper bound
for bounded targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionError, InconsistencyError
from .limits import (
    DEFAULT_TREND_WINDOW,
    STATUS_EXACT,
    STATUS_INDET,
    STATUS_TREND,
    TREND_DECAYING,
    TREND_EXACT,
    LimitEstimate,
    Verdict,
    analyze_tail,
    column_limits,
    column_value,
    extended_rows,
    limit_of_rows,
    limsup_of_rows,
    row_abs_sum,
    sup_of_rows,
)
from .scalars import zero_like
from .triangle import ZERO_TAIL, MatrixWindow, as_window
from .conditions import SPACES, classify_map, transformed_rows
from .operators import check_params

TARGETS = SPACES


@dataclass(frozen=True)
class AssociateMatrix:
    """Rows R(A_n) with provenance: computed through the coordinate change or
    supplied directly by the caller (so the gauge formulas can be exercised
    independently of the transform pipeline)."""

    window: MatrixWindow
    provenance: str   # "computed" | "supplied"


def associate_matrix(p, matrix) -> AssociateMatrix:
    """Associate of a zero-tail-row matrix, built row-by-row through the
    closed form and cross-checked against the defining sums."""
    return AssociateMatrix(transformed_rows(p, matrix), "computed")


def supplied_associate(matrix) -> AssociateMatrix:
    return AssociateMatrix(as_window(matrix), "supplied")


def _resolve_associate(p, matrix_or_associate) -> AssociateMatrix:
    if isinstance(matrix_or_associate, AssociateMatrix):
        return matrix_or_associate
    return associate_matrix(p, matrix_or_associate)


def operator_norm(p, matrix_or_associate, *, trend_window=DEFAULT_TREND_WINDOW,
                  tolerance=None) -> LimitEstimate:
    """sup_n of the associate rows' absolute sums; exact when rows are
    eventually zero, windowed with trend classification otherwise."""
    check_params(p)
    tolerance = p.backend.tolerance if tolerance is None else tolerance
    assoc = _resolve_associate(p, matrix_or_associate)
    return sup_of_rows(assoc.window, row_abs_sum, trend_window=trend_window,
                       tolerance=tolerance)


@dataclass(frozen=True)
class ChiEstimate:
    """Two-sided estimate of the noncompactness gauge of the induced operator.

    Null target: lower = upper (the gauge identity).  Convergent target:
    the sandwich [L/2, L] around the column-shifted limsup L, with the
    per-column limit sequence reported.  Bounded target: [0, limsup].
    """

    target: str
    lower: object
    upper: object
    alpha_tilde: Optional[tuple]
    status: str
    trend: str
    window: tuple = ()
    trace: tuple = ()
    note: str = ""


def shifted_row_abs_sum(row, alphas):
    """sum_k |row_k - alpha_k| with the limit vector padded by zeros beyond
    its computed width (the standard truncation reading: column limits past
    the stored window are taken as zero)."""
    total = 0
    for k in range(max(len(row), len(alphas))):
        a = alphas[k] if k < len(alphas) else 0
        total += abs(column_value(row, k) - a)
    return total


def _shifted_limsup(window, alphas, trend_window, tolerance):
    """limsup_n sum_k |a_nk - alpha_k| for a fixed column-limit vector."""
    pairs = extended_rows(window, minimum=len(window.rows))
    ns = tuple(n for n, _ in pairs)
    trace = tuple(shifted_row_abs_sum(row, alphas) for _, row in pairs)
    if window.row_tail == ZERO_TAIL:
        tailval = sum((abs(a) for a in alphas), 0)
        return LimitEstimate("limsup", tailval, STATUS_EXACT, TREND_EXACT, ns, trace)
    status, trend, value = analyze_tail(ns, trace, trend_window, tolerance)
    w = min(max(trend_window, 3), len(trace)) if trace else 0
    windowed_max = max(trace[-w:]) if trace else None
    if status == STATUS_TREND:
        estimate = value if trend == TREND_DECAYING else windowed_max
        return LimitEstimate("limsup", estimate, STATUS_TREND, trend, ns, trace)
    return LimitEstimate("limsup", windowed_max, STATUS_INDET, trend, ns, trace,
                         note="tail trace unresolved; windowed max reported")


def _half(value):
    if isinstance(value, float):
        return value / 2
    from fractions import Fraction
    return Fraction(value) / 2


def chi_norm(p, matrix_or_associate, target, *, trend_window=DEFAULT_TREND_WINDOW,
             tolerance=None) -> ChiEstimate:
    check_params(p)
    if target not in TARGETS:
        raise DimensionError(f"target must be one of {TARGETS}, got {target!r}")
    tolerance = p.backend.tolerance if tolerance is None else tolerance
    assoc = _resolve_associate(p, matrix_or_associate).window

    if target == "c0":
        est = limsup_of_rows(assoc, row_abs_sum, trend_window=trend_window,
                             tolerance=tolerance)
        return ChiEstimate("c0", est.value, est.value, None, est.status, est.trend,
                           est.window, est.trace, est.note)

    if target == "l_inf":
        est = limsup_of_rows(assoc, row_abs_sum, trend_window=trend_window,
                             tolerance=tolerance)
        zero = zero_like(est.value) if est.value is not None else 0
        return ChiEstimate("l_inf", zero, est.value, None, est.status, est.trend,
                           est.window, est.trace, est.note)

    # convergent target: sandwich around the column-shifted limsup
    cols = column_limits(assoc, trend_window=trend_window, tolerance=tolerance)
    if cols.status == STATUS_INDET or cols.value is None:
        return ChiEstimate("c", None, None, None, STATUS_INDET, cols.trend,
                           note="per-column limits unresolved")
    alphas = cols.value
    est = _shifted_limsup(assoc, alphas, trend_window, tolerance)
    if est.value is None:
        return ChiEstimate("c", None, None, tuple(alphas), STATUS_INDET, est.trend,
                           est.window, est.trace, est.note)
    status = est.status if cols.status == STATUS_EXACT else _join_status(est.status, cols.status)
    return ChiEstimate("c", _half(est.value), est.value, tuple(alphas), status, est.trend,
                       est.window, est.trace, est.note)


def _join_status(a, b):
    rank = {STATUS_EXACT: 0, STATUS_TREND: 1, STATUS_INDET: 2}
    return a if rank[a] >= rank[b] else b


def compactness_verdict(p, matrix_or_associate, target, *,
                        trend_window=DEFAULT_TREND_WINDOW, tolerance=None) -> Verdict:
    """Compact iff the gauge-driving limit vanishes: the rows' absolute sums
    for null/bounded targets, the column-shifted sums for convergent targets.
    Decisive only under decisive tails; never a guess."""
    check_params(p)
    if target not in TARGETS:
        raise DimensionError(f"target must be one of {TARGETS}, got {target!r}")
    tolerance = p.backend.tolerance if tolerance is None else tolerance
    assoc = _resolve_associate(p, matrix_or_associate).window

    if target == "c":
        cols = column_limits(assoc, trend_window=trend_window, tolerance=tolerance)
        if cols.status == STATUS_INDET or cols.value is None:
            return Verdict("indeterminate", "per-column limits unresolved", evidence=cols)
        est = _shifted_limsup(assoc, cols.value, trend_window, tolerance)
    else:
        est = limit_of_rows(assoc, row_abs_sum, trend_window=trend_window,
                            tolerance=tolerance)

    if est.status == STATUS_INDET:
        return Verdict("indeterminate",
                       est.note or "tail trace does not decide the limit", evidence=est)
    value = est.value
    if est.status == STATUS_EXACT:
        is_zero = value == 0
    else:
        is_zero = est.trend == TREND_DECAYING or abs(float(value)) <= tolerance
    if is_zero:
        return Verdict("satisfied", f"compact ({est.status}): limit vanishes", evidence=est)
    return Verdict("violated", f"not compact ({est.status}): limit {value} is nonzero",
                   evidence=est)


def linf_source_autocompact_check(p, matrix, target, *,
                                  trend_window=DEFAULT_TREND_WINDOW,
                                  tolerance=None) -> Verdict:
    """Consistency check: membership of a map out of the bounded-sequence
    source space into a null or convergent target forces compactness.

    Applicable only when the classification is decisively satisfied; a
    satisfied classification paired with a non-compact verdict is an internal
    inconsistency (a bug or a tail misdeclaration), reported loudly.
    """
    check_params(p)
    if target not in ("c0", "c"):
        raise DimensionError(f"target must be c0 or c, got {target!r}")
    report = classify_map(p, matrix, "l_inf", target, trend_window=trend_window,
                          tolerance=tolerance)
    if report.overall.status != "satisfied":
        return Verdict("indeterminate",
                       f"membership precondition not established "
                       f"({report.overall.status}); check not applicable",
                       evidence=report)
    verdict = compactness_verdict(p, matrix, target, trend_window=trend_window,
                                  tolerance=tolerance)
    if verdict.status == "satisfied":
        return Verdict("satisfied", "consistent-compact",
                       evidence={"classification": report, "compactness": verdict})
    raise InconsistencyError(
        "membership is satisfied but the compactness verdict is "
        f"{verdict.status}: {verdict.detail}")


__all__ = [
    "AssociateMatrix", "ChiEstimate", "TARGETS",
    "associate_matrix", "supplied_associate",
    "operator_norm", "chi_norm", "compactness_verdict",
    "linf_source_autocompact_check",
]
