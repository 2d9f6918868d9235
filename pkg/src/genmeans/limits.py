"""Tail-aware estimation of sups, limits and limsups over declared-tail windows.

A quantity indexed by an infinite row index is *computed* only when the
declared tail turns it into a finite computation (status "exact").  A
structural tail lets us extend the window by the generating formula and
classify the observed trace (status "trend-converged" when the trace
resolves, "indeterminate" otherwise).  Unknown tails never produce a
decisive status.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scalars import DEFAULT_TOLERANCE, zero_like
from .triangle import STRUCTURAL_TAIL, UNKNOWN_TAIL, ZERO_TAIL, MatrixWindow

STATUS_EXACT = "exact"
STATUS_TREND = "trend-converged"
STATUS_INDET = "indeterminate"

# trace shapes: exact computations, settled windows, power-law decay to zero,
# unresolved monotone drift, persistent growth, no visible pattern, too short
TREND_EXACT = "exact"
TREND_CONVERGED = "converged"
TREND_DECAYING = "decaying"
TREND_DRIFTING = "drifting"
TREND_DIVERGING = "diverging"
TREND_OSCILLATING = "oscillating"
TREND_SHORT = "short"

DEFAULT_TREND_WINDOW = 8
EXTENSION_FACTOR = 4


@dataclass(frozen=True)
class LimitEstimate:
    """A numerically observed sup/lim/limsup with its window trace."""

    kind: str                     # "sup" | "lim" | "limsup" | "exists"
    value: object                 # scalar, (lower, upper) interval, tuple, or None
    status: str                   # exact | trend-converged | indeterminate
    trend: str = TREND_EXACT
    window: tuple = ()            # indices inspected
    trace: tuple = ()             # values at those indices
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    """satisfied | violated | indeterminate, with the trace that produced it."""

    status: str
    detail: str = ""
    evidence: object = None


def analyze_tail(indices, values, trend_window=DEFAULT_TREND_WINDOW, tolerance=DEFAULT_TOLERANCE):
    """Classify the tail of a finite trace.

    Returns (status, trend, value).  The ladder: settled window -> converged;
    stable second-difference acceleration -> converged to the accelerated
    value; positive monotone decay with a power-law log-log fit -> limit zero;
    otherwise drifting / diverging / oscillating at indeterminate status.
    """
    values = list(values)
    if len(values) < 3:
        return STATUS_INDET, TREND_SHORT, None
    w = min(max(trend_window, 3), len(values))
    last = values[-w:]
    floats = [float(v) for v in last]
    if max(floats) - min(floats) <= tolerance:
        return STATUS_TREND, TREND_CONVERGED, values[-1]

    # second-difference (Aitken) acceleration over the trailing window
    accelerated = []
    for i in range(len(floats) - 2):
        a, b, c = floats[i], floats[i + 1], floats[i + 2]
        denom = (c - b) - (b - a)
        if abs(denom) > 1e-300:
            accelerated.append(c - (c - b) ** 2 / denom)
    if len(accelerated) >= 2:
        scale = max(1.0, max(abs(v) for v in floats))
        if abs(accelerated[-1] - accelerated[-2]) <= max(tolerance, 1e-9 * scale):
            return STATUS_TREND, TREND_CONVERGED, accelerated[-1]

    full = [float(v) for v in values]
    nonincreasing = all(full[i + 1] <= full[i] for i in range(len(full) - 1))
    nondecreasing = all(full[i + 1] >= full[i] for i in range(len(full) - 1))

    if nonincreasing and full[-1] >= 0 and all(v > 0 for v in full):
        # power-law decay check on the trailing half of the trace
        half = len(full) // 2
        xs = [math.log(indices[i] + 1) for i in range(half, len(full))]
        ys = [math.log(full[i]) for i in range(half, len(full))]
        if len(xs) >= 4 and max(xs) > min(xs):
            xbar = sum(xs) / len(xs)
            ybar = sum(ys) / len(ys)
            sxx = sum((x - xbar) ** 2 for x in xs)
            slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
            resid = [y - (ybar + slope * (x - xbar)) for x, y in zip(xs, ys)]
            rms = math.sqrt(sum(e * e for e in resid) / len(resid))
            spread = max(ys) - min(ys)
            if slope <= -0.25 and rms <= 0.05 * max(spread, 1e-9):
                return STATUS_TREND, TREND_DECAYING, zero_like(values[-1])
        if full[0] > 0 and full[-1] <= 0.02 * full[0]:
            return STATUS_TREND, TREND_DECAYING, zero_like(values[-1])
        return STATUS_INDET, TREND_DRIFTING, None
    if nondecreasing:
        return STATUS_INDET, TREND_DIVERGING, None
    return STATUS_INDET, TREND_OSCILLATING, None


def extended_rows(window: MatrixWindow, factor=EXTENSION_FACTOR, minimum=0):
    """(index, row) pairs over the stored block plus whatever the tail declaration
    allows: zero rows extend freely, structural rows consult the generator up
    to ``factor`` times the stored count (bounded by capacity)."""
    stored = len(window.rows)
    target = max(minimum, factor * max(stored, 1))
    if window.row_tail == UNKNOWN_TAIL:
        target = stored
    elif window.row_tail == STRUCTURAL_TAIL:
        if window.row_fn is None:
            target = stored
        elif window.capacity is not None:
            target = min(target, window.capacity)
    out = []
    for n in range(target):
        row = window.row(n)
        if row is None:
            break
        out.append((n, row))
    return out


def row_abs_sum(row):
    return sum((abs(v) for v in row), 0)


def row_sum(row):
    return sum(row, 0)


def column_value(row, k):
    return row[k] if k < len(row) else 0


def sup_of_rows(window, rowstat, kind="sup",
                trend_window=DEFAULT_TREND_WINDOW, tolerance=DEFAULT_TOLERANCE):
    """sup_n rowstat(row_n) over the infinite row index."""
    pairs = extended_rows(window, minimum=len(window.rows))
    trace = tuple(rowstat(row) for _, row in pairs)
    ns = tuple(n for n, _ in pairs)
    if not trace:
        if window.row_tail == ZERO_TAIL:
            return LimitEstimate(kind, 0, STATUS_EXACT)
        return LimitEstimate(kind, None, STATUS_INDET, TREND_SHORT, note="no rows")
    observed = max(trace)
    if window.row_tail == ZERO_TAIL:
        value = max(observed, rowstat(()))
        return LimitEstimate(kind, value, STATUS_EXACT, TREND_EXACT, ns, trace)
    if window.row_tail == STRUCTURAL_TAIL and len(trace) > len(window.rows):
        status, trend, _limit = analyze_tail(ns, trace, trend_window, tolerance)
        if status != STATUS_INDET or trend == TREND_DRIFTING:
            # bounded tail: the observed max dominates
            return LimitEstimate(kind, observed, STATUS_TREND, trend, ns, trace)
        return LimitEstimate(kind, observed, STATUS_INDET, trend, ns, trace,
                             note="tail trace unresolved; observed max is a lower bound")
    return LimitEstimate(kind, observed, STATUS_INDET, TREND_SHORT, ns, trace,
                         note="tail undeclared; observed max is a lower bound")


def limit_of_rows(window, rowstat, kind="lim",
                  trend_window=DEFAULT_TREND_WINDOW, tolerance=DEFAULT_TOLERANCE):
    """lim_n rowstat(row_n); exact for zero tails (value at the empty row)."""
    pairs = extended_rows(window, minimum=len(window.rows))
    trace = tuple(rowstat(row) for _, row in pairs)
    ns = tuple(n for n, _ in pairs)
    if window.row_tail == ZERO_TAIL:
        return LimitEstimate(kind, rowstat(()), STATUS_EXACT, TREND_EXACT, ns, trace)
    if window.row_tail == STRUCTURAL_TAIL and len(trace) > len(window.rows):
        status, trend, value = analyze_tail(ns, trace, trend_window, tolerance)
        return LimitEstimate(kind, value, status, trend, ns, trace)
    return LimitEstimate(kind, None, STATUS_INDET, TREND_SHORT, ns, trace,
                         note="tail undeclared; limit not computable from the window")


def limsup_of_rows(window, rowstat, trend_window=DEFAULT_TREND_WINDOW,
                   tolerance=DEFAULT_TOLERANCE):
    """limsup_n rowstat(row_n): exact 0 past a zero tail, else the windowed
    maximum of the extended trace with a trend classification."""
    pairs = extended_rows(window, minimum=len(window.rows))
    trace = tuple(rowstat(row) for _, row in pairs)
    ns = tuple(n for n, _ in pairs)
    if window.row_tail == ZERO_TAIL:
        return LimitEstimate("limsup", rowstat(()), STATUS_EXACT, TREND_EXACT, ns, trace)
    if window.row_tail == STRUCTURAL_TAIL and len(trace) > len(window.rows):
        status, trend, value = analyze_tail(ns, trace, trend_window, tolerance)
        w = min(max(trend_window, 3), len(trace))
        windowed_max = max(trace[-w:])
        if status == STATUS_TREND:
            estimate = value if trend == TREND_DECAYING else windowed_max
            return LimitEstimate("limsup", estimate, STATUS_TREND, trend, ns, trace)
        return LimitEstimate("limsup", windowed_max, STATUS_INDET, trend, ns, trace,
                             note="tail trace unresolved; windowed max reported")
    w = min(max(trend_window, 3), len(trace))
    return LimitEstimate("limsup", max(trace[-w:]), STATUS_INDET, TREND_SHORT, ns, trace,
                         note=_no_extension_note(window))


def _no_extension_note(window):
    if window.row_tail == STRUCTURAL_TAIL:
        return "structural tail has no generator available; stored window only"
    return "tail undeclared; stored window only bounds the quantity"


def column_limits(window, kind="lim", trend_window=DEFAULT_TREND_WINDOW,
                  tolerance=DEFAULT_TOLERANCE):
    """Per-column limits lim_n a_nk, aggregated over k < width."""
    pairs = extended_rows(window, minimum=len(window.rows))
    width = window.width
    ns = tuple(n for n, _ in pairs)
    if window.row_tail == ZERO_TAIL:
        values = tuple(0 for _ in range(width))
        return LimitEstimate(kind, values, STATUS_EXACT, TREND_EXACT, ns)
    if window.row_tail == STRUCTURAL_TAIL and len(pairs) > len(window.rows):
        values = []
        worst = STATUS_EXACT
        trends = []
        for k in range(width):
            trace = tuple(column_value(row, k) for _, row in pairs)
            status, trend, value = analyze_tail(ns, trace, trend_window, tolerance)
            values.append(value)
            trends.append(trend)
            worst = _worse_status(worst, status)
        overall = STATUS_TREND if worst == STATUS_EXACT else worst
        return LimitEstimate(kind, tuple(values), overall,
                             trends[0] if len(set(trends)) == 1 else TREND_OSCILLATING, ns)
    return LimitEstimate(kind, None, STATUS_INDET, TREND_SHORT, ns,
                         note="tail undeclared; column limits not computable")


def _worse_status(a, b):
    rank = {STATUS_EXACT: 0, STATUS_TREND: 1, STATUS_INDET: 2}
    return a if rank[a] >= rank[b] else b


def subset_column_sup(window, max_exact_columns=12,
                      trend_window=DEFAULT_TREND_WINDOW, tolerance=DEFAULT_TOLERANCE):
    """sup over finite column sets K of sum_n |sum_{k in K} a_nk|.

    Brute-forced over all nonempty subsets of the nonzero columns when they
    number at most ``max_exact_columns`` (2^12 subsets); otherwise reported as
    the exact bound pair [greedy sign-aligned lower, absolute-total upper].
    Exact only for zero row tails: with any other tail the inner series over
    n is not a finite computation.
    """
    pairs = extended_rows(window, minimum=len(window.rows))
    rows = [row for _, row in pairs]
    ns = tuple(n for n, _ in pairs)
    width = max((len(r) for r in rows), default=0)
    nonzero_cols = [k for k in range(width) if any(column_value(r, k) != 0 for r in rows)]
    exact_tail = window.row_tail == ZERO_TAIL

    if not nonzero_cols:
        status = STATUS_EXACT if exact_tail else STATUS_INDET
        return LimitEstimate("sup", 0, status, TREND_EXACT if exact_tail else TREND_SHORT, ns)

    if len(nonzero_cols) <= max_exact_columns:
        best = None
        best_set = ()
        for mask in range(1, 1 << len(nonzero_cols)):
            chosen = [nonzero_cols[i] for i in range(len(nonzero_cols)) if mask >> i & 1]
            total = sum(abs(sum(column_value(r, k) for k in chosen)) for r in rows)
            if best is None or total > best:
                best, best_set = total, tuple(chosen)
        if exact_tail:
            return LimitEstimate("sup", best, STATUS_EXACT, TREND_EXACT, ns,
                                 note=f"attained at columns {best_set}")
        return LimitEstimate("sup", best, STATUS_INDET, TREND_SHORT, ns,
                             note="finite-window value; series over rows not certified by tail")

    # bound pair: greedy sign-aligned lower, triangle-inequality upper
    def objective(chosen):
        return sum(abs(sum(column_value(r, k) for k in chosen)) for r in rows)

    chosen = [max(nonzero_cols, key=lambda k: sum(abs(column_value(r, k)) for r in rows))]
    current = objective(chosen)
    improved = True
    while improved:
        improved = False
        for k in nonzero_cols:
            if k in chosen:
                continue
            cand = objective(chosen + [k])
            if cand > current:
                chosen.append(k)
                current = cand
                improved = True
    upper = sum(row_abs_sum(r) for r in rows)
    status = STATUS_EXACT if exact_tail else STATUS_INDET
    return LimitEstimate("sup", (current, upper), status,
                         TREND_EXACT if exact_tail else TREND_SHORT, ns,
                         note=f"bound pair; exhaustive search skipped beyond 2^{max_exact_columns} subsets")
