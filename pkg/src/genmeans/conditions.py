"""Matrix-class condition catalog and source/target classification.

The catalog holds two families.  Ids 4.4-4.11 are the classical conditions
on a raw infinite matrix that characterize maps between the bounded,
convergent and null sequence spaces.  Ids 4.13-4.25 are the same conditions
transported through the mean-difference coordinate change: they constrain
the associate rows R_k(A_n) and the per-row tail-sum triangles.  Every id
maps to exactly one evaluator and the table is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, ParameterError
from .limits import (
    STATUS_EXACT,
    STATUS_INDET,
    STATUS_TREND,
    TREND_EXACT,
    TREND_SHORT,
    DEFAULT_TREND_WINDOW,
    LimitEstimate,
    Verdict,
    analyze_tail,
    column_limits,
    column_value,
    extended_rows,
    limit_of_rows,
    row_abs_sum,
    row_sum,
    subset_column_sup,
    sup_of_rows,
)
from .scalars import DEFAULT_TOLERANCE
from .triangle import (
    STRUCTURAL_TAIL,
    UNKNOWN_TAIL,
    ZERO_TAIL,
    MatrixWindow,
    SequenceWindow,
    as_window,
)
from .duality import associate_row, tail_sum_matrix
from .operators import check_params

SPACES = ("c0", "c", "l_inf")

RAW_CONDITION_IDS = ("4.4", "4.5", "4.6", "4.7", "4.8", "4.9", "4.10", "4.11")
TRANSFORMED_CONDITION_IDS = ("4.13", "4.14", "4.15", "4.16", "4.17", "4.18",
                             "4.19", "4.20", "4.21", "4.22", "4.23", "4.24", "4.25")
CONDITION_IDS = RAW_CONDITION_IDS + TRANSFORMED_CONDITION_IDS

CONDITION_SUMMARY = {
    "4.4": "sup over finite column sets of the column-group absolute row totals is finite",
    "4.5": "row absolute sums are uniformly bounded",
    "4.6": "row absolute sums vanish",
    "4.7": "every column vanishes",
    "4.8": "signed row sums vanish",
    "4.9": "every column converges",
    "4.10": "rows converge absolutely to the column limits",
    "4.11": "signed row sums converge",
    "4.13": "associate-row absolute sums are uniformly bounded",
    "4.14": "every associate-row column vanishes",
    "4.15": "tail-sum rows are uniformly summable, per source row",
    "4.16": "tail sums vanish columnwise, per source row",
    "4.17": "every associate-row column converges",
    "4.18": "associate-row absolute sums vanish",
    "4.19": "absolute tail-sum rows vanish, per source row",
    "4.20": "associate rows converge absolutely to the column limits",
    "4.21": "tail sums converge columnwise, per source row",
    "4.22": "total tail sums converge, per source row",
    "4.23": "associate row totals minus their stable tail sums vanish",
    "4.24": "associate row totals minus their stable tail sums stay bounded",
    "4.25": "associate row totals minus their stable tail sums converge",
}

# predicate each estimate is tested against
_FINITE = "finite"
_ZERO = "zero"
_EXISTS = "exists"

CONDITION_PREDICATE = {
    "4.4": _FINITE, "4.5": _FINITE, "4.6": _ZERO, "4.7": _ZERO,
    "4.8": _ZERO, "4.9": _EXISTS, "4.10": _ZERO, "4.11": _EXISTS,
    "4.13": _FINITE, "4.14": _ZERO, "4.15": _FINITE, "4.16": _ZERO,
    "4.17": _EXISTS, "4.18": _ZERO, "4.19": _ZERO, "4.20": _ZERO,
    "4.21": _EXISTS, "4.22": _EXISTS, "4.23": _ZERO, "4.24": _FINITE,
    "4.25": _EXISTS,
}

# condition sets per (source, target) pair
REQUIRED_CONDITIONS = {
    ("c0", "c0"): ("4.13", "4.14", "4.15", "4.16"),
    ("c0", "c"): ("4.13", "4.15", "4.16", "4.17"),
    ("c0", "l_inf"): ("4.13", "4.15", "4.16"),
    ("l_inf", "c0"): ("4.18", "4.19"),
    ("l_inf", "c"): ("4.13", "4.17", "4.19", "4.20"),
    ("l_inf", "l_inf"): ("4.13", "4.19"),
    ("c", "c0"): ("4.13", "4.14", "4.15", "4.21", "4.22", "4.23"),
    ("c", "c"): ("4.13", "4.15", "4.17", "4.21", "4.22", "4.25"),
    ("c", "l_inf"): ("4.13", "4.15", "4.21", "4.22", "4.24"),
}

SHIFTED_MEMBERSHIP_NOTE = (
    "conditions 4.23-4.25 are read as membership of the scalar sequence "
    "n -> (sum_k R_k(A_n)) - gamma_n in the stated space")


def _window_rows_as_sequences(window):
    return [SequenceWindow(row, ZERO_TAIL) for row in window.rows]


def transformed_rows(p, matrix) -> MatrixWindow:
    """The matrix with rows R(A_n): each source row re-expressed against the
    inverse columns.  Requires complete (zero-tail) rows; the row tail in the
    n direction propagates, with a derived generator for structural tails."""
    check_params(p)
    window = as_window(matrix)
    rows = tuple(tuple(associate_row(p, seq).values)
                 for seq in _window_rows_as_sequences(window))
    row_fn = None
    capacity = window.capacity
    if window.row_tail == STRUCTURAL_TAIL and window.row_fn is not None:
        caps = [c for c in (window.capacity, p.capacity) if c is not None]
        capacity = min(caps) if caps else None

        def row_fn(n):
            src = window.row(n)
            if src is None:
                raise DimensionError(f"cannot generate source row {n}")
            return associate_row(p, SequenceWindow(src, ZERO_TAIL)).values

    return MatrixWindow(rows, window.row_tail, row_fn, capacity)


@dataclass(frozen=True)
class TailSumFamily:
    """Per-source-row tail-sum triangles plus their stable total tail sums."""

    per_row: tuple
    gammas: tuple   # one LimitEstimate per source row


def tail_sum_family(p, matrix) -> TailSumFamily:
    check_params(p)
    window = as_window(matrix)
    mats = []
    gammas = []
    for seq in _window_rows_as_sequences(window):
        W = tail_sum_matrix(p, seq)
        mats.append(W)
        trace = tuple(sum(W.rows[cut]) for cut in range(W.order))
        # zero-tail source rows force every tail sum to vanish past the support
        gammas.append(LimitEstimate("lim", 0, STATUS_EXACT, TREND_EXACT,
                                    tuple(range(W.order)), trace))
    return TailSumFamily(tuple(mats), tuple(gammas))


def _shifted_abs_limit(window, trend_window, tolerance):
    """lim_n sum_k |a_nk - alpha_k| with alpha the column limits (padded by
    zeros beyond their computed width)."""
    if window.row_tail == ZERO_TAIL:
        pairs = extended_rows(window, minimum=len(window.rows))
        trace = tuple(row_abs_sum(row) for _, row in pairs)
        return LimitEstimate("lim", 0, STATUS_EXACT, TREND_EXACT,
                             tuple(n for n, _ in pairs), trace)
    cols = column_limits(window, trend_window=trend_window, tolerance=tolerance)
    if cols.status == STATUS_INDET or cols.value is None:
        return LimitEstimate("lim", None, STATUS_INDET, cols.trend,
                             note="column limits unresolved")
    alphas = cols.value
    pairs = extended_rows(window, minimum=len(window.rows))
    trace = []
    for _, row in pairs:
        total = 0
        for k in range(max(len(row), len(alphas))):
            a = alphas[k] if k < len(alphas) else 0
            total += abs(column_value(row, k) - a)
        trace.append(total)
    ns = tuple(n for n, _ in pairs)
    status, trend, value = analyze_tail(ns, tuple(trace), trend_window, tolerance)
    return LimitEstimate("lim", value, status, trend, ns, tuple(trace))


def _per_row_tail_condition(p, window, cond, trend_window, tolerance):
    """Conditions quantified per source row over its tail-sum triangle.

    Each source row is a finite support, so its tail-sum triangle vanishes
    past the support: per-row limits are exact.  The universal quantifier
    over rows is certified by the row-tail declaration (zero and structural
    tails generate finitely supported rows; unknown tails cannot certify)."""
    if window.row_tail == UNKNOWN_TAIL:
        return LimitEstimate("lim" if cond != "4.15" else "sup", None, STATUS_INDET,
                             TREND_SHORT,
                             note="row tail undeclared; per-row conditions not certifiable")
    family = tail_sum_family(p, window)
    per_row_values = []
    for W in family.per_row:
        if cond == "4.15":
            per_row_values.append(max((sum(abs(v) for v in row) for row in W.rows), default=0))
        elif cond == "4.16":
            per_row_values.append(0)   # exact columnwise limit past the support
        elif cond == "4.19":
            per_row_values.append(0)   # exact absolute-row limit past the support
        elif cond == "4.21":
            per_row_values.append(0)   # columnwise limits exist (eventually zero)
        else:  # 4.22: total tail sums converge
            per_row_values.append(0)
    kind = "sup" if cond == "4.15" else ("exists" if cond in ("4.21", "4.22") else "lim")
    value = max(per_row_values, default=0) if cond == "4.15" else 0
    return LimitEstimate(kind, value, STATUS_EXACT, TREND_EXACT,
                         tuple(range(len(per_row_values))), tuple(per_row_values),
                         note="per-row quantities are finite computations on zero-tail rows")


def _shifted_membership(p, window, cond, trend_window, tolerance):
    """Conditions 4.23-4.25 on sigma_n = (sum_k R_k(A_n)) - gamma_n."""
    if window.row_tail == UNKNOWN_TAIL:
        return LimitEstimate("lim", None, STATUS_INDET, TREND_SHORT,
                             note="row tail undeclared; " + SHIFTED_MEMBERSHIP_NOTE)
    assoc = transformed_rows(p, window)
    family = tail_sum_family(p, window)
    sigma = []
    for i, row in enumerate(assoc.rows):
        gamma = family.gammas[i].value
        sigma.append(row_sum(row) - gamma)
    ns = tuple(range(len(sigma)))
    if window.row_tail == ZERO_TAIL:
        # past the stored rows everything is zero: sigma is eventually zero
        if cond == "4.23":
            return LimitEstimate("lim", 0, STATUS_EXACT, TREND_EXACT, ns, tuple(sigma),
                                 note=SHIFTED_MEMBERSHIP_NOTE)
        if cond == "4.24":
            value = max((abs(v) for v in sigma), default=0)
            return LimitEstimate("sup", value, STATUS_EXACT, TREND_EXACT, ns, tuple(sigma),
                                 note=SHIFTED_MEMBERSHIP_NOTE)
        return LimitEstimate("exists", 0, STATUS_EXACT, TREND_EXACT, ns, tuple(sigma),
                             note=SHIFTED_MEMBERSHIP_NOTE)
    # structural: extend sigma through the generators and classify
    pairs = extended_rows(assoc, minimum=len(assoc.rows))
    values = tuple(row_sum(row) for _, row in pairs)   # gamma_n = 0 on finite supports
    ns = tuple(n for n, _ in pairs)
    if cond == "4.24":
        trace = tuple(abs(v) for v in values)
        status, trend, _ = analyze_tail(ns, trace, trend_window, tolerance)
        value = max(trace, default=0)
        bounded = status == STATUS_TREND
        return LimitEstimate("sup", value, STATUS_TREND if bounded else STATUS_INDET,
                             trend, ns, trace, note=SHIFTED_MEMBERSHIP_NOTE)
    status, trend, value = analyze_tail(ns, values, trend_window, tolerance)
    kind = "lim" if cond == "4.23" else "exists"
    return LimitEstimate(kind, value, status, trend, ns, values,
                         note=SHIFTED_MEMBERSHIP_NOTE)


def eval_condition(cond, matrix, params=None, *, trend_window=DEFAULT_TREND_WINDOW,
                   tolerance=DEFAULT_TOLERANCE) -> LimitEstimate:
    """Evaluate one catalog condition on a matrix window.

    Ids 4.4-4.11 read the window directly.  Ids 4.13-4.25 are conditions on
    the transformed objects and need the space parameters.
    """
    if cond not in CONDITION_IDS:
        raise DimensionError(f"unknown condition id {cond!r}")
    window = as_window(matrix)

    if cond in RAW_CONDITION_IDS:
        if cond == "4.4":
            return subset_column_sup(window, trend_window=trend_window, tolerance=tolerance)
        if cond == "4.5":
            return sup_of_rows(window, row_abs_sum, trend_window=trend_window,
                               tolerance=tolerance)
        if cond == "4.6":
            return limit_of_rows(window, row_abs_sum, trend_window=trend_window,
                                 tolerance=tolerance)
        if cond == "4.7":
            return column_limits(window, trend_window=trend_window, tolerance=tolerance)
        if cond == "4.8":
            return limit_of_rows(window, row_sum, trend_window=trend_window,
                                 tolerance=tolerance)
        if cond == "4.9":
            return column_limits(window, kind="exists", trend_window=trend_window,
                                 tolerance=tolerance)
        if cond == "4.10":
            return _shifted_abs_limit(window, trend_window, tolerance)
        return limit_of_rows(window, row_sum, kind="exists", trend_window=trend_window,
                             tolerance=tolerance)

    if params is None:
        raise ParameterError([f"condition {cond} needs the space parameters"])
    check_params(params)

    if cond in ("4.13", "4.14", "4.17", "4.18", "4.20"):
        assoc = transformed_rows(params, window)
        if cond == "4.13":
            return sup_of_rows(assoc, row_abs_sum, trend_window=trend_window,
                               tolerance=tolerance)
        if cond == "4.14":
            return column_limits(assoc, trend_window=trend_window, tolerance=tolerance)
        if cond == "4.17":
            return column_limits(assoc, kind="exists", trend_window=trend_window,
                                 tolerance=tolerance)
        if cond == "4.18":
            return limit_of_rows(assoc, row_abs_sum, trend_window=trend_window,
                                 tolerance=tolerance)
        return _shifted_abs_limit(assoc, trend_window, tolerance)

    if cond in ("4.15", "4.16", "4.19", "4.21", "4.22"):
        return _per_row_tail_condition(params, window, cond, trend_window, tolerance)

    return _shifted_membership(params, window, cond, trend_window, tolerance)


def condition_verdict(cond, estimate, tolerance=DEFAULT_TOLERANCE) -> Verdict:
    """Map an estimate to satisfied / violated / indeterminate for its predicate."""
    predicate = CONDITION_PREDICATE[cond]
    if estimate.status == STATUS_INDET:
        return Verdict("indeterminate",
                       f"{cond}: {estimate.note or 'tail does not decide the limit'}",
                       evidence=estimate)
    if predicate == _FINITE:
        return Verdict("satisfied", f"{cond}: bounded ({estimate.status})", evidence=estimate)
    if predicate == _EXISTS:
        return Verdict("satisfied", f"{cond}: limit exists ({estimate.status})",
                       evidence=estimate)
    # zero predicate
    value = estimate.value
    if isinstance(value, tuple):
        is_zero = all(_near_zero(v, estimate.status, tolerance) for v in value)
    else:
        is_zero = _near_zero(value, estimate.status, tolerance)
    if is_zero:
        return Verdict("satisfied", f"{cond}: limit is zero ({estimate.status})",
                       evidence=estimate)
    return Verdict("violated", f"{cond}: limit {value} is nonzero ({estimate.status})",
                   evidence=estimate)


def _near_zero(value, status, tolerance):
    if value is None:
        return False
    if status == STATUS_EXACT:
        return value == 0
    return abs(float(value)) <= tolerance


@dataclass(frozen=True)
class ClassReport:
    """Outcome of a source/target classification: per-condition estimates and
    verdicts plus the aggregated overall verdict."""

    source: str
    target: str
    estimates: dict
    verdicts: dict
    overall: Verdict
    notes: tuple = ()


def classify_map(p, matrix, source, target, *, trend_window=DEFAULT_TREND_WINDOW,
                 tolerance=None) -> ClassReport:
    """Evaluate the exact condition set for the (source, target) pair and aggregate.

    Overall is satisfied only when every required condition is satisfied at a
    decisive status; any indeterminate condition forces an indeterminate
    overall verdict.
    """
    check_params(p)
    if source not in SPACES or target not in SPACES:
        raise DimensionError(f"source and target must be in {SPACES}")
    tolerance = p.backend.tolerance if tolerance is None else tolerance
    required = REQUIRED_CONDITIONS[(source, target)]
    window = as_window(matrix)
    estimates = {}
    verdicts = {}
    notes = []
    for cond in required:
        est = eval_condition(cond, window, p, trend_window=trend_window, tolerance=tolerance)
        estimates[cond] = est
        verdicts[cond] = condition_verdict(cond, est, tolerance)
        if cond in ("4.23", "4.24", "4.25"):
            notes.append(SHIFTED_MEMBERSHIP_NOTE)
    summary = {cond: verdicts[cond].status for cond in required}
    if any(v.status == "violated" for v in verdicts.values()):
        overall = Verdict("violated",
                          "violated: " + ", ".join(c for c, v in verdicts.items()
                                                   if v.status == "violated"),
                          evidence=summary)
    elif any(v.status == "indeterminate" for v in verdicts.values()):
        overall = Verdict("indeterminate",
                          "indeterminate: " + ", ".join(c for c, v in verdicts.items()
                                                        if v.status == "indeterminate"),
                          evidence=summary)
    else:
        overall = Verdict("satisfied", f"all of {', '.join(required)} hold",
                          evidence=summary)
    return ClassReport(source, target, estimates, verdicts, overall, tuple(dict.fromkeys(notes)))


__all__ = [
    "CONDITION_IDS", "RAW_CONDITION_IDS", "TRANSFORMED_CONDITION_IDS",
    "CONDITION_SUMMARY", "CONDITION_PREDICATE", "REQUIRED_CONDITIONS",
    "SHIFTED_MEMBERSHIP_NOTE", "SPACES",
    "eval_condition", "condition_verdict", "classify_map", "ClassReport",
    "transformed_rows", "tail_sum_family", "TailSumFamily",
]
