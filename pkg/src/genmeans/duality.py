"""Schauder basis synthesis and the alpha/beta/gamma-dual associate objects.

The coordinate basis of the transformed space pulls back through the inverse
of the composite operator: basis vector j is column j of that inverse, and
the extra vector indexed -1 (for the convergent-sequence space) is its row
sums.  The dual machinery revolves around the associate row R_k(a): the
source row re-expressed against the inverse columns.  Every dual/associate
input must declare a zero tail so each series collapses to a finite sum;
anything else is rejected rather than extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionError, InconsistencyError
from .limits import Verdict, subset_column_sup
from .triangle import (
    UNKNOWN_TAIL,
    ZERO_TAIL,
    SequenceWindow,
    TriangleMatrix,
    binom,
    seq_sub,
)
from .operators import (
    NormResult,
    _coeffs,
    check_params,
    exact_lift,
    lift_window,
    lower_window,
    mean_difference_inverse,
    space_norm,
    transform,
)


@dataclass(frozen=True)
class BasisVector:
    """Basis element b^(j); transform(p, b^(j)) is the j-th coordinate vector
    (or the all-ones sequence for the special index j = -1)."""

    index: int
    values: SequenceWindow


def basis_vector(p, j) -> BasisVector:
    check_params(p)
    if j >= p.order or j < -1:
        raise DimensionError(f"basis index {j} outside [-1, {p.order})")
    if p.backend.mode == "float":
        exact = basis_vector(exact_lift(p), j)
        return BasisVector(j, lower_window(exact.values))
    S = mean_difference_inverse(p)
    if j >= 0:
        vals = tuple(S.entry(n, j) for n in range(p.order))
    else:
        vals = tuple(sum(S.rows[n]) for n in range(p.order))
    return BasisVector(j, SequenceWindow(vals, UNKNOWN_TAIL))


@dataclass(frozen=True)
class Reconstruction:
    partial: SequenceWindow
    residual: NormResult
    coefficients: tuple
    limit_proxy: object = None       # proxy for the transform limit (space "c" only)
    limit_is_proxy: bool = False     # True: taken from the last window coordinate


def reconstruct(p, x, partial_order, space="c0") -> Reconstruction:
    """Partial basis expansion of x up to index ``partial_order`` and its residual norm.

    For the convergent-sequence space the expansion needs the limit of the
    transformed coordinates, which a finite window cannot observe; the last
    coordinate stands in for it and the result is flagged accordingly.
    """
    check_params(p)
    if partial_order >= p.order:
        raise DimensionError(f"partial-sum order {partial_order} must be below {p.order}")
    if space not in ("c0", "c"):
        raise DimensionError(f"reconstruction space must be c0 or c, got {space!r}")
    if p.backend.mode == "float":
        exact = reconstruct(exact_lift(p), lift_window(x), partial_order, space)
        residual = NormResult(float(exact.residual.value), exact.residual.arg_index,
                              exact.residual.exact)
        proxy = None if exact.limit_proxy is None else float(exact.limit_proxy)
        return Reconstruction(lower_window(exact.partial), residual,
                              tuple(float(c) for c in exact.coefficients),
                              proxy, exact.limit_is_proxy)
    y = transform(p, x)
    S = mean_difference_inverse(p)
    if space == "c0":
        coeffs = tuple(y[j] for j in range(partial_order + 1))
        vals = [sum(S.entry(n, j) * coeffs[j] for j in range(partial_order + 1))
                for n in range(p.order)]
        partial = SequenceWindow(vals, UNKNOWN_TAIL)
        residual = space_norm(p, seq_sub(x, partial))
        return Reconstruction(partial, residual, coeffs)
    ell = y[p.order - 1]
    coeffs = tuple(y[j] - ell for j in range(partial_order + 1))
    vals = []
    for n in range(p.order):
        acc = ell * sum(S.rows[n])
        for j in range(partial_order + 1):
            acc += S.entry(n, j) * coeffs[j]
        vals.append(acc)
    partial = SequenceWindow(vals, UNKNOWN_TAIL)
    residual = space_norm(p, seq_sub(x, partial))
    return Reconstruction(partial, residual, coeffs, limit_proxy=ell, limit_is_proxy=True)


@dataclass(frozen=True)
class AssociateRow:
    """R_k(a) = sum_{j>=k} a_j s_{jk}: the source row against the inverse columns."""

    source: SequenceWindow
    values: tuple

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _inverse_entries(p, order):
    """Inverse triangle covering at least ``order`` rows.

    Triangular inversion is local, so rows of the capacity-sized build agree
    with any smaller build; one cached matrix serves every window size.
    """
    if order <= p.order:
        return mean_difference_inverse(p)
    return mean_difference_inverse(p, p.capacity)


def _associate_direct(p, a, order):
    S = _inverse_entries(p, order)
    jmax = a.support - 1
    out = []
    for k in range(order):
        acc = 0
        for j in range(k, jmax + 1):
            if a[j] != 0:
                acc += a[j] * S.entry(j, k)
        out.append(acc)
    return out


def _associate_closed(p, a, order):
    """The three-group closed form of R_k(a), truncated at the support of a."""
    D = _coeffs(p.s, p.capacity)
    m = p.m
    jmax = a.support - 1
    out = []
    for k in range(order):
        if k > jmax:
            out.append(0)
            continue
        total = a[k] / (p.s[0] * p.t[k])
        for i in (k, k + 1):
            inner = 0
            for j in range(k + 1, jmax + 1):
                inner += binom(m + j - i - 1, j - i) * a[j]
            if inner != 0:
                sign = -1 if (i - k) % 2 else 1
                total += sign * D[i - k] / p.t[i] * inner
        for l in range(2, jmax - k + 1):
            inner = 0
            for j in range(k + l, jmax + 1):
                inner += binom(m + j - k - l - 1, j - k - l) * a[j]
            if inner != 0:
                sign = -1 if l % 2 else 1
                total += sign * D[l] / p.t[l + k] * inner
        out.append(total * p.r[k])
    return out


def associate_row(p, a, order=None) -> AssociateRow:
    """R_k(a) computed by the defining sum and by its closed form; the two
    routes must agree (backend equality) or the call fails loudly."""
    check_params(p)
    a.require_zero_tail("dual/associate input")
    order = len(a) if order is None else order
    if p.backend.mode == "float":
        exact = associate_row(exact_lift(p), lift_window(a), order)
        return AssociateRow(a, tuple(float(v) for v in exact.values))
    direct = _associate_direct(p, a, order)
    closed = _associate_closed(p, a, order)
    for k, (d, c) in enumerate(zip(direct, closed)):
        if not p.backend.eq(d, c):
            raise InconsistencyError(
                f"associate row routes disagree at k={k}: direct={d}, closed form={c}")
    return AssociateRow(a, tuple(direct))


@dataclass(frozen=True)
class TailSumMatrix:
    """Triangle of tail sums w_pk = sum_{j>=p} a_j s_{jk} for 0 <= k <= p.

    Rows vanish once the cut index p passes the support of a.
    """

    source: SequenceWindow
    rows: tuple

    def entry(self, row, k):
        r = self.rows[row]
        return r[k] if k < len(r) else 0

    @property
    def order(self):
        return len(self.rows)


def _tail_sum_direct(p, a, order):
    S = _inverse_entries(p, order)
    jmax = a.support - 1
    rows = []
    for cut in range(order):
        row = []
        for k in range(cut + 1):
            acc = 0
            for j in range(max(cut, k), jmax + 1):
                if a[j] != 0:
                    acc += a[j] * S.entry(j, k)
            row.append(acc)
        rows.append(tuple(row))
    return rows


def _tail_sum_closed(p, a, order):
    """Two-group closed form of w_pk, truncated at the support of a."""
    D = _coeffs(p.s, p.capacity)
    m = p.m
    jmax = a.support - 1
    rows = []
    for cut in range(order):
        row = []
        for k in range(cut + 1):
            total = 0
            for i in range(k, min(cut, jmax) + 1):
                inner = 0
                for j in range(max(cut, i), jmax + 1):
                    inner += binom(m + j - i - 1, j - i) * a[j]
                if inner != 0:
                    sign = -1 if (i - k) % 2 else 1
                    total += sign * D[i - k] / p.t[i] * inner
            for i in range(cut + 1, jmax + 1):
                inner = 0
                for j in range(i, jmax + 1):
                    inner += binom(m + j - i - 1, j - i) * a[j]
                if inner != 0:
                    sign = -1 if (i - k) % 2 else 1
                    total += sign * D[i - k] / p.t[i] * inner
            row.append(total * p.r[k])
        rows.append(tuple(row))
    return rows


def tail_sum_matrix(p, a, order=None) -> TailSumMatrix:
    """w_pk by the defining tail sum, cross-checked against the closed form."""
    check_params(p)
    a.require_zero_tail("dual/associate input")
    order = len(a) if order is None else order
    if p.backend.mode == "float":
        exact = tail_sum_matrix(exact_lift(p), lift_window(a), order)
        return TailSumMatrix(a, tuple(tuple(float(v) for v in row) for row in exact.rows))
    direct = _tail_sum_direct(p, a, order)
    closed = _tail_sum_closed(p, a, order)
    for cut, (drow, crow) in enumerate(zip(direct, closed)):
        for k, (d, c) in enumerate(zip(drow, crow)):
            if not p.backend.eq(d, c):
                raise InconsistencyError(
                    f"tail-sum routes disagree at (p={cut}, k={k}): direct={d}, closed form={c}")
    return TailSumMatrix(a, tuple(direct))


def alpha_dual_matrix(p, a) -> TriangleMatrix:
    """Row-scaled inverse: entry (n, j) = s_nj a_n, so that the coordinatewise
    products a_n x_n appear as the rows of this matrix applied to the
    transformed sequence."""
    check_params(p)
    if len(a) != p.order:
        raise DimensionError(f"sequence length {len(a)} does not match order {p.order}")
    tail = ZERO_TAIL if a.tail == ZERO_TAIL else UNKNOWN_TAIL
    if p.backend.mode == "float":
        exact = alpha_dual_matrix(exact_lift(p), lift_window(a))
        return TriangleMatrix(p.order, tuple(tuple(float(v) for v in row)
                                             for row in exact.rows), tail)
    S = mean_difference_inverse(p)
    rows = tuple(tuple(S.entry(n, j) * a[n] for j in range(n + 1)) for n in range(p.order))
    return TriangleMatrix(p.order, rows, tail)


def _gamma_entry_closed(p, a, D, l, n):
    m = p.m
    total = a[n] / (p.s[0] * p.t[n])
    for k in (n, n + 1):
        inner = 0
        for j in range(n + 1, l + 1):
            inner += binom(m + j - k - 1, j - k) * a[j]
        if inner != 0:
            sign = -1 if (k - n) % 2 else 1
            total += sign * D[k - n] / p.t[k] * inner
    for k in range(n + 2, l + 1):
        inner = 0
        for j in range(k, l + 1):
            inner += binom(m + j - k - 1, j - k) * a[j]
        if inner != 0:
            sign = -1 if (k - n) % 2 else 1
            total += sign * D[k - n] / p.t[k] * inner
    return total * p.r[n]


def gamma_dual_matrix(p, a, partial_order=None) -> TriangleMatrix:
    """Triangle E with (Ey)_l = sum_{n<=l} a_n x_n for linked x, y.

    Row l, column n holds the partial associate sum sum_{j=n}^{l} a_j s_jn;
    the bracketed closed form is evaluated as a cross-check.
    """
    check_params(p)
    L = p.order if partial_order is None else partial_order
    if L > p.order:
        raise DimensionError(f"partial-sum order {L} exceeds truncation order {p.order}")
    if len(a) < L:
        raise DimensionError(f"sequence length {len(a)} shorter than partial-sum order {L}")
    if p.backend.mode == "float":
        exact = gamma_dual_matrix(exact_lift(p), lift_window(a), L)
        return TriangleMatrix(L, tuple(tuple(float(v) for v in row) for row in exact.rows),
                              exact.tail)
    S = mean_difference_inverse(p)
    D = _coeffs(p.s, p.capacity)
    rows = []
    for l in range(L):
        row = []
        for n in range(l + 1):
            direct = sum(a[j] * S.entry(j, n) for j in range(n, l + 1))
            closed = _gamma_entry_closed(p, a, D, l, n)
            if not p.backend.eq(direct, closed):
                raise InconsistencyError(
                    f"partial-sum routes disagree at (l={l}, n={n}): "
                    f"direct={direct}, closed form={closed}")
            row.append(direct)
        rows.append(tuple(row))
    tail = ZERO_TAIL if a.tail == ZERO_TAIL else UNKNOWN_TAIL
    return TriangleMatrix(L, rows, tail)


# descriptive labels for the beta-dual membership conditions
BETA_SET_LABELS = {
    "B1": "associate row absolutely summable",
    "B2": "tail sums vanish columnwise",
    "B3": "tail-sum rows uniformly summable",
    "B4": "absolute tail-sum rows vanish",
    "B5": "tail sums converge columnwise",
    "B6": "total tail sums converge",
}

BETA_SETS_BY_SPACE = {
    "c0": ("B1", "B2", "B3"),
    "l_inf": ("B1", "B4"),
    "c": ("B1", "B3", "B5", "B6"),
}


def dual_membership(p, a, dual, space="c0") -> Verdict:
    """Membership of a zero-tail sequence in the alpha/beta/gamma dual.

    Zero tails make every limit eventually constant, so each verdict is
    exact; any other tail yields an indeterminate verdict with an
    explanation rather than a guess.
    """
    check_params(p)
    if dual not in ("alpha", "beta", "gamma"):
        raise DimensionError(f"dual must be alpha, beta or gamma, got {dual!r}")
    if space not in ("c0", "c", "l_inf"):
        raise DimensionError(f"space must be c0, c or l_inf, got {space!r}")
    if a.tail != ZERO_TAIL:
        return Verdict(
            "indeterminate",
            "input tail is undeclared; infinite-support membership is out of scope",
            evidence={"tail": a.tail})

    jmax = a.support - 1

    if dual == "alpha":
        C = alpha_dual_matrix(p, a)
        est = subset_column_sup(C.to_window(), tolerance=p.backend.tolerance)
        return Verdict("satisfied",
                       "finite column-subset sup on the coordinatewise-product matrix",
                       evidence={"subset_sup": est})

    if dual == "gamma":
        R = associate_row(p, a)
        E = gamma_dual_matrix(p, a)
        row_sums = [sum(abs(v) for v in E.rows[l]) for l in range(E.order)]
        # rows stabilize at the absolute associate total once l passes the support
        stabilized = sum(abs(v) for v in R.values)
        sup_trace = max(row_sums + [stabilized])
        return Verdict("satisfied",
                       "partial-sum rows have uniformly bounded absolute sums",
                       evidence={"row_sums": tuple(row_sums),
                                 "stabilized_row_sum": stabilized,
                                 "sup": sup_trace})

    # beta: evaluate the membership sets needed for the source space
    R = associate_row(p, a)
    W = tail_sum_matrix(p, a)
    sets = {}
    sets["B1"] = {"value": sum(abs(v) for v in R.values), "satisfied": True}
    sets["B2"] = {"vanish_from": jmax + 1, "satisfied": True}
    row_abs = [sum(abs(v) for v in row) for row in W.rows]
    sets["B3"] = {"sup": max(row_abs, default=0), "satisfied": True}
    sets["B4"] = {"vanish_from": jmax + 1, "satisfied": True}
    sets["B5"] = {"limits": tuple(0 for _ in range(len(a))), "satisfied": True}
    sets["B6"] = {"limit": 0, "satisfied": True}
    needed = BETA_SETS_BY_SPACE[space]
    ok = all(sets[name]["satisfied"] for name in needed)
    evidence = {name: {"label": BETA_SET_LABELS[name], **sets[name]} for name in needed}
    return Verdict("satisfied" if ok else "violated",
                   f"zero tail collapses every tail sum beyond index {jmax}",
                   evidence=evidence)


__all__ = [
    "BasisVector", "Reconstruction", "AssociateRow", "TailSumMatrix",
    "basis_vector", "reconstruct", "associate_row", "tail_sum_matrix",
    "alpha_dual_matrix", "gamma_dual_matrix", "dual_membership",
    "BETA_SET_LABELS", "BETA_SETS_BY_SPACE",
]
