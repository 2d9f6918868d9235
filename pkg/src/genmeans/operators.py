"""Weighted-mean and difference operators: construction, transforms, presets.

The central objects are the weighted-mean triangle with entries
s_{n-k} t_k / r_n, the order-m difference triangle with entries
(-1)^{n-k} binom(m, n-k), their closed-form inverses, and the composite
mean-difference operator obtained by multiplying the two.  Parameter windows
may be longer than the truncation order; the surplus feeds the structural
row generators used by tail-trend diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DimensionError, ParameterError
from .scalars import Backend, FLOAT_MODE, RATIONAL
from .triangle import (
    STRUCTURAL_TAIL,
    SequenceWindow,
    TriangleMatrix,
    apply,
    binom,
    compose,
    identity,
    toeplitz_inverse_coeffs,
)

PRESET_NAMES = ("uv", "euler", "aydin", "lambda", "identity")


@dataclass(frozen=True)
class ParameterTriple:
    """Defining data (r, s, t, m) of a mean-difference space truncated at ``order``.

    r and t must be zero-free, s must have a nonzero leading entry, and every
    window must cover at least ``order`` terms.  Windows longer than ``order``
    raise the structural-extension capacity.
    """

    r: tuple
    s: tuple
    t: tuple
    m: int
    order: int
    backend: Backend = RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(self.r))
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "t", tuple(self.t))

    @property
    def capacity(self):
        return min(len(self.r), len(self.s), len(self.t))


def validate_params(p) -> list:
    """All parameter violations, or an empty list when p is usable."""
    problems = []
    if p.order < 1:
        problems.append(f"truncation order must be positive, got {p.order}")
    if p.m < 0:
        problems.append(f"difference order must be nonnegative, got {p.m}")
    for name, window in (("r", p.r), ("s", p.s), ("t", p.t)):
        if len(window) < p.order:
            problems.append(f"{name} window has {len(window)} terms, needs at least {p.order}")
    if p.s and p.s[0] == 0:
        problems.append("s[0] = 0 (leading entry must be nonzero)")
    for name, window in (("r", p.r), ("t", p.t)):
        for idx, value in enumerate(window):
            if value == 0:
                problems.append(f"{name}[{idx}] = 0 (window must be zero-free)")
    return problems


def check_params(p) -> ParameterTriple:
    problems = validate_params(p)
    if problems:
        raise ParameterError(problems)
    return p


@lru_cache(maxsize=256)
def _coeffs(s: tuple, count: int):
    return toeplitz_inverse_coeffs(s, count)


@lru_cache(maxsize=128)
def exact_lift(p) -> ParameterTriple:
    """Exact-rational twin of a float parameter set.

    Binary floats are dyadic rationals, so the lift is exact.  The closed
    forms below are alternating binomial sums whose terms can dwarf the
    result by many orders of magnitude; evaluating them directly in doubles
    loses everything to cancellation, so float-backend constructions run on
    the lift and convert results at the boundary.  The lift keeps only the
    truncation-order window: structural extension beyond it stays a
    rational-backend facility.
    """
    if p.backend.mode != FLOAT_MODE:
        return p
    n = p.order
    return ParameterTriple(tuple(Fraction(v) for v in p.r[:n]),
                           tuple(Fraction(v) for v in p.s[:n]),
                           tuple(Fraction(v) for v in p.t[:n]),
                           p.m, n, RATIONAL)


def lift_window(x) -> SequenceWindow:
    return SequenceWindow(tuple(Fraction(v) for v in x.values), x.tail, x.space_label)


def lower_window(y) -> SequenceWindow:
    return SequenceWindow(tuple(float(v) for v in y.values), y.tail, y.space_label)


def _lower_triangle(exact) -> TriangleMatrix:
    row_fn = None
    if exact.row_fn is not None:
        def row_fn(n):
            return tuple(float(v) for v in exact.row_fn(n))
    return TriangleMatrix(exact.order,
                          tuple(tuple(float(v) for v in row) for row in exact.rows),
                          exact.tail, row_fn=row_fn, capacity=exact.capacity)


@lru_cache(maxsize=256)
def weighted_mean_matrix(p, order=None) -> TriangleMatrix:
    """Entries s_{n-k} t_k / r_n for k <= n; structural tail."""
    check_params(p)
    order = p.order if order is None else order
    if p.backend.mode == FLOAT_MODE:
        return _lower_triangle(weighted_mean_matrix(exact_lift(p), order))
    if order > p.capacity:
        raise DimensionError(f"order {order} exceeds parameter capacity {p.capacity}")

    def row(n):
        return tuple(p.s[n - k] * p.t[k] / p.r[n] for k in range(n + 1))

    return TriangleMatrix(order, tuple(row(n) for n in range(order)),
                          STRUCTURAL_TAIL, row_fn=row, capacity=p.capacity)


@lru_cache(maxsize=256)
def difference_matrix(m, order, backend=RATIONAL) -> TriangleMatrix:
    """Order-m difference triangle: entries (-1)^{n-k} binom(m, n-k); m = 0 is the identity."""
    if m < 0:
        raise ParameterError([f"difference order must be nonnegative, got {m}"])
    one = backend.one

    def row(n):
        return tuple((-1) ** ((n - k) % 2) * binom(m, n - k) * one for k in range(n + 1))

    return TriangleMatrix(order, tuple(row(n) for n in range(order)),
                          STRUCTURAL_TAIL, row_fn=row)


@lru_cache(maxsize=256)
def difference_inverse(m, order, backend=RATIONAL) -> TriangleMatrix:
    """Inverse of the order-m difference triangle: entries binom(m+n-k-1, n-k)."""
    if m < 0:
        raise ParameterError([f"difference order must be nonnegative, got {m}"])
    one = backend.one

    def row(n):
        return tuple(binom(m + n - k - 1, n - k) * one for k in range(n + 1))

    return TriangleMatrix(order, tuple(row(n) for n in range(order)),
                          STRUCTURAL_TAIL, row_fn=row)


@lru_cache(maxsize=256)
def weighted_mean_inverse(p, order=None) -> TriangleMatrix:
    """Closed-form inverse of the weighted-mean triangle.

    Entry (n, k) is (-1)^{n-k} D_{n-k} r_k / t_n with D the Toeplitz inverse
    coefficients of s.
    """
    check_params(p)
    order = p.order if order is None else order
    if p.backend.mode == FLOAT_MODE:
        return _lower_triangle(weighted_mean_inverse(exact_lift(p), order))
    if order > p.capacity:
        raise DimensionError(f"order {order} exceeds parameter capacity {p.capacity}")
    D = _coeffs(p.s, p.capacity)

    def row(n):
        return tuple((-1) ** ((n - k) % 2) * D[n - k] * p.r[k] / p.t[n] for k in range(n + 1))

    return TriangleMatrix(order, tuple(row(n) for n in range(order)),
                          STRUCTURAL_TAIL, row_fn=row, capacity=p.capacity)


@lru_cache(maxsize=256)
def mean_difference_matrix(p, order=None) -> TriangleMatrix:
    """The composite operator: weighted-mean triangle times the order-m difference."""
    check_params(p)
    order = p.order if order is None else order
    if p.backend.mode == FLOAT_MODE:
        return _lower_triangle(mean_difference_matrix(exact_lift(p), order))
    return compose(weighted_mean_matrix(p, order), difference_matrix(p.m, order, p.backend))


def composite_entry(p, n, j):
    """Row-n, column-j weight of the composite operator, from its direct kernel:
    (1/r_n) sum_{i=j}^{n} (-1)^{i-j} binom(m, i-j) s_{n-i} t_i.
    """
    acc = 0
    for i in range(j, n + 1):
        acc += (-1) ** ((i - j) % 2) * binom(p.m, i - j) * p.s[n - i] * p.t[i]
    return acc / p.r[n]


@lru_cache(maxsize=256)
def mean_difference_inverse(p, order=None) -> TriangleMatrix:
    """Closed-form inverse of the composite operator.

    Entry (j, k) is sum_{i=k}^{j} (-1)^{i-k} binom(m+j-i-1, j-i) (D_{i-k}/t_i) r_k,
    i.e. the difference inverse composed with the weighted-mean inverse.
    """
    check_params(p)
    order = p.order if order is None else order
    if p.backend.mode == FLOAT_MODE:
        return _lower_triangle(mean_difference_inverse(exact_lift(p), order))
    if order > p.capacity:
        raise DimensionError(f"order {order} exceeds parameter capacity {p.capacity}")
    D = _coeffs(p.s, p.capacity)
    m = p.m

    def row(j):
        out = []
        for k in range(j + 1):
            acc = 0
            for i in range(k, j + 1):
                acc += (-1) ** ((i - k) % 2) * binom(m + j - i - 1, j - i) * D[i - k] / p.t[i]
            out.append(acc * p.r[k])
        return tuple(out)

    return TriangleMatrix(order, tuple(row(j) for j in range(order)),
                          STRUCTURAL_TAIL, row_fn=row, capacity=p.capacity)


def transform(p, x) -> SequenceWindow:
    """Image of a window under the composite operator."""
    check_params(p)
    if len(x) != p.order:
        raise DimensionError(f"sequence length {len(x)} does not match order {p.order}")
    if p.backend.mode == FLOAT_MODE:
        return lower_window(apply(mean_difference_matrix(exact_lift(p)), lift_window(x)))
    return apply(mean_difference_matrix(p), x)


def inverse_transform(p, y) -> SequenceWindow:
    """Preimage of a window under the composite operator (closed-form inverse)."""
    check_params(p)
    if len(y) != p.order:
        raise DimensionError(f"sequence length {len(y)} does not match order {p.order}")
    if p.backend.mode == FLOAT_MODE:
        return lower_window(apply(mean_difference_inverse(exact_lift(p)), lift_window(y)))
    return apply(mean_difference_inverse(p), y)


@dataclass(frozen=True)
class NormResult:
    """Sup of |transform| over the window, with the attaining index.

    ``exact`` is False whenever the window only bounds the true supremum from
    below (the usual case: the transform tail is undeclared).
    """

    value: object
    arg_index: int
    exact: bool


def space_norm(p, x) -> NormResult:
    y = transform(p, x)
    best = abs(y[0])
    best_idx = 0
    for n in range(1, len(y)):
        v = abs(y[n])
        if v > best:
            best, best_idx = v, n
    return NormResult(best, best_idx, exact=(y.tail == "zero"))


@dataclass(frozen=True)
class PresetSpec:
    """Arguments for a named parameter family."""

    name: str
    alpha: object = None
    u: Optional[tuple] = None
    v: Optional[tuple] = None
    lam: Optional[tuple] = None

    def __post_init__(self):
        if self.name not in PRESET_NAMES:
            raise ParameterError([f"unknown preset {self.name!r}; choose from {PRESET_NAMES}"])
        for field in ("u", "v", "lam"):
            value = getattr(self, field)
            if value is not None:
                object.__setattr__(self, field, tuple(value))


def preset(spec, order, m=1, backend=RATIONAL, window=None) -> ParameterTriple:
    """Instantiate a named parameter family at the given truncation order.

    Window length defaults to 4x the order so structural tails can be
    extended for trend diagnostics.  The "lambda" family forces m = 1.

    Families:
      uv       r_n = 1/u_n, t_n = v_n, s = ones
      euler    r_n = 1/n!, t_n = a^n/n!, s_n = (1-a)^n/n!, 0 < a < 1
      aydin    r_n = n+1, t_n = 1 + a^n, s = ones, 0 < a < 1
      lambda   r_n = L_n, t_n = L_n - L_{n-1} (L_{-1} = 0), s = ones, m = 1
      identity s = (1, 0, 0, ...), r = t = ones
    """
    if order < 1:
        raise ParameterError([f"truncation order must be positive, got {order}"])
    length = max(window or 4 * order, order)
    one, zero = backend.one, backend.zero
    name = spec.name

    if name in ("euler", "aydin"):
        if spec.alpha is None:
            raise ParameterError([f"preset {name!r} requires alpha"])
        alpha = Fraction(spec.alpha) if backend.mode == "rational" else float(spec.alpha)
        if not 0 < alpha < 1:
            raise ParameterError([f"alpha must lie strictly between 0 and 1, got {spec.alpha}"])

    if name == "identity":
        r = t = (one,) * length
        s = (one,) + (zero,) * (length - 1)
    elif name == "uv":
        if spec.u is None or spec.v is None:
            raise ParameterError(["preset 'uv' requires both u and v windows"])
        length = min(length, len(spec.u), len(spec.v))
        if length < order:
            raise ParameterError([
                f"u/v windows cover {length} terms, need at least {order}"])
        problems = [f"u[{i}] = 0 (must be zero-free)" for i in range(length) if spec.u[i] == 0]
        problems += [f"v[{i}] = 0 (must be zero-free)" for i in range(length) if spec.v[i] == 0]
        if problems:
            raise ParameterError(problems)
        r = tuple(1 / backend.convert(spec.u[i]) for i in range(length))
        t = tuple(backend.convert(spec.v[i]) for i in range(length))
        s = (one,) * length
    elif name == "euler":
        # factorials exact first, converted at the end; never a floating factorial
        af = Fraction(spec.alpha)
        fact = [Fraction(math.factorial(i)) for i in range(length)]
        r = tuple(backend.convert(1 / fact[i]) for i in range(length))
        t = tuple(backend.convert(af ** i / fact[i]) for i in range(length))
        s = tuple(backend.convert((1 - af) ** i / fact[i]) for i in range(length))
    elif name == "aydin":
        r = tuple(backend.convert(i + 1) for i in range(length))
        t = tuple(one + alpha ** i for i in range(length))
        s = (one,) * length
    else:  # lambda
        if spec.lam is None:
            raise ParameterError(["preset 'lambda' requires the lam window"])
        length = min(length, len(spec.lam))
        if length < order:
            raise ParameterError([f"lam window covers {length} terms, need at least {order}"])
        lam = [backend.convert(v) for v in spec.lam[:length]]
        problems = [f"lam[{i}] = 0 (must be zero-free)" for i in range(length) if lam[i] == 0]
        increasing = all(lam[i] < lam[i + 1] for i in range(length - 1))
        decreasing = all(lam[i] > lam[i + 1] for i in range(length - 1))
        if not (increasing or decreasing):
            problems.append("lam must be strictly monotone")
        if problems:
            raise ParameterError(problems)
        r = tuple(lam)
        t = tuple(lam[i] - (lam[i - 1] if i else zero) for i in range(length))
        if any(v == 0 for v in t):
            raise ParameterError(["lam produces a zero step; t must be zero-free"])
        s = (one,) * length
        m = 1

    if backend.mode == "float":
        # float windows may underflow to zero or overflow; keep the clean prefix
        usable = length
        for i in range(length):
            if (not (math.isfinite(r[i]) and math.isfinite(s[i]) and math.isfinite(t[i]))
                    or r[i] == 0 or t[i] == 0):
                usable = i
                break
        if usable < order:
            raise ParameterError([
                f"float backend cannot represent the {name!r} windows past index "
                f"{usable}; truncation order {order} needs more"])
        r, s, t = r[:usable], s[:usable], t[:usable]

    return check_params(ParameterTriple(r, s, t, m, order, backend))


def identity_triple(order, m=1, backend=RATIONAL, window=None) -> ParameterTriple:
    return preset(PresetSpec("identity"), order, m=m, backend=backend, window=window)


__all__ = [
    "ParameterTriple", "PresetSpec", "NormResult", "PRESET_NAMES",
    "validate_params", "check_params",
    "weighted_mean_matrix", "weighted_mean_inverse",
    "difference_matrix", "difference_inverse",
    "mean_difference_matrix", "mean_difference_inverse", "composite_entry",
    "transform", "inverse_transform", "space_norm",
    "preset", "identity_triple", "identity",
]
