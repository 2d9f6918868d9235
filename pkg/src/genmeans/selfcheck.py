"""Seeded random instances and the rational-backend invariant suite.

The generators here produce small random rationals so products stay cheap
while still exercising sign mixes and zero entries wherever zeros are legal.
``run_selftest`` drives the cross-module identities end to end and is what
the CLI selftest command executes.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .scalars import RATIONAL
from .triangle import (
    MatrixWindow,
    SequenceWindow,
    TriangleMatrix,
    compose,
    identity,
    invert_triangle,
    toeplitz_inverse_coeffs,
    coeff_via_determinant,
    window_apply,
)
from .operators import (
    ParameterTriple,
    inverse_transform,
    mean_difference_inverse,
    mean_difference_matrix,
    space_norm,
    transform,
    weighted_mean_inverse,
    weighted_mean_matrix,
)
from .duality import alpha_dual_matrix, associate_row, basis_vector, gamma_dual_matrix
from .triangle import apply, unit_sequence
from .compactness import associate_matrix, chi_norm, compactness_verdict, supplied_associate
from .conditions import CONDITION_IDS, condition_verdict, eval_condition


def nonzero_fraction(rng, span=3, den=3):
    while True:
        v = Fraction(rng.randint(-span, span), rng.randint(1, den))
        if v:
            return v


def any_fraction(rng, span=3, den=3):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_params(rng, order, m=None, window=None) -> ParameterTriple:
    """A random valid rational parameter set; windows default to 4x the order."""
    length = window or 4 * order
    r = tuple(nonzero_fraction(rng) for _ in range(length))
    t = tuple(nonzero_fraction(rng) for _ in range(length))
    s = (nonzero_fraction(rng),) + tuple(any_fraction(rng, span=2) for _ in range(length - 1))
    m = rng.randint(0, 3) if m is None else m
    return ParameterTriple(r, s, t, m, order, RATIONAL)


def random_window(rng, order, tail="unknown") -> SequenceWindow:
    return SequenceWindow(tuple(any_fraction(rng) for _ in range(order)), tail)


def random_zero_tail(rng, order, max_support=None) -> SequenceWindow:
    """A zero-tail window with random support below max_support."""
    support = rng.randint(1, max_support or order)
    vals = [any_fraction(rng) for _ in range(support)] + [Fraction(0)] * (order - support)
    return SequenceWindow(vals, "zero")


def random_zero_tail_rows(rng, rows, width, density=0.6) -> MatrixWindow:
    out = []
    for _ in range(rows):
        out.append(tuple(any_fraction(rng) if rng.random() < density else Fraction(0)
                         for _ in range(width)))
    return MatrixWindow(tuple(out), "zero")


def run_selftest(seed=20240601, emit=print) -> bool:
    """Run the rational-backend invariant suite; True when every check passes."""
    rng = random.Random(seed)
    ok = True

    def check(name, passed):
        nonlocal ok
        emit(f"{'ok  ' if passed else 'FAIL'} {name}")
        ok = ok and passed

    order = 12
    eye = identity(order)

    passed = True
    for _ in range(10):
        p = random_params(rng, order)
        A = weighted_mean_matrix(p)
        B = weighted_mean_inverse(p)
        T = mean_difference_matrix(p)
        S = mean_difference_inverse(p)
        passed &= compose(B, A).rows == eye.rows
        passed &= compose(S, T).rows == eye.rows
        passed &= invert_triangle(T).rows == S.rows
    check("closed-form inverses reproduce the identity", passed)

    passed = True
    for _ in range(10):
        s = (nonzero_fraction(rng),) + tuple(any_fraction(rng) for _ in range(8))
        D = toeplitz_inverse_coeffs(s, 9)
        passed &= all(D[n] == coeff_via_determinant(s, n) for n in range(9))
    check("recursion coefficients match the determinant oracle", passed)

    passed = True
    for _ in range(10):
        p = random_params(rng, order)
        x = random_window(rng, order)
        y = transform(p, x)
        passed &= inverse_transform(p, y).values == x.values
        norm = space_norm(p, x)
        passed &= norm.value == max(abs(v) for v in y.values)
    check("transform round trip and norm agreement", passed)

    p = random_params(rng, order)
    passed = all(
        transform(p, basis_vector(p, j).values).values == unit_sequence(order, j, p.backend).values
        for j in range(order))
    passed &= transform(p, basis_vector(p, -1).values).values == (Fraction(1),) * order
    check("basis vectors map to coordinate vectors", passed)

    passed = True
    for _ in range(10):
        p = random_params(rng, order)
        a = random_zero_tail(rng, order)
        x = random_window(rng, order)
        y = transform(p, x)
        R = associate_row(p, a)
        passed &= sum(a[k] * x[k] for k in range(order)) == sum(R[k] * y[k] for k in range(order))
        C = alpha_dual_matrix(p, a)
        passed &= all(apply(C, y)[n] == a[n] * x[n] for n in range(order))
        E = gamma_dual_matrix(p, a)
        Ey = apply(E, y)
        passed &= all(Ey[l] == sum(a[n] * x[n] for n in range(l + 1)) for l in range(order))
    check("duality, coordinatewise and partial-sum identities", passed)

    passed = True
    for _ in range(5):
        p = random_params(rng, order)
        T = mean_difference_matrix(p)
        assoc = associate_matrix(p, T)
        passed &= all(assoc.window.entry(n, k) == (1 if n == k else 0)
                      for n in range(order) for k in range(order))
        A = random_zero_tail_rows(rng, order, order)
        x = random_window(rng, order)
        passed &= window_apply(A, x) == window_apply(associate_matrix(p, A).window,
                                                     transform(p, x))
    check("associate matrices honor the coordinate change", passed)

    p = random_params(rng, order)
    A = random_zero_tail_rows(rng, 4, order)
    passed = all(chi_norm(p, A, tgt).lower == 0 and chi_norm(p, A, tgt).upper == 0
                 for tgt in ("c0", "c", "l_inf"))
    passed &= all(compactness_verdict(p, A, tgt).status == "satisfied"
                  for tgt in ("c0", "c", "l_inf"))
    eye_assoc = supplied_associate(identity(order).to_window())
    chi0 = chi_norm(p, eye_assoc, "c0")
    passed &= chi0.lower == 1 and chi0.upper == 1
    check("noncompactness gauges on finite-rank and identity associates", passed)

    ref = random_zero_tail_rows(rng, 3, 6)
    pref = random_params(rng, 6)
    passed = True
    for cond in CONDITION_IDS:
        est = eval_condition(cond, ref, pref)
        passed &= condition_verdict(cond, est).status in ("satisfied", "violated",
                                                          "indeterminate")
    check("condition catalog is total", passed)

    emit("selftest " + ("passed" if ok else "FAILED"))
    return ok
