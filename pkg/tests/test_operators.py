from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from genmeans import (
    FLOAT64,
    ParameterError,
    ParameterTriple,
    PresetSpec,
    RATIONAL,
    SequenceWindow,
    TriangleMatrix,
    compose,
    composite_entry,
    difference_inverse,
    difference_matrix,
    identity,
    identity_triple,
    inverse_transform,
    invert_triangle,
    mean_difference_inverse,
    mean_difference_matrix,
    ones_sequence,
    preset,
    space_norm,
    transform,
    validate_params,
    weighted_mean_inverse,
    weighted_mean_matrix,
)

from conftest import parameter_triples, small_fractions, zero_tail_windows
from hypothesis import strategies as st


def ones_params(order, m=1):
    e = (F(1),) * (4 * order)
    return ParameterTriple(e, e, e, m, order, RATIONAL)


# --- validation -------------------------------------------------------------

def test_validate_accepts_basic_triple():
    p = ParameterTriple((F(1),) * 4, (F(1), F(0), F(0), F(0)), (F(1),) * 4, 1, 4)
    assert validate_params(p) == []


def test_validate_names_zero_index():
    t = [F(1)] * 6
    t[3] = F(0)
    p = ParameterTriple((F(1),) * 6, (F(1),) * 6, tuple(t), 1, 6)
    problems = validate_params(p)
    assert any("t[3]" in msg for msg in problems)


def test_validate_rejects_zero_leading_s():
    p = ParameterTriple((F(1),) * 4, (F(0), F(1), F(1), F(1)), (F(1),) * 4, 1, 4)
    problems = validate_params(p)
    assert any("s[0]" in msg for msg in problems)


def test_validate_reports_short_windows():
    p = ParameterTriple((F(1),) * 2, (F(1),) * 4, (F(1),) * 4, 1, 4)
    assert any("r window" in msg for msg in validate_params(p))


# --- matrix constructions ---------------------------------------------------

def test_mean_matrix_identity_preset():
    p = identity_triple(4)
    assert weighted_mean_matrix(p).rows == identity(4).rows


def test_mean_matrix_euler_row_is_binomial():
    p = preset(PresetSpec("euler", alpha=F(1, 2)), 4)
    A = weighted_mean_matrix(p)
    assert A.rows[2] == (F(1, 4), F(1, 2), F(1, 4))


def test_mean_matrix_all_ones_is_running_sum():
    A = weighted_mean_matrix(ones_params(4))
    assert A.rows == tuple(tuple(F(1) for _ in range(n + 1)) for n in range(4))


def test_difference_matrix_order_zero_is_identity():
    assert difference_matrix(0, 5).rows == identity(5).rows


def test_difference_matrix_first_order_rows():
    d = difference_matrix(1, 4)
    assert d.rows[2] == (F(0), F(-1), F(1))
    assert d.rows[0] == (F(1),)


def test_difference_matrix_is_iterated_composition():
    d1 = difference_matrix(1, 8)
    power = identity(8)
    for m in range(1, 6):
        power = compose(power, d1)
        assert difference_matrix(m, 8).rows == power.rows


def test_difference_inverse_first_order_is_all_ones():
    inv = difference_inverse(1, 5)
    assert inv.rows == tuple(tuple(F(1) for _ in range(n + 1)) for n in range(5))


def test_difference_inverse_order_zero_is_identity():
    assert difference_inverse(0, 5).rows == identity(5).rows


def test_difference_inverse_second_order_first_column():
    inv = difference_inverse(2, 5)
    assert tuple(inv.entry(n, 0) for n in range(5)) == (F(1), F(2), F(3), F(4), F(5))


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_difference_inverse_inverts_difference(m):
    assert compose(difference_inverse(m, 8), difference_matrix(m, 8)).rows == identity(8).rows


def test_mean_inverse_identity_preset():
    p = identity_triple(4)
    assert weighted_mean_inverse(p).rows == identity(4).rows


def test_mean_inverse_uv_preset_uses_two_coefficients():
    # with s all ones the inverse is bidiagonal: entries vanish two below the diagonal
    p = preset(PresetSpec("uv", u=(F(2),) * 16, v=(F(3),) * 16), 4)
    B = weighted_mean_inverse(p)
    for n in range(4):
        for k in range(n + 1):
            if n - k >= 2:
                assert B.entry(n, k) == 0


@given(parameter_triples(order=8))
def test_mean_inverse_composes_to_identity(p):
    assert compose(weighted_mean_inverse(p), weighted_mean_matrix(p)).rows == identity(8).rows


@given(parameter_triples(order=8))
def test_mean_inverse_matches_forward_substitution(p):
    assert weighted_mean_inverse(p).rows == invert_triangle(weighted_mean_matrix(p)).rows


def test_composite_telescopes_for_all_ones():
    T = mean_difference_matrix(ones_params(6, m=1))
    assert T.rows == identity(6).rows


def test_composite_identity_preset_m0():
    T = mean_difference_matrix(identity_triple(6, m=0))
    assert T.rows == identity(6).rows


def test_composite_matches_direct_kernel():
    p = preset(PresetSpec("euler", alpha=F(1, 3)), 6, m=2)
    T = mean_difference_matrix(p)
    for n in range(6):
        for j in range(n + 1):
            assert T.entry(n, j) == composite_entry(p, n, j)


def test_composite_uv_matches_independent_construction():
    # G(u, v) with entries u_n v_k composed with the difference triangle
    u = (F(2), F(-1), F(1, 2), F(3), F(1), F(1), F(2), F(1)) * 4
    v = (F(1), F(2), F(-1, 2), F(1), F(2), F(1), F(1), F(3)) * 4
    p = preset(PresetSpec("uv", u=u, v=v), 8, m=2)
    G = TriangleMatrix(8, tuple(tuple(u[n] * v[k] for k in range(n + 1)) for n in range(8)))
    expected = compose(G, difference_matrix(2, 8))
    assert mean_difference_matrix(p).rows == expected.rows


@given(parameter_triples(order=8))
def test_composite_inverse_matches_forward_substitution(p):
    T = mean_difference_matrix(p)
    assert mean_difference_inverse(p).rows == invert_triangle(T).rows


def test_composite_inverse_uv_two_term_reduction():
    # s = ones makes the inverse entries two-term sums over i in {k, k+1}
    p = preset(PresetSpec("uv", u=(F(2),) * 16, v=(F(3),) * 16), 4, m=1)
    S = mean_difference_inverse(p)
    from genmeans import binom
    for j in range(4):
        for k in range(j + 1):
            expected = sum(
                (-1) ** ((i - k) % 2) * binom(1 + j - i - 1, j - i) / p.t[i] * p.r[k]
                for i in (k, k + 1) if i <= j)
            assert S.entry(j, k) == expected


# --- transforms ---------------------------------------------------------------

def test_transform_all_ones_params_is_neutral():
    p = ones_params(5, m=1)
    x = SequenceWindow(tuple(F(i + 1) for i in range(5)))
    assert transform(p, x).values == x.values


def test_transform_identity_preset_is_first_difference():
    p = identity_triple(5, m=1)
    x = SequenceWindow((F(2), F(5), F(4), F(1), F(0)))
    y = transform(p, x)
    assert y.values == (F(2), F(3), F(-1), F(-3), F(-1))


def test_transform_euler_preserves_constants():
    p = preset(PresetSpec("euler", alpha=F(1, 2)), 3, m=0)
    y = transform(p, SequenceWindow((F(1), F(1), F(1))))
    assert y.values == (F(1), F(1), F(1))


@given(parameter_triples(order=8), st.data())
def test_round_trip_is_identity(p, data):
    x = SequenceWindow(tuple(data.draw(small_fractions) for _ in range(8)))
    assert inverse_transform(p, transform(p, x)).values == x.values


def test_inverse_transform_of_zero_is_zero():
    p = preset(PresetSpec("euler", alpha=F(1, 2)), 5, m=2)
    y = SequenceWindow((F(0),) * 5, "zero")
    assert inverse_transform(p, y).values == (F(0),) * 5


def test_inverse_transform_matches_double_sum():
    # independent oracle: the explicit double-sum reconstruction
    from genmeans import binom
    from genmeans.operators import _coeffs

    p = preset(PresetSpec("euler", alpha=F(2, 5)), 6, m=2)
    y = SequenceWindow((F(1), F(-2), F(1, 3), F(0), F(2), F(-1)))
    D = _coeffs(p.s, p.capacity)
    expected = []
    for n in range(6):
        acc = F(0)
        for j in range(n + 1):
            for k in range(j, n + 1):
                acc += ((-1) ** ((k - j) % 2) * binom(p.m + n - k - 1, n - k)
                        * D[k - j] / p.t[k] * p.r[j] * y[j])
        expected.append(acc)
    assert inverse_transform(p, y).values == tuple(expected)


# --- norm ---------------------------------------------------------------------

def test_norm_reports_sup_and_index():
    p = ones_params(4, m=1)  # transform is neutral
    x = SequenceWindow((F(1), F(-1, 2), F(1, 3), F(-1, 4)))
    result = space_norm(p, x)
    assert result.value == F(1)
    assert result.arg_index == 0


def test_norm_of_zero():
    p = identity_triple(4, m=1)
    assert space_norm(p, SequenceWindow((F(0),) * 4, "zero")).value == 0


def test_norm_identity_preset_difference():
    p = identity_triple(4, m=1)
    result = space_norm(p, SequenceWindow((F(1), F(1), F(1), F(1))))
    assert result.value == F(1)
    assert result.arg_index == 0
    assert not result.exact  # sup over the window only bounds the true norm


def test_norm_ties_report_smallest_index():
    p = ones_params(4, m=1)
    result = space_norm(p, SequenceWindow((F(2), F(-2), F(1), F(0))))
    assert result.value == F(2) and result.arg_index == 0


@given(parameter_triples(order=8), st.data())
def test_norm_equals_transform_sup(p, data):
    x = SequenceWindow(tuple(data.draw(small_fractions) for _ in range(8)))
    y = transform(p, x)
    assert space_norm(p, x).value == max(abs(v) for v in y.values)


# --- presets --------------------------------------------------------------------

def test_euler_rows_sum_to_one():
    p = preset(PresetSpec("euler", alpha=F(3, 7)), 8)
    A = weighted_mean_matrix(p)
    for n in range(8):
        assert sum(A.rows[n]) == F(1)


def test_euler_rejects_alpha_outside_unit_interval():
    with pytest.raises(ParameterError):
        preset(PresetSpec("euler", alpha=F(3, 2)), 4)
    with pytest.raises(ParameterError):
        preset(PresetSpec("aydin", alpha=F(0)), 4)


def test_uv_all_ones_gives_running_sum():
    p = preset(PresetSpec("uv", u=(F(1),) * 16, v=(F(1),) * 16), 4)
    assert weighted_mean_matrix(p).rows == weighted_mean_matrix(ones_params(4)).rows


def test_lambda_preset_windows():
    p = preset(PresetSpec("lambda", lam=tuple(F(i + 1) for i in range(16))), 4)
    assert p.t[:4] == (F(1), F(1), F(1), F(1))
    assert p.r[:4] == (F(1), F(2), F(3), F(4))
    assert p.m == 1


def test_lambda_rejects_non_monotone():
    with pytest.raises(ParameterError):
        preset(PresetSpec("lambda", lam=(F(1), F(3), F(2), F(4))), 4)


def test_aydin_windows():
    p = preset(PresetSpec("aydin", alpha=F(1, 2)), 4)
    assert p.r[:4] == (F(1), F(2), F(3), F(4))
    assert p.t[:3] == (F(2), F(3, 2), F(5, 4))


def test_preset_windows_cover_four_times_order():
    p = preset(PresetSpec("euler", alpha=F(1, 2)), 8)
    assert p.capacity >= 32


def test_float_backend_euler_round_trip():
    p = preset(PresetSpec("euler", alpha=0.5), 16, m=1, backend=FLOAT64)
    x = SequenceWindow(tuple((-1.0) ** i / (i + 1) for i in range(16)))
    back = inverse_transform(p, transform(p, x))
    assert max(abs(a - b) for a, b in zip(back.values, x.values)) <= 1e-10
