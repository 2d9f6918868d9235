"""Finite lower-triangular matrix algebra with declared tail behavior.

Every object here is a finite truncation plus a *tail tag* saying what the
rows beyond the stored window do: vanish identically ("zero"), follow the
generating formula that built the object ("structural"), or are unspecified
("unknown").  Operations propagate tags pessimistically so that no infinite
claim is ever produced from finite data without a declaration backing it.

All values are immutable after construction and every operation is a pure
function, so concurrent use needs no synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DimensionError, GuardError, ParameterError, SingularTriangleError, TailError
from .scalars import RATIONAL as _RATIONAL_BACKEND

ZERO_TAIL = "zero"
STRUCTURAL_TAIL = "structural"
UNKNOWN_TAIL = "unknown"

SEQUENCE_TAILS = (ZERO_TAIL, UNKNOWN_TAIL)
MATRIX_TAILS = (ZERO_TAIL, STRUCTURAL_TAIL, UNKNOWN_TAIL)

SPACE_LABELS = ("c0", "c", "l_inf")

DET_ORACLE_MAX = 8


def binom(n: int, k: int) -> int:
    """Binomial coefficient, extended so that binom(-1, 0) = 1 (empty product)."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    if n < 0:
        out = 1
        for i in range(k):
            out *= n - i
        return out // math.factorial(k)
    return math.comb(n, k) if k <= n else 0


@dataclass(frozen=True)
class SequenceWindow:
    """A finite prefix of a sequence plus a declared tail.

    tail = "zero" asserts x_n = 0 for every index beyond the stored window;
    tail = "unknown" asserts nothing.  The optional space label (c0 / c /
    l_inf) is metadata only; no operation silently assumes it.
    """

    values: tuple
    tail: str = UNKNOWN_TAIL
    space_label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.tail not in SEQUENCE_TAILS:
            raise ValueError(f"sequence tail must be one of {SEQUENCE_TAILS}, got {self.tail!r}")
        if self.space_label is not None and self.space_label not in SPACE_LABELS:
            raise ValueError(f"space label must be one of {SPACE_LABELS}, got {self.space_label!r}")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def support(self):
        """Index one past the last stored nonzero entry."""
        for i in range(len(self.values) - 1, -1, -1):
            if self.values[i] != 0:
                return i + 1
        return 0

    def require_zero_tail(self, what="input sequence"):
        if self.tail != ZERO_TAIL:
            raise TailError(f"{what} must have a declared zero tail, got {self.tail!r}")


def zero_sequence(order, backend):
    return SequenceWindow((backend.zero,) * order, ZERO_TAIL)


def unit_sequence(order, j, backend):
    """e_j as a zero-tail window."""
    if not 0 <= j < order:
        raise DimensionError(f"unit index {j} outside window of length {order}")
    vals = [backend.zero] * order
    vals[j] = backend.one
    return SequenceWindow(vals, ZERO_TAIL)


def ones_sequence(order, backend):
    """The all-ones window; its true tail is nonzero, hence tagged unknown."""
    return SequenceWindow((backend.one,) * order, UNKNOWN_TAIL)


def seq_add(x, y):
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    tail = ZERO_TAIL if (x.tail == ZERO_TAIL and y.tail == ZERO_TAIL) else UNKNOWN_TAIL
    return SequenceWindow(tuple(a + b for a, b in zip(x, y)), tail)


def seq_sub(x, y):
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    tail = ZERO_TAIL if (x.tail == ZERO_TAIL and y.tail == ZERO_TAIL) else UNKNOWN_TAIL
    return SequenceWindow(tuple(a - b for a, b in zip(x, y)), tail)


def seq_scale(alpha, x):
    return SequenceWindow(tuple(alpha * v for v in x), x.tail)


@dataclass(frozen=True)
class TriangleMatrix:
    """An N x N lower-triangular window with ragged storage (row n holds n+1 entries).

    The strict triangularity invariant — entry (n, k) = 0 for k > n — is
    guaranteed by the storage shape.  A triangle in the invertible sense
    additionally needs a nonzero diagonal; only operations that require
    invertibility check that.

    ``row_fn`` optionally generates row n (length n+1) for indices beyond the
    stored window when the tail is structural; ``capacity`` is the exclusive
    bound on generatable indices (None = unlimited).
    """

    order: int
    rows: tuple
    tail: str = UNKNOWN_TAIL
    row_fn: Optional[Callable[[int], tuple]] = None
    capacity: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        if self.order != len(self.rows):
            raise DimensionError(f"order {self.order} does not match {len(self.rows)} stored rows")
        for n, row in enumerate(self.rows):
            if len(row) != n + 1:
                raise DimensionError(f"row {n} must hold {n + 1} entries, got {len(row)}")
        if self.tail not in MATRIX_TAILS:
            raise ValueError(f"matrix tail must be one of {MATRIX_TAILS}, got {self.tail!r}")

    def entry(self, n, k):
        if k > n:
            return 0
        return self.rows[n][k]

    def row(self, n):
        return self.rows[n]

    def generated_row(self, n):
        """Row n of the underlying infinite matrix, or None when undeclared."""
        if n < self.order:
            return self.rows[n]
        if self.tail == ZERO_TAIL:
            return (0,) * (n + 1)
        if self.tail == STRUCTURAL_TAIL and self.row_fn is not None:
            if self.capacity is None or n < self.capacity:
                return tuple(self.row_fn(n))
        return None

    def diagonal(self):
        return tuple(self.rows[n][n] for n in range(self.order))

    def to_window(self):
        return MatrixWindow(self.rows, self.tail, self.row_fn, self.capacity)


@dataclass(frozen=True)
class MatrixWindow:
    """A general (not necessarily triangular) matrix truncation.

    Stored rows are complete supports: entries beyond a stored row are zero,
    so every row has a zero tail in the column direction.  ``row_tail``
    declares the rows beyond the stored block, with the same meaning as the
    triangle tags.
    """

    rows: tuple
    row_tail: str = UNKNOWN_TAIL
    row_fn: Optional[Callable[[int], tuple]] = None
    capacity: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        if self.row_tail not in MATRIX_TAILS:
            raise ValueError(f"row tail must be one of {MATRIX_TAILS}, got {self.row_tail!r}")

    @property
    def width(self):
        return max((len(row) for row in self.rows), default=0)

    def entry(self, n, k):
        row = self.rows[n]
        return row[k] if k < len(row) else 0

    def row(self, n):
        """Row n, or None when the tail declaration cannot produce it."""
        if n < len(self.rows):
            return self.rows[n]
        if self.row_tail == ZERO_TAIL:
            return ()
        if self.row_tail == STRUCTURAL_TAIL and self.row_fn is not None:
            if self.capacity is None or n < self.capacity:
                return tuple(self.row_fn(n))
        return None


def as_window(matrix):
    if isinstance(matrix, MatrixWindow):
        return matrix
    if isinstance(matrix, TriangleMatrix):
        return matrix.to_window()
    raise TypeError(f"expected TriangleMatrix or MatrixWindow, got {type(matrix).__name__}")


def identity(order, backend=None):
    """The identity triangle; its structural tail extends to every index."""
    backend = backend or _RATIONAL_BACKEND
    one, zero = backend.one, backend.zero

    def row(n):
        return tuple(zero for _ in range(n)) + (one,)

    return TriangleMatrix(order, tuple(row(n) for n in range(order)), STRUCTURAL_TAIL, row_fn=row)


def _combined_tail(a, b):
    if a == ZERO_TAIL and b == ZERO_TAIL:
        return ZERO_TAIL
    if a == STRUCTURAL_TAIL and b == STRUCTURAL_TAIL:
        return STRUCTURAL_TAIL
    return UNKNOWN_TAIL


def compose(left, right):
    """Matrix product of two triangles of equal order.

    The tail combines pessimistically: zero with zero stays zero, structural
    with structural stays structural (carrying a derived generator when both
    factors can generate rows), anything else is unknown.
    """
    if left.order != right.order:
        raise DimensionError(f"order mismatch: {left.order} vs {right.order}")
    order = left.order
    rows = []
    for n in range(order):
        lrow = left.rows[n]
        row = []
        for k in range(n + 1):
            acc = lrow[k] * right.rows[k][k]
            for i in range(k + 1, n + 1):
                acc += lrow[i] * right.rows[i][k]
            row.append(acc)
        rows.append(tuple(row))

    tail = _combined_tail(left.tail, right.tail)
    row_fn = None
    capacity = None
    if tail == STRUCTURAL_TAIL:
        caps = [c for c in (left.capacity, right.capacity) if c is not None]
        capacity = min(caps) if caps else None
        if left.row_fn is not None and right.row_fn is not None:
            def row_fn(n):
                lrow = left.generated_row(n)
                rrows = [right.generated_row(i) for i in range(n + 1)]
                if lrow is None or any(r is None for r in rrows):
                    raise DimensionError(f"cannot generate row {n} beyond declared capacity")
                return tuple(
                    sum(lrow[i] * rrows[i][k] for i in range(k, n + 1)) for k in range(n + 1)
                )

    return TriangleMatrix(order, rows, tail, row_fn=row_fn, capacity=capacity)


def apply(matrix, x):
    """The matrix transform (Mx)_n = sum_{k<=n} entries[n][k] x_k."""
    if matrix.order != len(x):
        raise DimensionError(f"order {matrix.order} does not match sequence length {len(x)}")
    vals = []
    for n in range(matrix.order):
        row = matrix.rows[n]
        acc = row[0] * x[0]
        for k in range(1, n + 1):
            acc += row[k] * x[k]
        vals.append(acc)
    tail = ZERO_TAIL if (matrix.tail == ZERO_TAIL and x.tail == ZERO_TAIL) else UNKNOWN_TAIL
    return SequenceWindow(vals, tail)


def window_apply(window, x):
    """Apply a general matrix window row-by-row to a sequence window."""
    vals = []
    for row in window.rows:
        if len(row) > len(x):
            raise DimensionError(f"row of width {len(row)} exceeds sequence length {len(x)}")
        acc = 0
        for k, v in enumerate(row):
            acc += v * x[k]
        vals.append(acc)
    return tuple(vals)


def invert_triangle(matrix):
    """Inverse of a triangle by forward substitution, one column at a time.

    Triangular inversion is local: entry (n, k) of the inverse depends only
    on rows <= n, so the window inverse agrees with the infinite inverse.  A
    structural input therefore yields a structural inverse whose generator
    inverts an extended window on demand.
    """
    for n in range(matrix.order):
        if matrix.rows[n][n] == 0:
            raise SingularTriangleError(n)
    order = matrix.order
    inv = [[None] * (n + 1) for n in range(order)]
    for k in range(order):
        inv[k][k] = 1 / matrix.rows[k][k]
        for n in range(k + 1, order):
            acc = matrix.rows[n][k] * inv[k][k]
            for i in range(k + 1, n):
                acc += matrix.rows[n][i] * inv[i][k]
            inv[n][k] = -acc / matrix.rows[n][n]
    rows = tuple(tuple(row) for row in inv)

    if matrix.tail == STRUCTURAL_TAIL and matrix.row_fn is not None:
        def row_fn(n):
            ext_rows = [matrix.generated_row(i) for i in range(n + 1)]
            if any(r is None for r in ext_rows):
                raise DimensionError(f"cannot generate row {n} beyond declared capacity")
            extended = TriangleMatrix(n + 1, ext_rows, UNKNOWN_TAIL)
            return invert_triangle(extended).rows[n]

        return TriangleMatrix(order, rows, STRUCTURAL_TAIL, row_fn=row_fn, capacity=matrix.capacity)
    return TriangleMatrix(order, rows, UNKNOWN_TAIL)


@dataclass(frozen=True)
class CoeffWindow:
    """Coefficients D_0 .. D_{N-1} of the inverse of the lower-triangular
    Toeplitz matrix built from a window s (s_0 on the diagonal).

    Invariant: the signed sequence c_n = (-1)^n D_n is the reciprocal of s as
    a power series, i.e. sum_{j<=n} s_j c_{n-j} = [n = 0].
    """

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _seq_values(s):
    return s.values if isinstance(s, SequenceWindow) else tuple(s)


def toeplitz_inverse_coeffs(s, count):
    """D_0 .. D_{count-1} via the reciprocal-series convolution recursion.

    c_0 = 1/s_0, c_n = -(1/s_0) sum_{j=1}^{n} s_j c_{n-j}, D_n = (-1)^n c_n.
    Quadratic cost; the determinant route survives in coeff_via_determinant
    as a small-order oracle.
    """
    vals = _seq_values(s)
    if count < 1:
        raise DimensionError("coefficient count must be positive")
    if len(vals) < count:
        raise DimensionError(f"window of length {len(vals)} too short for {count} coefficients")
    if vals[0] == 0:
        raise ParameterError(["s[0] must be nonzero (leading Toeplitz diagonal)"])
    c = [None] * count
    c[0] = 1 / vals[0]
    for n in range(1, count):
        acc = vals[1] * c[n - 1]
        for j in range(2, n + 1):
            acc += vals[j] * c[n - j]
        c[n] = -acc / vals[0]
    return CoeffWindow(tuple(c[n] if n % 2 == 0 else -c[n] for n in range(count)))


def _laplace_det(mat):
    size = len(mat)
    if size == 1:
        return mat[0][0]
    total = 0
    for i in range(size):
        lead = mat[i][0]
        if lead == 0:
            continue
        minor = [row[1:] for j, row in enumerate(mat) if j != i]
        term = lead * _laplace_det(minor)
        total += term if i % 2 == 0 else -term
    return total


def coeff_via_determinant(s, n):
    """D_n evaluated directly from its n x n banded-Hessenberg determinant.

    Exponential-cost Laplace expansion, guarded to n <= 8; used only as an
    independent oracle against toeplitz_inverse_coeffs.
    """
    if n > DET_ORACLE_MAX:
        raise GuardError(f"determinant oracle limited to n <= {DET_ORACLE_MAX}, got {n}")
    if n < 0:
        raise DimensionError("coefficient index must be nonnegative")
    vals = _seq_values(s)
    if not vals or vals[0] == 0:
        raise ParameterError(["s[0] must be nonzero (leading Toeplitz diagonal)"])
    if n == 0:
        return 1 / vals[0]
    if len(vals) < n + 1:
        raise DimensionError(f"window of length {len(vals)} too short for index {n}")
    mat = [[vals[i + 1 - j] if 0 <= i + 1 - j else 0 for j in range(n)] for i in range(n)]
    return _laplace_det(mat) / vals[0] ** (n + 1)
