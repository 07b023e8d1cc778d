"""Exact arithmetic over small prime fields.

Scalars, truncated power series and dense matrices over F_p.  Containers
(series, matrices, forms) hold canonical integer residues; ``Scalar`` is the
boxed element handed across module boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FieldMismatch, ValidationError, ZeroInverse

MAX_MODULUS = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p with 3 < p < 2**16 prime."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ValidationError(f"modulus must be an integer, got {self.p!r}")
        if not (3 < self.p < MAX_MODULUS) or not is_prime(self.p):
            raise ValidationError(f"modulus must be a prime with 3 < p < {MAX_MODULUS}, got {self.p}")

    def __call__(self, value: int) -> Scalar:
        return Scalar(value % self.p, self)

    def inv(self, a: int) -> int:
        """Inverse of a residue by the extended Euclidean algorithm."""
        a %= self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.p}")
        r0, r1, s0, s1 = self.p, a, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return s0 % self.p

    def sqrt_table(self) -> dict[int, list[int]]:
        table: dict[int, list[int]] = {}
        for y in range(self.p):
            table.setdefault(y * y % self.p, []).append(y)
        return table

    def __repr__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class Scalar:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValidationError(f"{self.value} is not a canonical residue mod {self.field.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar((self.value + o) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar((self.value - o) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar((o - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.value * o % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value % self.field.p, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self.field.inv(o)

    def __pow__(self, k: int):
        if k < 0:
            return invert_scalar(self) ** (-k)
        return Scalar(pow(self.value, k, self.field.p), self.field)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


def invert_scalar(a: Scalar) -> Scalar:
    return Scalar(a.field.inv(a.value), a.field)


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class AtLeast:
    """Valuation sentinel: every stored coefficient vanishes."""

    precision: int


@dataclass(frozen=True)
class TruncSeries:
    """c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N) with N = ``precision``."""

    coefficients: tuple[int, ...]
    field: PrimeField

    def __post_init__(self):
        if not self.coefficients:
            raise ValidationError("series precision must be at least 1")
        p = self.field.p
        if any(not 0 <= c < p for c in self.coefficients):
            object.__setattr__(self, "coefficients", tuple(c % p for c in self.coefficients))

    @classmethod
    def from_list(cls, field: PrimeField, coeffs: Iterable[int], precision: int | None = None) -> TruncSeries:
        coeffs = [c % field.p for c in coeffs]
        if precision is not None:
            coeffs = (coeffs + [0] * precision)[:precision]
        return cls(tuple(coeffs), field)

    @property
    def precision(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int) -> Scalar:
        return Scalar(self.coefficients[i], self.field)

    def _check(self, other: TruncSeries):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        n = min(self.precision, other.precision)
        p = self.field.p
        return TruncSeries(tuple((a + b) % p for a, b in zip(self.coefficients[:n], other.coefficients[:n])), self.field)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        n = min(self.precision, other.precision)
        p = self.field.p
        return TruncSeries(tuple((a - b) % p for a, b in zip(self.coefficients[:n], other.coefficients[:n])), self.field)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_product(self, other)
        if isinstance(other, (int, Scalar)):
            c = int(other)
            return TruncSeries(tuple(a * c % self.field.p for a in self.coefficients), self.field)
        return NotImplemented


def mul_trunc(a: Sequence[int], b: Sequence[int], p: int, n: int) -> list[int]:
    """Product of two coefficient lists modulo (p, t^n)."""
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[: n - i]):
                out[i + j] += ai * bj
    return [c % p for c in out]


def series_product(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    a._check(b)
    n = min(a.precision, b.precision)
    return TruncSeries(tuple(mul_trunc(a.coefficients, b.coefficients, a.field.p, n)), a.field)


def series_valuation(a: TruncSeries) -> int | AtLeast:
    for i, c in enumerate(a.coefficients):
        if c:
            return i
    return AtLeast(a.precision)


# ---------------------------------------------------------------------------
# dense linear algebra


@dataclass(frozen=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]
    field: PrimeField

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValidationError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]], cols: int | None = None) -> DenseMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat: list[int] = []
        for r in rows:
            if len(r) != cols:
                raise ValidationError("ragged matrix rows")
            flat.extend(c % field.p for c in r)
        return cls(len(rows), cols, tuple(flat), field)

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> DenseMatrix:
        rows = self.to_rows()
        return DenseMatrix.from_rows(self.field, [list(c) for c in zip(*rows)] if rows else [], self.rows)

    def apply(self, v: Sequence[int]) -> list[int]:
        p = self.field.p
        return [sum(a * b for a, b in zip(self.row(i), v)) % p for i in range(self.rows)]


def row_reduce(field: PrimeField, rows: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form.

    Pivots are taken in the leftmost column that still has a nonzero entry,
    using the first eligible row in the current order.  Returns the nonzero
    reduced rows and their pivot columns.
    """
    p = field.p
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [x * inv % p for x in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(M: DenseMatrix) -> int:
    return len(row_reduce(M.field, M.to_rows(), M.cols)[1])


def kernel_basis(M: DenseMatrix) -> list[tuple[int, ...]]:
    """Basis of {v : M v = 0}, one vector per free column, echelonized."""
    p = M.field.p
    red, pivots = row_reduce(M.field, M.to_rows(), M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = [0] * M.cols
        v[free] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[free] % p
        basis.append(tuple(v))
    return basis
