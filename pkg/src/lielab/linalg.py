"""Dense exact linear algebra over a :class:`~lielab.fields.Field`.

Vectors are tuples of raw field values.  Matrices act on column vectors, so
the right kernel of ``m`` is ``{v : m v = 0}``.  Subspaces are kept in
reduced row-echelon form with unit pivots; two subspaces are equal exactly
when their canonical rows are equal.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, FieldMismatchError
from .fields import Field, PrimeField, Scalar

__all__ = [
    "Matrix",
    "Subspace",
    "rref",
    "echelonize",
    "kernel",
    "eigenspace",
    "subspace_ops",
    "charpoly",
    "poly_roots",
    "random_invertible",
]


def _rref_prime(p: int, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], p - 2, p)
        prow = rows[r] = [x * inv % p for x in prow]
        for i in range(nrows):
            if i != r:
                f = rows[i][c] % p
                if f:
                    row = rows[i]
                    rows[i] = [(x - f * y) % p for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(field: Field, rows: Iterable[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form of the given rows (zero rows kept at the bottom)."""
    rows = [list(r) for r in rows]
    if isinstance(field, PrimeField):
        return _rref_prime(field.p, rows, ncols)
    F = field
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not F.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        prow = rows[r] = [F.mul(x, inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


class Matrix:
    """Immutable dense matrix over one field."""

    __slots__ = ("field", "rows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("ragged matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_values(cls, field: Field, data: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        """Build from user values (ints, Fractions, Scalars, coefficient lists)."""
        return cls(field, [[field.coerce(x) for x in row] for row in data], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.rows[i][j])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix({self.field!r}, [{body}])"

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [tuple(r[j] for r in self.rows) for j in range(self.ncols)], len(self.rows))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} vs {other.shape}")
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} vs {other.shape}")
        F = self.field
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F.coerce(c)
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"{self.shape} @ {other.shape}")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else [() for _ in range(other.ncols)]
        if isinstance(F, PrimeField):
            p = F.p
            out = [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.rows]
        else:
            out = [[_dot(F, r, c) for c in cols] for r in self.rows]
        return Matrix(F, out, other.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise DimensionMismatchError("vector length does not match matrix")
        F = self.field
        if isinstance(F, PrimeField):
            p = F.p
            return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.rows)
        return tuple(_dot(F, r, v) for r in self.rows)

    def __pow__(self, n: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatchError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def rank(self) -> int:
        return len(rref(self.field, self.rows, self.ncols)[1])

    def echelon(self) -> "Matrix":
        return echelonize(self)[0]

    def kernel(self) -> "Matrix":
        return kernel(self)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatchError("inverse of a non-square matrix")
        F = self.field
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(F, aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(F, [r[n:] for r in red[:n]], n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def column_space(self) -> "Subspace":
        return Subspace(self.field, self.nrows, self.transpose().rows)

    def row_space(self) -> "Subspace":
        return Subspace(self.field, self.ncols, self.rows)


def _dot(F: Field, r: Sequence, c: Sequence):
    acc = F.zero
    for a, b in zip(r, c):
        if not F.is_zero(a) and not F.is_zero(b):
            acc = F.add(acc, F.mul(a, b))
    return acc


def echelonize(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank, and pivot columns.  Shape is preserved."""
    rows, pivots = rref(m.field, m.rows, m.ncols)
    return Matrix(m.field, rows, m.ncols), len(pivots), pivots


def _kernel_rows(field: Field, rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    red, pivots = rref(field, rows, ncols)
    F = field
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(red[i][free])
        basis.append(v)
    # canonicalise
    red2, piv2 = rref(F, basis, ncols)
    return [tuple(r) for r in red2[: len(piv2)]]


def kernel(m: Matrix) -> Matrix:
    """Echelonized basis (as rows) of ``{v : m v = 0}``."""
    return Matrix(m.field, _kernel_rows(m.field, m.rows, m.ncols), m.ncols)


def eigenspace(m: Matrix, lam) -> Matrix:
    """Kernel of ``m - lam * I`` as echelonized rows."""
    if m.nrows != m.ncols:
        raise DimensionMismatchError("eigenspace of a non-square matrix")
    F = m.field
    lam = F.coerce(lam)
    shifted = [[F.sub(x, lam) if i == j else x for j, x in enumerate(r)] for i, r in enumerate(m.rows)]
    return Matrix(F, _kernel_rows(F, shifted, m.ncols), m.ncols)


class Subspace:
    """A linear subspace of ``F^ambient`` in canonical echelon form."""

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Sequence] = (), *, canonical: bool = False):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {ambient}")
        if canonical:
            rows = tuple(vectors)
            pivots = tuple(_leading(field, r) for r in rows)
        else:
            red, piv = rref(field, vectors, ambient)
            rows = tuple(tuple(r) for r in red[: len(piv)])
            pivots = tuple(piv)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), canonical=True)

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        rows = [tuple(field.one if i == j else field.zero for j in range(ambient)) for i in range(ambient)]
        return cls(field, ambient, rows, canonical=True)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.ambient

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.rows, self.ambient)

    def _compat(self, other: "Subspace"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.ambient != other.ambient:
            raise DimensionMismatchError(f"ambient {self.ambient} vs {other.ambient}")

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after eliminating the pivot columns."""
        F = self.field
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v)

    def __contains__(self, v: Sequence) -> bool:
        return all(self.field.is_zero(x) for x in self.reduce(v))

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the canonical basis (``v`` must lie in the space)."""
        if v not in self:
            raise ValueError("vector is not in the subspace")
        return tuple(v[pc] for pc in self.pivots)

    def combine(self, coords: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.ambient
        for c, row in zip(coords, self.rows):
            if not F.is_zero(c):
                out = [F.add(x, F.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace(self.field, self.ambient, self.rows + other.rows)

    def __and__(self, other: "Subspace") -> "Subspace":
        """Intersection by the Zassenhaus stacking trick."""
        self._compat(other)
        F = self.field
        n = self.ambient
        zero = [F.zero] * n
        stacked = [list(r) + list(r) for r in self.rows] + [list(r) + zero for r in other.rows]
        red, piv = rref(F, stacked, 2 * n)
        inter = [r[n:] for r, pc in zip(red, piv) if pc >= n]
        return Subspace(F, n, inter)

    def __le__(self, other: "Subspace") -> bool:
        self._compat(other)
        return all(r in other for r in self.rows)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.rows))

    def complement_indices(self) -> list[int]:
        """Standard basis indices spanning a complement (the non-pivot columns)."""
        piv = set(self.pivots)
        return [j for j in range(self.ambient) if j not in piv]

    def complement(self) -> "Subspace":
        F = self.field
        rows = [tuple(F.one if i == j else F.zero for i in range(self.ambient)) for j in self.complement_indices()]
        return Subspace(F, self.ambient, rows, canonical=True)

    def __repr__(self):
        F = self.field
        body = ", ".join("(" + ",".join(F.format(x) for x in r) + ")" for r in self.rows)
        return f"Subspace(dim={self.dim}/{self.ambient}, [{body}])"


def _leading(field: Field, row: Sequence) -> int:
    for j, x in enumerate(row):
        if not field.is_zero(x):
            return j
    raise ValueError("zero row in canonical basis")


def subspace_ops(a: Subspace, b: Subspace, op: str):
    """``sum``, ``intersect``, ``contains`` (is b inside a) or ``equals``."""
    if op == "sum":
        return a + b
    if op == "intersect":
        return a & b
    if op == "contains":
        return b <= a
    if op == "equals":
        a._compat(b)
        return a == b
    raise ValueError(f"unknown subspace op {op!r}")


# -- polynomials -------------------------------------------------------------


def charpoly(m: Matrix) -> list:
    """Characteristic polynomial det(x I - m), coefficients low-to-high, monic.

    Berkowitz's division-free algorithm, so it is valid in every characteristic.
    """
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatchError("charpoly of a non-square matrix")
    F = m.field
    A = [list(r) for r in m.rows]
    # vect holds coefficients high-to-low
    vect = [F.one]
    for r in range(n):
        a_rr = A[r][r]
        R = A[r][:r]                      # row r, columns < r
        C = [A[i][r] for i in range(r)]   # column r, rows < r
        Asub = [row[:r] for row in A[:r]]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, ...
        col = [F.one, F.neg(a_rr)]
        vec = C
        for _ in range(r):
            col.append(F.neg(_dot(F, R, vec)))
            vec = [_dot(F, row, vec) for row in Asub]
        # multiply lower-triangular Toeplitz(col) (size r+2 x r+1) by vect
        new = []
        for i in range(r + 2):
            acc = F.zero
            for j in range(min(i + 1, r + 1)):
                acc = F.add(acc, F.mul(col[i - j], vect[j]))
            new.append(acc)
        vect = new
    return list(reversed(vect))


def poly_eval(field: Field, coeffs: Sequence, x):
    acc = field.zero
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_roots(field: Field, coeffs: Sequence) -> list:
    """Distinct roots in ``field`` of a nonzero polynomial (low-to-high coefficients).

    Finite fields: exhaustive scan.  Q: rational-root theorem.
    """
    F = field
    coeffs = list(coeffs)
    while coeffs and F.is_zero(coeffs[-1]):
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every element as a root")
    if F.is_finite:
        if F.order > 10**6:
            raise ValueError("root scan limited to fields of order <= 10^6")
        return [x for x in F.elements() if F.is_zero(poly_eval(F, coeffs, x))]
    return _rational_roots(coeffs)


def _rational_roots(coeffs: list) -> list:
    from fractions import Fraction
    import math

    roots = []
    # strip x factors
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return roots
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.update((d, n // d))
            d += 1
        return out

    for num in divisors(a0):
        for den in divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return sorted(roots)


def random_invertible(field: Field, n: int, rng: random.Random) -> Matrix:
    """Uniform-ish random invertible matrix (rejection sampling)."""
    while True:
        m = Matrix(field, [[field.random_element(rng) for _ in range(n)] for _ in range(n)], n)
        if m.rank() == n:
            return m
