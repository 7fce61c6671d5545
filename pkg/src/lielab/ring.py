"""Lie rings presented by structure constants over an exact field."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatchError, FieldMismatchError, JacobiError
from .fields import Field, PrimeField, Scalar
from .linalg import Matrix, Subspace

__all__ = ["LieRing", "bracket", "verify_jacobi", "ad_matrix", "JacobiReport"]


class JacobiReport:
    """Truthy iff Jacobi holds; ``triple`` is the first failing (i, j, k), 0-based."""

    __slots__ = ("holds", "triple", "defect")

    def __init__(self, holds: bool, triple=None, defect=None):
        self.holds = holds
        self.triple = triple
        self.defect = defect

    def __bool__(self):
        return self.holds

    def __repr__(self):
        if self.holds:
            return "JacobiReport(holds=True)"
        return f"JacobiReport(holds=False, triple={self.triple})"


class LieRing:
    """Finite-dimensional Lie ring with basis ``b_0, ..., b_{dim-1}``.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to the coordinate vector of
    ``[b_i, b_j]``; absent pairs bracket to zero.  Jacobi is verified on
    construction unless ``check=False`` (for tables already known to pass).
    """

    __slots__ = ("field", "dim", "brackets", "name", "metadata", "_sparse", "_ad_basis")

    def __init__(
        self,
        field: Field,
        dim: int,
        brackets: Mapping[tuple[int, int], Sequence],
        *,
        name: str = "",
        metadata: Mapping | None = None,
        check: bool = True,
    ):
        if dim < 1:
            raise ValueError("dimension must be positive")
        table = {}
        F = field
        for (i, j), vec in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatchError(f"basis index out of range in ({i}, {j})")
            if len(vec) != dim:
                raise DimensionMismatchError(f"bracket ({i}, {j}) has length {len(vec)}, expected {dim}")
            vec = tuple(vec)
            if i == j:
                if any(not F.is_zero(x) for x in vec):
                    raise JacobiError(f"[b_{i}, b_{i}] must vanish")
                continue
            if i > j:
                i, j = j, i
                vec = tuple(F.neg(x) for x in vec)
            if (i, j) in table:
                raise ValueError(f"bracket ({i}, {j}) given twice")
            if any(not F.is_zero(x) for x in vec):
                table[(i, j)] = vec
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "brackets", dict(sorted(table.items())))
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "metadata", dict(metadata or {}))
        object.__setattr__(self, "_sparse", self._build_sparse())
        object.__setattr__(self, "_ad_basis", None)
        if check:
            report = verify_jacobi(self)
            if not report:
                raise JacobiError(f"Jacobi identity fails on basis triple {report.triple}")

    def __setattr__(self, name, value):
        raise AttributeError("LieRing is immutable")

    @classmethod
    def from_values(cls, field: Field, dim: int, brackets: Mapping, **kw) -> "LieRing":
        """Like the constructor but coerces user values (ints, Fractions, coefficient lists)."""
        return cls(field, dim, {k: [field.coerce(x) for x in v] for k, v in brackets.items()}, **kw)

    def _build_sparse(self):
        F = self.field
        # sparse[i][j] = list of (k, c) with [b_i, b_j] = sum c b_k, both orders
        sparse = [[() for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), vec in self.brackets.items():
            pos = tuple((k, c) for k, c in enumerate(vec) if not F.is_zero(c))
            sparse[i][j] = pos
            sparse[j][i] = tuple((k, F.neg(c)) for k, c in pos)
        return sparse

    # -- elements ------------------------------------------------------------

    def element(self, coords: Iterable) -> tuple:
        vec = tuple(self.field.coerce(c) for c in coords)
        if len(vec) != self.dim:
            raise DimensionMismatchError(f"expected {self.dim} coordinates, got {len(vec)}")
        return vec

    def basis(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def scalars(self, v: Sequence) -> list[Scalar]:
        return [Scalar(self.field, x) for x in v]

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_subspace(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        """Span of raw vectors (use :meth:`element` to convert user values first)."""
        return Subspace(self.field, self.dim, vectors)

    def add(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def sub(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        return tuple(F.sub(a, b) for a, b in zip(x, y))

    def scale(self, c, x: Sequence) -> tuple:
        F = self.field
        return tuple(F.mul(c, a) for a in x)

    def is_zero_vector(self, x: Sequence) -> bool:
        return all(self.field.is_zero(a) for a in x)

    # -- structure -------------------------------------------------------------

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        return bracket(self, x, y)

    def basis_bracket(self, i: int, j: int) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for k, c in self._sparse[i][j]:
            out[k] = c
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        return ad_matrix(self, x)

    def ad_basis(self) -> list[Matrix]:
        """ad of every basis vector (cached)."""
        if self._ad_basis is None:
            object.__setattr__(self, "_ad_basis", [ad_matrix(self, self.basis(i)) for i in range(self.dim)])
        return self._ad_basis

    def is_abelian(self) -> bool:
        return not self.brackets

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieRing)
            and self.field == other.field
            and self.dim == other.dim
            and self.brackets == other.brackets
        )

    def __hash__(self):
        return hash((self.field, self.dim, tuple(self.brackets.items())))

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<LieRing {label}dim={self.dim} over {self.field!r}>"


def _raw(L: LieRing, x: Sequence) -> Sequence:
    if len(x) != L.dim:
        raise DimensionMismatchError(f"expected a vector of length {L.dim}, got {len(x)}")
    if x and isinstance(x[0], Scalar):
        if any(s.field != L.field for s in x):
            raise FieldMismatchError(f"element over {x[0].field}, ring over {L.field}")
        return tuple(s.value for s in x)
    return x


def bracket(L: LieRing, x: Sequence, y: Sequence) -> tuple:
    """``[x, y]`` by bilinear expansion through the structure constants."""
    x = _raw(L, x)
    y = _raw(L, y)
    F = L.field
    n = L.dim
    sparse = L._sparse
    if isinstance(F, PrimeField):
        p = F.p
        out = [0] * n
        for i, xi in enumerate(x):
            if xi:
                row = sparse[i]
                for j, yj in enumerate(y):
                    if yj and row[j]:
                        a = xi * yj
                        for k, c in row[j]:
                            out[k] += a * c
        return tuple(v % p for v in out)
    out = [F.zero] * n
    for i, xi in enumerate(x):
        if F.is_zero(xi):
            continue
        row = sparse[i]
        for j, yj in enumerate(y):
            if F.is_zero(yj) or not row[j]:
                continue
            a = F.mul(xi, yj)
            for k, c in row[j]:
                out[k] = F.add(out[k], F.mul(a, c))
    return tuple(out)


def ad_matrix(L: LieRing, x: Sequence) -> Matrix:
    """Matrix of ``y -> [x, y]``; column j is ``[x, b_j]``."""
    x = _raw(L, x)
    cols = [bracket(L, x, L.basis(j)) for j in range(L.dim)]
    return Matrix(L.field, [tuple(c[i] for c in cols) for i in range(L.dim)], L.dim)


def verify_jacobi(L: LieRing) -> JacobiReport:
    """Check Jacobi on every basis triple i < j < k (enough by trilinearity)."""
    n = L.dim
    F = L.field
    sparse = L._sparse
    # [b_i, v] for sparse v
    def br_sparse(i, v):
        out = {}
        row = sparse[i]
        for m, c in v:
            for k, d in row[m]:
                out[k] = F.add(out.get(k, F.zero), F.mul(c, d))
        return out

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, val in br_sparse(a, sparse[b][c]).items():
                        acc[m] = F.add(acc.get(m, F.zero), val)
                if any(not F.is_zero(v) for v in acc.values()):
                    defect = tuple(acc.get(m, F.zero) for m in range(n))
                    return JacobiReport(False, (i, j, k), defect)
    return JacobiReport(True)
