"""Named Lie rings and combinators that build new rings from old ones."""

from __future__ import annotations

import random
import re
from typing import Sequence

from .chevalley import CATALOG_TYPES, RootSystemData, chevalley_signs, integral_table, root_system
from .errors import ExcludedCharacteristicError, FieldMismatchError, JacobiError, NotASubringError
from .fields import ExtensionField, Field, GF, PrimeField, is_prime, parse_field
from .linalg import Matrix, Subspace, random_invertible
from .ring import LieRing, verify_jacobi
from .structure import is_subring

__all__ = [
    "make_sl2", "make_ga1", "make_ga1_twisted", "make_heisenberg", "make_witt", "make_abelian",
    "make_chevalley", "direct_sum", "restrict_to_subring", "change_basis", "random_basis_change",
    "frobenius_matrix", "build", "CONSTRUCTION_NAMES",
]


def _field(field) -> Field:
    return parse_field(field) if isinstance(field, str) else field


def _table(F: Field, dim: int, entries: dict) -> dict:
    """``{(i, j): {k: int}}`` -> dense raw vectors."""
    out = {}
    for key, comps in entries.items():
        vec = [F.zero] * dim
        for k, c in comps.items():
            vec[k] = F.from_int(c)
        out[key] = vec
    return out


def make_sl2(field) -> LieRing:
    """Basis (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    F = _field(field)
    t = _table(F, 3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    return LieRing(F, 3, t, name="sl2", metadata={"basis": ["h", "e", "f"]})


def make_ga1(field) -> LieRing:
    """Basis (h, e) with [h, e] = e."""
    F = _field(field)
    return LieRing(F, 2, _table(F, 2, {(0, 1): {1: 1}}), name="ga1", metadata={"basis": ["h", "e"]})


def make_heisenberg(field) -> LieRing:
    """Basis (x, y, z) with [x, y] = z and z central."""
    F = _field(field)
    return LieRing(F, 3, _table(F, 3, {(0, 1): {2: 1}}), name="heisenberg", metadata={"basis": ["x", "y", "z"]})


def make_abelian(field, n: int) -> LieRing:
    F = _field(field)
    return LieRing(F, n, {}, name=f"abelian:{n}")


def make_witt(p: int) -> LieRing:
    """W(1;1) over F_p: basis e_{-1}..e_{p-2}, [e_i, e_j] = (j - i) e_{i+j}.

    Basis position ``i + 1`` holds ``e_i``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 5:
        raise ExcludedCharacteristicError("the Witt algebra is only built for p >= 5")
    F = GF(p)
    entries = {}
    for i in range(-1, p - 1):
        for j in range(i + 1, p - 1):
            s = i + j
            if -1 <= s <= p - 2 and (j - i) % p:
                entries[(i + 1, j + 1)] = {s + 1: j - i}
    names = [f"e{i}" for i in range(-1, p - 1)]
    return LieRing(F, p, _table(F, p, entries), name=f"witt({p})", metadata={"basis": names})


def frobenius_matrix(E: ExtensionField) -> Matrix:
    """x -> x^p on the power basis of ``E``, as a k x k matrix over F_p."""
    Fp = GF(E.p)
    k = E.degree
    cols = [E.coefficients(E.pow(E.from_coefficients([1 if i == j else 0 for i in range(k)]), E.p)) for j in range(k)]
    return Matrix(Fp, [[cols[j][i] for j in range(k)] for i in range(k)], k)


def make_ga1_twisted(p: int, k: int, alpha: Matrix | Sequence[Sequence[int]] | None = None) -> LieRing:
    """Pairs (x, y) in F_{p^k}^2 with [(x1,y1),(x2,y2)] = (0, a(x1) y2 - a(x2) y1), over F_p.

    ``alpha`` is any F_p-linear map on the power basis (default: Frobenius).
    Basis: ``(t^i, 0)`` for i < k, then ``(0, t^j)``.
    """
    if k < 2:
        raise ValueError("extension degree must be at least 2")
    E = GF(p, k)
    Fp = GF(p)
    if alpha is None:
        A = frobenius_matrix(E)
    else:
        A = alpha if isinstance(alpha, Matrix) else Matrix.from_values(Fp, alpha)
        if A.field != Fp or A.shape != (k, k):
            raise ValueError(f"alpha must be a {k}x{k} matrix over F_{p}")
    dim = 2 * k
    table = {}
    for i in range(k):
        ax = E.from_coefficients([A.rows[r][i] for r in range(k)])
        for j in range(k):
            prod = E.coefficients(E.mul(ax, E.from_coefficients([1 if r == j else 0 for r in range(k)])))
            if any(prod):
                vec = [0] * dim
                vec[k:] = prod
                table[(i, k + j)] = vec
    return LieRing(Fp, dim, table, name=f"ga1-twisted({p}^{k})",
                   metadata={"alpha": [list(r) for r in A.rows], "modulus": list(E.modulus)})


def make_chevalley(phi: RootSystemData | str, field, *, allow_extended: bool = False) -> LieRing:
    """Chevalley ring of type ``phi`` over ``field``: the integral table reduced into the field."""
    F = _field(field)
    R = root_system(phi) if isinstance(phi, str) else phi
    if R.type_label not in CATALOG_TYPES and not allow_extended:
        raise ValueError(f"{R.type_label} is not in the catalog {', '.join(CATALOG_TYPES)}")
    dim, table, labels = integral_table(R.type_label)
    signs = chevalley_signs(R.type_label)
    t = {key: [F.from_int(c) for c in vec] for key, vec in table.items()}
    # the integral table was checked over Q when first built; recheck after reduction
    L = LieRing(F, dim, t, name=f"chevalley:{R.type_label}", check=False,
                metadata={"basis": labels, "signs": signs.serialize()})
    report = verify_jacobi(L)
    if not report:
        raise JacobiError(f"Chevalley table {R.type_label} fails Jacobi at {report.triple}")
    return L


# -- combinators ---------------------------------------------------------------


def direct_sum(L1: LieRing, L2: LieRing) -> LieRing:
    if L1.field != L2.field:
        raise FieldMismatchError("direct sum needs a common field")
    F = L1.field
    n1, n = L1.dim, L1.dim + L2.dim
    table = {}
    for (i, j), v in L1.brackets.items():
        table[(i, j)] = list(v) + [F.zero] * L2.dim
    for (i, j), v in L2.brackets.items():
        table[(n1 + i, n1 + j)] = [F.zero] * n1 + list(v)
    name = f"{L1.name}+{L2.name}" if L1.name and L2.name else ""
    return LieRing(F, n, table, name=name, check=False)


def restrict_to_subring(L: LieRing, S: Subspace) -> LieRing:
    """Structure constants of ``S`` on its echelon basis."""
    if not is_subring(L, S):
        raise NotASubringError("subspace is not closed under the bracket")
    if S.is_zero():
        raise ValueError("the zero subring has no basis")
    rows = S.rows
    m = len(rows)
    table = {}
    for a in range(m):
        for b in range(a + 1, m):
            table[(a, b)] = S.coordinates(L.bracket(rows[a], rows[b]))
    out = LieRing(L.field, m, table, check=False)
    assert verify_jacobi(out)
    return out


def change_basis(L: LieRing, g: Matrix) -> LieRing:
    """Ring on the new basis ``b'_i = sum_k g[k][i] b_k`` (columns of ``g``)."""
    if g.field != L.field or g.shape != (L.dim, L.dim):
        raise ValueError(f"basis change must be a {L.dim}x{L.dim} matrix over {L.field!r}")
    ginv = g.inverse()  # raises ZeroDivisionError when singular
    cols = [tuple(r[i] for r in g.rows) for i in range(L.dim)]
    table = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            table[(i, j)] = ginv.apply(L.bracket(cols[i], cols[j]))
    out = LieRing(L.field, L.dim, table, name=L.name, check=False)
    assert verify_jacobi(out)
    return out


def random_basis_change(L: LieRing, seed: int = 0, *, return_matrix: bool = False):
    rng = random.Random(seed)
    g = random_invertible(L.field, L.dim, rng)
    out = change_basis(L, g)
    return (out, g) if return_matrix else out


# -- name registry ---------------------------------------------------------------

CONSTRUCTION_NAMES = ("sl2", "ga1", "ga1-twisted", "heisenberg", "witt", "chevalley:<type>", "abelian:<n>")


def build(name: str, field=None) -> LieRing:
    """Construct by CLI name.  Witt and twisted ga1 take their parameters from ``field``."""
    F = _field(field) if field is not None else None
    name = name.strip()
    if name in {"sl2", "ga1", "heisenberg"} or name.startswith(("chevalley:", "abelian:")):
        if F is None:
            raise ValueError(f"{name} needs a field")
    if name == "sl2":
        return make_sl2(F)
    if name == "ga1":
        return make_ga1(F)
    if name == "heisenberg":
        return make_heisenberg(F)
    if name == "witt":
        if not isinstance(F, PrimeField):
            raise ValueError("witt needs a prime field p=P")
        return make_witt(F.p)
    if name == "ga1-twisted":
        if not isinstance(F, ExtensionField):
            raise ValueError("ga1-twisted needs an extension field p=P,k=K")
        return make_ga1_twisted(F.p, F.degree)
    m = re.fullmatch(r"chevalley:([A-Ga-g]\d+)", name)
    if m:
        return make_chevalley(m.group(1).upper(), F)
    m = re.fullmatch(r"abelian:(\d+)", name)
    if m:
        return make_abelian(F, int(m.group(1)))
    raise ValueError(f"unknown construction {name!r}; known: {', '.join(CONSTRUCTION_NAMES)}")
