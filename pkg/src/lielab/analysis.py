"""Recognition of sl2 and ga1, derivations, and soluble-subring discovery."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .constructions import change_basis, make_ga1, make_sl2
from .errors import DimensionMismatchError, ExcludedCharacteristicError
from .fields import ExtensionField, Field, GF, PrimeField
from .linalg import Matrix, Subspace, _kernel_rows, charpoly, eigenspace, poly_roots, rref
from .ring import LieRing, verify_jacobi
from .structure import (
    center,
    is_nilpotent,
    is_soluble,
    quotient,
    subring_closure,
    upper_central_series,
)

__all__ = [
    "RecognitionReport", "Sl2Triple", "recognize_sl2", "recognize_ga1", "verify_isomorphism",
    "derivation_space", "derivation_matrices", "find_soluble_through", "center", "central_quotient",
    "RECOGNITION_BUDGET",
]

RECOGNITION_BUDGET = 4096

RECOGNIZED = "recognized"
NOT_ISOMORPHIC = "not_isomorphic"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Sl2Triple:
    h: tuple
    e: tuple
    f: tuple


@dataclass(frozen=True)
class RecognitionReport:
    verdict: str
    target_label: str
    isomorphism: Matrix | None = None   # input coordinates -> model coordinates
    certificate: list = dc_field(default_factory=list)
    failure_reason: str = ""
    triple: Sl2Triple | None = None
    eigenvalue: object = None           # c with spectrum {0, c, -c} before rescaling
    trials: int = 0

    @property
    def recognized(self) -> bool:
        return self.verdict == RECOGNIZED

    def to_json(self, field: Field) -> dict:
        enc = field.encode
        out = {
            "verdict": self.verdict,
            "target": self.target_label,
            "failure_reason": self.failure_reason,
            "trials": self.trials,
            "certificate": self.certificate,
        }
        if self.isomorphism is not None:
            out["isomorphism"] = [[enc(x) for x in r] for r in self.isomorphism.rows]
        if self.triple is not None:
            out["triple"] = {k: [enc(x) for x in getattr(self.triple, k)] for k in ("h", "e", "f")}
        if self.eigenvalue is not None:
            out["eigenvalue"] = enc(self.eigenvalue)
        return out


def _check_char(F: Field):
    if F.characteristic in (2, 3):
        raise ExcludedCharacteristicError(f"characteristic {F.characteristic} is excluded")


def _certify(L: LieRing, model: LieRing, T: Matrix) -> tuple[bool, list]:
    """Transport L along the basis columns of ``T`` and compare with ``model``."""
    F = L.field
    names = model.metadata.get("basis") or [f"b{i + 1}" for i in range(model.dim)]
    moved = change_basis(L, T)
    cert = []
    ok = True
    for i in range(model.dim):
        for j in range(i + 1, model.dim):
            got = moved.basis_bracket(i, j)
            want = model.basis_bracket(i, j)
            cert.append({
                "bracket": f"[{names[i]},{names[j]}]",
                "computed": [F.encode(x) for x in got],
                "expected": [F.encode(x) for x in want],
            })
            ok = ok and got == want
    return ok, cert


def verify_isomorphism(L: LieRing, model: LieRing, iso: Matrix) -> bool:
    """``iso`` maps L-coordinates to model coordinates and preserves brackets."""
    if iso.shape != (L.dim, model.dim) or not iso.is_invertible():
        return False
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = iso.apply(L.basis_bracket(i, j))
            rhs = model.bracket(iso.apply(L.basis(i)), iso.apply(L.basis(j)))
            if lhs != rhs:
                return False
    return True


def _obstruction(L: LieRing) -> str | None:
    if is_nilpotent(L):
        return "nilpotent"
    if is_soluble(L):
        return "soluble"
    if not center(L).is_zero():
        return "nonzero center"
    return None


def _candidates(L: LieRing, rng: random.Random, budget: int):
    F = L.field
    n = L.dim
    for i in range(n):
        yield L.basis(i)
    for i in range(n):
        for j in range(i + 1, n):
            yield L.add(L.basis(i), L.basis(j))
    for _ in range(budget):
        if F.is_finite:
            yield tuple(F.random_element(rng) for _ in range(n))
        else:
            yield tuple(F.from_int(rng.randint(-4, 4)) for _ in range(n))


def _split_element(L: LieRing, h: Sequence):
    """Return c if ad_h has spectrum {0, c, -c} in the field with c != 0, else None."""
    F = L.field
    A = L.ad(h)
    roots = poly_roots(F, charpoly(A))
    if len(roots) != 3 or F.zero not in roots:
        return None
    c = next(r for r in roots if not F.is_zero(r))
    if F.neg(c) not in roots:
        return None
    return c


def recognize_sl2(L: LieRing, *, seed: int = 0, budget: int = RECOGNITION_BUDGET) -> RecognitionReport:
    """Find an sl2-triple (h, e, f) and return the verified isomorphism onto ``make_sl2``.

    Candidates for h: basis vectors, pairwise sums, then ``budget`` seeded random
    elements.  "not_isomorphic" is only returned with a structural certificate.
    """
    if L.dim != 3:
        raise DimensionMismatchError(f"sl2 recognition needs dimension 3, got {L.dim}")
    F = L.field
    _check_char(F)
    reason = _obstruction(L)
    if reason:
        return RecognitionReport(NOT_ISOMORPHIC, "sl2", failure_reason=reason)
    model = make_sl2(F)
    rng = random.Random(seed)
    two = F.from_int(2)
    trials = 0
    for h0 in _candidates(L, rng, budget):
        trials += 1
        if L.is_zero_vector(h0):
            continue
        c = _split_element(L, h0)
        if c is None:
            continue
        h = L.scale(F.div(two, c), h0)
        A = L.ad(h)
        E2 = eigenspace(A, two)
        Em2 = eigenspace(A, F.neg(two))
        if E2.nrows != 1 or Em2.nrows != 1:
            continue
        e = E2.rows[0]
        f0 = Em2.rows[0]
        ef = L.bracket(e, f0)
        # [e, f0] lies in E_0 = span(h); scale f0 so that [e, f] = h
        k = next((i for i, x in enumerate(h) if not F.is_zero(x)), None)
        t = F.div(h[k], ef[k]) if not F.is_zero(ef[k]) else None
        if t is None:
            continue
        f = L.scale(t, f0)
        if L.bracket(e, f) != h:
            continue
        T = Matrix(F, [(h[i], e[i], f[i]) for i in range(3)], 3)
        if not T.is_invertible():
            continue
        ok, cert = _certify(L, model, T)
        if not ok:
            continue
        iso = T.inverse()
        assert verify_isomorphism(L, model, iso)
        return RecognitionReport(RECOGNIZED, "sl2", iso, cert, "", Sl2Triple(h, e, f), c, trials)
    return RecognitionReport(INCONCLUSIVE, "sl2", failure_reason="regular element search budget exhausted",
                             trials=trials)


def recognize_ga1(L: LieRing) -> RecognitionReport:
    """Find (h, e) with [h, e] = e and return the verified isomorphism onto ``make_ga1``."""
    if L.dim != 2:
        raise DimensionMismatchError(f"ga1 recognition needs dimension 2, got {L.dim}")
    F = L.field
    _check_char(F)
    if is_nilpotent(L):
        return RecognitionReport(NOT_ISOMORPHIC, "ga1", failure_reason="nilpotent")
    model = make_ga1(F)
    # L' is spanned by the one nonzero structure vector
    e = L.basis_bracket(0, 1)
    for i in range(2):
        x = L.basis(i)
        xe = L.bracket(x, e)
        k = next((j for j, v in enumerate(e) if not F.is_zero(v)))
        lam = F.div(xe[k], e[k])
        if F.is_zero(lam):
            continue
        h = L.scale(F.inv(lam), x)
        T = Matrix(F, [(h[r], e[r]) for r in range(2)], 2)
        ok, cert = _certify(L, model, T)
        if ok:
            iso = T.inverse()
            assert verify_isomorphism(L, model, iso)
            return RecognitionReport(RECOGNIZED, "ga1", iso, cert, "", trials=i + 1)
    # non-nilpotent 2-dim rings are always ga1; getting here is a bug
    raise AssertionError("failed to coordinatise a non-nilpotent 2-dimensional ring")


# -- derivations ----------------------------------------------------------------


def _field_algebra(E: Field) -> tuple[Field, int, list]:
    """F_p, k, product table of the power basis of E (c[i][j] = coords of t^(i+j))."""
    if isinstance(E, PrimeField):
        return E, 1, [[[1]]]
    if not isinstance(E, ExtensionField):
        raise ValueError("the field flavour needs a finite field")
    k = E.degree
    powers = [E.from_coefficients([1 if r == i else 0 for r in range(k)]) for i in range(k)]
    table = [[list(E.coefficients(E.mul(a, b))) for b in powers] for a in powers]
    return GF(E.p), k, table


def derivation_space(obj) -> Matrix:
    """Echelonized basis of derivations, each flattened row-major from its n x n matrix.

    ``obj`` is a finite field (derivations of F_{p^k} over F_p on the power
    basis) or a LieRing.  Column ``m`` of a derivation matrix is the image of
    basis vector ``m``.
    """
    if isinstance(obj, LieRing):
        F, n = obj.field, obj.dim
        table = [[list(obj.basis_bracket(i, j)) for j in range(n)] for i in range(n)]
    else:
        F, n, table = _field_algebra(obj)
    zero = F.zero
    rows = []
    N = n * n
    for i in range(n):
        for j in range(n):
            lhs_vec = table[i][j]
            # for each output coordinate l: sum_m c_ij^m D[l][m] - sum_k D[k][i] c_kj^l - sum_k D[k][j] c_ik^l = 0
            for l in range(n):
                eq = [zero] * N
                for m in range(n):
                    c = lhs_vec[m]
                    if not F.is_zero(c):
                        eq[l * n + m] = F.add(eq[l * n + m], c)
                for k in range(n):
                    c = table[k][j][l]
                    if not F.is_zero(c):
                        eq[k * n + i] = F.sub(eq[k * n + i], c)
                    c = table[i][k][l]
                    if not F.is_zero(c):
                        eq[k * n + j] = F.sub(eq[k * n + j], c)
                if any(not F.is_zero(x) for x in eq):
                    rows.append(eq)
    sol = _kernel_rows(F, rows, N) if rows else [[F.one if a == b else zero for a in range(N)] for b in range(N)]
    red, _ = rref(F, sol, N) if sol else ([], [])
    return Matrix(F, red, N)


def derivation_matrices(D: Matrix, n: int) -> list[Matrix]:
    """Unflatten the rows of :func:`derivation_space`."""
    return [Matrix(D.field, [row[r * n:(r + 1) * n] for r in range(n)], n) for row in D.rows]


# -- soluble subrings -----------------------------------------------------------


def find_soluble_through(L: LieRing, x: Sequence, seed: int = 0, *, random_trials: int = 64) -> Subspace:
    """Greedy soluble subring containing ``x`` (maximal among what the scan finds)."""
    F = L.field
    rng = random.Random(seed)
    S = subring_closure(L, L.span([x]))
    assert is_soluble(L, S)
    cands = [L.basis(i) for i in range(L.dim)]
    for _ in range(random_trials):
        if F.is_finite:
            cands.append(tuple(F.random_element(rng) for _ in range(L.dim)))
        else:
            cands.append(tuple(F.from_int(rng.randint(-3, 3)) for _ in range(L.dim)))
    changed = True
    while changed and not S.is_full():
        changed = False
        for c in cands:
            if c in S:
                continue
            T = subring_closure(L, S + L.span([c]))
            if is_soluble(L, T):
                S = T
                changed = True
    return S


def central_quotient(L: LieRing) -> LieRing:
    """``L / Z(L)``; when Z2 = Z the quotient is checked to be centreless."""
    Z = center(L)
    if Z.is_full():
        raise ValueError("abelian ring: the central quotient is zero")
    Q = quotient(L, Z).ring if not Z.is_zero() else L
    if len(upper_central_series(L)) <= 2:  # Z_2 = Z_1
        assert center(Q).is_zero(), "quotient by a stable centre must be centreless"
    assert verify_jacobi(Q)
    return Q
