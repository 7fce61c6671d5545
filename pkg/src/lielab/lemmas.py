"""Executable checks of the general lemmas on iterated centralizers, bracket
images, abelian subrings, eigenspace lifting, actions on quotients and
self-normalisation, plus a seeded random sweep over the catalog.

Each check returns a :class:`LemmaVerdict`.  A vacuous check (hypothesis not
met) reports ``holds=True, hypothesis_met=False``.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import ExcludedCharacteristicError, LemmaFailure, NotASubringError
from .fields import Field
from .io import from_document, to_document
from .linalg import Matrix, Subspace, _kernel_rows, charpoly, poly_roots
from .ring import LieRing
from .structure import (
    bracket_space,
    centralizer_C,
    centralizer_of_set,
    ideal_closure,
    image_B,
    is_abelian,
    is_nilpotent,
    is_simple,
    is_subring,
    normalizer,
    subring_closure,
)

__all__ = [
    "LemmaVerdict", "LEMMA_IDS", "check_lemma_Cn", "check_lemma_divisors", "check_lemma_rosengarten",
    "check_lemma_lifting", "check_lemma_prehrushovski", "check_lemma_selfnorm", "replay",
    "randomized_lemma_sweep", "default_catalog",
]

LEMMA_IDS = ("Cn", "divisors", "rosengarten", "lifting", "prehrushovski", "selfnorm")


@dataclass(frozen=True)
class LemmaVerdict:
    lemma_id: str
    holds: bool
    hypothesis_met: bool
    witness: dict = dc_field(default_factory=dict)
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"lemma": self.lemma_id, "holds": self.holds, "hypothesis_met": self.hypothesis_met,
               "witness": self.witness}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _enc_vec(F: Field, v) -> list:
    return [F.encode(x) for x in v]


def _enc_space(S: Subspace) -> list:
    return [_enc_vec(S.field, r) for r in S.rows]


def _verdict(lemma: str, L: LieRing, holds: bool, met: bool, witness: dict, inputs: dict) -> LemmaVerdict:
    cex = None
    if not holds:
        cex = {"ring": to_document(L), "inputs": inputs}
    return LemmaVerdict(lemma, holds, met, witness, cex)


def _no_char2(L: LieRing):
    if L.field.characteristic == 2:
        raise ExcludedCharacteristicError("the lemma assumes no additive 2-torsion")


def check_lemma_Cn(L: LieRing, h: Sequence, n: int) -> LemmaVerdict:
    """If C_h^n is abelian then C_h^{n+1} is a subring."""
    if n < 1:
        raise ValueError("n must be at least 1")
    Cn = centralizer_C(L, h, n)
    Cn1 = centralizer_C(L, h, n + 1)
    met = is_abelian(L, Cn)
    holds = is_subring(L, Cn1) if met else True
    F = L.field
    return _verdict("Cn", L, holds, met, {"dim_Cn": Cn.dim, "dim_Cn1": Cn1.dim, "n": n},
                    {"h": _enc_vec(F, h), "n": n})


def check_lemma_divisors(L: LieRing, a: Sequence) -> LemmaVerdict:
    """If C_a^2 = L then B_a is an abelian subring and an ideal of C_a."""
    _no_char2(L)
    C2 = centralizer_C(L, a, 2)
    met = C2.is_full()
    B = image_B(L, a)
    C = centralizer_C(L, a)
    if met:
        holds = is_abelian(L, B) and B <= C and bracket_space(L, B, C) <= B
    else:
        holds = True
    return _verdict("divisors", L, holds, met, {"dim_B": B.dim, "dim_C": C.dim},
                    {"a": _enc_vec(L.field, a)})


def iterated_bracket_space(L: LieRing, A: Subspace, x: Sequence, n: int) -> Subspace:
    """A_n = [A, [A, ... [A, x]]] with A appearing n times."""
    S = L.span([x])
    for _ in range(n):
        S = bracket_space(L, A, S)
    return S


def check_lemma_rosengarten(L: LieRing, A: Subspace, x: Sequence, n: int) -> LemmaVerdict:
    """For an abelian subring A: [A_n, A_n] lies in [A, L]."""
    _no_char2(L)
    if not is_abelian(L, A):
        raise NotASubringError("A must be an abelian subring")
    if n < 1:
        raise ValueError("n must be at least 1")
    An = iterated_bracket_space(L, A, x, n)
    lhs = bracket_space(L, An, An)
    rhs = bracket_space(L, A, L.full())
    holds = lhs <= rhs
    return _verdict("rosengarten", L, holds, True, {"dim_An": An.dim, "dim_AnAn": lhs.dim, "dim_AL": rhs.dim},
                    {"A": _enc_space(A), "x": _enc_vec(L.field, x), "n": n})


def _preimage(L: LieRing, rows: Sequence[Sequence], V: Subspace, U: Subspace) -> Subspace:
    """``{v in V : M v in U}`` where ``M`` is stacked from n x n blocks given as rows."""
    F = L.field
    n = L.dim
    if V.is_zero():
        return V
    ann = _kernel_rows(F, U.rows, n) if not U.is_zero() else Matrix.identity(F, n).rows
    if not ann:
        return V
    Vt = Matrix(F, V.rows, n).T
    Phi = Matrix(F, ann, n)
    cond = []
    for b in range(0, len(rows), n):
        cond.extend((Phi @ Matrix(F, rows[b:b + n], n) @ Vt).rows)
    coeffs = _kernel_rows(F, cond, V.dim)
    return Subspace(F, n, [V.combine(c) for c in coeffs])


def _invariant(L: LieRing, V: Subspace, h) -> bool:
    A = L.ad(h)
    return all(A.apply(v) in V for v in V.rows)


def check_lemma_lifting(L: LieRing, V: Subspace, Vp: Subspace, h: Sequence, k) -> LemmaVerdict:
    """If ad_h has a nonzero k-eigenvector on V/V' then E_k(h) is nonzero in L."""
    F = L.field
    if not Vp <= V:
        raise ValueError("V' must lie inside V")
    if not (_invariant(L, V, h) and _invariant(L, Vp, h)):
        raise ValueError("V and V' must be ad_h-invariant")
    k = F.coerce(k)
    phi = L.ad(h) - Matrix.identity(F, L.dim).scale(k)
    # W = {v in V : phi v in V'}; the quotient eigenspace is W / V'
    W = _preimage(L, phi.rows, V, Vp)
    met = W.dim > Vp.dim
    Ek = Matrix(F, _kernel_rows(F, phi.rows, L.dim), L.dim)
    holds = Ek.nrows > 0 if met else True
    return _verdict("lifting", L, holds, met, {"dim_quotient_eigenspace": W.dim - Vp.dim, "dim_Ek": Ek.nrows},
                    {"V": _enc_space(V), "Vp": _enc_space(Vp), "h": _enc_vec(F, h), "k": F.encode(k)})


def acting_kernel(L: LieRing, H: Subspace) -> Subspace:
    """{x in H : [x, L] in H}."""
    rows = [r for A in L.ad_basis() for r in A.rows]
    return _preimage(L, rows, H, H)


def check_lemma_prehrushovski(L: LieRing, H: Subspace, *, simple_known: bool = False) -> LemmaVerdict:
    """For L simple and H a proper subring, {x in H : [x, L] in H} is nilpotent."""
    if not simple_known and not is_simple(L):
        raise ValueError("the ring must be simple")
    if not is_subring(L, H) or H.is_full():
        raise NotASubringError("H must be a proper subring")
    I = acting_kernel(L, H)
    holds = is_nilpotent(L, I)
    return _verdict("prehrushovski", L, holds, True, {"dim_H": H.dim, "dim_I": I.dim},
                    {"H": _enc_space(H)})


def check_lemma_selfnorm(L: LieRing, H: Subspace) -> LemmaVerdict:
    """A codimension-1 subring is an ideal or self-normalizing."""
    if H.codim != 1:
        raise ValueError("H must have codimension 1")
    if not is_subring(L, H):
        raise NotASubringError("H must be a subring")
    ideal = ideal_closure(L, H) == H
    N = normalizer(L, H)
    holds = ideal or N == H
    return _verdict("selfnorm", L, holds, True, {"ideal": ideal, "dim_normalizer": N.dim},
                    {"H": _enc_space(H)})


def replay(verdict: LemmaVerdict) -> LemmaVerdict:
    """Re-run a verdict's counterexample through the checks."""
    if verdict.counterexample is None:
        raise ValueError("nothing to replay")
    L = from_document(verdict.counterexample["ring"])
    F = L.field
    inp = verdict.counterexample["inputs"]
    vec = lambda v: tuple(F.decode(x) for x in v)  # noqa: E731
    space = lambda rows: Subspace(F, L.dim, [vec(r) for r in rows])  # noqa: E731
    lid = verdict.lemma_id
    if lid == "Cn":
        return check_lemma_Cn(L, vec(inp["h"]), inp["n"])
    if lid == "divisors":
        return check_lemma_divisors(L, vec(inp["a"]))
    if lid == "rosengarten":
        return check_lemma_rosengarten(L, space(inp["A"]), vec(inp["x"]), inp["n"])
    if lid == "lifting":
        return check_lemma_lifting(L, space(inp["V"]), space(inp["Vp"]), vec(inp["h"]), F.decode(inp["k"]))
    if lid == "prehrushovski":
        return check_lemma_prehrushovski(L, space(inp["H"]))
    if lid == "selfnorm":
        return check_lemma_selfnorm(L, space(inp["H"]))
    raise ValueError(f"unknown lemma {lid!r}")


# -- random sweep ----------------------------------------------------------------

_ENUM_LIMIT = 4000


def default_catalog(field=None) -> list[LieRing]:
    """Small catalog for sweeps (over F_5 unless another prime field is given)."""
    from .constructions import (direct_sum, make_abelian, make_chevalley, make_ga1, make_ga1_twisted,
                                make_heisenberg, make_sl2, make_witt)
    from .fields import GF
    F = GF(5) if field is None else field
    p = F.characteristic
    out = [make_sl2(F), make_ga1(F), make_heisenberg(F), make_abelian(F, 3),
           direct_sum(make_ga1(F), make_abelian(F, 1)), direct_sum(make_sl2(F), make_sl2(F)),
           make_chevalley("A2", F), make_chevalley("B2", F)]
    if F.degree == 1 and p >= 5:
        out += [make_witt(p), make_ga1_twisted(p, 2)]
    return out


@functools.lru_cache(maxsize=64)
def _ad_square_zero(L: LieRing) -> tuple:
    """All a with ad_a^2 = 0, by enumeration when the ring is small."""
    F = L.field
    if not F.is_finite or F.order ** L.dim > _ENUM_LIMIT:
        return ()
    from .fields import all_vectors
    out = []
    for v in all_vectors(F, L.dim):
        A = L.ad(v)
        if all(F.is_zero(x) for r in (A @ A).rows for x in r):
            out.append(v)
    return tuple(out)


@functools.lru_cache(maxsize=64)
def _codim1_subrings(L: LieRing) -> tuple:
    """Codimension-1 subrings: all hyperplanes when small, else those containing L'."""
    F = L.field
    n = L.dim
    from .structure import _projective_points, derived_subring
    out = []
    if F.is_finite and F.order ** n <= _ENUM_LIMIT:
        for f in _projective_points(F, n):
            H = Subspace(F, n, _kernel_rows(F, [f], n))
            if is_subring(L, H):
                out.append(H)
    else:
        D = derived_subring(L, check=False)
        if D.codim >= 1:
            comp = D.complement().rows
            for i in range(len(comp)):
                out.append(D + Subspace(F, n, [c for j, c in enumerate(comp) if j != i]))
    return tuple(out)


@functools.lru_cache(maxsize=64)
def _is_simple_cached(L: LieRing) -> bool:
    return is_simple(L)


def _rand_vec(L: LieRing, rng: random.Random):
    F = L.field
    if F.is_finite:
        return tuple(F.random_element(rng) for _ in range(L.dim))
    return tuple(F.from_int(rng.randint(-3, 3)) for _ in range(L.dim))


def _rand_in(S: Subspace, rng: random.Random, L: LieRing):
    F = L.field
    coeffs = [F.random_element(rng) if F.is_finite else F.from_int(rng.randint(-3, 3)) for _ in range(S.dim)]
    return S.combine(coeffs) if S.dim else L.zero()


def _ad_orbit(L: LieRing, h, v) -> Subspace:
    """Smallest ad_h-invariant subspace containing v."""
    A = L.ad(h)
    S = L.span([v])
    w = v
    while True:
        w = A.apply(w)
        T = S + L.span([w])
        if T == S:
            return S
        S = T


def _draw(lemma: str, L: LieRing, rng: random.Random) -> LemmaVerdict | None:
    F = L.field
    if lemma == "Cn":
        return check_lemma_Cn(L, _rand_vec(L, rng), rng.randint(1, 3))
    if lemma == "divisors":
        pool = _ad_square_zero(L)
        a = pool[rng.randrange(len(pool))] if pool and rng.random() < 0.8 else _rand_vec(L, rng)
        return check_lemma_divisors(L, a)
    if lemma == "rosengarten":
        A = L.span([_rand_vec(L, rng)])
        for _ in range(rng.randint(0, 2)):
            C = centralizer_of_set(L, A)
            A = A + L.span([_rand_in(C, rng, L)])
        return check_lemma_rosengarten(L, A, _rand_vec(L, rng), rng.randint(1, 3))
    if lemma == "lifting":
        h = _rand_vec(L, rng)
        Vp = _ad_orbit(L, h, _rand_vec(L, rng)) if rng.random() < 0.7 else L.zero_subspace()
        V = Vp + _ad_orbit(L, h, _rand_vec(L, rng))
        # quotient eigenvalues are among those of ad_h, so aim there most of the time
        prime = [r for r in poly_roots(F, charpoly(L.ad(h))) if not F.is_finite or r in F.prime_subfield()]
        if prime and rng.random() < 0.8:
            k = prime[rng.randrange(len(prime))]
        elif F.is_finite:
            k = F.from_int(rng.randrange(F.characteristic))
        else:
            k = F.from_int(rng.randint(-2, 2))
        return check_lemma_lifting(L, V, Vp, h, k)
    if lemma == "prehrushovski":
        if not _is_simple_cached(L):
            return None
        x = _rand_vec(L, rng)
        choice = rng.randrange(3)
        if choice == 0:
            H = L.span([x])
        elif choice == 1:
            H = centralizer_C(L, x)
        else:
            H = subring_closure(L, L.span([x, _rand_in(centralizer_C(L, x, 2), rng, L)]))
        if H.is_full():
            H = L.span([x])
        return check_lemma_prehrushovski(L, H, simple_known=True)
    if lemma == "selfnorm":
        pool = _codim1_subrings(L)
        if not pool:
            return None
        return check_lemma_selfnorm(L, pool[rng.randrange(len(pool))])
    raise ValueError(lemma)


def randomized_lemma_sweep(catalog: Sequence[LieRing] | None = None, trials: int = 100, seed: int = 0,
                           lemmas: Sequence[str] = LEMMA_IDS) -> list[LemmaVerdict]:
    """``trials`` seeded draws per (ring, lemma); raises :class:`LemmaFailure` on a counterexample."""
    if trials <= 0:
        return []
    if catalog is None:
        catalog = default_catalog()
    rng = random.Random(seed)
    out = []
    for L in catalog:
        for lemma in lemmas:
            if lemma in ("divisors", "rosengarten") and L.field.characteristic == 2:
                continue
            for _ in range(trials):
                v = _draw(lemma, L, rng)
                if v is None:
                    break
                if not v.holds:
                    raise LemmaFailure(v)
                out.append(v)
    return out
