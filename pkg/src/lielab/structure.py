"""Structural algorithms on Lie rings: images and kernels of ad, centralizers,
normalizers, the derived and lower central series, ideal closure, simplicity,
eigenspace gradings, and quotients.

Subspaces are arguments and results throughout; subring and ideal status is
never cached, it is recomputed from the brackets each time it is needed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import NotASubringError, NotAnIdealError
from .fields import Field, PrimeField
from .linalg import Matrix, Subspace, _kernel_rows, charpoly, eigenspace, poly_roots
from .ring import LieRing, ad_matrix, bracket, verify_jacobi

__all__ = [
    "image_B",
    "centralizer_C",
    "centralizer_of_set",
    "normalizer",
    "bracket_space",
    "is_subring",
    "is_ideal",
    "subring_closure",
    "derived_subring",
    "derived_series",
    "lower_central_series",
    "is_soluble",
    "is_nilpotent",
    "is_abelian",
    "ideal_closure",
    "center",
    "upper_central_series",
    "SimplicityResult",
    "simplicity",
    "is_simple",
    "GradingReport",
    "grading",
    "Quotient",
    "quotient",
    "SPIN_BOUND",
    "RANDOM_SPINS",
]

SPIN_BOUND = 10**7
RANDOM_SPINS = 64
NORTON_TRIALS = 32


def _ad_power(L: LieRing, x: Sequence, n: int) -> Matrix:
    if n < 1:
        raise ValueError("n must be >= 1")
    return ad_matrix(L, x) ** n


def image_B(L: LieRing, x: Sequence, n: int = 1) -> Subspace:
    """``B_x^n``: image of ``ad_x^n``."""
    return _ad_power(L, x, n).column_space()


def centralizer_C(L: LieRing, x: Sequence, n: int = 1) -> Subspace:
    """``C_x^n``: kernel of ``ad_x^n``.  Only ``n = 1`` is guaranteed to be a subring."""
    A = _ad_power(L, x, n)
    C = Subspace(L.field, L.dim, _kernel_rows(L.field, A.rows, L.dim), canonical=True)
    if n == 1:
        assert A.rank() + C.dim == L.dim
        assert is_subring(L, C), "centralizer of an element must be a subring"
    return C


def _stack_kernel(L: LieRing, blocks: list[Sequence[Sequence]]) -> Subspace:
    rows = [r for block in blocks for r in block]
    if not rows:
        return L.full()
    return Subspace(L.field, L.dim, _kernel_rows(L.field, rows, L.dim), canonical=True)


def centralizer_of_set(L: LieRing, S: Subspace) -> Subspace:
    """``{y : [s, y] = 0 for every s in S}``."""
    return _stack_kernel(L, [ad_matrix(L, s).rows for s in S.rows])


def normalizer(L: LieRing, S: Subspace) -> Subspace:
    """``{y : [y, s] in S for every s in S}``."""
    if S.is_zero() or S.is_full():
        return L.full()
    # functionals vanishing on S
    annihilator = _kernel_rows(L.field, S.rows, L.dim)
    Phi = Matrix(L.field, annihilator, L.dim)
    return _stack_kernel(L, [(Phi @ ad_matrix(L, s)).rows for s in S.rows])


def bracket_space(L: LieRing, A: Subspace, B: Subspace) -> Subspace:
    """Span of ``[a, b]`` over basis vectors of ``A`` and ``B``."""
    vecs = [bracket(L, a, b) for a in A.rows for b in B.rows]
    return Subspace(L.field, L.dim, vecs)


def is_subring(L: LieRing, S: Subspace) -> bool:
    return all(bracket(L, a, b) in S for a, b in itertools.combinations(S.rows, 2))


def is_ideal(L: LieRing, S: Subspace) -> bool:
    return all(bracket(L, L.basis(i), s) in S for i in range(L.dim) for s in S.rows)


def _require_subring(L: LieRing, S: Subspace):
    if not is_subring(L, S):
        raise NotASubringError("subspace is not closed under the bracket")


def subring_closure(L: LieRing, S: Subspace) -> Subspace:
    """Smallest subring containing ``S``."""
    while True:
        T = S + derived_subring(L, S, check=False)
        if T == S:
            return S
        S = T


def derived_subring(L: LieRing, S: Subspace | None = None, *, check: bool = True) -> Subspace:
    """``[S, S]`` from pairwise brackets of the basis of ``S``."""
    S = L.full() if S is None else S
    if check:
        _require_subring(L, S)
    vecs = [bracket(L, a, b) for a, b in itertools.combinations(S.rows, 2)]
    return Subspace(L.field, L.dim, vecs)


def derived_series(L: LieRing, S: Subspace | None = None) -> list[Subspace]:
    """``S ⊇ S' ⊇ S'' ⊇ ...``; ends at the first zero term or the first repeat."""
    S = L.full() if S is None else S
    _require_subring(L, S)
    series = [S]
    while True:
        nxt = derived_subring(L, series[-1], check=False)
        series.append(nxt)
        if nxt.is_zero() or nxt == series[-2]:
            return series


def lower_central_series(L: LieRing, S: Subspace | None = None) -> list[Subspace]:
    """``S^[0] = S``, ``S^[n+1] = [S, S^[n]]``; ends at the first zero term or repeat."""
    S = L.full() if S is None else S
    _require_subring(L, S)
    series = [S]
    while True:
        nxt = bracket_space(L, S, series[-1])
        series.append(nxt)
        if nxt.is_zero() or nxt == series[-2]:
            return series


def is_soluble(L: LieRing, S: Subspace | None = None) -> bool:
    return derived_series(L, S)[-1].is_zero()


def is_nilpotent(L: LieRing, S: Subspace | None = None) -> bool:
    return lower_central_series(L, S)[-1].is_zero()


def is_abelian(L: LieRing, S: Subspace | None = None) -> bool:
    S = L.full() if S is None else S
    return all(L.is_zero_vector(bracket(L, a, b)) for a, b in itertools.combinations(S.rows, 2))


def center(L: LieRing) -> Subspace:
    return centralizer_of_set(L, L.full())


def upper_central_series(L: LieRing) -> list[Subspace]:
    """``Z_0 = 0``, ``Z_{i+1} = {x : [x, L] ⊆ Z_i}`` until it stabilises."""
    series = [L.zero_subspace()]
    while True:
        Z = series[-1]
        annihilator = _kernel_rows(L.field, Z.rows, L.dim) if not Z.is_zero() else None
        blocks = []
        for i in range(L.dim):
            # x -> [x, b_i] = -ad_{b_i} x ; membership in Z tested by functionals
            A = L.ad_basis()[i]
            if annihilator is None:
                blocks.append(A.rows)
            else:
                blocks.append((Matrix(L.field, annihilator, L.dim) @ A).rows)
        nxt = _stack_kernel(L, blocks) if blocks else L.full()
        if nxt == Z:
            return series
        series.append(nxt)


# -- ideal closure and simplicity -----------------------------------------------


class _Echelon:
    """Incremental semi-echelon basis (each row is zero on earlier pivots)."""

    __slots__ = ("F", "rows", "pivots", "prime")

    def __init__(self, F: Field):
        self.F = F
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self.prime = F.p if isinstance(F, PrimeField) else None

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True iff it was independent."""
        F, p = self.F, self.prime
        v = list(v)
        if p is not None:
            for row, pc in zip(self.rows, self.pivots):
                c = v[pc]
                if c:
                    v = [(x - c * y) % p for x, y in zip(v, row)]
            for j, x in enumerate(v):
                if x:
                    inv = pow(x, p - 2, p)
                    self.rows.append([y * inv % p for y in v])
                    self.pivots.append(j)
                    return True
            return False
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        for j, x in enumerate(v):
            if not F.is_zero(x):
                inv = F.inv(x)
                self.rows.append([F.mul(y, inv) for y in v])
                self.pivots.append(j)
                return True
        return False


def _normalize(F: Field, v: Sequence) -> tuple | None:
    for x in v:
        if not F.is_zero(x):
            inv = F.inv(x)
            return tuple(F.mul(y, inv) for y in v)
    return None


class _Spinner:
    """Ideal closures under the adjoint action of the basis."""

    def __init__(self, L: LieRing, mats: list | None = None):
        self.L = L
        self.F = L.field
        self.ads = [A.rows for A in L.ad_basis()] if mats is None else [A.rows for A in mats]
        self.prime = L.field.p if isinstance(L.field, PrimeField) else None

    def apply(self, A, v):
        if self.prime is not None:
            p = self.prime
            return tuple(sum(a * b for a, b in zip(r, v)) % p for r in A)
        F = self.F
        out = []
        for r in A:
            acc = F.zero
            for a, b in zip(r, v):
                if not F.is_zero(a) and not F.is_zero(b):
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def closure(self, vectors, good: set | None = None):
        """Spin ``vectors``.  Returns the echelon basis, or ``None`` as soon as
        a vector whose closure is known to be everything shows up in ``good``."""
        ech = _Echelon(self.F)
        queue = []
        n = self.L.dim
        for v in vectors:
            if ech.add(v):
                queue.append(tuple(v))
        while queue and len(ech.rows) < n:
            w = queue.pop()
            for A in self.ads:
                u = self.apply(A, w)
                if good is not None:
                    nu = _normalize(self.F, u)
                    if nu is not None and nu in good:
                        return None
                if ech.add(u):
                    queue.append(u)
                    if len(ech.rows) == n:
                        break
        return ech


def ideal_closure(L: LieRing, S: Subspace) -> Subspace:
    """Smallest ideal containing ``S``: iterate ``S <- S + [L, S]``."""
    ech = _Spinner(L).closure(S.rows)
    return Subspace(L.field, L.dim, ech.rows)


@dataclass(frozen=True)
class SimplicityResult:
    simple: bool
    exhaustive: bool
    reason: str
    proper_ideal: Subspace | None = None

    def __bool__(self):
        return self.simple


def _projective_points(F: Field, n: int):
    elems = list(F.elements())
    one = F.one
    for lead in range(n - 1, -1, -1):
        head = (F.zero,) * lead + (one,)
        for tail in itertools.product(elems, repeat=n - lead - 1):
            yield head + tail


def _norton(L: LieRing, seed: int, trials: int = NORTON_TRIALS) -> SimplicityResult | None:
    """Norton's irreducibility criterion for the adjoint module.

    For theta in the (unital) algebra generated by the ad b_i with a
    one-dimensional kernel spanned by v: if v spins to L and a kernel vector
    of theta^T spins to the dual under the transposes, no proper ideal exists.
    A failing spin exhibits a proper ideal.  Returns None when no suitable
    theta turns up.
    """
    F = L.field
    n = L.dim
    ads = L.ad_basis()
    rng = random.Random(seed)
    spinner = _Spinner(L)
    dual = _Spinner(L, [A.T for A in ads])

    def rand_scalar():
        return F.random_element(rng) if F.is_finite else F.from_int(rng.randint(-3, 3))

    def candidates():
        for i in range(n):
            yield ads[i]
        for _ in range(trials):
            theta = Matrix.zeros(F, n, n)
            for A in ads:
                theta = theta + A.scale(rand_scalar())
            if rng.random() < 0.5:
                theta = theta @ ads[rng.randrange(n)]
            yield theta

    for theta in candidates():
        lams = [F.zero] if not F.is_finite or F.order > 10**6 else poly_roots(F, charpoly(theta))
        if F.zero not in lams:
            lams.append(F.zero)
        for lam in lams:
            K = eigenspace(theta, lam)
            if K.nrows != 1:
                continue
            ech = spinner.closure([K.rows[0]])
            if len(ech.rows) < n:
                return SimplicityResult(False, True, "proper ideal closure", Subspace(F, n, ech.rows))
            KT = eigenspace(theta.T, lam)
            ech = dual.closure([KT.rows[0]])
            if len(ech.rows) < n:
                # annihilator of a proper dual submodule is a proper ideal
                ann = _kernel_rows(F, ech.rows, n)
                return SimplicityResult(False, True, "proper ideal (annihilator of a dual submodule)",
                                        Subspace(F, n, ann))
            return SimplicityResult(True, True, "Norton irreducibility certificate")
    return None


def simplicity(L: LieRing, *, bound: int = SPIN_BOUND, seed: int = 0,
               random_spins: int = RANDOM_SPINS, norton: bool = True) -> SimplicityResult:
    """Decide simplicity by spinning.

    Cheap certificates first (derived subring, centre), then Norton's
    criterion, which is exact whenever it applies.  Failing that, if the
    field is finite with ``q^dim <= bound``, every projective point is spun
    and the answer is exact.  Otherwise basis vectors plus ``random_spins`` seeded
    random vectors are spun; a proper closure is still a certificate, but a
    positive answer is flagged non-exhaustive.
    """
    n = L.dim
    if n == 1:
        return SimplicityResult(False, True, "one-dimensional")
    D = derived_subring(L, check=False)
    if not D.is_full():
        return SimplicityResult(False, True, "derived subring is proper" if not D.is_zero() else "abelian",
                                D if not D.is_zero() else L.span([L.basis(0)]))
    Z = center(L)
    if not Z.is_zero():
        return SimplicityResult(False, True, "nonzero centre", Z)
    cert = _norton(L, seed) if norton else None
    if cert is not None:
        return cert
    spinner = _Spinner(L)
    F = L.field
    if F.is_finite and F.order**n <= bound:
        good: set = set()
        for v in _projective_points(F, n):
            if v in good:
                continue
            ech = spinner.closure([v], good)
            if ech is not None and len(ech.rows) < n:
                return SimplicityResult(False, True, "proper ideal closure", Subspace(F, n, ech.rows))
            good.add(v)
        return SimplicityResult(True, True, "every projective point spins to the whole ring")
    rng = random.Random(seed)
    candidates = [L.basis(i) for i in range(n)]
    for _ in range(random_spins):
        v = tuple(F.random_element(rng) for _ in range(n))
        if not L.is_zero_vector(v):
            candidates.append(v)
    for v in candidates:
        ech = spinner.closure([v])
        if len(ech.rows) < n:
            return SimplicityResult(False, True, "proper ideal closure", Subspace(F, n, ech.rows))
    return SimplicityResult(True, False, "probabilistic: sampled vectors spin to the whole ring")


def is_simple(L: LieRing, *, bound: int = SPIN_BOUND, seed: int = 0) -> bool:
    return simplicity(L, bound=bound, seed=seed).simple


# -- gradings ------------------------------------------------------------------


@dataclass(frozen=True)
class GradingReport:
    base_element: tuple
    components: dict            # int k in [0, p) -> Subspace E_k
    residual: Subspace          # zero iff the eigenspaces fill the ring

    @property
    def graded_part(self) -> Subspace:
        total = Subspace.zero(self.residual.field, self.residual.ambient)
        for S in self.components.values():
            total = total + S
        return total

    @property
    def is_full(self) -> bool:
        return self.residual.is_zero()

    def dims(self) -> dict:
        return {k: S.dim for k, S in self.components.items()}


def grading(L: LieRing, h: Sequence) -> GradingReport:
    """Nonzero ``E_k(h)`` for ``k`` in the prime field, plus a residual complement."""
    F = L.field
    if F.characteristic == 0:
        raise ValueError("gradings are only computed in positive characteristic")
    h = tuple(h)
    A = ad_matrix(L, h)
    p = F.characteristic
    comps: dict[int, Subspace] = {}
    for k in range(p):
        E = eigenspace(A, F.from_int(k))
        if E.nrows:
            comps[k] = Subspace(F, L.dim, E.rows, canonical=True)
    total = L.zero_subspace()
    for S in comps.values():
        assert (total & S).is_zero(), "eigenspaces must be in direct sum"
        total = total + S
    residual = total.complement() if not total.is_full() else L.zero_subspace()
    for (k, Ek), (l, El) in itertools.product(comps.items(), repeat=2):
        target = comps.get((k + l) % p, L.zero_subspace())
        for a in Ek.rows:
            for b in El.rows:
                assert bracket(L, a, b) in target, f"grading law fails for E_{k}, E_{l}"
    return GradingReport(h, comps, residual)


# -- quotients -------------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    ring: LieRing
    ideal: Subspace
    complement: tuple           # ambient basis indices whose images form the quotient basis
    parent: LieRing = dc_field(repr=False)

    def projection(self, v: Sequence) -> tuple:
        r = self.ideal.reduce(v)
        return tuple(r[j] for j in self.complement)

    def section(self, u: Sequence) -> tuple:
        F = self.parent.field
        out = [F.zero] * self.parent.dim
        for j, c in zip(self.complement, u):
            out[j] = c
        return tuple(out)


def quotient(L: LieRing, I: Subspace) -> Quotient:
    """``L / I`` on the basis of standard vectors outside the pivot columns of ``I``."""
    if not is_ideal(L, I):
        raise NotAnIdealError("quotient requires an ideal")
    comp = tuple(I.complement_indices())
    m = len(comp)
    if m == 0:
        raise ValueError("quotient by the whole ring is the zero ring, which has no basis")
    F = L.field

    def project(v):
        r = I.reduce(v)
        return tuple(r[j] for j in comp)

    table = {}
    for a in range(m):
        for b in range(a + 1, m):
            table[(a, b)] = project(L.basis_bracket(comp[a], comp[b]))
    Q = LieRing(F, m, table, name=f"{L.name}/I" if L.name else "")
    assert verify_jacobi(Q)
    return Quotient(Q, I, comp, L)
