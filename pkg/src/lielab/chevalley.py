"""Root systems and integral Chevalley structure constants.

Roots are integer vectors in the basis of simple roots.  Positive roots are
grown simple-root by simple-root with root strings; structure constants
``N_{a,b}`` for ``[e_a, e_b] = N_{a,b} e_{a+b}`` are fixed by declaring
``N = +(p+1)`` on extraspecial pairs and propagating with the standard
identities (Carter, *Simple Groups of Lie Type*, ch. 4).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["RootSystemData", "ChevalleySigns", "root_system", "chevalley_signs", "integral_table",
           "CATALOG_TYPES"]

CATALOG_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2")


def _gram(kind: str, n: int) -> list[list[int]]:
    """Inner products of simple roots (short roots have squared length 2)."""
    g = [[0] * n for _ in range(n)]
    if kind == "A":
        for i in range(n):
            g[i][i] = 2
            if i + 1 < n:
                g[i][i + 1] = g[i + 1][i] = -1
    elif kind == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        for i in range(n):
            g[i][i] = 4 if i < n - 1 else 2
            if i + 1 < n:
                g[i][i + 1] = g[i + 1][i] = -2
    elif kind == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        for i in range(n):
            g[i][i] = 2 if i < n - 1 else 4
            if i + 1 < n:
                g[i][i + 1] = g[i + 1][i] = -1 if i + 1 < n - 1 else -2
    elif kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 2):
            g[i][i + 1] = g[i + 1][i] = -1
        g[n - 3][n - 1] = g[n - 1][n - 3] = -1
    elif kind == "G" and n == 2:
        g = [[2, -3], [-3, 6]]
    elif kind == "F" and n == 4:
        g = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    else:
        raise ValueError(f"unsupported root system {kind}{n}")
    return g


@dataclass(frozen=True)
class RootSystemData:
    type_label: str
    rank: int
    positive_roots: tuple[tuple[int, ...], ...]   # height, then lexicographic
    cartan_integers: tuple[tuple[int, ...], ...]  # [i][j] = <alpha_i, alpha_j^vee>
    gram: tuple[tuple[int, ...], ...]

    def inner(self, a, b) -> int:
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def pairing(self, a, b) -> int:
        """``<a, b^vee> = 2 (a, b) / (b, b)``."""
        num = 2 * self.inner(a, b)
        den = self.inner(b, b)
        assert num % den == 0
        return num // den

    @functools.cached_property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        neg = tuple(tuple(-c for c in r) for r in self.positive_roots)
        return self.positive_roots + neg

    @functools.cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_set

    def coroot_coefficients(self, a) -> tuple[int, ...]:
        """``a^vee`` in the basis of simple coroots."""
        aa = self.inner(a, a)
        out = []
        for i in range(self.rank):
            c = Fraction(a[i] * self.gram[i][i], aa)
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def string_down(self, beta, alpha) -> int:
        """Largest p with ``beta - p alpha`` a root."""
        p = 0
        while self.is_root(tuple(b - (p + 1) * a for b, a in zip(beta, alpha))):
            p += 1
        return p


_LABEL = re.compile(r"^([A-DFG])(\d+)$")


@functools.cache
def root_system(label: str) -> RootSystemData:
    m = _LABEL.match(label.replace("_", "").upper())
    if not m:
        raise ValueError(f"bad root system label {label!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ValueError("rank must be positive")
    g = _gram(kind, n)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]

    def pair(a, b):
        num = 2 * sum(a[i] * g[i][j] * b[j] for i in range(n) for j in range(n))
        return num // sum(b[i] * g[i][j] * b[j] for i in range(n) for j in range(n))

    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i, a in enumerate(simple):
                cand = tuple(b + x for b, x in zip(beta, a))
                if cand in found:
                    continue
                # alpha_i string through beta: r - q = <beta, a^vee>
                r = 0
                while tuple(b - (r + 1) * x for b, x in zip(beta, a)) in found:
                    r += 1
                q = r - pair(beta, a)
                if q > 0:
                    found.add(cand)
                    nxt.append(cand)
        layer = sorted(set(nxt))
    pos = tuple(sorted(found, key=lambda r: (sum(r), r)))
    cartan = tuple(tuple(pair(simple[i], simple[j]) for j in range(n)) for i in range(n))
    return RootSystemData(f"{kind}{n}", n, pos, cartan, tuple(map(tuple, g)))


@dataclass(frozen=True)
class ChevalleySigns:
    """``structure_sign[(a, b)] = N_{a,b}`` for every pair of roots with ``a + b`` a root."""

    system: RootSystemData
    structure_sign: dict
    extraspecial: dict  # positive root xi -> extraspecial pair (a, b)

    def serialize(self) -> dict:
        """Convention record: extraspecial pairs carry +(p+1)."""
        return {
            "type": self.system.type_label,
            "root_order": [list(r) for r in self.system.positive_roots],
            "extraspecial": {",".join(map(str, xi)): [list(a), list(b)] for xi, (a, b) in self.extraspecial.items()},
        }


@functools.cache
def chevalley_signs(label: str) -> ChevalleySigns:
    R = root_system(label)
    pos = R.positive_roots
    index = {r: i for i, r in enumerate(pos)}

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(a):
        return tuple(-x for x in a)

    def sq(a):
        return R.inner(a, a)

    # extraspecial pairs: (a, b) with a + b = xi, a earlier than b, a minimal
    extraspecial = {}
    for xi in pos:
        pairs = [(a, tuple(x - y for x, y in zip(xi, a))) for a in pos if index[a] < len(pos)]
        pairs = [(a, b) for a, b in pairs if b in index and index[a] < index[b]]
        if pairs:
            extraspecial[xi] = min(pairs, key=lambda ab: index[ab[0]])

    Npos: dict = {}

    def N(a, b):
        """N_{a,b} for arbitrary roots with a + b a root (0 if not a root)."""
        s = add(a, b)
        if not R.is_root(s):
            return 0
        pa, pb = a in index, b in index
        if pa and pb:
            return Npos[(a, b)]
        if not pa and not pb:
            return -Npos[(neg(a), neg(b))]
        if not pa:
            # N_{a,b} = -N_{b,a}
            return -N(b, a)
        # a positive, b negative, s = a + b
        if s in index:
            # triple (a, b, -s): N_{a,b}/(s,s) = N_{b,-s}/(a,a); N_{b,-s} = -N_{-b,s}
            val = Fraction(-sq(s) * N(neg(b), s), sq(a))
        else:
            # N_{a,b}/(s,s) = N_{-s,a}/(b,b)
            val = Fraction(sq(s) * N(neg(s), a), sq(b))
        assert val.denominator == 1
        return int(val)

    for xi in pos:
        if xi not in extraspecial:
            continue
        a1, b1 = extraspecial[xi]
        p = R.string_down(b1, a1)
        Npos[(a1, b1)] = p + 1
        Npos[(b1, a1)] = -(p + 1)
        for a in pos:
            b = tuple(x - y for x, y in zip(xi, a))
            if b not in index or index[a] >= index[b] or (a, b) == (a1, b1):
                continue
            # four roots a, b, -a1, -b1 sum to zero
            t1 = Fraction(N(b, neg(a1)) * N(a, neg(b1)), sq(add(b, neg(a1)))) if R.is_root(add(b, neg(a1))) else 0
            t2 = Fraction(N(neg(a1), a) * N(b, neg(b1)), sq(add(a, neg(a1)))) if R.is_root(add(a, neg(a1))) else 0
            val = Fraction(sq(xi), Npos[(a1, b1)]) * (t1 + t2)
            assert val.denominator == 1, "non-integral structure constant"
            Npos[(a, b)] = int(val)
            Npos[(b, a)] = -int(val)

    table = {}
    for a in R.roots:
        for b in R.roots:
            if a != neg(b) and R.is_root(add(a, b)):
                table[(a, b)] = N(a, b)
    for (a, b), v in table.items():
        assert abs(v) == R.string_down(b, a) + 1, f"|N_{a},{b}| = {v} is not p+1"
    return ChevalleySigns(R, table, extraspecial)


@functools.cache
def integral_table(label: str) -> tuple[int, dict, list[str]]:
    """Integral structure constants of the Chevalley ring.

    Basis order: ``h_1..h_r``, then ``e_a`` for positive roots (root order),
    then ``e_{-a}`` in the same order.  Returns ``(dim, brackets, labels)``
    with ``brackets[(i, j)]`` an int vector, ``i < j``.
    """
    signs = chevalley_signs(label)
    R = signs.system
    r = R.rank
    pos = R.positive_roots
    roots = list(pos) + [tuple(-c for c in a) for a in pos]
    dim = r + len(roots)
    idx = {a: r + k for k, a in enumerate(roots)}
    labels = [f"h{i + 1}" for i in range(r)] + [f"e{list(a)}" for a in roots]
    table: dict[tuple[int, int], list[int]] = {}

    def put(i, j, vec):
        if i > j:
            i, j, vec = j, i, [-v for v in vec]
        table[(i, j)] = vec

    for i in range(r):
        ai = R.simple_root(i)
        for a in roots:
            c = R.pairing(a, ai)
            if c:
                vec = [0] * dim
                vec[idx[a]] = c
                put(i, idx[a], vec)
    for k, a in enumerate(roots):
        for b in roots[k + 1:]:
            s = tuple(x + y for x, y in zip(a, b))
            vec = [0] * dim
            if all(x == 0 for x in s):
                # [e_a, e_{-a}] = h_a
                for i, c in enumerate(R.coroot_coefficients(a)):
                    vec[i] = c
            elif R.is_root(s):
                vec[idx[s]] = signs.structure_sign[(a, b)]
            else:
                continue
            put(idx[a], idx[b], vec)
    return dim, table, labels
