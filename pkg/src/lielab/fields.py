"""Exact scalar fields: prime fields F_p, extensions F_{p^k}, and the rationals.

Field objects double as descriptors: they carry the characteristic, the
extension degree and (for proper extensions) the monic irreducible modulus.
Elements are stored in a raw form chosen for speed:

* ``F_p``: ints in ``[0, p)``
* ``F_{p^k}``: ints in ``[0, p^k)`` encoding the coefficient vector
  ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` of ``c_0 + c_1 t + ...``
* ``Q``: :class:`fractions.Fraction`

The raw-level methods (``add``, ``mul``, ...) are what the linear algebra
uses.  :class:`Scalar` wraps a raw value with its field for user-facing code.
"""

from __future__ import annotations

import functools
import itertools
import random
import re
from fractions import Fraction
from typing import Any, Iterator, Sequence

from .errors import FieldMismatchError

__all__ = [
    "Field",
    "PrimeField",
    "ExtensionField",
    "RationalField",
    "Scalar",
    "GF",
    "QQ",
    "field_arith",
    "is_prime",
    "is_irreducible",
    "default_modulus",
    "parse_field",
]

# fields at or below this order get a full addition table
_ADD_TABLE_LIMIT = 400
_MAX_EXTENSION_ORDER = 10**6


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


# -- polynomials over F_p, coefficient lists low-to-high -------------------


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        factor = f[-1] * inv_lead % p
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - factor * c) % p
        _trim(f)
    return f


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    """All monic polynomials of the given degree, in increasing encoded order."""
    for n in range(p**degree):
        coeffs = []
        for _ in range(degree):
            n, r = divmod(n, p)
            coeffs.append(r)
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial factorization: no monic factor of degree <= deg/2."""
    f = _trim([c % p for c in poly])
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


@functools.cache
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, ordered by its coefficients
    read from the top degree down (equivalently by the encoded integer)."""
    for g in _monic_polys(p, k):
        if is_irreducible(g, p):
            return tuple(g)
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


# -- fields -----------------------------------------------------------------


class Field:
    """Common interface.  Subclasses implement the raw operations."""

    characteristic: int
    degree: int
    modulus: tuple[int, ...] | None
    order: int | None
    zero: Any
    one: Any

    # raw arithmetic
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, value):
        """Convert ints, Scalars, and field-specific literals to raw form."""
        raise NotImplementedError

    def encode(self, a):
        """JSON-safe representation (never a float)."""
        raise NotImplementedError

    def decode(self, obj):
        return self.coerce(obj)

    def format(self, a) -> str:
        return str(self.encode(a))

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise TypeError(f"{self} is infinite")

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def prime_subfield(self) -> list:
        """Raw values of 0, 1, ..., p-1 (finite fields only)."""
        if not self.characteristic:
            raise TypeError("characteristic 0 has no finite prime subfield")
        return [self.from_int(k) for k in range(self.characteristic)]

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def __call__(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    # descriptor semantics
    def key(self) -> tuple:
        return (self.characteristic, self.degree, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def descriptor(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "degree": self.degree,
            "modulus": list(self.modulus) if self.modulus is not None else None,
        }


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.degree = 1
        self.modulus = None
        self.order = p
        self.zero = 0
        self.one = 1 % p
        self._inverses = [0] + [pow(a, p - 2, p) for a in range(1, p)] if p < 10**6 else None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        if self._inverses is not None:
            return self._inverses[a]
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} vs {self}")
            return value.value
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, self._nonzero(value.denominator))
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def _nonzero(self, n):
        r = n % self.p
        if r == 0:
            raise ZeroDivisionError("denominator divisible by the characteristic")
        return r

    def encode(self, a):
        return int(a)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return iter(range(self.p))

    def prime_subfield(self):
        return list(range(self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField(Field):
    """F_p[t] / (modulus), modulus monic irreducible of degree k >= 2."""

    def __init__(self, p: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        mod = _trim([int(c) % p for c in modulus])
        k = len(mod) - 1
        if k < 2:
            raise ValueError("extension modulus must have degree >= 2")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if p**k > _MAX_EXTENSION_ORDER:
            raise ValueError(f"F_{p}^{k} exceeds the supported order {_MAX_EXTENSION_ORDER}")
        if not is_irreducible(mod, p):
            raise ValueError(f"modulus {mod} is reducible over F_{p}")
        self.p = p
        self.characteristic = p
        self.degree = k
        self.modulus = tuple(mod)
        self.order = q = p**k
        self.zero = 0
        self.one = 1
        self._digits = [self._to_digits(v) for v in range(q)]
        self._build_log_tables()
        self._neg = [self._from_digits([-c % p for c in d]) for d in self._digits]
        self._add_table = None
        if q <= _ADD_TABLE_LIMIT:
            self._add_table = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]

    # digit (coefficient vector) helpers
    def _to_digits(self, v):
        out = []
        for _ in range(self.degree):
            v, r = divmod(v, self.p)
            out.append(r)
        return tuple(out)

    def _from_digits(self, digits):
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _add_digits(self, a, b):
        p = self.p
        return self._from_digits([(x + y) % p for x, y in zip(self._digits[a], self._digits[b])])

    def _poly_mul(self, a, b):
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(self._digits[a]):
            if x:
                for j, y in enumerate(self._digits[b]):
                    prod[i + j] += x * y
        rem = _poly_mod(prod, self.modulus, self.p)
        return self._from_digits(rem + [0] * (self.degree - len(rem)))

    def _build_log_tables(self):
        q = self.order
        factors = [r for r in range(2, q) if (q - 1) % r == 0 and is_prime(r)]
        for g in range(2, q):
            # g is primitive iff g^((q-1)/r) != 1 for each prime r | q-1
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in factors):
                break
        else:
            g = 1 if q == 2 else None
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._poly_mul(exp[i - 1], g)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.generator = g
        self._exp = exp
        self._log = log

    def _slow_pow(self, a, n):
        result, base = 1, a
        while n:
            if n & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            n >>= 1
        return result

    # raw arithmetic
    def add(self, a, b):
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        return self._exp[-self._log[a] % (self.order - 1)]

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        return self._exp[self._log[a] * n % (self.order - 1)]

    def from_int(self, n):
        return n % self.p

    def coefficients(self, a) -> tuple[int, ...]:
        return self._digits[a]

    def from_coefficients(self, coeffs: Sequence[int]):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.degree:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        return self._from_digits(list(coeffs) + [0] * (self.degree - len(coeffs)))

    @property
    def t(self):
        """Raw value of the adjoined root of the modulus."""
        return self.p

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} vs {self}")
            return value.value
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, (list, tuple)):
            return self.from_coefficients(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return self.div(value.numerator % self.p, den)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def encode(self, a):
        return list(self._digits[a])

    def format(self, a):
        terms = []
        for i, c in enumerate(self._digits[a]):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c}{'*' if mono else ''}{mono}" if c != 1 or not mono else mono)
        return " + ".join(reversed(terms)) or "0"

    def random_element(self, rng):
        return rng.randrange(self.order)

    def elements(self):
        return iter(range(self.order))

    def __repr__(self):
        return f"GF({self.p}^{self.degree}, modulus={list(self.modulus)})"


class RationalField(Field):
    characteristic = 0
    degree = 1
    modulus = None
    order = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} vs {self}")
            return value.value
        if isinstance(value, (int, Fraction, str)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def encode(self, a):
        return f"{a.numerator}/{a.denominator}"

    def format(self, a):
        return str(a)

    def random_element(self, rng):
        # small heights keep random tests readable and fast
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def prime_subfield(self):
        raise TypeError("characteristic 0 has no finite prime subfield")

    def __repr__(self):
        return "QQ"


@functools.cache
def _prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@functools.cache
def _extension_field(p: int, modulus: tuple[int, ...]) -> ExtensionField:
    return ExtensionField(p, modulus)


QQ = RationalField()


def GF(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Cached constructor for F_p or F_{p^k}.

    ``GF(5)``, ``GF(5, 2)`` (default modulus), ``GF(5, 2, [2, 0, 1])``.
    """
    if k == 1 and modulus is None:
        return _prime_field(p)
    if modulus is None:
        modulus = default_modulus(p, k)
    elif len(_trim([int(c) % p for c in modulus])) - 1 != k:
        if k != 1:
            raise ValueError("modulus degree does not match k")
    return _extension_field(p, tuple(int(c) % p for c in modulus))


def field_from_descriptor(desc: dict) -> Field:
    char = desc["characteristic"]
    if char == 0:
        if desc.get("degree", 1) != 1:
            raise ValueError("characteristic 0 requires degree 1")
        return QQ
    k = desc.get("degree", 1)
    mod = desc.get("modulus")
    if k == 1:
        return GF(char)
    return GF(char, k, mod)


_FIELD_RE = re.compile(r"^\s*(p|q)\s*=\s*(\d+)\s*(?:,\s*k\s*=\s*(\d+))?\s*$")


def parse_field(text: str) -> Field:
    """Parse CLI field specs: ``Q``, ``p=5``, ``p=5,k=2``, ``q=25``."""
    if text.strip().upper() in {"Q", "QQ"}:
        return QQ
    m = _FIELD_RE.match(text)
    if not m:
        raise ValueError(f"bad field spec {text!r}; expected Q, p=P, p=P,k=K or q=Q")
    kind, n, k = m.group(1), int(m.group(2)), m.group(3)
    if kind == "p":
        return GF(n, int(k) if k else 1)
    if k:
        raise ValueError("q=... does not take k")
    for p in range(2, n + 1):
        if n % p == 0:
            break
    k = 0
    m_ = n
    while m_ % p == 0:
        m_ //= p
        k += 1
    if m_ != 1 or not is_prime(p):
        raise ValueError(f"{n} is not a prime power")
    return GF(p, k)


class Scalar:
    """A field element bound to its field.  Immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    @property
    def coeffs(self) -> tuple:
        """Coefficient vector over the prime field (length = degree)."""
        if isinstance(self.field, ExtensionField):
            return self.field.coefficients(self.value)
        return (self.value,)

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field!r}"


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch ``add``/``sub``/``mul``/``div`` on two scalars of one field."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    try:
        fn = {"add": Scalar.__add__, "sub": Scalar.__sub__,
              "mul": Scalar.__mul__, "div": Scalar.__truediv__}[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(a, b)


def all_vectors(field: Field, n: int) -> Iterator[tuple]:
    """Every vector of F^n for a finite field, lexicographic."""
    return itertools.product(list(field.elements()), repeat=n)
