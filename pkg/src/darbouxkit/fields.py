"""Exact coefficient fields: Q, GF(p), GF(p^k) and dual numbers over them.

A field is a runtime object (``QQ``, ``GF(7)``, ``GF(101, 2)``,
``DualNumbers(GF(7))``).  Rational elements are plain
:class:`fractions.Fraction` values; the finite-field and dual-number elements
are small immutable classes with the usual arithmetic operators.  Python
``int`` operands are coerced; anything else from a different field raises
:class:`~darbouxkit.errors.MixedContexts`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import DivisionByZero, MixedContexts


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface of every coefficient field."""

    characteristic: int = 0
    name: str = "?"

    # --- construction -------------------------------------------------
    def __call__(self, value):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        """Image of a rational number (raises if the denominator vanishes)."""
        q = Fraction(q)
        return self(q.numerator) / self(q.denominator)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def contains(self, a) -> bool:
        raise NotImplementedError

    # --- the field_ops surface ----------------------------------------
    def _check(self, *xs):
        for a in xs:
            if not (isinstance(a, int) or self.contains(a)):
                raise MixedContexts(f"{a!r} is not an element of {self.name}")

    def add(self, a, b):
        self._check(a, b)
        return self(a) + self(b)

    def sub(self, a, b):
        self._check(a, b)
        return self(a) - self(b)

    def mul(self, a, b):
        self._check(a, b)
        return self(a) * self(b)

    def div(self, a, b):
        self._check(a, b)
        return self(a) / self(b)

    def neg(self, a):
        self._check(a)
        return -self(a)

    def inv(self, a):
        self._check(a)
        return self.one / self(a)

    def eq(self, a, b):
        self._check(a, b)
        return self(a) == self(b)

    def is_zero(self, a) -> bool:
        return not a

    def is_invertible(self, a) -> bool:
        return bool(a)

    # --- misc -----------------------------------------------------------
    def sqrt(self, a):
        """A square root of ``a`` in this field, or ``None``."""
        raise NotImplementedError

    def random(self, rng: random.Random):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------
# Q
# ---------------------------------------------------------------------------


class Rationals(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, int):
            return Fraction(value)
        raise MixedContexts(f"cannot coerce {value!r} into QQ")

    def from_fraction(self, q):
        return Fraction(q)

    def contains(self, a) -> bool:
        return isinstance(a, Fraction)

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero in QQ")
        return super().div(a, b)

    def sqrt(self, a):
        from math import isqrt

        a = Fraction(a)
        if a < 0:
            return None
        n, d = isqrt(a.numerator), isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
        return None

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def format(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


QQ = Rationals()


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------


class FiniteField(Field):
    order: int

    def elements(self):
        raise NotImplementedError

    def sqrt(self, a):
        a = self(a)
        if not a:
            return a
        q = self.order
        if q % 2 == 0:
            return a ** (q // 2)
        if a ** ((q - 1) // 2) != 1:
            return None
        # Tonelli-Shanks in the multiplicative group of order q - 1
        s, t = 0, q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        z = self._non_residue()
        m, c, r, u = s, z**t, a ** ((t + 1) // 2), a**t
        while u != 1:
            i, uu = 0, u
            while uu != 1:
                uu = uu * uu
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            r, u = r * b, u * b * b
        return r

    def _non_residue(self):
        for a in self.elements():
            if a and a ** ((self.order - 1) // 2) != 1:
                return a
        raise ValueError("no quadratic non-residue")  # unreachable for odd q


class PrimeField(FiniteField):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.name = f"GF({p})"
        self._zero = Fp(0, self)
        self._one = Fp(1, self)

    def __call__(self, value):
        if isinstance(value, Fp):
            if value.F is not self and value.F != self:
                raise MixedContexts(f"{value!r} is not in {self.name}")
            return value
        if isinstance(value, int):
            return Fp(value % self.p, self)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, str):
            return self.from_fraction(Fraction(value.strip()))
        raise MixedContexts(f"cannot coerce {value!r} into {self.name}")

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise DivisionByZero(f"denominator of {q} vanishes mod {self.p}")
        return Fp(q.numerator * pow(q.denominator, -1, self.p) % self.p, self)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def contains(self, a) -> bool:
        return isinstance(a, Fp) and (a.F is self or a.F == self)

    def elements(self):
        return (Fp(i, self) for i in range(self.p))

    def sqrt(self, a):
        a = self(a)
        if self.p % 4 == 3:
            r = Fp(pow(a.v, (self.p + 1) // 4, self.p), self)
            return r if r * r == a else None
        return super().sqrt(a)

    def random(self, rng):
        return Fp(rng.randrange(self.p), self)

    def format(self, a) -> str:
        return str(a.v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class Fp:
    """Residue class modulo a prime; ``v`` is always in ``[0, p)``."""

    __slots__ = ("v", "F")

    def __init__(self, v: int, F: PrimeField):
        self.v = v
        self.F = F

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.F is not self.F and other.F.p != self.F.p:
                raise MixedContexts(f"{self.F.name} vs {other.F.name}")
            return other.v
        if isinstance(other, int):
            return other
        raise MixedContexts(f"cannot combine {self.F.name} element with {other!r}")

    def __add__(self, other):
        return Fp((self.v + self._coerce(other)) % self.F.p, self.F)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp((self.v - self._coerce(other)) % self.F.p, self.F)

    def __rsub__(self, other):
        return Fp((self._coerce(other) - self.v) % self.F.p, self.F)

    def __mul__(self, other):
        return Fp(self.v * self._coerce(other) % self.F.p, self.F)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other) % self.F.p
        if o == 0:
            raise DivisionByZero(f"division by zero in {self.F.name}")
        return Fp(self.v * pow(o, -1, self.F.p) % self.F.p, self.F)

    def __rtruediv__(self, other):
        return Fp(self._coerce(other) % self.F.p, self.F) / self

    def __neg__(self):
        return Fp(-self.v % self.F.p, self.F)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise DivisionByZero("zero to a negative power")
            return Fp(pow(pow(self.v, -1, self.F.p), -n, self.F.p), self.F)
        return Fp(pow(self.v, n, self.F.p), self.F)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.v == other.v and self.F.p == other.F.p
        if isinstance(other, int):
            return self.v == other % self.F.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.F.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.F.p})"

    def __str__(self):
        return str(self.v)


# --- GF(p^k) ---------------------------------------------------------------


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic ``m`` (coefficients low to high)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    a = [c % p for c in a[:dm]]
    return a + [0] * (dm - len(a))


def _polymulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, m, p)


def _polypowmod_x(e: int, m, p):
    """x^e modulo m over GF(p)."""
    k = len(m) - 1
    result = _polymod([1], m, p)
    base = _polymod([0, 1], m, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, m, p)
        base = _polymulmod(base, base, m, p)
        e >>= 1
    return result + [0] * (k - len(result))


def _polygcd(a, b, p):
    def trim(u):
        u = [c % p for c in u]
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return a


def is_irreducible_mod_p(m: list[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    k = len(m) - 1
    if k == 1:
        return True
    x = [0, 1] + [0] * (k - 2)
    if _polypowmod_x(p**k, m, p) != _polymod(x, m, p):
        return False
    primes = [q for q in range(2, k + 1) if k % q == 0 and is_prime(q)]
    for q in primes:
        h = _polypowmod_x(p ** (k // q), m, p)
        h = [(h[i] - (1 if i == 1 else 0)) % p for i in range(k)]
        g = _polygcd(h, m, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over GF(p).

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are enumerated in
    lexicographic order of ``(c_{k-1}, ..., c_0)``.  Returned low-to-high,
    including the leading 1.
    """
    for top in product(range(p), repeat=k):
        m = list(reversed(top)) + [1]
        if m[0] == 0:
            continue
        if is_irreducible_mod_p(m, p):
            return tuple(m)
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class ExtensionField(FiniteField):
    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 2:
            raise ValueError("use PrimeField for k = 1")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        elif len(modulus) != k + 1 or modulus[-1] != 1 or not is_irreducible_mod_p(list(modulus), p):
            raise ValueError(f"{modulus} is not a monic irreducible of degree {k} mod {p}")
        self.p, self.k, self.modulus = p, k, tuple(modulus)
        self.characteristic = p
        self.order = p**k
        self.name = f"GF({p}^{k})"
        self.base = GF(p)

    def __call__(self, value):
        if isinstance(value, Fq):
            if value.F is not self and value.F != self:
                raise MixedContexts(f"{value!r} is not in {self.name}")
            return value
        if isinstance(value, Fp):
            if value.F.p != self.p:
                raise MixedContexts(f"{value!r} is not in {self.name}")
            return Fq((value.v,) + (0,) * (self.k - 1), self)
        if isinstance(value, int):
            return Fq((value % self.p,) + (0,) * (self.k - 1), self)
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise ValueError(f"too many coefficients for {self.name}")
            cs = tuple(int(c) % self.p for c in value) + (0,) * (self.k - len(value))
            return Fq(cs, self)
        if isinstance(value, (Fraction, str)):
            return self.from_fraction(Fraction(value))
        raise MixedContexts(f"cannot coerce {value!r} into {self.name}")

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise DivisionByZero(f"denominator of {q} vanishes mod {self.p}")
        return self(q.numerator * pow(q.denominator, -1, self.p))

    @property
    def generator(self):
        return self([0, 1])

    def contains(self, a) -> bool:
        return isinstance(a, Fq) and (a.F is self or a.F == self)

    def elements(self):
        return (Fq(cs, self) for cs in product(range(self.p), repeat=self.k))

    def _non_residue(self):
        rng = random.Random(self.order)
        while True:
            a = self.random(rng)
            if a and a ** ((self.order - 1) // 2) != 1:
                return a

    def random(self, rng):
        return Fq(tuple(rng.randrange(self.p) for _ in range(self.k)), self)

    def format(self, a) -> str:
        return "[" + ",".join(str(c) for c in a.c) + "]"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))


class Fq:
    """Element of GF(p^k): coefficient vector w.r.t. powers of a root of the modulus."""

    __slots__ = ("c", "F")

    def __init__(self, c: tuple[int, ...], F: ExtensionField):
        self.c = c
        self.F = F

    def _coerce(self, other) -> tuple[int, ...]:
        if isinstance(other, Fq):
            if other.F is not self.F and other.F != self.F:
                raise MixedContexts(f"{self.F.name} vs {other.F.name}")
            return other.c
        if isinstance(other, int):
            return (other % self.F.p,) + (0,) * (self.F.k - 1)
        if isinstance(other, Fp) and other.F.p == self.F.p:
            return (other.v,) + (0,) * (self.F.k - 1)
        raise MixedContexts(f"cannot combine {self.F.name} element with {other!r}")

    def __add__(self, other):
        p = self.F.p
        return Fq(tuple((a + b) % p for a, b in zip(self.c, self._coerce(other))), self.F)

    __radd__ = __add__

    def __sub__(self, other):
        p = self.F.p
        return Fq(tuple((a - b) % p for a, b in zip(self.c, self._coerce(other))), self.F)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        F = self.F
        return Fq(tuple(_polymulmod(self.c, self._coerce(other), F.modulus, F.p)), F)

    __rmul__ = __mul__

    def inverse(self) -> Fq:
        if not any(self.c):
            raise DivisionByZero(f"division by zero in {self.F.name}")
        return self ** (self.F.order - 2)

    def __truediv__(self, other):
        return self * Fq(self._coerce(other), self.F).inverse()

    def __rtruediv__(self, other):
        return Fq(self._coerce(other), self.F) * self.inverse()

    def __neg__(self):
        p = self.F.p
        return Fq(tuple(-a % p for a in self.c), self.F)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Fq((1,) + (0,) * (self.F.k - 1), self.F)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Fq):
            return self.c == other.c and self.F == other.F
        if isinstance(other, (int, Fp)):
            try:
                return self.c == self._coerce(other)
            except MixedContexts:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.F.p))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"{list(self.c)} in {self.F.name}"

    def __str__(self):
        return self.F.format(self)


# ---------------------------------------------------------------------------
# dual numbers
# ---------------------------------------------------------------------------


class DualNumbers(Field):
    """The ring R[eps]/(eps^2) over a base field R.

    Not a field: ``a + b eps`` is invertible iff ``a != 0``.
    """

    def __init__(self, base: Field):
        self.base = base
        self.characteristic = base.characteristic
        self.name = f"Dual({base.name})"

    def __call__(self, value, eps=None):
        if isinstance(value, Dual):
            if value.F != self:
                raise MixedContexts(f"{value!r} is not in {self.name}")
            return value
        a = self.base(value)
        b = self.base.zero if eps is None else self.base(eps)
        return Dual(a, b, self)

    def from_fraction(self, q):
        return Dual(self.base.from_fraction(q), self.base.zero, self)

    @property
    def eps(self):
        return Dual(self.base.zero, self.base.one, self)

    def contains(self, a) -> bool:
        return isinstance(a, Dual) and a.F == self

    def is_invertible(self, a) -> bool:
        return bool(self(a).a)

    def sqrt(self, a):
        a = self(a)
        s = self.base.sqrt(a.a)
        if s is None or not s:
            return None
        return Dual(s, a.b / (2 * s), self)

    def random(self, rng):
        return Dual(self.base.random(rng), self.base.random(rng), self)

    def format(self, a) -> str:
        return f"{self.base.format(a.a)}+{self.base.format(a.b)}e"

    def __eq__(self, other):
        return isinstance(other, DualNumbers) and other.base == self.base

    def __hash__(self):
        return hash(("Dual", self.base))


class Dual:
    """Dual number ``a + b*eps`` with ``eps**2 == 0``."""

    __slots__ = ("a", "b", "F")

    def __init__(self, a, b, F: DualNumbers):
        self.a = a
        self.b = b
        self.F = F

    def _parts(self, other):
        if isinstance(other, Dual):
            if other.F is not self.F and other.F != self.F:
                raise MixedContexts(f"{self.F.name} vs {other.F.name}")
            return other.a, other.b
        if isinstance(other, int) or self.F.base.contains(other):
            return other, 0
        raise MixedContexts(f"cannot combine {self.F.name} element with {other!r}")

    def __add__(self, other):
        c, d = self._parts(other)
        return Dual(self.a + c, self.b + d, self.F)

    __radd__ = __add__

    def __sub__(self, other):
        c, d = self._parts(other)
        return Dual(self.a - c, self.b - d, self.F)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        c, d = self._parts(other)
        return Dual(self.a * c, self.a * d + self.b * c, self.F)

    __rmul__ = __mul__

    def inverse(self) -> Dual:
        if not self.a:
            raise DivisionByZero("dual number with zero eps-free part is not invertible")
        ia = 1 / self.a if isinstance(self.a, int) else self.F.base.one / self.a
        return Dual(ia, -self.b * ia * ia, self.F)

    def __truediv__(self, other):
        c, d = self._parts(other)
        return self * Dual(self.F.base(c), self.F.base(d), self.F).inverse()

    def __rtruediv__(self, other):
        c, d = self._parts(other)
        return Dual(self.F.base(c), self.F.base(d), self.F) * self.inverse()

    def __neg__(self):
        return Dual(-self.a, -self.b, self.F)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return Dual(self.F.base.one, self.F.base.zero, self.F)
        an1 = self.a ** (n - 1)
        return Dual(an1 * self.a, n * an1 * self.b, self.F)

    def __eq__(self, other):
        if isinstance(other, Dual):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int) or self.F.base.contains(other):
            return self.a == other and not self.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"({self.a!r} + {self.b!r}*eps)"

    def __str__(self):
        return self.F.format(self)


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> PrimeField | ExtensionField:
    """Finite field of order p^k (cached, so equal fields are identical objects)."""
    return PrimeField(p) if k == 1 else ExtensionField(p, k)


def field_from_spec(spec: str, prime: int | None = None) -> Field:
    """Parse ``"Q"``, ``"Fp"`` or ``"Fp^k"`` (with ``prime``), or ``"GF(p)"``/``"GF(p^k)"``."""
    s = spec.replace(" ", "")
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        body = s[3:-1]
        if "^" in body:
            p, k = body.split("^")
            return GF(int(p), int(k))
        return GF(int(body))
    if s.startswith("Fp"):
        if prime is None:
            raise ValueError(f"field {spec!r} needs a prime")
        k = int(s[3:]) if s.startswith("Fp^") else 1
        if s not in ("Fp", f"Fp^{k}"):
            raise ValueError(f"bad field spec {spec!r}")
        return GF(prime, k)
    raise ValueError(f"bad field spec {spec!r}")
