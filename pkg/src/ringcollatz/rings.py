"""Coefficient rings: Z/N, finite fields F_q, F_p[t] and Z.

Ring elements are plain hashable Python values kept in canonical form, so
``==`` on elements is ring equality:

* ``ZmodN``         int in ``range(N)``
* ``GaloisField``   int in ``range(q)`` packing the little-endian coefficient
                    vector of the reduced representative, ``a0 + a1*p + ...``
* ``PolyOverPrime`` tuple of residues mod p, little-endian, no trailing zeros
* ``Integers``      int

Ring descriptions use the textual grammar ``Z/<N>``, ``F<p>``,
``F<q>=F<p>[y]/(<poly>)``, ``F<p>[t]`` and ``Z`` (case-insensitive, spaces
ignored).  ``F<q>`` for a prime power q picks the first monic irreducible
modulus in packed order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import gcd

from .errors import RingError, UnsupportedRing

MAX_FIELD_DEGREE = 8
_TABLE_LIMIT = 256


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


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n >= 1`` by trial division, primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


# --- dense polynomials over F_p as little-endian tuples -----------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                 for i in range(n))


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                 for i in range(n))


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(c % p for c in out)


def _pmod(a, m, p):
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return _trim(a)


def _monic_polys(p, d):
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(modulus, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not _pmod(modulus, g, p):
                return False
    return True


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    for low in range(p ** k):
        coeffs = tuple((low // p ** i) % p for i in range(k)) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise RingError(f"no irreducible polynomial of degree {k} over F{p}")  # pragma: no cover


def _format_y_poly(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


_TERM = re.compile(r"([+-]?)(\d*)\*?(y(?:\^(\d+))?)?")


def _parse_y_poly(text: str, p: int) -> tuple[int, ...]:
    text = text.replace(" ", "").lower()
    if not text:
        raise RingError("empty modulus")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise RingError(f"cannot parse modulus {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            e = int(m.group(4)) if m.group(4) else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
        if pos < len(text) and text[pos] not in "+-":
            raise RingError(f"cannot parse modulus {text!r}")
    deg = max(coeffs)
    return _trim((coeffs.get(i, 0) % p) for i in range(deg + 1))


# --- ring classes -------------------------------------------------------------

class Ring:
    """Common interface of the supported commutative rings."""

    characteristic: int
    cardinality: int | None

    zero: object
    one: object

    @property
    def is_finite(self) -> bool:
        return self.cardinality is not None

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.spec

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, m: int):
        raise NotImplementedError

    def scale(self, a, m: int):
        """Multiply ``a`` by the integer ``m``."""
        return self.mul(self.from_int(m), a)

    def elements(self):
        raise UnsupportedRing(f"enumeration unsupported for infinite ring {self.spec}")

    def sort_key(self, a):
        return a


@dataclass(frozen=True)
class ZmodN(Ring):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise RingError(f"Z/N needs N >= 2, got {self.n!r}")

    characteristic = property(lambda self: self.n)
    cardinality = property(lambda self: self.n)
    zero = 0
    one = property(lambda self: 1)

    @property
    def spec(self):
        return f"Z/{self.n}"

    def from_int(self, m):
        return m % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, a, b):
        return a * b % self.n

    def scale(self, a, m):
        return a * m % self.n

    def is_unit(self, a):
        return gcd(a, self.n) == 1

    def elements(self):
        return tuple(range(self.n))

    def parse_element(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, (int, str)):
            raise RingError(f"bad element {obj!r} for {self.spec}")
        return int(obj) % self.n

    def format_element(self, a):
        return a

    def random_element(self, rng):
        return rng.randrange(self.n)


@dataclass(frozen=True)
class GaloisField(Ring):
    """F_q = F_p[y]/(modulus); ``modulus`` is little-endian and monic."""

    p: int
    modulus: tuple[int, ...]
    _add: list = field(init=False, repr=False, compare=False, hash=False)
    _mul: list = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        p = self.p
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        mod = _trim(c % p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        k = len(mod) - 1
        if k < 1 or mod[-1] != 1:
            raise RingError("field modulus must be monic of degree >= 1")
        if k > MAX_FIELD_DEGREE:
            raise RingError(f"field degree {k} exceeds cap {MAX_FIELD_DEGREE}")
        if not is_irreducible(mod, p):
            raise RingError(f"reducible modulus {_format_y_poly(mod)} over F{p}")
        q = p ** k
        if q <= _TABLE_LIMIT:
            add = [[self._pack(_padd(self._unpack(a), self._unpack(b), p)) for b in range(q)]
                   for a in range(q)]
            mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        else:
            add = mul = None
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_mul", mul)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    characteristic = property(lambda self: self.p)
    cardinality = property(lambda self: self.p ** self.degree)
    zero = 0
    one = property(lambda self: 1)

    @property
    def spec(self):
        if self.degree == 1:
            return f"F{self.p}"
        return f"F{self.cardinality}=F{self.p}[y]/({_format_y_poly(self.modulus)})"

    def _unpack(self, a):
        out = []
        while a:
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def _pack(self, coeffs):
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + c
        return a

    def _mul_slow(self, a, b):
        prod = _pmul(self._unpack(a), self._unpack(b), self.p)
        return self._pack(_pmod(prod, self.modulus, self.p))

    def from_int(self, m):
        return m % self.p

    def add(self, a, b):
        if self._add is not None:
            return self._add[a][b]
        return self._pack(_padd(self._unpack(a), self._unpack(b), self.p))

    def neg(self, a):
        return self._pack(tuple(-c % self.p for c in self._unpack(a)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_slow(a, b)

    def is_unit(self, a):
        return a != 0

    def elements(self):
        return tuple(range(self.cardinality))

    def parse_element(self, obj):
        if isinstance(obj, bool):
            raise RingError(f"bad element {obj!r}")
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            a = int(obj)
            if self.degree == 1:
                return a % self.p
            if not 0 <= a < self.cardinality:
                raise RingError(f"packed element {a} out of range for {self.spec}")
            return a
        if isinstance(obj, (list, tuple)):
            coeffs = [int(c) % self.p for c in obj]
            return self._pack(_pmod(_trim(coeffs), self.modulus, self.p))
        raise RingError(f"bad element {obj!r} for {self.spec}")

    def format_element(self, a):
        if self.degree == 1:
            return a
        return list(self._unpack(a))

    def random_element(self, rng):
        return rng.randrange(self.cardinality)


@dataclass(frozen=True)
class PolyOverPrime(Ring):
    """The infinite ring F_p[t] of positive characteristic."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingError(f"{self.p} is not prime")

    characteristic = property(lambda self: self.p)
    cardinality = None
    zero = ()
    one = (1,)

    @property
    def spec(self):
        return f"F{self.p}[t]"

    def from_int(self, m):
        return _trim((m % self.p,))

    def add(self, a, b):
        return _padd(a, b, self.p)

    def sub(self, a, b):
        return _psub(a, b, self.p)

    def neg(self, a):
        return tuple(-c % self.p for c in a)

    def mul(self, a, b):
        return _pmul(a, b, self.p)

    def scale(self, a, m):
        m %= self.p
        return tuple(c * m % self.p for c in a) if m else ()

    def is_unit(self, a):
        return len(a) == 1

    def sort_key(self, a):
        return (len(a), a)

    def parse_element(self, obj):
        if isinstance(obj, bool):
            raise RingError(f"bad element {obj!r}")
        if isinstance(obj, (int, str)):
            return self.from_int(int(obj))
        if isinstance(obj, (list, tuple)):
            return _trim(int(c) % self.p for c in obj)
        raise RingError(f"bad element {obj!r} for {self.spec}")

    def format_element(self, a):
        return list(a)

    def random_element(self, rng, degree=3):
        return _trim(rng.randrange(self.p) for _ in range(degree + 1))


@dataclass(frozen=True)
class Integers(Ring):
    characteristic = 0
    cardinality = None
    zero = 0
    one = 1

    @property
    def spec(self):
        return "Z"

    def from_int(self, m):
        return m

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, a, m):
        return a * m

    def is_unit(self, a):
        return a in (1, -1)

    def parse_element(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, (int, str)):
            raise RingError(f"bad integer {obj!r}")
        try:
            return int(obj)
        except ValueError:
            raise RingError(f"bad integer {obj!r}") from None

    def format_element(self, a):
        return str(a)

    def random_element(self, rng, bound=10**6):
        return rng.randint(-bound, bound)


# --- construction -------------------------------------------------------------

_Z_MOD = re.compile(r"z/(\d+)")
_FIELD_EXT = re.compile(r"f(\d+)=f(\d+)\[y\]/\((.+)\)")
_POLY_RING = re.compile(r"f(\d+)\[t\]")
_FIELD = re.compile(r"f(\d+)")


def _prime_power(q):
    f = factorize(q) if q > 1 else []
    if len(f) != 1:
        return None
    return f[0]


def make_ring(spec) -> Ring:
    """Build a ring from its textual description (or pass a Ring through)."""
    if isinstance(spec, Ring):
        return spec
    if not isinstance(spec, str):
        raise RingError(f"ring spec must be a string, got {type(spec).__name__}")
    s = re.sub(r"\s+", "", spec).lower()
    if s == "z":
        return Integers()
    if m := _Z_MOD.fullmatch(s):
        return ZmodN(int(m.group(1)))
    if m := _POLY_RING.fullmatch(s):
        return PolyOverPrime(int(m.group(1)))
    if m := _FIELD_EXT.fullmatch(s):
        q, p = int(m.group(1)), int(m.group(2))
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        ring = GaloisField(p, _parse_y_poly(m.group(3), p))
        if ring.cardinality != q:
            raise RingError(f"F{p}[y]/(...) has {ring.cardinality} elements, not {q}")
        return ring
    if m := _FIELD.fullmatch(s):
        q = int(m.group(1))
        pk = _prime_power(q)
        if pk is None:
            raise RingError(f"no field with {q} elements")
        p, k = pk
        if k > MAX_FIELD_DEGREE:
            raise RingError(f"field degree {k} exceeds cap {MAX_FIELD_DEGREE}")
        return GaloisField(p, (0, 1) if k == 1 else first_irreducible(p, k))
    raise RingError(f"malformed ring spec {spec!r}")


@dataclass(frozen=True)
class CharFactorization:
    factors: tuple[tuple[int, int], ...]

    @property
    def product(self) -> int:
        out = 1
        for p, a in self.factors:
            out *= p ** a
        return out

    @classmethod
    def of(cls, n: int) -> "CharFactorization":
        if n < 1:
            raise ValueError(f"characteristic must be positive, got {n}")
        return cls(tuple(factorize(n)))


def characteristic_factorization(ring) -> CharFactorization:
    ring = make_ring(ring)
    if ring.characteristic == 0:
        raise UnsupportedRing("char-zero ring, factorization undefined")
    return CharFactorization.of(ring.characteristic)


def is_unit(ring, a) -> bool:
    return make_ring(ring).is_unit(a)


def enumerate_elements(ring):
    return make_ring(ring).elements()
