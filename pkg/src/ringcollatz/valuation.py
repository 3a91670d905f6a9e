"""p-adic valuations, base-p digit sums and binomial divisibility.

Everything is exact integer arithmetic; logarithms are taken by repeated
integer division.
"""

from __future__ import annotations

from math import comb

from .errors import PreconditionError
from .rings import CharFactorization, is_prime


def vp(p: int, n: int) -> int:
    """Exponent of the prime ``p`` in ``n`` (n != 0)."""
    if n == 0:
        raise PreconditionError("infinite valuation: vp(0) is undefined")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def digit_sum(p: int, n: int) -> int:
    """Sum of the base-``p`` digits of ``n >= 0``."""
    if n < 0:
        raise ValueError("digit_sum needs n >= 0")
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s


def floor_log(p: int, n: int) -> int:
    """Largest r with p**r <= n, for n >= 1."""
    if n < 1:
        raise PreconditionError("floor_log needs n >= 1")
    r = 0
    while n >= p:
        n //= p
        r += 1
    return r


def binom_valuation(p: int, n: int, m: int) -> int:
    """v_p(C(n, m)) from base-p digit sums (Kummer)."""
    if not 0 <= m <= n:
        raise PreconditionError(f"need 0 <= m <= n, got m={m}, n={n}")
    carries = digit_sum(p, m) + digit_sum(p, n - m) - digit_sum(p, n)
    q, r = divmod(carries, p - 1)
    if r:
        raise AssertionError(f"digit-sum excess {carries} not divisible by {p - 1}")
    return q


def valuation_difference(p: int, a: int, n: int) -> int:
    """v_p(C(a, n)) = v_p(a) - v_p(n) when v_p(a) > floor(log_p n).

    Raises ``PreconditionError`` when the hypothesis fails.
    """
    if not a >= n >= 1:
        raise PreconditionError(f"need a >= n >= 1, got a={a}, n={n}")
    if vp(p, a) < floor_log(p, n) + 1:
        raise PreconditionError(
            f"precondition failed: v_{p}({a}) = {vp(p, a)} < {floor_log(p, n) + 1}")
    return vp(p, a) - vp(p, n)


def threshold_constant(cf: CharFactorization | int, n: int) -> int:
    """K(n) = prod p_i^(alpha_i + floor(log_{p_i} n)).

    ``cf`` is the factorization of the characteristic (an int is factored).
    """
    if isinstance(cf, int):
        cf = CharFactorization.of(cf)
    if n < 1:
        raise PreconditionError("threshold constant needs n >= 1")
    out = 1
    for p, alpha in cf.factors:
        out *= p ** (alpha + floor_log(p, n))
    return out


def divisibility_equivalence_check(cf: CharFactorization | int, n: int, k: int) -> tuple[bool, bool]:
    """Return (K(n) | k, N | C(k, j) for all 1 <= j <= n).

    The two sides are computed independently; they always agree.
    """
    if isinstance(cf, int):
        cf = CharFactorization.of(cf)
    if not k >= n >= 1:
        raise PreconditionError(f"need k >= n >= 1, got k={k}, n={n}")
    side1 = k % threshold_constant(cf, n) == 0
    big_n = cf.product
    side2 = all(comb(k, j) % big_n == 0 for j in range(1, n + 1))
    return side1, side2


def binom_mod(n: int, k: int, m: int) -> int:
    """C(n, k) mod m; Lucas digit products when m is prime."""
    if k < 0 or k > n:
        return 0
    if is_prime(m):
        out = 1
        while n or k:
            n, a = divmod(n, m)
            k, b = divmod(k, m)
            if b > a:
                return 0
            out = out * comb(a, b) % m
        return out
    return comb(n, k) % m
