"""Divisors, Möbius function, cyclotomic polynomials over GF(2),
factorization of X^n - 1, and polynomial orders.

Factoring relies on the structure of the inputs we care about: a
cyclotomic polynomial splits into irreducibles of one shared degree, so
equal-degree trace splitting is all that is needed; arbitrary inputs go
through squarefree/distinct-degree reduction first.  Splitting uses a
PRNG seeded explicitly so factor runs are reproducible.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import CapacityError, InputError
from .gf2poly import (
    _divmod_bits,
    Poly2,
    _deriv_bits,
    _gcd_bits,
    _is_irreducible_bits,
    _mod_bits,
    _mul_bits,
    _powmod_bits,
    _sq_bits,
    _sqrt_bits,
    x_pow_n_minus_1,
)

TRIAL_DIVISION_BOUND = 1_000_000

# largest modulus whose order computation is attempted: 2^m - 1 must fit
# the 64-bit integer factorizer
MAX_ORDER_DEGREE = 64


# ---------------------------------------------------------------------------
# integers


def divisors(n: int) -> list[int]:
    """All divisors of n, ascending."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's variant; n odd composite, not a prime power issue here
    rng = random.Random(n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_u64(n: int) -> list[int]:
    """Prime multiset of n (ascending), for 2 <= n < 2^64."""
    if n < 2 or n >= 1 << 64:
        raise InputError(f"factor_u64 requires 2 <= n < 2^64, got {n}")
    primes: list[int] = []
    for p in (2, 3, 5):
        while n % p == 0:
            primes.append(p)
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while d <= TRIAL_DIVISION_BOUND and d * d <= n:
        while n % d == 0:
            primes.append(d)
            n //= d
        d += wheel[w]
        w = (w + 1) & 7
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime_u64(m):
            primes.append(m)
            continue
        g = _pollard_rho(m)
        stack.append(g)
        stack.append(m // g)
    return sorted(primes)


def mobius(d: int) -> int:
    """Möbius function."""
    if d < 1:
        raise InputError(f"d must be >= 1, got {d}")
    if d == 1:
        return 1
    primes = factor_u64(d)
    if len(primes) != len(set(primes)):
        return 0
    return -1 if len(primes) % 2 else 1


def euler_phi(n: int) -> int:
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    out = n
    for p in sorted(set(factor_u64(n))) if n > 1 else []:
        out = out // p * (p - 1)
    return out


def ord2_mod(d: int) -> int:
    """Least m with 2^m == 1 (mod d), for odd d > 1."""
    if d <= 1 or d % 2 == 0:
        raise InputError(f"ord2_mod requires odd d > 1, got {d}")
    for m in divisors(euler_phi(d)):
        if pow(2, m, d) == 1:
            return m
    raise AssertionError("unreachable: order divides phi(d)")


# ---------------------------------------------------------------------------
# factorizations


@dataclass(frozen=True)
class Factorization:
    """Multiset of irreducible factors; product reconstructs the input."""

    factors: tuple[tuple[Poly2, int], ...]
    modulus_n: int = 0
    _orders: tuple[Optional[int], ...] = field(default=(), repr=False, compare=False)

    def product(self) -> Poly2:
        out = Poly2(1)
        for poly, mult in self.factors:
            for _ in range(mult):
                out = out * poly
        return out

    def orders(self) -> tuple[Optional[int], ...]:
        """Order of each factor; None where the order is out of capacity."""
        if len(self._orders) == len(self.factors):
            return self._orders
        out = []
        for poly, _ in self.factors:
            if poly.bits == 2:  # X has no order
                out.append(None)
                continue
            try:
                out.append(order_of(poly).t)
            except CapacityError:
                out.append(None)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "n": self.modulus_n,
            "factors": [
                {"poly": poly.to_text(), "mult": mult, "order": order}
                for (poly, mult), order in zip(self.factors, self.orders())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Factorization":
        factors = tuple(
            (Poly2.from_text(f["poly"]), f["mult"]) for f in data["factors"]
        )
        orders = tuple(f.get("order") for f in data["factors"])
        return cls(factors, data.get("n", 0), orders)


@dataclass(frozen=True)
class OrderResult:
    """Order t of a polynomial; certified means divisibility by X^t - 1
    and minimality over the divisors of t were both verified."""

    t: int
    certified: bool

    def to_json(self) -> dict:
        return {"t": self.t, "certified": self.certified}


def cyclotomic_q(t: int) -> Poly2:
    """The t-th cyclotomic polynomial reduced over GF(2), odd t only."""
    if t < 1 or t % 2 == 0:
        raise InputError(f"cyclotomic_q requires odd t >= 1, got {t}")
    num, den = 1, 1
    for d in divisors(t):
        mu = mobius(d)
        if mu == 1:
            num = _mul_bits(num, (1 << (t // d)) | 1)
        elif mu == -1:
            den = _mul_bits(den, (1 << (t // d)) | 1)
    q = 1
    if den != 1:
        # exact division
        db = den.bit_length()
        da = num.bit_length()
        q = 0
        while da >= db:
            shift = da - db
            num ^= den << shift
            q |= 1 << shift
            da = num.bit_length()
        if num:
            raise AssertionError("cyclotomic division left a remainder")
    else:
        q = num
    return Poly2(q)


def _trace_split(h: int, m: int, rng: random.Random) -> list[int]:
    # h: squarefree product of distinct irreducibles, all of degree m
    out: list[int] = []
    stack = [h]
    while stack:
        h = stack.pop()
        deg = h.bit_length() - 1
        if deg == m:
            out.append(h)
            continue
        while True:
            r = rng.getrandbits(deg)
            if r == 0:
                continue
            u = _mod_bits(r << 1, h)  # r * X
            tr = acc = u
            for _ in range(m - 1):
                acc = _mod_bits(_sq_bits(acc), h)
                tr ^= acc
            g = _gcd_bits(tr, h) if tr else h
            dg = g.bit_length() - 1
            if 0 < dg < deg:
                stack.append(g)
                stack.append(_exact_div(h, g))
                break
    return out


def _exact_div(a: int, b: int) -> int:
    db = b.bit_length()
    da = a.bit_length()
    q = 0
    while da >= db:
        shift = da - db
        a ^= b << shift
        q |= 1 << shift
        da = a.bit_length()
    if a:
        raise AssertionError("inexact division in factorization")
    return q


@functools.lru_cache(maxsize=None)
def factor_cyclotomic(t: int, seed: int = 0) -> Factorization:
    """Complete factorization of Q_t into phi(t)/ord2_mod(t) irreducibles
    of equal degree, each of order exactly t."""
    if t < 1 or t % 2 == 0:
        raise InputError(f"factor_cyclotomic requires odd t >= 1, got {t}")
    if t == 1:
        return Factorization(((Poly2(3), 1),), 0, (1,))
    q = cyclotomic_q(t)
    m = ord2_mod(t)
    if q.degree == m:
        parts = [q.bits]
    else:
        parts = _trace_split(q.bits, m, random.Random(seed))
    parts.sort()
    return Factorization(
        tuple((Poly2(p), 1) for p in parts), 0, tuple(t for _ in parts)
    )


def factor_xn_minus_1(n: int, seed: int = 0) -> Factorization:
    """Factor X^n - 1: with n = 2^k * l (l odd), the factors of Q_d over
    d | l, each with multiplicity 2^k."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    k = (n & -n).bit_length() - 1
    l = n >> k
    mult = 1 << k
    factors = []
    orders = []
    for d in divisors(l):
        sub = factor_cyclotomic(d, seed)
        factors.extend((poly, mult) for poly, _ in sub.factors)
        orders.extend(sub.orders())
    order_by_poly = {poly.bits: o for (poly, _), o in zip(factors, orders)}
    factors.sort(key=lambda pm: (pm[0].degree, pm[0].bits))
    return Factorization(
        tuple(factors), n, tuple(order_by_poly[poly.bits] for poly, _ in factors)
    )


def _distinct_irreducible_bits(f: int, rng: random.Random) -> set[int]:
    # distinct irreducible factors of nonconstant f
    if f.bit_length() <= 1:
        return set()
    d = _deriv_bits(f)
    if d == 0:
        return _distinct_irreducible_bits(_sqrt_bits(f), rng)
    g = _gcd_bits(f, d)
    if g == 1:
        return set(_factor_squarefree_bits(f, rng))
    return _distinct_irreducible_bits(g, rng) | _distinct_irreducible_bits(
        _exact_div(f, g), rng
    )


def _factor_squarefree_bits(f: int, rng: random.Random) -> list[int]:
    # distinct-degree then equal-degree split; f squarefree with f(0) != 0
    out: list[int] = []
    h = 2  # X^(2^d) mod f
    d = 0
    while f.bit_length() - 1 > 0:
        d += 1
        if 2 * d > f.bit_length() - 1:
            out.append(f)
            break
        h = _mod_bits(_sq_bits(h), f)
        g = _gcd_bits(h ^ 2, f)
        if g != 1:
            if g.bit_length() - 1 == d:
                out.append(g)
            else:
                out.extend(_trace_split(g, d, rng))
            f = _exact_div(f, g)
            h = _mod_bits(h, f)
    return out


def factor_poly(f: Poly2, seed: int = 0) -> Factorization:
    """Full factorization of an arbitrary nonzero polynomial."""
    if not f:
        raise InputError("cannot factor the zero polynomial")
    bits = f.bits
    factors: list[tuple[Poly2, int]] = []
    k = (bits & -bits).bit_length() - 1
    if k:
        factors.append((Poly2(2), k))
        bits >>= k
    if bits > 1:
        rng = random.Random(seed)
        for p in sorted(_distinct_irreducible_bits(bits, rng)):
            mult = 0
            while True:
                q, r = _divmod_bits(bits, p)
                if r:
                    break
                bits, mult = q, mult + 1
            factors.append((Poly2(p), mult))
        if bits != 1:
            raise AssertionError("factor_poly did not exhaust its input")
    factors.sort(key=lambda pm: (pm[0].degree, pm[0].bits))
    return Factorization(tuple(factors), 0)


def order_of(f: Poly2) -> OrderResult:
    """Least t with f | X^t - 1, for f with f(0) != 0 and deg f >= 1."""
    if not f or f.bits & 1 == 0:
        raise InputError("order is undefined when f(0) = 0")
    m = f.degree
    if m is None or m < 1:
        raise InputError("order is undefined for constants")
    fb = f.bits
    if _is_irreducible_bits(fb):
        if m > MAX_ORDER_DEGREE:
            raise CapacityError(
                f"degree {m} exceeds the order-computation capacity {MAX_ORDER_DEGREE}"
            )
        t = (1 << m) - 1
        if t == 1:
            return OrderResult(1, True)
        prime_set = sorted(set(factor_u64(t)))
        for p in prime_set:
            while t % p == 0 and _powmod_bits(2, t // p, fb) == 1:
                t //= p
        certified = _powmod_bits(2, t, fb) == 1 and all(
            t % p != 0 or _powmod_bits(2, t // p, fb) != 1 for p in prime_set
        )
        return OrderResult(t, certified)
    parts = factor_poly(f)
    if any(poly.bits == 2 for poly, _ in parts.factors):
        raise AssertionError("unreachable: f(0) != 0 rules out the factor X")
    t = 1
    prime_set: set[int] = set()
    for poly, _ in parts.factors:
        sub = order_of(poly).t
        t = t * sub // math.gcd(t, sub)
        if sub > 1:
            prime_set.update(factor_u64(sub))
    max_mult = max(mult for _, mult in parts.factors)
    if max_mult > 1:
        t <<= (max_mult - 1).bit_length()
        prime_set.add(2)
    certified = _powmod_bits(2, t, fb) == 1 and all(
        _powmod_bits(2, t // p, fb) != 1 for p in sorted(prime_set)
    )
    return OrderResult(t, certified)
