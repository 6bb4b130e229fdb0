"""Dense bit-packed arithmetic for polynomials over GF(2).

A polynomial b_d X^d + ... + b_1 X + b_0 is stored as the nonnegative
integer with bit i equal to the coefficient of X^i, so addition is a
single XOR and reduction steps are shift-and-XOR.  The module-level
functions operating on raw ints (names starting with ``_``) are the hot
kernels; :class:`Poly2` is a thin immutable wrapper that public callers
use.  Integers are always canonical, so two equal polynomials are
bit-identical by construction.

The zero polynomial has no well-defined degree; ``Poly2.degree`` returns
``None`` for it rather than a signed sentinel.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import CapacityError, InputError

MAX_DEGREE = 2**31 - 1

# Degree (in bits) of the smaller operand above which multiplication
# switches from schoolbook shift-XOR to Karatsuba splitting.
KARATSUBA_THRESHOLD = 4096

# byte -> bytes of the 16-bit "insert a zero after every bit" spread,
# little endian; drives linear-time Frobenius squaring
_SPREAD = [sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)]
_SPREAD_BYTES = [s.to_bytes(2, "little") for s in _SPREAD]
# byte -> compression of its even-position bits into a nibble (sqrt helper)
_UNSPREAD = [sum(((b >> (2 * i)) & 1) << i for i in range(4)) for b in range(256)]


# ---------------------------------------------------------------------------
# int-level kernels


def _mul_bits(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    la = a.bit_length()
    lb = b.bit_length()
    if la < lb:
        a, b, la, lb = b, a, lb, la
    if lb > KARATSUBA_THRESHOLD:
        h = la >> 1
        mask = (1 << h) - 1
        a0, a1 = a & mask, a >> h
        b0, b1 = b & mask, b >> h
        z0 = _mul_bits(a0, b0)
        z2 = _mul_bits(a1, b1)
        z1 = _mul_bits(a0 ^ a1, b0 ^ b1) ^ z0 ^ z2
        return z0 ^ (z1 << h) ^ (z2 << (2 * h))
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def _sq_bits(a: int) -> int:
    if a == 0:
        return 0
    nb = (a.bit_length() + 7) >> 3
    src = a.to_bytes(nb, "little")
    return int.from_bytes(b"".join(_SPREAD_BYTES[byte] for byte in src), "little")


def _sqrt_bits(a: int) -> int:
    # inverse of _sq_bits; odd-position bits must be clear
    nb = (a.bit_length() + 7) >> 3
    src = a.to_bytes(nb, "little")
    out = 0
    for i in range(nb):
        out |= _UNSPREAD[src[i]] << (4 * i)
    return out


def _divmod_bits(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    da = a.bit_length()
    q = 0
    while da >= db:
        shift = da - db
        a ^= b << shift
        q |= 1 << shift
        da = a.bit_length()
    return q, a


def _mod_bits(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    da = a.bit_length()
    while da >= db:
        a ^= b << (da - db)
        da = a.bit_length()
    return a


def _gcd_bits(a: int, b: int) -> int:
    while b:
        a, b = b, _mod_bits(a, b)
    return a


def _powmod_bits(base: int, e: int, mod: int) -> int:
    r = 1
    base = _mod_bits(base, mod)
    while e:
        if e & 1:
            r = _mod_bits(_mul_bits(r, base), mod)
        e >>= 1
        if e:
            base = _mod_bits(_sq_bits(base), mod)
    return r


def _deriv_bits(a: int) -> int:
    # formal derivative over GF(2): keep bits at odd positions, shifted down
    n = a.bit_length()
    n += n & 1
    mask = ((1 << n) - 1) // 3  # 0b...010101
    return (a >> 1) & mask


def _reciprocal_bits(a: int) -> int:
    # bit string reversed across [0, deg]
    return int(bin(a)[:1:-1], 2)


def _one_plus_x_pow_bits(t: int) -> int:
    # (1+X)^t as the product of (1 + X^(2^i)) over the set bits of t
    r = 1
    i = 0
    while t:
        if t & 1:
            r ^= r << (1 << i)
        t >>= 1
        i += 1
    return r


def _small_prime_factors(n: int) -> list[int]:
    # distinct prime factors by trial division; used on degrees, so n is small
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _is_irreducible_bits(f: int) -> bool:
    m = f.bit_length() - 1
    if m == 1:
        return True
    if f & 1 == 0:  # X divides f and deg f > 1
        return False
    # Rabin: X^(2^m) == X mod f, and no factor of degree dividing m/p
    checkpoints = {m // p for p in _small_prime_factors(m)}
    h = 2  # X
    for i in range(1, m + 1):
        h = _mod_bits(_sq_bits(h), f)
        if i in checkpoints and _gcd_bits(h ^ 2, f) != 1:
            return False
    return h == 2


# ---------------------------------------------------------------------------
# public value type


class Poly2:
    """Immutable polynomial over GF(2), bit i = coefficient of X^i."""

    __slots__ = ("_bits",)

    def __init__(self, bits: int = 0):
        if not isinstance(bits, int):
            raise InputError(f"polynomial bits must be an int, got {type(bits).__name__}")
        if bits < 0:
            raise InputError("polynomial bits must be nonnegative")
        if bits.bit_length() - 1 > MAX_DEGREE:
            raise CapacityError(f"degree exceeds the supported maximum {MAX_DEGREE}")
        self._bits = bits

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        return self._bits.bit_length() - 1 if self._bits else None

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Poly2":
        bits = 0
        for e in exponents:
            if e < 0:
                raise InputError(f"negative exponent {e}")
            if e > MAX_DEGREE:
                raise CapacityError(f"exponent {e} exceeds the supported maximum {MAX_DEGREE}")
            mask = 1 << e
            if bits & mask:
                raise InputError(f"duplicate exponent {e}")
            bits |= mask
        return cls(bits)

    @classmethod
    def from_text(cls, text: str) -> "Poly2":
        """Parse "0,1,3" (exponent list) or "0xB" (hex coefficient mask)."""
        s = text.strip()
        if not s:
            return cls(0)
        if s.lower().startswith("0x"):
            try:
                return cls(int(s, 16))
            except ValueError:
                raise InputError(f"malformed hex polynomial {text!r}") from None
        try:
            exps = [int(part) for part in s.split(",")]
        except ValueError:
            raise InputError(f"malformed polynomial text {text!r}") from None
        return cls.from_exponents(exps)

    def exponents(self) -> tuple[int, ...]:
        bits = self._bits
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def to_text(self) -> str:
        return ",".join(str(e) for e in self.exponents())

    def weight(self) -> int:
        return self._bits.bit_count()

    def __add__(self, other: "Poly2") -> "Poly2":
        return Poly2(self._bits ^ other._bits)

    __sub__ = __add__

    def __mul__(self, other: "Poly2") -> "Poly2":
        return Poly2(_mul_bits(self._bits, other._bits))

    def __divmod__(self, other: "Poly2") -> tuple["Poly2", "Poly2"]:
        q, r = _divmod_bits(self._bits, other._bits)
        return Poly2(q), Poly2(r)

    def __floordiv__(self, other: "Poly2") -> "Poly2":
        return Poly2(_divmod_bits(self._bits, other._bits)[0])

    def __mod__(self, other: "Poly2") -> "Poly2":
        return Poly2(_mod_bits(self._bits, other._bits))

    def __lshift__(self, k: int) -> "Poly2":
        """Multiply by X^k."""
        return Poly2(self._bits << k)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly2) and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((Poly2, self._bits))

    def __bool__(self) -> bool:
        return bool(self._bits)

    def __repr__(self) -> str:
        return f"Poly2({self.to_text()!r})" if self._bits else "Poly2(0)"

    def __str__(self) -> str:
        return self.to_text()


ZERO = Poly2(0)
ONE = Poly2(1)
X = Poly2(2)


# ---------------------------------------------------------------------------
# spec operations


def poly_from_exponents(exponents: Iterable[int]) -> Poly2:
    """Sum of X^e over a duplicate-free set of exponents."""
    return Poly2.from_exponents(exponents)


def add(a: Poly2, b: Poly2) -> Poly2:
    return a + b


def mul(a: Poly2, b: Poly2) -> Poly2:
    return a * b


def square(a: Poly2) -> Poly2:
    """a*a via Frobenius bit-spreading, linear time."""
    return Poly2(_sq_bits(a.bits))


def divrem(a: Poly2, b: Poly2) -> tuple[Poly2, Poly2]:
    """Quotient and remainder with deg r < deg b; b must be nonzero."""
    return divmod(a, b)


def gcd(a: Poly2, b: Poly2) -> Poly2:
    """Euclidean gcd; monic is automatic over GF(2)."""
    if not a and not b:
        raise InputError("gcd(0, 0) is undefined")
    return Poly2(_gcd_bits(a.bits, b.bits))


def pow_mod(base: Poly2, e: int, modulus: Poly2) -> Poly2:
    """base^e reduced mod modulus, by square-and-multiply."""
    if e < 0:
        raise InputError("negative exponent")
    if modulus.bits.bit_length() < 2:
        raise InputError("modulus must have degree >= 1")
    return Poly2(_powmod_bits(base.bits, e, modulus.bits))


def pow_of_one_plus_x(t: int) -> Poly2:
    """(1+X)^t, built from the sparse binomials (1 + X^(2^i))."""
    if t < 1:
        raise InputError(f"exponent must be >= 1, got {t}")
    if t > MAX_DEGREE:
        raise CapacityError(f"degree {t} exceeds the supported maximum {MAX_DEGREE}")
    return Poly2(_one_plus_x_pow_bits(t))


def reciprocal(f: Poly2) -> Poly2:
    """X^(deg f) * f(1/X): the coefficient string reversed."""
    if not f:
        raise InputError("reciprocal of the zero polynomial is undefined")
    return Poly2(_reciprocal_bits(f.bits))


def is_irreducible(f: Poly2) -> bool:
    """Frobenius/Rabin irreducibility test over GF(2)."""
    if f.bits.bit_length() < 2:
        raise InputError("irreducibility is undefined for constants")
    return _is_irreducible_bits(f.bits)


def weight(f: Poly2) -> int:
    """Number of nonzero coefficients."""
    return f.weight()


def x_pow_n_minus_1(n: int) -> Poly2:
    """X^n - 1 (== X^n + 1 over GF(2))."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    if n > MAX_DEGREE:
        raise CapacityError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
    return Poly2((1 << n) | 1)
