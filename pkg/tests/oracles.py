"""Definitional coefficient-list polynomial arithmetic over GF(2).

Deliberately naive: this is the independent route the bit-packed
implementation is checked against.  Polynomials are lists of 0/1 with
index = exponent and no trailing zeros.
"""


def from_bits(bits: int) -> list[int]:
    return [(bits >> i) & 1 for i in range(bits.bit_length())]


def to_bits(p: list[int]) -> int:
    return sum(c << i for i, c in enumerate(p))


def trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        out[i] = (a[i] if i < len(a) else 0) ^ (b[i] if i < len(b) else 0)
    return trim(out)


def mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] ^= bj
    return trim(out)


def divmod_(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    assert b, "division by zero"
    r = a[:]
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(r) >= len(b):
        s = len(r) - len(b)
        q[s] = 1
        for j, bj in enumerate(b):
            if bj:
                r[s + j] ^= 1
        trim(r)
    return trim(q), r


def gcd(a: list[int], b: list[int]) -> list[int]:
    while b:
        a, b = b, divmod_(a, b)[1]
    return a


def divides(d: list[int], a: list[int]) -> bool:
    return not divmod_(a, d)[1]
