"""Welch's criterion and the search for the minimal-order set M.

An irreducible polynomial of odd order t divides some trinomial exactly
when gcd(1 + X^t, 1 + (1+X)^t) has degree greater than 1; t belongs to M
when additionally no proper divisor d > 1 of t passes the same test.
Welch results are memoized in-process and optionally in a JSON-lines
cache so membership scans never recompute a divisor's gcd.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .errors import CapacityError, InputError
from .factor_order import divisors, factor_cyclotomic, factor_u64, is_prime_u64, order_of
from .gf2poly import Poly2, _gcd_bits, _mod_bits, _one_plus_x_pow_bits, is_irreducible

# largest order accepted by the witness residue index (memory O(t))
MAX_WITNESS_ORDER = 1 << 20

MERSENNE_PRIMES = frozenset(
    (1 << m) - 1 for m in range(2, 64) if is_prime_u64((1 << m) - 1)
)

_WELCH_MEMO: dict[int, tuple[bool, int]] = {}

# number of actual gcd evaluations performed (cache hits don't count)
WELCH_GCD_EVALUATIONS = 0


@dataclass(frozen=True)
class TrinomialWitness:
    """Exponent pair (a, b), a > b >= 1, with f | X^a + X^b + 1."""

    a: int
    b: int
    f: Poly2

    def trinomial(self) -> Poly2:
        return Poly2((1 << self.a) | (1 << self.b) | 1)


@dataclass
class MRecord:
    """Per-t verdict of the Welch test / M-membership search."""

    t: int
    welch: bool
    gcd_degree: int
    in_m: Optional[bool] = None
    witness: Optional[tuple[int, int]] = None
    classification: str = ""
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        out: dict = {"t": self.t, "welch": self.welch, "gcd_degree": self.gcd_degree}
        if self.in_m is not None:
            out["in_m"] = self.in_m
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.classification:
            out["class"] = self.classification
        out["ms"] = int(round(self.elapsed_ms))
        return out

    def to_json_line(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "MRecord":
        witness = data.get("witness")
        return cls(
            t=data["t"],
            welch=data["welch"],
            gcd_degree=data["gcd_degree"],
            in_m=data.get("in_m"),
            witness=tuple(witness) if witness is not None else None,
            classification=data.get("class", ""),
            elapsed_ms=data.get("ms", 0),
        )


def _check_odd_gt1(t: int) -> None:
    if t <= 1 or t % 2 == 0:
        raise InputError(f"t must be odd and > 1, got {t}")


def _welch_gcd_degree(t: int) -> int:
    global WELCH_GCD_EVALUATIONS
    WELCH_GCD_EVALUATIONS += 1
    g = _gcd_bits((1 << t) | 1, _one_plus_x_pow_bits(t) ^ 1)
    return g.bit_length() - 1


def welch_test(t: int) -> tuple[bool, int]:
    """Welch's criterion for odd t > 1: (degree > 1, degree) of
    gcd(1 + X^t, 1 + (1+X)^t)."""
    _check_odd_gt1(t)
    hit = _WELCH_MEMO.get(t)
    if hit is None:
        deg = _welch_gcd_degree(t)
        hit = (deg > 1, deg)
        _WELCH_MEMO[t] = hit
    return hit


def find_witness_trinomial(
    f: Poly2, order: Optional[int] = None, max_order: int = MAX_WITNESS_ORDER
) -> Optional[TrinomialWitness]:
    """Smallest (a, b) with f | X^a + X^b + 1, or None when no trinomial
    multiple exists.  f must be irreducible and differ from X and X+1."""
    if f.bits in (2, 3) or f.bits.bit_length() < 3 or not is_irreducible(f):
        raise InputError("witness search requires an irreducible f, not X or X+1")
    t = order if order is not None else order_of(f).t
    if t > max_order:
        raise CapacityError(f"order {t} exceeds the witness index ceiling {max_order}")
    fb = f.bits
    residue_to_exp: dict[int, int] = {}
    r = 1
    for i in range(1, t):
        r = _mod_bits(r << 1, fb)
        partner = residue_to_exp.get(r ^ 1)
        if partner is not None:
            return TrinomialWitness(i, partner, f)
        if r not in residue_to_exp:
            residue_to_exp[r] = i
    return None


def m_membership(t: int) -> bool:
    """t is in M: order-t irreducibles divide trinomials while no proper
    divisor order d > 1 does (d = 1 never blocks: X+1 cannot divide a
    weight-3 polynomial)."""
    _check_odd_gt1(t)
    if not welch_test(t)[0]:
        return False
    return all(not welch_test(d)[0] for d in divisors(t)[1:-1])


def has_support3_zero_divisor(n: int) -> tuple[bool, Optional[int]]:
    """Whether GF(2)[Z_n] contains a support-size-3 zero divisor, with the
    smallest odd divisor t of n passing the Welch test as witness."""
    if n <= 2:
        raise InputError(f"group order must exceed 2, got {n}")
    l = n >> ((n & -n).bit_length() - 1)
    for t in divisors(l):
        if t > 1 and welch_test(t)[0]:
            return True, t
    return False, None


def _classify(t: int) -> str:
    if t in MERSENNE_PRIMES:
        return "mersenne_prime"
    return "prime" if is_prime_u64(t) else "composite"


def _welch_chunk(ts: list[int]) -> list[tuple[int, bool, int, float]]:
    out = []
    for t in ts:
        start = time.perf_counter()
        welch, deg = welch_test(t)
        out.append((t, welch, deg, (time.perf_counter() - start) * 1000.0))
    return out


def load_cache(path: str) -> dict[int, MRecord]:
    """Read a JSONL result cache; missing file yields an empty cache."""
    records: dict[int, MRecord] = {}
    if not os.path.exists(path):
        return records
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rec = MRecord.from_json(json.loads(line))
                records[rec.t] = rec
    return records


def search_m(
    bound: int, workers: int = 1, cache_path: Optional[str] = None
) -> list[MRecord]:
    """Evaluate M-membership for every odd t in [3, bound]; returns the
    records with in_m = true, ascending, each carrying a witness from the
    smallest order-t irreducible.  With a cache path, previously stored t
    values are not recomputed and all scanned records are persisted."""
    if bound < 3:
        raise InputError(f"bound must be >= 3, got {bound}")
    if workers < 1:
        raise InputError(f"workers must be >= 1, got {workers}")
    cached = load_cache(cache_path) if cache_path else {}
    for rec in cached.values():
        _WELCH_MEMO.setdefault(rec.t, (rec.welch, rec.gcd_degree))

    candidates = [t for t in range(3, bound + 1, 2)]
    todo = [t for t in candidates if t not in cached]
    timings: dict[int, float] = {}
    if workers > 1 and len(todo) > 1:
        chunks = [todo[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk_result in pool.map(_welch_chunk, [c for c in chunks if c]):
                for t, welch, deg, ms in chunk_result:
                    _WELCH_MEMO[t] = (welch, deg)
                    timings[t] = ms
    else:
        for t, welch, deg, ms in _welch_chunk(todo):
            timings[t] = ms

    out: list[MRecord] = []
    fresh: list[MRecord] = []
    for t in candidates:
        if t in cached:
            rec = cached[t]
            if rec.in_m is None:
                rec.in_m = m_membership(t)
        else:
            welch, deg = welch_test(t)
            rec = MRecord(
                t=t,
                welch=welch,
                gcd_degree=deg,
                in_m=m_membership(t),
                classification=_classify(t),
                elapsed_ms=timings.get(t, 0.0),
            )
        if rec.in_m and rec.witness is None:
            smallest = factor_cyclotomic(t).factors[0][0]
            witness = find_witness_trinomial(smallest, order=t)
            if witness is None:
                raise AssertionError(f"welch passed but no witness exists for t={t}")
            rec.witness = (witness.a, witness.b)
        if not rec.classification:
            rec.classification = _classify(t)
        if t not in cached:
            fresh.append(rec)
        if rec.in_m:
            out.append(rec)

    if cache_path and fresh:
        with open(cache_path, "a", encoding="utf-8") as fh:
            for rec in fresh:
                fh.write(rec.to_json_line() + "\n")
    return out
