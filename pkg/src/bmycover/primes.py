"""Primality helpers for parameter validation and prime sweeps."""

from __future__ import annotations


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for the sizes swept here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending."""
    if hi < 2:
        return []
    lo = max(lo, 2)
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    d = 2
    while d * d <= hi:
        if sieve[d]:
            sieve[d * d :: d] = b"\x00" * len(sieve[d * d :: d])
        d += 1
    return [p for p in range(lo, hi + 1) if sieve[p]]
