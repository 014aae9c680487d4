"""Finite abelian groups described by invariant factors."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import prod

from .errors import BadParameter


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d1 | d2 | ... | dr, each at least 2.

    The empty tuple is the trivial group.
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", factors)
        for d in factors:
            if d < 2:
                raise BadParameter(f"invariant factor {d} is smaller than 2")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise BadParameter(f"invariant factors {list(factors)} break the divisibility chain")

    @classmethod
    def from_prime_powers(cls, powers) -> AbelianInvariants:
        """Combine elementary divisors (prime powers, any order) into invariant factors."""
        by_prime: dict[int, list[int]] = defaultdict(list)
        for q in powers:
            q = int(q)
            if q == 1:
                continue
            primes = factorize(q)
            if len(primes) != 1:
                raise BadParameter(f"{q} is not a prime power")
            by_prime[next(iter(primes))].append(q)
        if not by_prime:
            return cls(())
        length = max(len(v) for v in by_prime.values())
        factors = [1] * length
        for qs in by_prime.values():
            qs = sorted(qs)
            # right-align: largest powers go to the last factors
            for i, q in enumerate(qs):
                factors[length - len(qs) + i] *= q
        return cls(tuple(factors))

    @property
    def order(self) -> int:
        return prod(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def p_part(self, p: int) -> AbelianInvariants:
        powers = []
        for d in self.factors:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            powers.append(q)
        return AbelianInvariants.from_prime_powers(powers)

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.factors)) + "]"

    def to_list(self) -> list[int]:
        return list(self.factors)
