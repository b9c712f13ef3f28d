"""Finitely generated abelian groups in invariant-factor form.

A group is ``Z^free_rank + Z_{d1} + ... + Z_{dk}`` with ``d1 | d2 | ... | dk``
and every ``di >= 2``.  Arbitrary direct sums of cyclic groups are normalized
through their primary decomposition.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable

__all__ = ["AbelianGroup", "TRIVIAL", "Z", "Z2", "cyclic", "GroupParseError"]


class GroupParseError(ValueError):
    pass


def _prime_powers(m: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, p ** e))
        p += 1
    if m > 1:
        out.append((m, m))
    return out


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    by_prime: dict[int, list[int]] = {}
    for m in orders:
        for p, q in _prime_powers(m):
            by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return ()
    width = max(len(v) for v in by_prime.values())
    factors = [1] * width
    for powers in by_prime.values():
        # largest prime powers go into the last (largest) factors
        for slot, q in zip(range(width - 1, -1, -1), sorted(powers, reverse=True)):
            factors[slot] *= q
    return tuple(f for f in factors if f > 1)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(t < 2 for t in self.torsion):
            raise ValueError(f"torsion factors must be >= 2, got {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion factors {self.torsion} are not a divisibility chain")

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Direct sum of cyclic groups; order 0 means Z, order 1 the trivial group."""
        orders = [int(m) for m in orders]
        if any(m < 0 for m in orders):
            raise ValueError("cyclic orders must be nonnegative")
        free = sum(1 for m in orders if m == 0)
        return cls(free, _invariant_factors(m for m in orders if m > 1))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse strings such as ``"0"``, ``"Z"``, ``"Z2"``, ``"Z^2+Z6"``, ``"Z/2Z"``."""
        text = text.replace(" ", "")
        if text in ("", "0", "trivial", "1"):
            return TRIVIAL
        orders = []
        for term in text.split("+"):
            m = re.fullmatch(r"Z(?:_?(\d+)|/(\d+)Z)?(?:\^(\d+))?", term)
            if not m:
                raise GroupParseError(f"cannot parse abelian group term {term!r}")
            k = m.group(1) or m.group(2)
            reps = int(m.group(3) or 1)
            orders += [int(k) if k else 0] * reps
        return cls.from_cyclic(orders)

    # -- structure -------------------------------------------------------
    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.torsion) if self.is_finite else None

    def cyclic_orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_cyclic(self.cyclic_orders() + other.cyclic_orders())

    def power(self, k: int) -> "AbelianGroup":
        """Direct sum of k copies."""
        if k < 0:
            raise ValueError("power must be nonnegative")
        return AbelianGroup.from_cyclic(self.cyclic_orders() * k)

    def mod_multiples(self, m: int) -> "AbelianGroup":
        """The quotient pi / m pi (Z -> Z_m, Z_a -> Z_gcd(a, m))."""
        if m < 1:
            raise ValueError("m must be positive")
        return AbelianGroup.from_cyclic(m if d == 0 else math.gcd(d, m) for d in self.cyclic_orders())

    def m_torsion(self, m: int) -> "AbelianGroup":
        """The subgroup pi[m] = {x : m x = 0} (Z -> 0, Z_a -> Z_gcd(a, m))."""
        if m < 1:
            raise ValueError("m must be positive")
        return AbelianGroup.from_cyclic(1 if d == 0 else math.gcd(d, m) for d in self.cyclic_orders())

    # -- elements (finite groups only) -------------------------------------
    def elements(self):
        """All elements as tuples of residues; finite groups only."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(t) for t in self.torsion))

    def label(self) -> str:
        if self.is_trivial:
            return "trivial"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z{t}" for t in self.torsion]
        return " + ".join(parts)

    def __str__(self):
        return self.label()


def cyclic(m: int) -> AbelianGroup:
    """Z_m, with m = 0 meaning Z."""
    return AbelianGroup.from_cyclic([m])


TRIVIAL = AbelianGroup()
Z = AbelianGroup(1)
Z2 = AbelianGroup(0, (2,))
