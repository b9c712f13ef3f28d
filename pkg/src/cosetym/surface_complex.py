"""Cellular cohomology of closed surfaces from their polygon words.

This is the independent route for the surface cohomology table in
:mod:`cosetym.bundles`: a surface is glued from one polygon whose edge word
fixes the boundary maps, integral homology comes from Smith normal forms, and
coefficients enter through the universal coefficient theorem.  For finite
coefficient groups the cochain complex can also be enumerated outright.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .abelian import AbelianGroup

__all__ = [
    "PolygonComplex", "surface_word", "integral_homology", "cellular_cohomology",
    "brute_force_cohomology", "order_profile", "brute_force_quotient_profile",
]


def surface_word(kind: str, genus: int = 0) -> list[tuple[str, int]]:
    """Standard edge word: a a^-1 (sphere), prod a b a^-1 b^-1, or prod a a."""
    if kind == "sphere" or (kind == "orientable" and genus == 0):
        return [("a", 1), ("a", -1)]
    if kind == "orientable":
        word = []
        for i in range(genus):
            word += [(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)]
        return word
    if kind == "nonorientable":
        if genus < 1:
            raise ValueError("non-orientable genus must be >= 1")
        return [(f"c{i}", s) for i in range(genus) for s in (1, 1)]
    raise ValueError(f"unknown surface kind {kind!r}")


@dataclass(frozen=True)
class PolygonComplex:
    """CW structure: identified polygon corners, the edge letters, one 2-cell."""

    n_vertices: int
    edges: tuple[str, ...]
    d1: np.ndarray  # vertices x edges
    d2: np.ndarray  # edges x faces

    @classmethod
    def from_word(cls, word) -> "PolygonComplex":
        edges = tuple(dict.fromkeys(letter for letter, _ in word))
        length = len(word)
        parent = list(range(length + 2 * len(edges)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            parent[find(i)] = find(j)

        # nodes: corners 0..L-1, then (tail, head) of each letter
        tail = {e: length + 2 * k for k, e in enumerate(edges)}
        head = {e: length + 2 * k + 1 for k, e in enumerate(edges)}
        for i, (letter, sign) in enumerate(word):
            start, end = i, (i + 1) % length
            if sign > 0:
                union(tail[letter], start)
                union(head[letter], end)
            else:
                union(head[letter], start)
                union(tail[letter], end)
        roots = sorted({find(i) for i in range(length)})
        index = {r: k for k, r in enumerate(roots)}
        d1 = np.zeros((len(roots), len(edges)), dtype=int)
        for k, e in enumerate(edges):
            d1[index[find(head[e])], k] += 1
            d1[index[find(tail[e])], k] -= 1
        d2 = np.zeros((len(edges), 1), dtype=int)
        for letter, sign in word:
            d2[edges.index(letter), 0] += sign
        if np.any(d1 @ d2):
            raise ValueError("boundary of boundary is nonzero; malformed word")
        return cls(len(roots), edges, d1, d2)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.n_vertices, len(self.edges), 1

    def boundary(self, q: int) -> np.ndarray:
        """Boundary map C_q -> C_{q-1} (zero maps outside degrees 1, 2)."""
        dims = self.dims
        if q == 1:
            return self.d1
        if q == 2:
            return self.d2
        rows = dims[q - 1] if 0 <= q - 1 <= 2 else 0
        cols = dims[q] if 0 <= q <= 2 else 0
        return np.zeros((rows, cols), dtype=int)


def _rank(m: np.ndarray) -> int:
    return 0 if m.size == 0 else Matrix(m.tolist()).rank()


def _elementary_divisors(m: np.ndarray) -> list[int]:
    if m.size == 0:
        return []
    snf = smith_normal_form(Matrix(m.tolist()), domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]


def integral_homology(cx: PolygonComplex, q: int) -> AbelianGroup:
    """H_q(M; Z) = ker d_q / im d_{q+1}."""
    if q < 0 or q > 2:
        return AbelianGroup()
    dim = cx.dims[q]
    free = dim - _rank(cx.boundary(q)) - _rank(cx.boundary(q + 1))
    torsion = [d for d in _elementary_divisors(cx.boundary(q + 1)) if d > 1]
    return AbelianGroup.from_cyclic([0] * free + torsion)


def _hom(h: AbelianGroup, pi: AbelianGroup) -> AbelianGroup:
    out = AbelianGroup()
    for d in h.cyclic_orders():
        out = out + (pi if d == 0 else pi.m_torsion(d))
    return out


def _ext(h: AbelianGroup, pi: AbelianGroup) -> AbelianGroup:
    out = AbelianGroup()
    for d in h.torsion:
        out = out + pi.mod_multiples(d)
    return out


def cellular_cohomology(cx: PolygonComplex, pi: AbelianGroup, q: int) -> AbelianGroup:
    """H^q(M; pi) = Hom(H_q, pi) + Ext(H_{q-1}, pi)."""
    return _hom(integral_homology(cx, q), pi) + _ext(integral_homology(cx, q - 1), pi)


# -- brute force over finite coefficient groups ------------------------------

def _elem_order(x, moduli) -> int:
    return math.lcm(1, *(m // math.gcd(v, m) for v, m in zip(x, moduli)))


def order_profile(group: AbelianGroup) -> dict[int, int]:
    """Number of elements of each order; determines a finite abelian group."""
    moduli = group.torsion
    return dict(sorted(Counter(_elem_order(x, moduli) for x in group.elements()).items()))


def _quotient_profile(elements, subgroup, add, scale) -> dict[int, int]:
    seen, counts = set(), Counter()
    for x in elements:
        if x in seen:
            continue
        coset = {add(x, s) for s in subgroup}
        seen |= coset
        k = 1
        while scale(x, k) not in subgroup:
            k += 1
        counts[k] += 1
    return dict(sorted(counts.items()))


def brute_force_quotient_profile(pi: AbelianGroup, m: int) -> dict[int, int]:
    """Order profile of pi / m pi by listing the subgroup m pi and its cosets."""
    moduli = pi.torsion

    def add(x, y):
        return tuple((a + b) % q for a, b, q in zip(x, y, moduli))

    def scale(x, k):
        return tuple((k * a) % q for a, q in zip(x, moduli))

    elements = list(pi.elements())
    subgroup = {scale(x, m) for x in elements}
    return _quotient_profile(elements, subgroup, add, scale)


def brute_force_cohomology(cx: PolygonComplex, pi: AbelianGroup, q: int,
                           max_cochains: int = 200_000) -> dict[int, int]:
    """Order profile of H^q(M; pi) by enumerating cellular cochains."""
    moduli = pi.torsion
    elems = list(pi.elements())
    dims = (*cx.dims, 0)

    def n_cochains(k):
        return len(elems) ** dims[k] if 0 <= k <= 2 else 1

    if n_cochains(q) * max(n_cochains(q - 1), 1) > max_cochains:
        raise ValueError("cochain space too large to enumerate")

    def add(x, y):
        return tuple(tuple((a + b) % m for a, b, m in zip(u, v, moduli)) for u, v in zip(x, y))

    def scale(x, k):
        return tuple(tuple((k * a) % m for a, m in zip(u, moduli)) for u in x)

    def coboundary(c, k):
        # (delta c)(cell) = c(boundary of cell) for a k-cochain c
        d = cx.boundary(k + 1)
        out = []
        for col in range(d.shape[1]):
            acc = [0] * len(moduli)
            for row in range(d.shape[0]):
                coef = int(d[row, col])
                if coef:
                    acc = [(a + coef * b) % m for a, b, m in zip(acc, c[row], moduli)]
            out.append(tuple(acc))
        return tuple(out)

    zero_next = tuple(tuple(0 for _ in moduli) for _ in range(dims[q + 1] if q + 1 <= 2 else 0))
    cochains = list(itertools.product(elems, repeat=dims[q]))
    cocycles = [c for c in cochains if coboundary(c, q) == zero_next]
    if q == 0:
        boundaries = {tuple(tuple(0 for _ in moduli) for _ in range(dims[0]))}
    else:
        boundaries = {coboundary(b, q - 1) for b in itertools.product(elems, repeat=dims[q - 1])}
    return _quotient_profile(cocycles, boundaries, add, scale)
