"""Permutations, parity, signed orbits and the antisymmetrizer.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i`` under a
bijection of ``{0, ..., d-1}``. A permutation acts on integer vectors by
``(p . n)[i] = n[p[i]]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

Vector = tuple


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def parity(p: Sequence[int]) -> int:
    """Sign of a permutation via its cycle decomposition: +1 even, -1 odd."""
    if not is_permutation(p):
        raise ValueError(f"{tuple(p)} is not a permutation of 0..{len(p) - 1}")
    seen = [False] * len(p)
    transpositions = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        transpositions += length - 1
    return -1 if transpositions % 2 else 1


def compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """``(p o q)[i] = p[q[i]]``."""
    return tuple(p[i] for i in q)


def act(p: Sequence[int], n: Sequence[int]) -> tuple:
    return tuple(n[i] for i in p)


def transposition(d: int, i: int, j: int) -> tuple:
    p = list(range(d))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def swap(n: Sequence, i: int, j: int) -> tuple:
    m = list(n)
    m[i], m[j] = m[j], m[i]
    return tuple(m)


def permutations(d: int):
    return itertools.permutations(range(d))


def sort_with_sign(n: Sequence[int]) -> tuple[tuple, int]:
    """Sorted copy of ``n`` and the parity of the sorting permutation.

    Returns sign 0 when two coordinates coincide.
    """
    order = sorted(range(len(n)), key=lambda i: n[i])
    m = tuple(n[i] for i in order)
    if any(a == b for a, b in zip(m, m[1:])):
        return m, 0
    return m, parity(order)


def base_vectors(d: int) -> list[tuple]:
    """Minimal-norm distinct-coordinate vectors up to permutation.

    ``(0, 1, -1, ..., N, -N)`` for odd ``d`` and
    ``(0, 1, -1, ..., N-1, -(N-1), +-N)`` for even ``d``, ``N = d // 2``.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    n = d // 2
    head = [0]
    for k in range(1, n + (d % 2)):
        head += [k, -k]
    if d % 2:
        return [tuple(head)]
    return [tuple(head + [n]), tuple(head + [-n])]


@dataclass(frozen=True)
class SignedOrbit:
    d: int
    entries: dict
    # For even d each orbit is signed relative to its own base vector.
    sign_convention: str = "parity relative to each base vector"

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def signed_orbit(d: int) -> SignedOrbit:
    entries: dict = {}
    for base in base_vectors(d):
        for p in permutations(d):
            key = act(p, base)
            if key in entries:
                raise AssertionError("base vector orbits overlap")
            entries[key] = parity(p)
    return SignedOrbit(d, entries)


def antisymmetrize(f: Mapping[Vector, object], d: int) -> dict:
    """``(Af)(n) = (1/d!) sum_p sgn(p) f(p . n)``; a projector."""
    scale = Fraction(1, math.factorial(d))
    perms = [(p, parity(p)) for p in permutations(d)]
    out: dict = {}
    for n, value in f.items():
        if len(n) != d:
            raise ValueError(f"point {n} is not {d}-dimensional")
        if not value:
            continue
        contrib = value * scale
        for p, sign in perms:
            m = act(p, n)
            out[m] = out.get(m, 0) + (contrib if sign > 0 else -contrib)
    return {k: v for k, v in out.items() if v}


def is_antisymmetric(f: Mapping[Vector, object], d: int) -> bool:
    """Check ``f(swap_ij n) = -f(n)`` for all adjacent swaps on the support."""
    for n, value in f.items():
        if not value:
            continue
        for i in range(d - 1):
            if f.get(swap(n, i, i + 1), 0) != -value:
                return False
    return True


def min_distinct_norm(d: int) -> int:
    """Brute-force minimum of ``|n|^2`` over vectors with distinct coordinates.

    Coordinates are searched in ``[-d, d]``. The norm only depends on the set
    of coordinate values, so all ``d``-subsets of the window are enumerated.
    """
    if not 2 <= d <= 8:
        raise ValueError("min_distinct_norm is defined for 2 <= d <= 8")
    window = range(-d, d + 1)
    return min(sum(v * v for v in combo) for combo in itertools.combinations(window, d))
