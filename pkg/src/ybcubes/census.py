"""Counting one-vertex square complexes with a VH-structure.

Labels: ``A = {0..2m-1}`` with ``a^-1 = a + m (mod 2m)``, and likewise
``B = {0..2l-1}``.  A corner is a pair ``(a, b)``; there are ``4ml`` of them
and every complex uses ``ml`` squares covering each corner exactly once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .presentation import Label, Presentation, canonical_square

__all__ = [
    "CensusGuardError",
    "LabeledCensus",
    "census_presentation",
    "cube_census_lower_bound",
    "enumerate_labeled",
    "isomorphism_classes",
    "iter_labeled",
    "mass_formula_eval",
    "trace_polynomial",
]

GUARD = 10


class CensusGuardError(ValueError):
    pass


def _guard(m: int, l: int, guard: int) -> None:
    if m < 1 or l < 1:
        raise CensusGuardError("m and l must be >= 1")
    if m * l > guard:
        raise CensusGuardError(f"m*l = {m * l} exceeds the guard {guard}")


@dataclass(frozen=True)
class LabeledCensus:
    m: int
    l: int
    count_labeled: int
    mass: Fraction

    def to_json(self) -> dict:
        return {"m": self.m, "l": self.l, "count_labeled": self.count_labeled,
                "mass": str(self.mass)}


# -- exhaustive enumeration ------------------------------------------------

def iter_labeled(m: int, l: int, guard: int = GUARD) -> Iterator[list[tuple[int, int, int, int]]]:
    """Yield every labeled complex as a list of squares ``(a, b, a', b')``.

    The square ``(a, b, a', b')`` encodes the relation ``a b = b' a'``,
    i.e. the relator ``a b a'^-1 b'^-1``.  Backtracking always covers the
    smallest uncovered corner next.
    """
    _guard(m, l, guard)
    A, B = 2 * m, 2 * l
    ia = [(a + m) % A for a in range(A)]
    ib = [(b + l) % B for b in range(B)]
    covered = [False] * (A * B)
    chosen: list[tuple[int, int, int, int]] = []

    def corners(a, b, a2, b2):
        return (a * B + b, a2 * B + ib[b], ia[a] * B + b2, ia[a2] * B + ib[b2])

    def rec(start):
        try:
            c = covered.index(False, start)
        except ValueError:
            yield list(chosen)
            return
        a, b = divmod(c, B)
        for a2 in range(A):
            for b2 in range(B):
                cs = corners(a, b, a2, b2)
                if len(set(cs)) < 4 or any(covered[k] for k in cs):
                    continue
                for k in cs:
                    covered[k] = True
                chosen.append((a, b, a2, b2))
                yield from rec(c + 1)
                chosen.pop()
                for k in cs:
                    covered[k] = False

    yield from rec(0)


def enumerate_labeled(m: int, l: int, guard: int = GUARD) -> int:
    return sum(1 for _ in iter_labeled(m, l, guard))


def census_presentation(m: int, l: int, squares) -> Presentation:
    """Presentation ``a1..a2m, b1..b2l`` of an enumerated complex."""
    A, B = 2 * m, 2 * l
    labels = [Label(a, f"a{a + 1}", 0, (a + m) % A) for a in range(A)]
    labels += [Label(A + b, f"b{b + 1}", 1, A + (b + l) % B) for b in range(B)]
    inv = [lab.inverse for lab in labels]
    relators = [(a, A + b, inv[a2], inv[A + b2]) for a, b, a2, b2 in squares]
    return Presentation.from_squares(labels, relators, name=f"census({2 * m},{2 * l})")


# -- mass formula ----------------------------------------------------------

def trace_polynomial(m: int, l: int) -> dict[int, int]:
    """Multilinear part of ``tr((tau_A X tau_B X^T)^2)``.

    Monomials are bitmasks over the variables ``x_ab`` (bit ``a*2l + b``).
    Terms in which some variable repeats are dropped: they can never
    contribute to the coefficient of the product of all variables.
    """
    A, B = 2 * m, 2 * l
    tau_a = [(a + m) % A for a in range(A)]
    tau_b = [(b + l) % B for b in range(B)]

    def var(a, b):
        return 1 << (a * B + b)

    # (tau_A X)[a][b] = x_{tau a, b};  (tau_B X^T)[b][a] = x_{a, tau b}
    # M = (tau_A X)(tau_B X^T) has entries of degree 2
    M = [[{} for _ in range(A)] for _ in range(A)]
    for a, a2, b in itertools.product(range(A), range(A), range(B)):
        u, v = var(tau_a[a], b), var(a2, tau_b[b])
        if u & v:
            continue
        M[a][a2][u | v] = M[a][a2].get(u | v, 0) + 1
    out: dict[int, int] = {}
    for a, a2 in itertools.product(range(A), range(A)):
        for s, cs in M[a][a2].items():
            for t, ct in M[a2][a].items():
                if s & t:
                    continue
                out[s | t] = out.get(s | t, 0) + cs * ct
    return out


def _full_coefficient(poly: dict[int, int], power: int, nvars: int) -> int:
    """Coefficient of ``x_1 ... x_n`` in ``poly ** power``, multilinear only."""
    state = {0: 1}
    for _ in range(power):
        nxt: dict[int, int] = {}
        for s, cs in state.items():
            for t, ct in poly.items():
                if s & t:
                    continue
                nxt[s | t] = nxt.get(s | t, 0) + cs * ct
        state = nxt
    return state.get((1 << nvars) - 1, 0)


def mass_formula_eval(m: int, l: int, guard: int = GUARD) -> LabeledCensus:
    """Labeled count and automorphism-weighted mass from the trace polynomial.

    The labeled count is ``d^(4ml) / prod dx_ab`` of ``((1/4) tr)^(ml)``
    divided by ``(ml)!``; on the multilinear part that derivative is just
    the coefficient of the product of all variables.  The mass divides the
    same derivative of ``tr^(ml)`` by ``2^(l+m+2lm) l! m! (ml)!``.
    """
    _guard(m, l, guard)
    ml = m * l
    coef = _full_coefficient(trace_polynomial(m, l), ml, 4 * ml)
    labeled = Fraction(coef, 4 ** ml * math.factorial(ml))
    if labeled.denominator != 1:
        raise ArithmeticError(f"labeled count {labeled} is not an integer")
    mass = Fraction(coef, 2 ** (l + m + 2 * l * m) * math.factorial(l) * math.factorial(m) * math.factorial(ml))
    return LabeledCensus(m, l, int(labeled), mass)


def cube_census_lower_bound(m: int, l: int, k: int, guard: int = GUARD) -> int:
    """Labeled 3-cube complexes with valencies ``(2m, 2l, 2k)``, via extension.

    Each labeled ``(2m, 2l)`` complex extended by ``k`` commuting generators
    gives a distinct labeled 3-cube complex, so the square-complex count is
    a lower bound for solutions on ``2(m+l+k)`` letters.
    """
    if min(m, l, k) < 2:
        raise CensusGuardError("m, l, k must all be >= 2")
    return enumerate_labeled(m, l, guard)


# -- isomorphism classes ---------------------------------------------------

def _relabelings(half: int):
    """Automorphisms of ``{0..2h-1}`` commuting with ``x -> x + h``."""
    n = 2 * half
    for perm in itertools.permutations(range(half)):
        for flips in itertools.product((0, 1), repeat=half):
            img = [0] * n
            for i, (p, f) in enumerate(zip(perm, flips)):
                img[i] = p + f * half
                img[i + half] = p + (1 - f) * half
            yield img


def isomorphism_classes(m: int, l: int, guard: int = GUARD) -> list[tuple[tuple, int]]:
    """Deduplicate the labeled census under the universal relabelling group.

    Returns ``(canonical_form, automorphism_count)`` per class, where the
    canonical form is the least sorted relator tuple over all relabellings.
    """
    _guard(m, l, guard)
    A = 2 * m
    group = [(ga, gb) for ga in _relabelings(m) for gb in _relabelings(l)]
    classes: dict[tuple, int] = {}
    seen: set[tuple] = set()
    for squares in iter_labeled(m, l, guard):
        pres = census_presentation(m, l, squares)
        if pres.squares in seen:
            continue
        inv, colors = pres.inv, pres.colors
        images = []
        for ga, gb in group:
            mp = ga + [A + g for g in gb]
            img = tuple(sorted(canonical_square([mp[e] for e in sq], inv, colors) for sq in pres.squares))
            images.append(img)
        seen.update(images)
        canon = min(images)
        classes[canon] = sum(1 for img in images if img == pres.squares)
    return sorted(classes.items())
