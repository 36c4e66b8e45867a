"""Exact arithmetic for weighted projective hypersurfaces.

Everything here is a small, pure function on integers and
`fractions.Fraction`; no floats anywhere.  The central objects are the
weight system of an ambient space P(1, a1, a2, a3, a4), monomials of a
given weighted degree, and cyclic quotient singularity types 1/r(1, a, r-a).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rational = Fraction


class NonTerminalError(ValueError):
    """A quotient singularity that admits no 1/r(1, a, r-a) presentation."""


class WeightDivisibleError(ValueError):
    """A local weight is divisible by r, so the singularity is not isolated."""


@dataclass(frozen=True, order=True)
class Weights:
    """The four non-trivial weights of an ambient P(1, a1, a2, a3, a4).

    The leading weight 1 is implicit.  A general hypersurface of degree
    d = a1+a2+a3+a4 in this space is anticanonically embedded.
    """

    a1: int
    a2: int
    a3: int
    a4: int

    def __post_init__(self):
        ws = (self.a1, self.a2, self.a3, self.a4)
        if any(not isinstance(w, int) or w < 1 for w in ws):
            raise ValueError(f"weights must be positive integers, got {ws}")
        if list(ws) != sorted(ws):
            raise ValueError(f"weights must be ascending, got {ws}")

    def __iter__(self):
        return iter((self.a1, self.a2, self.a3, self.a4))

    def __str__(self):
        return f"P(1,{self.a1},{self.a2},{self.a3},{self.a4})"

    @property
    def degree(self) -> int:
        """Degree of the anticanonically embedded hypersurface."""
        return self.a1 + self.a2 + self.a3 + self.a4

    @property
    def ambient(self) -> tuple[int, int, int, int, int]:
        """All five ambient weights, including the implicit 1."""
        return (1, self.a1, self.a2, self.a3, self.a4)


@dataclass(frozen=True)
class Monomial:
    """A monomial in the five ambient variables, stored by exponents."""

    exponents: tuple[int, int, int, int, int]

    def __post_init__(self):
        if len(self.exponents) != 5 or any(e < 0 for e in self.exponents):
            raise ValueError(f"bad exponent vector {self.exponents}")

    def degree(self, w: Weights) -> int:
        return sum(e * a for e, a in zip(self.exponents, w.ambient))

    def __str__(self):
        names = "xyztw"
        parts = [
            f"{n}^{e}" if e > 1 else n
            for n, e in zip(names, self.exponents)
            if e > 0
        ]
        return "*".join(parts) if parts else "1"


def anticanonical_cube(w: Weights) -> Fraction:
    """Anticanonical degree -K^3 = d / (a1*a2*a3*a4) of the general member."""
    return Fraction(w.degree, w.a1 * w.a2 * w.a3 * w.a4)


def monomials_of_degree(w: Weights, d: int) -> list[Monomial]:
    """All ambient monomials of weighted degree d, in lexicographic order
    of their exponent vectors."""
    if d < 0:
        return []
    ws = w.ambient
    out: list[Monomial] = []

    def rec(idx: int, remaining: int, acc: tuple[int, ...]):
        if idx == 4:
            q, r = divmod(remaining, ws[4])
            if r == 0:
                out.append(Monomial(acc + (q,)))
            return
        for e in range(remaining // ws[idx] + 1):
            rec(idx + 1, remaining - e * ws[idx], acc + (e,))

    rec(0, d, ())
    out.sort(key=lambda m: m.exponents)
    return out


@functools.lru_cache(maxsize=None)
def _reach_mask(weights: tuple[int, ...], cap: int) -> int:
    # bit k of the result is set iff k is a non-negative integer
    # combination of the given weights; doubling keeps this O(log) shifts
    # per weight instead of one shift per copy
    m = 1
    for w in weights:
        s = w
        while s <= cap:
            m |= m << s
            s *= 2
    return m


def is_representable(target: int, weights: tuple[int, ...]) -> bool:
    """Is `target` a sum of the given weights with non-negative multiplicities?"""
    if target < 0:
        return False
    return bool(_reach_mask(tuple(sorted(set(weights))), target) >> target & 1)


@dataclass(frozen=True, order=True)
class QuotientSingularityType:
    """A terminal cyclic quotient singularity 1/r(1, a, r-a)."""

    r: int
    a: int

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"index must be >= 2, got {self.r}")
        if not (1 <= self.a <= self.r - self.a):
            raise ValueError(f"need 1 <= a <= r-a, got a={self.a}, r={self.r}")
        if gcd(self.a, self.r) != 1:
            raise ValueError(f"need gcd(a, r) = 1, got a={self.a}, r={self.r}")

    def __str__(self):
        return f"1/{self.r}(1,{self.a},{self.r - self.a})"

    @property
    def discrepancy_cube_drop(self) -> Fraction:
        """The amount 1/(r*a*(r-a)) by which -K^3 drops under the weighted
        blow up of this point with weights (1, a, r-a)."""
        return Fraction(1, self.r * self.a * (self.r - self.a))


def normalize_singularity(r: int, q1: int, q2: int, q3: int) -> QuotientSingularityType:
    """Bring a cyclic quotient 1/r(q1, q2, q3) to the form 1/r(1, a, r-a).

    The defining data is only determined up to multiplying all three local
    weights by a unit of Z/r, so we search the units.  Raises
    WeightDivisibleError when some local weight is 0 mod r (the singular
    locus would be positive-dimensional) and NonTerminalError when no unit
    produces the (1, a, r-a) shape.
    """
    if r < 2:
        raise ValueError(f"index must be >= 2, got {r}")
    qs = [q % r for q in (q1, q2, q3)]
    if any(q == 0 for q in qs):
        raise WeightDivisibleError(f"1/{r}({q1},{q2},{q3}) has a weight divisible by {r}")
    if any(gcd(q, r) != 1 for q in qs):
        raise NonTerminalError(f"1/{r}({q1},{q2},{q3}) is not isolated-terminal")
    for u in range(1, r):
        if gcd(u, r) != 1:
            continue
        s = sorted(q * u % r for q in qs)
        if s[0] == 1 and s[1] + s[2] == r:
            return QuotientSingularityType(r, min(s[1], s[2]))
    raise NonTerminalError(f"1/{r}({q1},{q2},{q3}) admits no terminal presentation")
