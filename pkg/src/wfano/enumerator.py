"""Search for weight systems whose general anticanonical hypersurface is a
quasismooth Fano threefold with only terminal cyclic quotient singularities.

The search space is quadruples 1 <= a1 <= a2 <= a3 <= a4, with the
hypersurface degree fixed to d = a1+a2+a3+a4.  Two independent predicates
are combined:

* `is_quasismooth_general` -- the general member has smooth affine cone away
  from the origin.  This is the classical combinatorial criterion on subsets
  of variables: every subset must either support a monomial of degree d or
  be cancelled by enough outside variables.
* `has_only_terminal_isolated_sings` -- the quotient singularities cut out
  on the hypersurface are isolated points of type 1/r(1, a, r-a).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .core import (
    NonTerminalError,
    Weights,
    WeightDivisibleError,
    is_representable,
    normalize_singularity,
)


@dataclass(frozen=True)
class Stratum:
    """A one-dimensional coordinate stratum {x_k = 0 for k outside {i, j}}
    along which the ambient space has a transverse 1/r quotient."""

    i: int  # ambient indices, 1-based into (a1..a4)
    j: int
    r: int

    def __post_init__(self):
        if not (1 <= self.i < self.j <= 4):
            raise ValueError(f"bad stratum indices ({self.i}, {self.j})")
        if self.r < 2:
            raise ValueError("a stratum needs a common weight factor >= 2")


def singular_strata(w: Weights) -> list[Stratum]:
    """The coordinate strata of P(1,a1,..,a4) with non-trivial stabilizer."""
    ws = w.ambient
    return [
        Stratum(i, j, gcd(ws[i], ws[j]))
        for i in range(1, 5)
        for j in range(i + 1, 5)
        if gcd(ws[i], ws[j]) >= 2
    ]


def is_quasismooth_general(w: Weights) -> bool:
    """Criterion for the general degree-d hypersurface to be quasismooth.

    For every non-empty subset I of the variables, either some monomial of
    degree d lives on the I-coordinates alone, or for at least |I| distinct
    outside variables x_e the degree d - wt(x_e) is representable in the
    I-weights.  Subsets containing the weight-1 variable are automatic
    (x0^d always exists), so only subsets of {1..4} are examined.
    """
    d = w.degree
    ws = w.ambient
    for size in range(1, 5):
        for subset in combinations(range(1, 5), size):
            iws = tuple(ws[i] for i in subset)
            if is_representable(d, iws):
                continue
            outside = [e for e in range(5) if e not in subset]
            hits = sum(1 for e in outside if is_representable(d - ws[e], iws))
            if hits < size:
                return False
    return True


def _terminal_type_or_none(r: int, others: list[int]) -> bool:
    try:
        normalize_singularity(r, *others)
    except (NonTerminalError, WeightDivisibleError):
        return False
    return True


def has_only_terminal_isolated_sings(w: Weights) -> bool:
    """Do the quotient points cut out on a general member stay terminal?

    Checks, in order: the weights are globally coprime; no three weights
    share a factor (that would force a singular surface inside X); every
    singular stratum actually meets the general member in finitely many
    points; and every singular point, at a vertex or on a stratum, carries
    a 1/r(1, a, r-a) quotient.
    """
    d = w.degree
    ws = w.ambient
    if gcd(gcd(ws[1], ws[2]), gcd(ws[3], ws[4])) != 1:
        return False
    for tri in combinations(range(1, 5), 3):
        if gcd(gcd(ws[tri[0]], ws[tri[1]]), ws[tri[2]]) >= 2:
            return False
    # vertices P_i lying on X (no pure power of x_i in degree d)
    for i in range(1, 5):
        r = ws[i]
        if r < 2 or d % r == 0:
            continue
        for j in range(5):
            if j == i:
                continue
            k, rem = divmod(d - ws[j], r)
            if rem == 0 and k >= 1:
                others = [ws[m] for m in range(5) if m not in (i, j)]
                if not _terminal_type_or_none(r, others):
                    return False
    # one-dimensional strata
    for st in singular_strata(w):
        if not is_representable(d, (ws[st.i], ws[st.j])):
            # the whole stratum curve would lie inside X
            return False
        others = [ws[m] for m in range(5) if m not in (st.i, st.j)]
        if not _terminal_type_or_none(st.r, others):
            return False
    return True


def enumerate_families(a4_bound: int = 40) -> list[Weights]:
    """All admissible weight systems with a4 <= a4_bound, sorted by
    (degree, weights).

    The result is monotone in the bound; a4_bound >= 33 is known to yield
    the complete list of 95 families (larger bounds add nothing, but that
    is a theorem, not something this routine re-proves).
    """
    if a4_bound < 1:
        raise ValueError(f"a4_bound must be >= 1, got {a4_bound}")
    out = []
    for a4 in range(1, a4_bound + 1):
        for a3 in range(1, a4 + 1):
            for a2 in range(1, a3 + 1):
                for a1 in range(1, a2 + 1):
                    w = Weights(a1, a2, a3, a4)
                    if is_quasismooth_general(w) and has_only_terminal_isolated_sings(w):
                        out.append(w)
    out.sort(key=lambda w: (w.degree, tuple(w)))
    return out
