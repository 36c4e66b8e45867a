"""Singular loci of a general quasismooth member: which ambient quotient
points end up on the hypersurface, and with which transverse types.

Loci are named the way the dataset names them: "P3" is the vertex of the
weight-a3 coordinate, "P2P4" the one-dimensional stratum where only the
weight-a2 and weight-a4 coordinates survive.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .core import QuotientSingularityType, Weights, normalize_singularity
from .enumerator import Stratum, singular_strata


class NoEliminatorError(ValueError):
    """No variable can be eliminated at the vertex: the general member is
    not quasismooth there."""


class EmptyRestrictionError(ValueError):
    """The defining polynomial restricts to zero on a stratum, so the whole
    stratum curve lies inside the hypersurface."""


@dataclass(frozen=True)
class BasketEntry:
    count: int
    sing_type: QuotientSingularityType
    locus: str

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be positive, got {self.count}")

    def __str__(self):
        return f"{self.locus}: {self.count} x {self.sing_type}"


@dataclass(frozen=True)
class Basket:
    """The multiset of quotient points on a general member, as sorted entries.

    Entries are sorted by descending index r, then ascending count, then
    locus; identical (type, locus) pairs are merged on construction.
    """

    entries: tuple[BasketEntry, ...]

    @classmethod
    def from_entries(cls, entries) -> "Basket":
        merged: dict[tuple[QuotientSingularityType, str], int] = {}
        for e in entries:
            key = (e.sing_type, e.locus)
            merged[key] = merged.get(key, 0) + e.count
        out = [BasketEntry(c, t, l) for (t, l), c in merged.items()]
        out.sort(key=lambda e: (-e.sing_type.r, e.count, e.sing_type.a, e.locus))
        return cls(tuple(out))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def type_multiset(self) -> tuple[tuple[QuotientSingularityType, int], ...]:
        """Aggregate counts per singularity type, locus forgotten."""
        agg: dict[QuotientSingularityType, int] = {}
        for e in self.entries:
            agg[e.sing_type] = agg.get(e.sing_type, 0) + e.count
        return tuple(sorted(agg.items(), key=lambda kv: (-kv[0].r, kv[0].a)))


def vertex_on_member(w: Weights, i: int) -> bool:
    """Is the vertex P_i on the general member?  It is unless a pure power
    x_i^k has degree d."""
    if not 1 <= i <= 4:
        raise ValueError(f"vertex index must be in 1..4, got {i}")
    return w.degree % w.ambient[i] != 0


def coordinate_point_type(w: Weights, i: int) -> QuotientSingularityType:
    """Transverse quotient type of the general member at the vertex P_i.

    Requires the vertex to be a singular point of the member (weight >= 2
    and no pure power of degree d).  The type is read off by eliminating
    one variable x_j with a monomial x_i^k x_j of degree d; quasismoothness
    makes the answer independent of the chosen eliminator, which is
    asserted here by computing all of them.
    """
    ws = w.ambient
    r = ws[i]
    if r < 2:
        raise ValueError(f"vertex P{i} has weight {r}; nothing to compute")
    if not vertex_on_member(w, i):
        raise ValueError(f"vertex P{i} does not lie on the general member")
    d = w.degree
    types = set()
    for j in range(5):
        if j == i:
            continue
        k, rem = divmod(d - ws[j], r)
        if rem == 0 and k >= 1:
            others = [ws[m] for m in range(5) if m not in (i, j)]
            types.add(normalize_singularity(r, *others))
    if not types:
        raise NoEliminatorError(f"no monomial x_{i}^k*x_j of degree {d} for {w}")
    assert len(types) == 1, f"eliminators disagree at P{i} of {w}: {types}"
    return types.pop()


def stratum_points(w: Weights, i: int, j: int) -> tuple[int, QuotientSingularityType]:
    """Number and type of the singular points cut out on the (i, j)-stratum,
    vertices excluded.

    The restriction of the general polynomial to the stratum coordinates
    factors as x_i^ei * x_j^ej * g; the residual degree of g, divided by
    lcm(a_i, a_j), counts the points with both coordinates non-zero.  The
    vertices, when they lie on the member, show up through ei/ej instead
    and are reported by `coordinate_point_type`.
    """
    ws = w.ambient
    r = gcd(ws[i], ws[j])
    if r < 2:
        raise ValueError(f"stratum P{i}P{j} of {w} carries no quotient")
    d = w.degree
    exps = [
        (m, n)
        for m in range(d // ws[i] + 1)
        for n in range(d // ws[j] + 1)
        if m * ws[i] + n * ws[j] == d
    ]
    if not exps:
        raise EmptyRestrictionError(f"stratum P{i}P{j} lies inside the general member of {w}")
    ei = min(m for m, _ in exps)
    ej = min(n for _, n in exps)
    residual = d - ei * ws[i] - ej * ws[j]
    step = lcm(ws[i], ws[j])
    assert residual % step == 0, (w, i, j)
    others = [ws[m] for m in range(5) if m not in (i, j)]
    return residual // step, normalize_singularity(r, *others)


def basket(w: Weights) -> Basket:
    """All quotient points of the general member, vertices and strata."""
    entries = []
    for i in range(1, 5):
        if w.ambient[i] >= 2 and vertex_on_member(w, i):
            entries.append(BasketEntry(1, coordinate_point_type(w, i), f"P{i}"))
    for st in singular_strata(w):
        count, typ = stratum_points(w, st.i, st.j)
        if count > 0:
            entries.append(BasketEntry(count, typ, f"P{st.i}P{st.j}"))
    return Basket.from_entries(entries)
