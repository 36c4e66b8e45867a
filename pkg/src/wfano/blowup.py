"""Intersection theory on towers of weighted blow ups.

A `Tower` records a chain X_n -> ... -> X_1 -> X of blow ups, each centered
at a terminal quotient point 1/r(1, a, r-a) and performed with the weights
(1, a, r-a).  Divisor classes live in the basis

    H, E_1, ..., E_n

where H is the total pullback of the base anticanonical class and E_i is
the total pullback of the i-th exceptional divisor.  In this basis the
triple product is diagonal: pullback classes meet later exceptionals
trivially by the projection formula, so

    A.B.C = kA*kB*kC * (-K^3 of the base) + sum_i  eA_i*eB_i*eC_i * E_i^3,

with E_i^3 = r^2/(a(r-a)).  What is *not* determined by the generic data is
how the earlier exceptional divisors pass through later centers; those
multiplicities are geometric input, carried on each center as
`tracked_multiplicities` and consumed by `exceptional_strict`.

On a surface D in the tower, a Gram problem asks for the intersection
matrix of its base curves given decompositions A_s.D = sum m_si C_i: every
pair (A_s, A_t) yields one linear equation in the unknown pairings C_i.C_j,
and the system is solved exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import QuotientSingularityType, Weights, anticanonical_cube


class InvalidStageError(ValueError):
    """Centers must be pushed in order and reference earlier stages only."""


class DimensionMismatchError(ValueError):
    """A divisor class has the wrong number of exceptional coefficients."""


class UnderdeterminedError(ValueError):
    """The decompositions do not pin down the full Gram matrix."""


class InconsistentError(ValueError):
    """The decompositions contradict the triple products."""


class NotSymmetricError(ValueError):
    """Definiteness is only defined for symmetric matrices."""


@dataclass(frozen=True)
class BlowupCenter:
    """One blow up in a tower.

    `tracked_multiplicities` lists, for earlier exceptional divisors passing
    through this center, the weighted multiplicity of their local equation;
    denominators must divide the index r of this center.
    """

    stage: int
    sing_type: QuotientSingularityType
    tracked_multiplicities: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        if self.stage < 1:
            raise InvalidStageError(f"stage must be >= 1, got {self.stage}")
        seen = set()
        for s, m in self.tracked_multiplicities:
            if not 1 <= s < self.stage:
                raise InvalidStageError(
                    f"center at stage {self.stage} tracks stage {s}"
                )
            if s in seen:
                raise InvalidStageError(f"stage {s} tracked twice")
            seen.add(s)
            if m <= 0 or (m * self.sing_type.r).denominator != 1:
                raise ValueError(
                    f"multiplicity {m} invalid at a 1/{self.sing_type.r} point"
                )

    def multiplicity_of(self, stage: int) -> Fraction:
        for s, m in self.tracked_multiplicities:
            if s == stage:
                return m
        return Fraction(0)

    @property
    def exceptional_cube(self) -> Fraction:
        r, a = self.sing_type.r, self.sing_type.a
        return Fraction(r * r, a * (r - a))


@dataclass(frozen=True)
class Tower:
    base: Weights
    centers: tuple[BlowupCenter, ...] = ()

    def __post_init__(self):
        for idx, c in enumerate(self.centers):
            if c.stage != idx + 1:
                raise InvalidStageError(
                    f"center #{idx + 1} carries stage {c.stage}"
                )

    def __len__(self):
        return len(self.centers)


def push_blowup(tower: Tower, center: BlowupCenter) -> Tower:
    """Extend the tower by one more blow up; the center's stage must be the
    next free one."""
    if center.stage != len(tower.centers) + 1:
        raise InvalidStageError(
            f"expected stage {len(tower.centers) + 1}, got {center.stage}"
        )
    return Tower(tower.base, tower.centers + (center,))


@dataclass(frozen=True)
class DivisorClass:
    """A class k*H + sum_i e_i*E_i in the pullback basis of some tower."""

    k_coeff: Fraction
    e_coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, k, *es) -> "DivisorClass":
        return cls(Fraction(k), tuple(Fraction(e) for e in es))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if len(self.e_coeffs) != len(other.e_coeffs):
            raise DimensionMismatchError("adding classes of different towers")
        return DivisorClass(
            self.k_coeff + other.k_coeff,
            tuple(a + b for a, b in zip(self.e_coeffs, other.e_coeffs)),
        )

    def __rmul__(self, scalar) -> "DivisorClass":
        s = Fraction(scalar)
        return DivisorClass(s * self.k_coeff, tuple(s * e for e in self.e_coeffs))

    def __str__(self):
        parts = [f"{self.k_coeff}*H"]
        parts += [f"{e}*E{i + 1}" for i, e in enumerate(self.e_coeffs) if e]
        return " + ".join(parts)


def anticanonical_class(tower: Tower) -> DivisorClass:
    """-K on top of the tower: H - sum (1/r_i) E_i."""
    return DivisorClass(
        Fraction(1),
        tuple(-Fraction(1, c.sing_type.r) for c in tower.centers),
    )


def exceptional_strict(tower: Tower, stage: int) -> DivisorClass:
    """Class of the strict transform, on top of the tower, of the stage-th
    exceptional divisor; uses the tracked multiplicities of later centers."""
    n = len(tower.centers)
    if not 1 <= stage <= n:
        raise InvalidStageError(f"no stage {stage} in a tower of length {n}")
    es = [Fraction(0)] * n
    es[stage - 1] = Fraction(1)
    for later in tower.centers[stage:]:
        es[later.stage - 1] = -later.multiplicity_of(stage)
    return DivisorClass(Fraction(0), tuple(es))


def _check_dim(tower: Tower, dc: DivisorClass):
    if len(dc.e_coeffs) != len(tower.centers):
        raise DimensionMismatchError(
            f"class has {len(dc.e_coeffs)} exceptional coefficients, "
            f"tower has {len(tower.centers)} centers"
        )


def triple(tower: Tower, a: DivisorClass, b: DivisorClass, c: DivisorClass) -> Fraction:
    """Exact triple product A.B.C on top of the tower."""
    for dc in (a, b, c):
        _check_dim(tower, dc)
    total = a.k_coeff * b.k_coeff * c.k_coeff * anticanonical_cube(tower.base)
    for i, center in enumerate(tower.centers):
        total += a.e_coeffs[i] * b.e_coeffs[i] * c.e_coeffs[i] * center.exceptional_cube
    return total


def neg_k_cube(tower: Tower) -> Fraction:
    """-K^3 on top of the tower.

    Each blow up of a 1/r(1, a, r-a) point drops the anticanonical cube by
    1/(r*a*(r-a)); equivalently this is triple(-K, -K, -K).
    """
    return anticanonical_cube(tower.base) - sum(
        (c.sing_type.discrepancy_cube_drop for c in tower.centers), Fraction(0)
    )


@dataclass(frozen=True)
class Restriction:
    """A_s restricted to the surface: A_s . D = sum_i coefficients[i] * C_i."""

    divisor: DivisorClass
    coefficients: tuple[Fraction, ...]


@dataclass(frozen=True)
class GramProblem:
    """Determine the pairwise intersections of named base curves on a
    surface D from decompositions of restricted divisor classes."""

    tower: Tower
    surface: DivisorClass
    curves: tuple[str, ...]
    restrictions: tuple[Restriction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _check_dim(self.tower, self.surface)
        for r in self.restrictions:
            _check_dim(self.tower, r.divisor)
            if len(r.coefficients) != len(self.curves):
                raise DimensionMismatchError(
                    f"decomposition has {len(r.coefficients)} coefficients "
                    f"for {len(self.curves)} curves"
                )


def _solve_exact(rows: list[list[Fraction]], n_unknowns: int) -> list[Fraction]:
    # Gaussian elimination over the rationals on an augmented matrix
    mat = [row[:] for row in rows]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n_unknowns):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = mat[row][col]
        mat[row] = [x / inv for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[row])]
        pivots.append((row, col))
        row += 1
    for r in range(row, len(mat)):
        if mat[r][n_unknowns] != 0:
            raise InconsistentError("decompositions contradict the triple products")
    if len(pivots) < n_unknowns:
        raise UnderdeterminedError(
            f"{n_unknowns - len(pivots)} of {n_unknowns} Gram entries stay free"
        )
    solution = [Fraction(0)] * n_unknowns
    for r, col in pivots:
        solution[col] = mat[r][n_unknowns]
    return solution


def solve_gram(problem: GramProblem) -> tuple[tuple[Fraction, ...], ...]:
    """Solve for the full symmetric Gram matrix of the problem's curves.

    Every ordered pair of restrictions (s, t) with s <= t contributes the
    equation  sum_{i,j} m_si m_tj (C_i . C_j) = A_s . A_t . D, a linear
    condition on the upper triangle of the Gram matrix.
    """
    n = len(problem.curves)
    unknowns = [(i, j) for i in range(n) for j in range(i, n)]
    index = {u: k for k, u in enumerate(unknowns)}
    rows = []
    rs = problem.restrictions
    for s in range(len(rs)):
        for t in range(s, len(rs)):
            coeff = [Fraction(0)] * len(unknowns)
            for i in range(n):
                for j in range(n):
                    mij = rs[s].coefficients[i] * rs[t].coefficients[j]
                    if mij:
                        coeff[index[(min(i, j), max(i, j))]] += mij
            rhs = triple(problem.tower, rs[s].divisor, rs[t].divisor, problem.surface)
            rows.append(coeff + [rhs])
    values = _solve_exact(rows, len(unknowns))
    gram = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), k in index.items():
        gram[i][j] = gram[j][i] = values[k]
    return tuple(tuple(row) for row in gram)


def is_negative_definite(matrix) -> bool:
    """Sylvester's criterion, exactly: the k-th leading principal minor must
    have sign (-1)^k."""
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSymmetricError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise NotSymmetricError(f"entries ({i},{j}) and ({j},{i}) differ")
    for k in range(1, n + 1):
        if _det([row[:k] for row in m[:k]]) * (-1) ** k <= 0:
            return False
    return True


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det
