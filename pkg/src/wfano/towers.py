"""Line-oriented description files for blow-up towers and Gram problems.

A `.tower` file encodes one chain of blow ups over a family (or over
explicit weights), optional named divisor classes in the pullback basis,
triple products to evaluate, and an optional Gram block:

    # family 25, full three-center chain
    family 25
    center 7 3
    center 4 1 track e1=1/4
    center 3 1 track e1=1/3 e2=2/3
    class S 1 -1/7 -1/4 -1/3
    class T 0 1 -1/4 -1/3
    triple S S S
    surface S
    curves C L
    restrict S = C + L
    restrict T = L

`center r a` is the blow up of a 1/r(1,a,r-a) point; `track eK=m` records
the multiplicity of the stage-K exceptional divisor along this center.
`class NAME k e1 ... em` gives coefficients of H and of each pullback
exceptional (one per center; fractions allowed).  The Gram block names a
surface class, the base curves on it, and how each restricted class
decomposes into those curves (`restrict T = 5L` means T.D = 5L).

Parse failures raise TowerSpecError with a 1-based line and column.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ._linescan import LineCursor, PositionedError, content_lines
from .blowup import (
    BlowupCenter,
    DivisorClass,
    GramProblem,
    Restriction,
    Tower,
    is_negative_definite,
    neg_k_cube,
    solve_gram,
    triple,
)
from .core import QuotientSingularityType, Weights


class TowerSpecError(PositionedError):
    """A tower description line that does not match the grammar."""


_FRACTION_RE = re.compile(r"-?\d+(?:/\d+)?")
_TRACK_RE = re.compile(r"e(\d+)=(\d+(?:/\d+)?)")
_NAME_RE = re.compile(r"[A-Za-z]\w*")
_TERM_RE = re.compile(r"(\d+(?:/\d+)?)?\s*([A-Za-z]\w*)")


@dataclass(frozen=True)
class TowerSpec:
    """A parsed description: the tower, named classes, requested triples,
    and the optional Gram problem."""

    gimel: int | None
    tower: Tower
    classes: dict[str, DivisorClass]
    triples: tuple[tuple[str, str, str], ...]
    gram: GramProblem | None


@dataclass(frozen=True)
class TowerEvaluation:
    neg_k_cube: Fraction
    triples: tuple[tuple[tuple[str, str, str], Fraction], ...]
    gram_matrix: tuple[tuple[Fraction, ...], ...] | None
    negative_definite: bool | None


def _fraction(cur: LineCursor, what: str) -> Fraction:
    tok, col = cur.next_token(what)
    if not _FRACTION_RE.fullmatch(tok):
        cur.fail(what, col)
    return Fraction(tok)


def parse_tower_text(source: str) -> TowerSpec:
    gimel: int | None = None
    base: Weights | None = None
    centers: list[BlowupCenter] = []
    classes: dict[str, DivisorClass] = {}
    triples: list[tuple[str, str, str]] = []
    surface_name: str | None = None
    curve_names: list[str] = []
    restrictions: list[Restriction] = []
    restricted: set[str] = set()

    for lineno, raw in content_lines(source):
        cur = LineCursor(lineno, raw, error=TowerSpecError)
        key, kcol = cur.next_token("keyword")

        if key in ("family", "weights"):
            if base is not None:
                cur.fail("a single family/weights header", kcol)
            if key == "family":
                tok, col = cur.next_token("family number")
                if not tok.isdigit():
                    cur.fail("family number", col)
                gimel = int(tok)
                from .classifier import family  # deferred: avoids import cycle

                base = family(gimel).weights
            else:
                vals = []
                for _ in range(4):
                    tok, col = cur.next_token("weight")
                    if not tok.isdigit():
                        cur.fail("weight", col)
                    vals.append(int(tok))
                base = Weights(*vals)
            cur.expect_end()
            continue

        if base is None:
            cur.fail("family or weights header first", kcol)

        if key == "center":
            if classes or triples or surface_name:
                cur.fail("centers before classes", kcol)
            r_tok, rcol = cur.next_token("index r")
            a_tok, acol = cur.next_token("weight a")
            if not r_tok.isdigit():
                cur.fail("index r", rcol)
            if not a_tok.isdigit():
                cur.fail("weight a", acol)
            tracked: list[tuple[int, Fraction]] = []
            if not cur.at_end():
                tag, tcol = cur.next_token("track")
                if tag != "track":
                    cur.fail("track", tcol)
                if cur.at_end():
                    cur.fail("tracked multiplicity like e1=1/4")
                while not cur.at_end():
                    tok, col = cur.next_token("tracked multiplicity like e1=1/4")
                    m = _TRACK_RE.fullmatch(tok)
                    if not m:
                        cur.fail("tracked multiplicity like e1=1/4", col)
                    tracked.append((int(m.group(1)), Fraction(m.group(2))))
            try:
                sing = QuotientSingularityType(int(r_tok), int(a_tok))
                centers.append(
                    BlowupCenter(len(centers) + 1, sing, tuple(tracked))
                )
            except ValueError as exc:
                cur.fail(f"valid center ({exc})", rcol)
            continue

        if key == "class":
            name, col = cur.next_token("class name")
            if not _NAME_RE.fullmatch(name):
                cur.fail("class name", col)
            if name in classes:
                cur.fail(f"fresh class name ({name} already defined)", col)
            k = _fraction(cur, "coefficient of H")
            es = [_fraction(cur, "exceptional coefficient") for _ in centers]
            cur.expect_end()
            classes[name] = DivisorClass(k, tuple(es))
            continue

        if key == "triple":
            names = []
            for _ in range(3):
                name, col = cur.next_token("class name")
                if name not in classes:
                    cur.fail(f"defined class name (got {name})", col)
                names.append(name)
            cur.expect_end()
            triples.append((names[0], names[1], names[2]))
            continue

        if key == "surface":
            name, col = cur.next_token("class name")
            if name not in classes:
                cur.fail(f"defined class name (got {name})", col)
            if surface_name is not None:
                cur.fail("a single surface line", kcol)
            surface_name = name
            cur.expect_end()
            continue

        if key == "curves":
            if curve_names:
                cur.fail("a single curves line", kcol)
            while not cur.at_end():
                name, col = cur.next_token("curve name")
                if not _NAME_RE.fullmatch(name) or name in curve_names:
                    cur.fail("fresh curve name", col)
                curve_names.append(name)
            if not curve_names:
                cur.fail("at least one curve name")
            continue

        if key == "restrict":
            if not curve_names:
                cur.fail("curves line before restrict", kcol)
            name, col = cur.next_token("class name")
            if name not in classes:
                cur.fail(f"defined class name (got {name})", col)
            if name in restricted:
                cur.fail(f"class {name} restricted once only", col)
            eq, col = cur.next_token("=")
            if eq != "=":
                cur.fail("=", col)
            body = cur.rest()
            if not body:
                cur.fail("curve decomposition")
            coeffs = {c: Fraction(0) for c in curve_names}
            for part in body.split("+"):
                term = part.strip()
                m = _TERM_RE.fullmatch(term)
                if not m or m.group(2) not in coeffs:
                    cur.fail(f"term like 5L or C (got {term!r})")
                coeffs[m.group(2)] += Fraction(m.group(1) or 1)
            restricted.add(name)
            restrictions.append(
                Restriction(classes[name], tuple(coeffs[c] for c in curve_names))
            )
            continue

        cur.fail(
            "one of family/weights/center/class/triple/surface/curves/restrict",
            kcol,
        )

    if base is None:
        raise TowerSpecError(1, 1, "family or weights header")
    tower = Tower(base, tuple(centers))

    gram = None
    if surface_name or curve_names or restrictions:
        if surface_name is None:
            raise TowerSpecError(1, 1, "surface line for the Gram block")
        if not restrictions:
            raise TowerSpecError(1, 1, "restrict lines for the Gram block")
        gram = GramProblem(
            tower, classes[surface_name], tuple(curve_names), tuple(restrictions)
        )
    return TowerSpec(gimel, tower, classes, tuple(triples), gram)


def parse_tower_file(path: str) -> TowerSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_tower_text(fh.read())


def evaluate(spec: TowerSpec) -> TowerEvaluation:
    """neg_k_cube, the requested triple products, and the solved Gram
    matrix with its definiteness verdict."""
    trip_values = tuple(
        (names, triple(spec.tower, *(spec.classes[n] for n in names)))
        for names in spec.triples
    )
    matrix = None
    definite = None
    if spec.gram is not None:
        matrix = solve_gram(spec.gram)
        definite = is_negative_definite(matrix)
    return TowerEvaluation(neg_k_cube(spec.tower), trip_values, matrix, definite)
