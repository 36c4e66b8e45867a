"""The classification dataset and the Halphen pencil counting rules.

The dataset is a small line-oriented text file shipped with the package
(`data/families.txt`, override with the WFANO_DATA environment variable).
One record per family: the weight system, exact -K^3, two opaque columns
('invariant' and 'ell', stored verbatim), the pencil count, and one line per
singular locus with its verbatim local type and optional annotation:

    family 13
    weights 1 1 2 3 5
    degree 11
    kcube 11/30
    invariant F_2
    ell 1
    pencils 1
    row P4 1x 1/5(1,2,3) QI xw^2,6,11
    row P3 1x 1/3(1,1,2) QI *t^2w,8,11
    row P2 1x 1/2(1,1,1) BC 1 0

Annotations: `BC b c` records the auxiliary surface class -bK+cE attached
to a blow up whose anticanonical cube goes negative, `QI`/`EI` record
untwisting involution data (kept verbatim, no semantics attached), and an
absent annotation means none is needed.

The counting rules themselves are pure weight combinatorics plus two
embedded membership lists; `verify_family` cross-checks every rule against
the dataset, and the dataset against recomputation.
"""
from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from ._linescan import LineCursor, PositionedError, content_lines
from .core import QuotientSingularityType, Weights, anticanonical_cube, normalize_singularity
from .singularities import basket


class TableSyntaxError(PositionedError):
    """A dataset line that does not match the grammar; 1-based position."""


class DuplicateGimelError(ValueError):
    pass


class MissingGimelError(ValueError):
    pass


class UnknownGimelError(KeyError):
    pass


class NotUniqueError(ValueError):
    """Two admissible high indices divide the weight sum."""


class NotApplicableError(ValueError):
    """The triple-point count formula needs a1 = a2 != 1 and a3 = a1 + 1."""


class PencilCount(enum.Enum):
    INFINITE = "infinite"


INFINITE = PencilCount.INFINITE


@dataclass(frozen=True)
class BC:
    b: int
    c: int


@dataclass(frozen=True)
class QI:
    text: str


@dataclass(frozen=True)
class EI:
    text: str


@dataclass(frozen=True)
class TableRow:
    """One singular locus of a family, verbatim from the dataset."""

    locus: str
    count: int
    index: int
    local_weights: tuple[int, int, int]
    annotation: BC | QI | EI | None = None

    def sing_type(self) -> QuotientSingularityType:
        return normalize_singularity(self.index, *self.local_weights)

    def type_text(self) -> str:
        q = self.local_weights
        return f"1/{self.index}({q[0]},{q[1]},{q[2]})"


@dataclass(frozen=True)
class FamilyRecord:
    gimel: int
    weights: Weights
    degree: int
    minus_k_cube: Fraction
    invariant: str
    ell: str
    basket_rows: tuple[TableRow, ...]
    halphen_count: int | PencilCount


class PencilKind(enum.Enum):
    FULL_ANTICANONICAL_SYSTEM_PENCILS = "full anticanonical system of pencils"
    PRINCIPAL = "principal"
    TYPE_III_P = "type III distinguished"
    TYPE_III_POINT = "type III point"
    TYPE_IV = "type IV"
    TYPE_V = "type V"


@dataclass(frozen=True)
class PencilDescriptor:
    kind: PencilKind
    generator_text: str
    n: int  # the pencil lies in |-nK|
    point_index: int | None = None


@dataclass(frozen=True)
class HalphenAnswer:
    gimel: int
    count: int | PencilCount
    pencils: tuple[PencilDescriptor, ...]

    def __post_init__(self):
        if self.count is not INFINITE and self.count != len(self.pencils):
            raise ValueError("finite count must equal the number of pencils")


# families with a second pencil cut by lambda*x^a2 + mu*z (see
# `unique_index_j` for the presentation of the defining equation)
TYPE_IV_GIMELS = frozenset(
    {45, 48, 55, 57, 58, 66, 69, 74, 76, 79, 80, 81, 84, 86, 91, 93, 95}
)
TYPE_V_GIMEL = 60


# ---------------------------------------------------------------------------
# dataset parsing


_TYPE_RE = re.compile(r"1/(\d+)\((\d+),(\d+),(\d+)\)")
_LOCUS_RE = re.compile(r"P[1-4](?:P[1-4])?")
_COUNT_RE = re.compile(r"(\d+)x")


def _parse_row(cur: LineCursor) -> TableRow:
    locus, col = cur.next_token("locus label")
    if not _LOCUS_RE.fullmatch(locus):
        raise TableSyntaxError(cur.lineno, col, "locus label like P4 or P2P3")
    count_tok, col = cur.next_token("count like 3x")
    m = _COUNT_RE.fullmatch(count_tok)
    if not m:
        raise TableSyntaxError(cur.lineno, col, "count like 3x")
    count = int(m.group(1))
    type_tok, col = cur.next_token("type like 1/5(1,2,3)")
    tm = _TYPE_RE.fullmatch(type_tok)
    if not tm:
        raise TableSyntaxError(cur.lineno, col, "type like 1/5(1,2,3)")
    index = int(tm.group(1))
    local = (int(tm.group(2)), int(tm.group(3)), int(tm.group(4)))
    annotation: BC | QI | EI | None = None
    if not cur.at_end():
        tag, col = cur.next_token("annotation tag")
        if tag == "BC":
            b_tok, bcol = cur.next_token("integer b")
            c_tok, ccol = cur.next_token("integer c")
            if not b_tok.isdigit():
                raise TableSyntaxError(cur.lineno, bcol, "integer b")
            if not c_tok.isdigit():
                raise TableSyntaxError(cur.lineno, ccol, "integer c")
            annotation = BC(int(b_tok), int(c_tok))
        elif tag in ("QI", "EI"):
            text = cur.rest()
            if not text:
                raise TableSyntaxError(cur.lineno, cur.pos + 1, "involution text")
            annotation = QI(text) if tag == "QI" else EI(text)
        else:
            raise TableSyntaxError(cur.lineno, col, "annotation BC/QI/EI")
        if isinstance(annotation, BC):
            cur.expect_end()
    return TableRow(locus, count, index, local, annotation)


_SCALARS = ("weights", "degree", "kcube", "invariant", "ell", "pencils")


def parse_table(source: str) -> list[FamilyRecord]:
    """Parse dataset text into records, gimel-sorted.

    Raises TableSyntaxError with a 1-based line/column on malformed input,
    DuplicateGimelError on repeated family numbers, MissingGimelError when
    no record is present at all.
    """
    records: dict[int, FamilyRecord] = {}
    current: dict | None = None

    def finish(cur):
        for field in _SCALARS:
            if field not in cur:
                raise TableSyntaxError(cur["line"], 1, f"{field} for family {cur['gimel']}")
        if cur["gimel"] in records:
            raise DuplicateGimelError(f"family {cur['gimel']} appears twice")
        ws = cur["weights"]
        records[cur["gimel"]] = FamilyRecord(
            gimel=cur["gimel"],
            weights=Weights(*ws),
            degree=cur["degree"],
            minus_k_cube=cur["kcube"],
            invariant=cur["invariant"],
            ell=cur["ell"],
            basket_rows=tuple(cur["rows"]),
            halphen_count=cur["pencils"],
        )

    for lineno, raw in content_lines(source):
        cur = LineCursor(lineno, raw, error=TableSyntaxError)
        key, col = cur.next_token("keyword")
        if key == "family":
            tok, col = cur.next_token("family number")
            if not tok.isdigit():
                raise TableSyntaxError(lineno, col, "family number")
            cur.expect_end()
            if current is not None:
                finish(current)
            current = {"gimel": int(tok), "line": lineno, "rows": []}
            continue
        if current is None:
            raise TableSyntaxError(lineno, col, "family")
        if key == "row":
            current["rows"].append(_parse_row(cur))
            continue
        if key not in _SCALARS:
            raise TableSyntaxError(lineno, col, "one of family/row/" + "/".join(_SCALARS))
        if key in current:
            raise TableSyntaxError(lineno, col, f"{key} only once per family")
        if key == "weights":
            vals = []
            for _ in range(4):
                tok, wcol = cur.next_token("weight")
                if not tok.isdigit():
                    raise TableSyntaxError(lineno, wcol, "weight")
                vals.append(int(tok))
            current[key] = tuple(vals)
        elif key in ("degree",):
            tok, vcol = cur.next_token("integer")
            if not tok.isdigit():
                raise TableSyntaxError(lineno, vcol, "integer")
            current[key] = int(tok)
        elif key == "kcube":
            tok, vcol = cur.next_token("fraction")
            if not re.fullmatch(r"\d+(/\d+)?", tok):
                raise TableSyntaxError(lineno, vcol, "fraction p/q")
            current[key] = Fraction(tok)
        elif key == "pencils":
            tok, vcol = cur.next_token("count or 'infinite'")
            if tok == "infinite":
                current[key] = INFINITE
            elif tok.isdigit():
                current[key] = int(tok)
            else:
                raise TableSyntaxError(lineno, vcol, "count or 'infinite'")
        else:  # invariant, ell: opaque tokens
            tok, _ = cur.next_token("value")
            current[key] = tok
        cur.expect_end()

    if current is not None:
        finish(current)
    if not records:
        raise MissingGimelError("dataset contains no family records")
    return [records[g] for g in sorted(records)]


def serialize_table(records) -> str:
    """Canonical text form; parse(serialize(parse(s))) == parse(s)."""
    chunks = []
    for rec in sorted(records, key=lambda r: r.gimel):
        lines = [
            f"family {rec.gimel}",
            "weights " + " ".join(str(a) for a in rec.weights),
            f"degree {rec.degree}",
            f"kcube {rec.minus_k_cube}",
            f"invariant {rec.invariant}",
            f"ell {rec.ell}",
            "pencils "
            + ("infinite" if rec.halphen_count is INFINITE else str(rec.halphen_count)),
        ]
        for row in rec.basket_rows:
            ann = ""
            if isinstance(row.annotation, BC):
                ann = f" BC {row.annotation.b} {row.annotation.c}"
            elif isinstance(row.annotation, QI):
                ann = f" QI {row.annotation.text}"
            elif isinstance(row.annotation, EI):
                ann = f" EI {row.annotation.text}"
            lines.append(f"row {row.locus} {row.count}x {row.type_text()}{ann}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def default_dataset_path() -> str | None:
    """Path override from the WFANO_DATA environment variable, if set."""
    return os.environ.get("WFANO_DATA") or None


@lru_cache(maxsize=None)
def _load(path: str | None) -> tuple[FamilyRecord, ...]:
    if path is None:
        text = resources.files("wfano").joinpath("data/families.txt").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return tuple(parse_table(text))


def load_families(path: str | None = None) -> tuple[FamilyRecord, ...]:
    """The dataset records, cached per path.  With no explicit path, the
    WFANO_DATA environment variable wins over the packaged file."""
    return _load(path or default_dataset_path())


def family(gimel: int, path: str | None = None) -> FamilyRecord:
    for rec in load_families(path):
        if rec.gimel == gimel:
            return rec
    raise UnknownGimelError(f"no family {gimel} in the dataset")


# ---------------------------------------------------------------------------
# counting rules


def unique_index_j(w: Weights, skipped: int) -> tuple[int, int] | None:
    """The distinguished index j with  (sum of the other three weights) = m*a_j.

    `skipped` is 1 or 2: the weight left out of the sum.  Candidates must
    differ from the skipped index *and* from its weight (a duplicate weight
    would make the presentation collide with the skipped variable).  When
    both a high index (3 or 4) and index 1 divide the sum, the high index
    wins -- the defining equation is then organized by the bigger variable.
    A tie between indices 3 and 4 admits no canonical choice and errors.

    Returns (j, m), or None when nothing divides.
    """
    if skipped not in (1, 2):
        raise ValueError(f"skipped must be 1 or 2, got {skipped}")
    a = dict(enumerate(w, start=1))
    total = sum(v for k, v in a.items() if k != skipped)
    cand = [
        j for j in (1, 2, 3, 4)
        if j != skipped and a[j] != a[skipped] and total % a[j] == 0
    ]
    high = [j for j in cand if j >= 3]
    if len(high) > 1:
        raise NotUniqueError(f"indices {high} both divide {total} for {w}")
    if high:
        return high[0], total // a[high[0]]
    if cand:
        return cand[0], total // a[cand[0]]
    return None


def type_iii_point_count(w: Weights) -> int:
    """Number of distinguished 1/a1(1,1,a1-1) points for the three families
    with a1 = a2 != 1 and a3 = a1 + 1; equals (3*a1 + a4 + 1)/a1."""
    if not (w.a1 == w.a2 != 1 and w.a3 == w.a1 + 1):
        raise NotApplicableError(f"{w} is not of the a1=a2, a3=a1+1 shape")
    num = 3 * w.a1 + w.a4 + 1
    assert num % w.a1 == 0, w
    return num // w.a1


def is_type_iii(w: Weights) -> bool:
    return w.a1 == w.a2 != 1 and w.a3 == w.a1 + 1


def halphen_pencils(gimel: int, path: str | None = None) -> HalphenAnswer:
    """Count and describe the Halphen pencils on the general member.

    Infinitely many exactly when a2 = 1 (the full anticanonical system is
    then at least a net, and every pencil inside it qualifies); otherwise
    the principal pencil |-a1 K| plus, for the embedded membership lists,
    one extra pencil -- or the distinguished-point pencils for the three
    a1 = a2 families.
    """
    rec = family(gimel, path)
    w = rec.weights
    if w.a2 == 1:
        return HalphenAnswer(gimel, INFINITE, ())
    if is_type_iii(w):
        r = type_iii_point_count(w)
        pencils = [
            PencilDescriptor(
                PencilKind.TYPE_III_P,
                f"lambda*x^{w.a1} + mu*f_{w.a1}(x,y,z,t,w)",
                w.a1,
            )
        ]
        pencils += [
            PencilDescriptor(
                PencilKind.TYPE_III_POINT,
                f"surfaces of |-{w.a1}K| through the distinguished point #{i}",
                w.a1,
                point_index=i,
            )
            for i in range(1, r + 1)
        ]
        return HalphenAnswer(gimel, 1 + r, tuple(pencils))
    principal = PencilDescriptor(
        PencilKind.PRINCIPAL,
        "lambda*x + mu*y" if w.a1 == 1 else f"lambda*x^{w.a1} + mu*y",
        w.a1,
    )
    if gimel == TYPE_V_GIMEL:
        extra = PencilDescriptor(
            PencilKind.TYPE_V, "lambda*x^6 + mu*f_6(x,y,z,t)", 6
        )
        return HalphenAnswer(gimel, 2, (principal, extra))
    if gimel in TYPE_IV_GIMELS:
        res = unique_index_j(w, skipped=2)
        assert res is not None and w.a1 not in (1, w.a2), (gimel, w)
        extra = PencilDescriptor(
            PencilKind.TYPE_IV, f"lambda*x^{w.a2} + mu*z", w.a2
        )
        return HalphenAnswer(gimel, 2, (principal, extra))
    return HalphenAnswer(gimel, 1, (principal,))


def derived_type_iv_set(records) -> set[int]:
    """Cross-derivation of the two-pencil membership list from the record
    data: weight shape, existence of the distinguished index, a two-pencil
    count, and not being the type-V family."""
    out = set()
    for rec in records:
        w = rec.weights
        if w.a1 in (1, w.a2) or rec.gimel == TYPE_V_GIMEL or is_type_iii(w):
            continue
        if rec.halphen_count == 2 and unique_index_j(w, skipped=2) is not None:
            out.add(rec.gimel)
    return out


def curve_center_admissible(curve_degree: Fraction, w: Weights) -> bool:
    """Can an irreducible curve of the given anticanonical degree be a
    maximal center?  Only when its degree does not exceed -K^3 (boundary
    included)."""
    if curve_degree <= 0:
        raise ValueError(f"curve degree must be positive, got {curve_degree}")
    return curve_degree <= anticanonical_cube(w)


# ---------------------------------------------------------------------------
# cross-checks


@dataclass(frozen=True)
class FamilyCheck:
    name: str
    passed: bool
    expected: str
    actual: str


def verify_family(gimel: int, path: str | None = None) -> tuple[FamilyCheck, ...]:
    """Recompute everything recomputable about one family and compare with
    the dataset: the anticanonical cube, the degree, the singular loci
    (counts and normalized types), the presence rule for BC annotations,
    and the pencil-count rule."""
    rec = family(gimel, path)
    w = rec.weights
    checks = []

    kcube = anticanonical_cube(w)
    checks.append(
        FamilyCheck("kcube", kcube == rec.minus_k_cube, str(rec.minus_k_cube), str(kcube))
    )
    checks.append(
        FamilyCheck("degree", w.degree == rec.degree, str(rec.degree), str(w.degree))
    )

    expected_types: dict[QuotientSingularityType, int] = {}
    for row in rec.basket_rows:
        st = row.sing_type()
        expected_types[st] = expected_types.get(st, 0) + row.count
    computed = dict(basket(w).type_multiset())
    fmt = lambda d: "; ".join(f"{c} x {t}" for t, c in sorted(d.items())) or "smooth"
    checks.append(
        FamilyCheck(
            "basket types",
            computed == expected_types,
            fmt(expected_types),
            fmt(computed),
        )
    )

    for row in rec.basket_rows:
        st = row.sing_type()
        b3 = kcube - st.discrepancy_cube_drop
        has_bc = isinstance(row.annotation, BC)
        checks.append(
            FamilyCheck(
                f"bc presence {row.locus} {row.type_text()}",
                has_bc == (b3 < 0),
                "BC iff negative" if b3 < 0 else "no BC iff non-negative",
                f"single-blowup kcube {b3}, annotation "
                + ("BC" if has_bc else "absent"),
            )
        )

    answer = halphen_pencils(gimel, path)
    want = rec.halphen_count
    got = answer.count
    checks.append(
        FamilyCheck(
            "pencil count rule",
            got == want,
            "infinite" if want is INFINITE else str(want),
            "infinite" if got is INFINITE else str(got),
        )
    )
    if is_type_iii(w):
        r = type_iii_point_count(w)
        checks.append(
            FamilyCheck(
                "distinguished point count",
                want == 1 + r,
                str(want),
                f"1 + {r}",
            )
        )
    if gimel in TYPE_IV_GIMELS:
        res = unique_index_j(w, skipped=2)
        checks.append(
            FamilyCheck(
                "second pencil presentation",
                res is not None and w.a1 not in (1, w.a2),
                "index j with a1+a3+a4 = m*a_j",
                "none" if res is None else f"j={res[0]}, m={res[1]}",
            )
        )
    return tuple(checks)
