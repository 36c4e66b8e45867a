from fractions import Fraction

import pytest

from wfano.blowup import UnderdeterminedError
from wfano.core import Weights
from wfano.towers import TowerSpecError, evaluate, parse_tower_text

GOOD = """\
# two blow ups over explicit weights
weights 1 2 3 5
center 5 2
center 2 1 track e1=1/2
class S 1 -1/5 -1/2
class T 0 1 -1/2
triple S S T
surface S
curves C L
restrict S = C + L
restrict T = L
"""


def test_parse_and_evaluate():
    spec = parse_tower_text(GOOD)
    assert spec.gimel is None
    assert spec.tower.base == Weights(1, 2, 3, 5)
    assert len(spec.tower.centers) == 2
    ev = evaluate(spec)
    assert ev.neg_k_cube == Fraction(-1, 6)
    assert ev.triples == ((("S", "S", "T"), Fraction(-1, 3)),)
    assert ev.gram_matrix == (
        (Fraction(-5, 6), Fraction(1)),
        (Fraction(1), Fraction(-4, 3)),
    )
    assert ev.negative_definite is True


def test_family_header_resolves_weights():
    spec = parse_tower_text("family 13\ncenter 3 1\ncenter 2 1\n")
    assert spec.gimel == 13
    assert spec.tower.base == Weights(1, 2, 3, 5)
    assert evaluate(spec).neg_k_cube == Fraction(-3, 10)


def test_no_gram_block():
    ev = evaluate(parse_tower_text("weights 1 3 4 7\ncenter 4 1\ncenter 3 1\n"))
    assert ev.neg_k_cube == Fraction(-1, 14)
    assert ev.gram_matrix is None
    assert ev.negative_definite is None


def scaled_restriction():
    return GOOD.replace("restrict T = L", "restrict T = 1/2C + 2L")


def test_fractional_decomposition_coefficients():
    spec = parse_tower_text(scaled_restriction())
    (r1, r2) = spec.gram.restrictions
    assert r1.coefficients == (Fraction(1), Fraction(1))
    assert r2.coefficients == (Fraction(1, 2), Fraction(2))


@pytest.mark.parametrize(
    "mangle, line, expected_part",
    [
        (lambda s: s.replace("weights 1 2 3 5", "banana 1 2 3 5"), 2, "family or weights"),
        (lambda s: s.replace("center 5 2", "center 5 x"), 3, "weight a"),
        (lambda s: s.replace("track e1=1/2", "track e1:1/2"), 4, "tracked multiplicity"),
        (lambda s: s.replace("class S 1 -1/5 -1/2", "class S 1 -1/5"), 5, "exceptional coefficient"),
        (lambda s: s.replace("triple S S T", "triple S S Q"), 7, "defined class name"),
        (lambda s: s.replace("restrict T = L", "restrict T = L + M"), 11, "term like"),
        (lambda s: s.replace("restrict T = L", "restrict T L"), 11, "="),
        (lambda s: s + "center 2 1\n", 12, "centers before classes"),
    ],
)
def test_positioned_errors(mangle, line, expected_part):
    with pytest.raises(TowerSpecError) as e:
        parse_tower_text(mangle(GOOD))
    assert e.value.line == line
    assert expected_part in e.value.expected


def test_empty_input():
    with pytest.raises(TowerSpecError):
        parse_tower_text("# nothing\n")


def test_center_must_be_terminal():
    with pytest.raises(TowerSpecError) as e:
        parse_tower_text("weights 1 2 3 5\ncenter 4 2\n")
    assert "valid center" in e.value.expected


def test_gram_block_needs_surface():
    text = "weights 1 2 3 5\ncenter 2 1\nclass S 1 -1/2\ncurves C\nrestrict S = C\n"
    with pytest.raises(TowerSpecError) as e:
        parse_tower_text(text)
    assert "surface" in e.value.expected


def test_underdetermined_payload_propagates():
    text = (
        "weights 1 2 3 5\ncenter 2 1\nclass S 1 -1/2\n"
        "surface S\ncurves C L\nrestrict S = C + L\n"
    )
    with pytest.raises(UnderdeterminedError):
        evaluate(parse_tower_text(text))


def test_duplicate_class_and_restrict():
    with pytest.raises(TowerSpecError) as e:
        parse_tower_text(GOOD.replace("class T", "class S"))
    assert "fresh class name" in e.value.expected
    with pytest.raises(TowerSpecError) as e:
        parse_tower_text(GOOD + "restrict T = L\n")
    assert "restricted once" in e.value.expected
