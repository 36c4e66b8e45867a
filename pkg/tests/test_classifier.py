import os
from fractions import Fraction

import pytest

from wfano.classifier import (
    BC,
    EI,
    INFINITE,
    QI,
    TYPE_IV_GIMELS,
    TYPE_V_GIMEL,
    DuplicateGimelError,
    MissingGimelError,
    NotApplicableError,
    NotUniqueError,
    PencilKind,
    TableSyntaxError,
    UnknownGimelError,
    curve_center_admissible,
    derived_type_iv_set,
    family,
    halphen_pencils,
    is_type_iii,
    load_families,
    parse_table,
    serialize_table,
    type_iii_point_count,
    unique_index_j,
    verify_family,
)
from wfano.core import Weights


RECORD = """\
# a comment
family 18
weights 2 2 3 5
degree 12
kcube 1/5
invariant F_1
ell 1
pencils 7
row P4 1x 1/5(1,2,3) QI yw^2,7,12
row P1P2 6x 1/2(1,1,1) BC 2 0
"""


def test_parse_single_record():
    (rec,) = parse_table(RECORD)
    assert rec.gimel == 18
    assert rec.weights == Weights(2, 2, 3, 5)
    assert rec.degree == 12
    assert rec.minus_k_cube == Fraction(1, 5)
    assert rec.invariant == "F_1"
    assert rec.ell == "1"
    assert rec.halphen_count == 7
    assert len(rec.basket_rows) == 2
    assert rec.basket_rows[0].annotation == QI("yw^2,7,12")
    assert rec.basket_rows[1].annotation == BC(2, 0)
    assert rec.basket_rows[1].count == 6


def test_parse_errors_are_positioned():
    with pytest.raises(TableSyntaxError) as e:
        parse_table("family 18\nweights 2 2 X 5\n")
    assert (e.value.line, e.value.col) == (2, 13)
    assert e.value.expected == "weight"

    with pytest.raises(TableSyntaxError) as e:
        parse_table("weights 1 2 3 4\n")
    assert e.value.line == 1
    assert e.value.expected == "family"

    with pytest.raises(TableSyntaxError) as e:
        parse_table(RECORD + "family 19\nweights 1 2 3 4\n")
    assert e.value.expected.startswith("degree for family 19")

    with pytest.raises(TableSyntaxError) as e:
        parse_table(RECORD.replace("pencils 7", "pencils seven"))
    assert e.value.expected == "count or 'infinite'"

    with pytest.raises(TableSyntaxError) as e:
        parse_table(RECORD.replace("1/5(1,2,3)", "1/5(1,2)"))
    assert e.value.expected == "type like 1/5(1,2,3)"

    with pytest.raises(TableSyntaxError) as e:
        parse_table(RECORD + "degree 13\n")
    assert e.value.expected == "degree only once per family"

    with pytest.raises(TableSyntaxError) as e:
        parse_table(RECORD + "bogus 13\n")
    assert e.value.expected.startswith("one of family/row")


def test_parse_rejects_duplicates():
    with pytest.raises(DuplicateGimelError):
        parse_table(RECORD + "\n" + RECORD)
    with pytest.raises(TableSyntaxError):
        parse_table(RECORD.replace("ell 1\n", "ell 1\nell 2\n"))


def test_parse_empty_is_missing():
    with pytest.raises(MissingGimelError):
        parse_table("# nothing here\n\n")


def test_roundtrip_identity():
    records = load_families()
    text = serialize_table(records)
    assert tuple(parse_table(text)) == records
    assert serialize_table(parse_table(text)) == text


def test_dataset_shape():
    records = load_families()
    assert len(records) == 95
    assert [r.gimel for r in records] == list(range(1, 96))
    assert sum(len(r.basket_rows) for r in records) == 248


def test_unknown_gimel():
    with pytest.raises(UnknownGimelError):
        family(999)


def test_unique_index_j_examples():
    assert unique_index_j(Weights(2, 2, 3, 5), skipped=1) == (4, 2)
    assert unique_index_j(Weights(3, 4, 5, 8), skipped=2) == (4, 2)
    # family 95: only the first weight divides; m = 60/5
    assert unique_index_j(Weights(5, 6, 22, 33), skipped=2) == (1, 12)
    assert unique_index_j(Weights(2, 3, 4, 5), skipped=2) is None
    with pytest.raises(NotUniqueError):
        unique_index_j(Weights(2, 3, 6, 9), skipped=1)
    with pytest.raises(ValueError):
        unique_index_j(Weights(1, 2, 3, 4), skipped=3)


def test_type_iii_point_count():
    assert type_iii_point_count(Weights(2, 2, 3, 5)) == 6
    assert type_iii_point_count(Weights(3, 3, 4, 11)) == 7
    assert type_iii_point_count(Weights(4, 4, 5, 7)) == 5
    with pytest.raises(NotApplicableError):
        type_iii_point_count(Weights(1, 2, 3, 5))


def test_counts_match_dataset_everywhere():
    for rec in load_families():
        assert halphen_pencils(rec.gimel).count == rec.halphen_count, rec.gimel


def test_infinite_exactly_when_second_weight_is_one():
    infinite = {
        rec.gimel for rec in load_families()
        if halphen_pencils(rec.gimel).count is INFINITE
    }
    assert infinite == {1, 2, 3, 4, 5, 6, 8, 10, 14}
    for rec in load_families():
        assert (rec.weights.a2 == 1) == (rec.gimel in infinite)


def test_triple_point_families():
    for gimel, total in ((18, 7), (22, 8), (28, 6)):
        ans = halphen_pencils(gimel)
        assert ans.count == total
        kinds = [p.kind for p in ans.pencils]
        assert kinds[0] == PencilKind.TYPE_III_P
        assert kinds[1:] == [PencilKind.TYPE_III_POINT] * (total - 1)
        points = [p.point_index for p in ans.pencils[1:]]
        assert points == list(range(1, total))
        a1 = family(gimel).weights.a1
        assert all(p.n == a1 for p in ans.pencils)


def test_two_pencil_membership_is_cross_derivable():
    records = load_families()
    assert derived_type_iv_set(records) == TYPE_IV_GIMELS
    two = {r.gimel for r in records if r.halphen_count == 2}
    assert two == TYPE_IV_GIMELS | {TYPE_V_GIMEL}


def test_divisibility_alone_does_not_give_membership():
    # these all carry the distinguished index yet have a single pencil;
    # the count is genuinely extra information
    lookalikes = {27, 33, 38, 40, 43, 52, 59, 61, 65, 68, 73, 77, 85}
    for gimel in lookalikes:
        rec = family(gimel)
        w = rec.weights
        assert w.a1 not in (1, w.a2)
        assert not is_type_iii(w)
        assert unique_index_j(w, skipped=2) is not None
        assert rec.halphen_count == 1
        assert gimel not in TYPE_IV_GIMELS


def test_type_iv_descriptor_shape():
    ans = halphen_pencils(91)
    assert ans.count == 2
    principal, extra = ans.pencils
    assert principal.kind == PencilKind.PRINCIPAL
    assert principal.n == 4
    assert extra.kind == PencilKind.TYPE_IV
    assert extra.n == 5
    assert "x^5" in extra.generator_text


def test_type_v_family():
    ans = halphen_pencils(60)
    assert ans.count == 2
    kinds = {p.kind for p in ans.pencils}
    assert kinds == {PencilKind.PRINCIPAL, PencilKind.TYPE_V}
    (v,) = [p for p in ans.pencils if p.kind == PencilKind.TYPE_V]
    assert v.n == 6


def test_pencil_degrees_are_expected_values():
    for rec in load_families():
        ans = halphen_pencils(rec.gimel)
        w = rec.weights
        for p in ans.pencils:
            assert p.n in {1, w.a1, w.a2, 6}


def test_curve_center_admissible_boundary():
    w = Weights(1, 2, 3, 5)  # -K^3 = 11/30
    assert curve_center_admissible(Fraction(11, 30), w)
    assert curve_center_admissible(Fraction(1, 30), w)
    assert not curve_center_admissible(Fraction(12, 30), w)
    with pytest.raises(ValueError):
        curve_center_admissible(Fraction(0), w)
    # quartic curves fit on the quartic threefold, no curve fits family 7
    assert curve_center_admissible(Fraction(4), family(1).weights)
    assert not curve_center_admissible(Fraction(1), family(7).weights)


def test_distinct_low_weights_cap_the_count():
    # families with a1 != a2 never carry more than two pencils
    for rec in load_families():
        w = rec.weights
        if w.a1 != w.a2 and rec.halphen_count is not INFINITE:
            assert rec.halphen_count <= 2, rec.gimel


def test_weight_one_families_have_one_principal_pencil():
    for rec in load_families():
        w = rec.weights
        if w.a1 == 1 and w.a2 != 1:
            ans = halphen_pencils(rec.gimel)
            assert ans.count == 1
            (p,) = ans.pencils
            assert p.kind == PencilKind.PRINCIPAL and p.n == 1


def test_infinite_families_have_no_descriptors():
    ans = halphen_pencils(5)
    assert ans.count is INFINITE and ans.pencils == ()
    # the caller guard: nothing to disambiguate on the quartic
    assert unique_index_j(Weights(1, 1, 1, 1), skipped=2) is None


def test_verify_family_18_passes():
    checks = verify_family(18)
    names = [c.name for c in checks]
    assert "kcube" in names
    assert "basket types" in names
    assert "pencil count rule" in names
    assert "distinguished point count" in names
    assert all(c.passed for c in checks)


def test_verify_family_95_has_negative_blowup_row():
    # 1/330 - 1/30 = -1/33 at the 1/5(1,2,3) point, hence its BC entry
    checks = {c.name: c for c in verify_family(95)}
    c = checks["bc presence P1 1/5(1,2,3)"]
    assert c.passed
    assert "-1/33" in c.actual


def test_env_var_overrides_dataset(tmp_path, monkeypatch):
    alt = tmp_path / "alt.txt"
    alt.write_text(RECORD.replace("pencils 7", "pencils 4"))
    monkeypatch.setenv("WFANO_DATA", str(alt))
    recs = load_families()
    assert len(recs) == 1 and recs[0].halphen_count == 4
    monkeypatch.delenv("WFANO_DATA")
    assert len(load_families()) == 95
