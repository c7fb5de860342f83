import json
from fractions import Fraction

import pytest

import posetshuffle as ps
from posetshuffle import RangeError
from posetshuffle.survey import (
    SurveyRecord,
    bound_table,
    inclusion_ordered_table,
    monotonicity_scan,
    summarize,
    survey_csv_lines,
    verify_all,
)


def test_verify_all_4_is_clean():
    summary, records = verify_all(4)
    assert summary.clean
    assert summary.total_classes == 23
    assert summary.checked_classes == 20
    assert summary.class_counts == {2: 2, 3: 5, 4: 16}
    assert summary.bound_violations == ()
    assert summary.negative_violations == ()
    assert summary.tightness_mismatches == ()
    assert summary.class_totals_note is None
    for rec in records:
        assert rec.checked == (rec.num_extensions > 1)
        if rec.checked:
            assert rec.satisfies
            assert rec.tight == (not rec.connected)


def test_verify_all_records_known_classes():
    _, records = verify_all(4)
    by_covers = {(r.n, r.covers): r for r in records}
    anti3 = by_covers[(3, ())]
    assert anti3.tight and not anti3.connected
    assert abs(anti3.lambda2 - 4 / 9) <= 1e-9
    vee = by_covers[(3, ((1, 2), (1, 3)))]
    wedge = by_covers[(3, ((1, 2), (3, 2)))]
    for rec in (vee, wedge):
        assert rec.connected
        assert rec.satisfies and not rec.tight
        assert rec.lambda2 < 4 / 9 - 1e-6
    disconnected4 = [r for r in records if r.n == 4 and not r.connected]
    assert len(disconnected4) == 6


def test_verify_all_range():
    with pytest.raises(RangeError):
        verify_all(1)
    with pytest.raises(RangeError):
        verify_all(8)


def test_verify_all_file_and_resume(tmp_path):
    out = tmp_path / "survey.jsonl"
    s1, r1 = verify_all(4, out_path=str(out))
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    assert len(lines) == 25
    assert lines[0]["kind"] == "meta" and lines[0]["tool"] == "posetshuffle"
    assert lines[-1]["kind"] == "summary"
    assert sum(1 for x in lines if x["kind"] == "record") == 23
    s2, r2 = verify_all(4, out_path=str(out))
    assert r2 == r1
    assert s2.clean and s2.total_classes == 23
    # resuming from a partial file only computes the missing classes
    partial = "\n".join(
        json.dumps(x) for x in lines if x["kind"] == "record" and x["n"] <= 3
    )
    out.write_text(partial + "\n")
    s3, r3 = verify_all(4, out_path=str(out))
    assert r3 == r1


def test_survey_record_flags_recomputed():
    bad = SurveyRecord.build(3, (), 6, False, 0.9, 0.0, 1e-9)
    assert not bad.satisfies
    assert not bad.tight
    round_trip = SurveyRecord.from_json_dict(bad.to_json_dict(), 1e-9)
    assert round_trip == bad


def test_summarize_flags_fabricated_violations():
    tight_but_connected = SurveyRecord.build(
        3, ((1, 2),), 3, True, float(Fraction(4, 9)), 0.0, 1e-9
    )
    s = summarize([tight_but_connected], 3, 1e-9, {3: 1}, 0.0)
    assert s.tightness_mismatches == (((1, 2),),)
    assert not s.clean
    negative = SurveyRecord.build(3, (), 6, False, 0.3, -0.5, 1e-9)
    s = summarize([negative], 3, 1e-9, {3: 1}, 0.0)
    assert s.negative_violations == ((),)
    assert s.tightness_mismatches == ((),)
    assert not s.clean
    violating = SurveyRecord.build(3, (), 6, False, 0.9, 0.0, 1e-9)
    s = summarize([violating], 3, 1e-9, {3: 1}, 0.0)
    assert s.bound_violations == ((),)


def test_summarize_note_for_full_range():
    counts = {2: 2, 3: 5, 4: 16, 5: 63, 6: 318, 7: 2045}
    s = summarize([], 7, 1e-9, counts, 0.0)
    assert s.class_totals_note == {
        "computed_classes_n1_to_7": 2450,
        "previously_reported_total": 2451,
    }


def test_survey_csv_lines():
    _, records = verify_all(3)
    lines = survey_csv_lines(records)
    assert lines[0] == (
        "covers,n,num_extensions,lambda2,bound,satisfies,tight,connected,"
        "min_eigenvalue"
    )
    assert len(lines) == 8
    anti2 = lines[1]
    assert anti2.startswith('"",2,2,')
    chain2 = lines[2]
    assert '"1<2",2,1,,' in chain2


def test_monotonicity_scan_small_sizes_empty():
    for n in (2, 3, 4):
        rep = monotonicity_scan(n)
        assert rep.counterexamples == ()
        assert rep.duality_closed
        assert rep.pairs_up_to_duality == 0
    with pytest.raises(RangeError):
        monotonicity_scan(1)
    with pytest.raises(RangeError):
        monotonicity_scan(8)


def test_monotonicity_scan_n5_finds_reversals():
    rep = monotonicity_scan(5)
    assert rep.classes_scanned == 63
    assert len(rep.counterexamples) == 10
    assert rep.duality_closed
    assert rep.pairs_up_to_duality == 5
    for sub, sup, lam_sub, lam_sup in rep.counterexamples:
        p = ps.poset_from_covers(5, sub)
        q = ps.poset_from_covers(5, sup)
        assert ps.poset_inclusion(p, q)
        assert lam_sub < lam_sup - 1e-9
        assert abs(ps.conjecture_check(p).lambda2 - lam_sub) <= 1e-12
        assert abs(ps.conjecture_check(q).lambda2 - lam_sup) <= 1e-12
    d = rep.to_json_dict()
    assert len(d["counterexamples"]) == 10


def test_inclusion_ordered_table_n2():
    assert inclusion_ordered_table(2) == [
        ((), 2, 0.0),
        (((1, 2),), 1, None),
    ]


def test_inclusion_ordered_table_n4():
    table = inclusion_ordered_table(4)
    assert len(table) == 16
    covers, num_ext, lam = table[0]
    assert covers == () and num_ext == 24 and abs(lam - 0.625) <= 1e-9
    covers, num_ext, lam = table[-1]
    assert covers == ((1, 2), (2, 3), (3, 4)) and num_ext == 1 and lam is None
    posets = {c: ps.poset_from_covers(4, c) for c, _, _ in table}
    keys = [c for c, _, _ in table]
    for i, ka in enumerate(keys):
        for kb in keys[i + 1 :]:
            # nothing later may sit inside an earlier order
            assert not ps.poset_inclusion(posets[kb], posets[ka])


def test_inclusion_ordered_table_range():
    with pytest.raises(RangeError):
        inclusion_ordered_table(0)
    with pytest.raises(RangeError):
        inclusion_ordered_table(6)


def test_bound_table():
    rows = bound_table(5)
    assert rows == [
        (2, Fraction(0, 1), 0.0),
        (3, Fraction(4, 9), 4 / 9),
        (4, Fraction(5, 8), 0.625),
        (5, Fraction(18, 25), 0.72),
    ]
    with pytest.raises(RangeError):
        bound_table(1)
