import pytest

import ko_analysis
from affine_group import (
    RightSet, UnsupportedParameterError, compose, element_from_weight,
    is_in_Wplus, length, longest_finite_element, word_to_element,
)
from ko_analysis import (
    KoAnalysisError, KoCounts, RowInvariantError, TableRow, build_rows,
    ko_counts, ko_sets,
)
from reference_tables import (
    A3_EPSILON, A3_ROWS, A3_WORDS, A4_EPSILON, A4_ROWS, A4_WORDS, published_rows,
)
from table_io import RowCheckpoint
from weights import RankConfig, Weight, omega_from_epsilon


def test_a3_table_matches_published(rows3):
    expected = published_rows(3)
    got = {row.omega: row for row in rows3}
    assert set(got) == set(expected)
    for omega, ref in expected.items():
        row = got[omega]
        assert (row.length, row.c5, row.c6, row.c7) == (ref.length, ref.c5, ref.c6, ref.c7)
        assert row.epsilon == A3_EPSILON[omega]


def test_a4_table_matches_published(rows4):
    expected = published_rows(4)
    got = {row.omega: row for row in rows4}
    assert len(rows4) == 52
    assert set(got) == set(expected)
    for omega, ref in expected.items():
        row = got[omega]
        assert (row.length, row.c5, row.c6, row.c7) == (ref.length, ref.c5, ref.c6, ref.c7)
        assert row.epsilon == A4_EPSILON[omega]


@pytest.mark.parametrize("rows", [A3_ROWS, A4_ROWS], ids=["A3", "A4"])
def test_printed_epsilon_rebuilds_the_printed_row(rows):
    n = len(rows[0].omega)
    assert len(rows) == (8 if n == 3 else 52)
    for ref in rows:
        assert sum(ref.epsilon) == 0
        assert omega_from_epsilon(ref.epsilon) == ref.omega
        w = element_from_weight(Weight.from_epsilon(ref.epsilon), n + 1)
        assert is_in_Wplus(w)
        assert length(w) == ref.length == n * (n + 1) // 2 + len(ref.word)


@pytest.mark.parametrize("n, words", [(3, A3_WORDS), (4, A4_WORDS)])
def test_published_words_name_the_computed_elements(n, words, request):
    rows = {row.omega: row for row in request.getfixturevalue(f"rows{n}")}
    assert len(words) == len(rows)
    w0 = longest_finite_element(n, n + 1)
    for omega, word in words.items():
        published = compose(w0, word_to_element(word, n, n + 1))
        canonical = compose(w0, word_to_element(rows[omega].y_word, n, n + 1))
        assert published == canonical


def test_row_invariants(rows3, rows4):
    for rows in (rows3, rows4):
        assert rows[0].c7 == len(rows)
        n = len(rows[0].omega)
        for row in rows:
            assert 1 <= row.c5 <= row.c6 <= row.c7
            assert row.length == n * (n + 1) // 2 + len(row.y_word)
        keys = [row.order_key() for row in rows]
        assert keys == sorted(keys)


def test_ko_counts_examples(ideal3, wmax3, ideal4, wmax4):
    assert ko_counts(wmax3, ideal3) == KoCounts(1, 5, 8)
    assert ko_counts(wmax4, ideal4) == KoCounts(1, 31, 52)
    w = compose(longest_finite_element(3, 4), word_to_element([0, 3, 1], 3, 4))
    assert ko_counts(w, ideal3) == (1, 2, 5)
    assert ko_counts(longest_finite_element(3, 4), ideal3) == (1, 1, 1)


def test_ko_sets_are_nested(ideal4):
    for w in ideal4:
        sets = ko_sets(w, ideal4)
        assert w in sets.equal
        assert sets.equal <= sets.contained <= sets.below


def test_ko_sets_requires_member(ideal3):
    with pytest.raises(KoAnalysisError):
        ko_sets(longest_finite_element(4, 5), ideal3)


def test_lifting_method_agrees(rows3, rows4, cfg3, cfg4):
    assert build_rows(cfg3, method="lifting") == rows3
    assert build_rows(cfg4, method="lifting") == rows4


def test_parallel_rows_agree(rows3, cfg3):
    assert build_rows(cfg3, method="lifting", workers=2) == rows3
    assert build_rows(cfg3, workers=2) == rows3


def test_rank_one_table():
    rows = build_rows(RankConfig(1))
    assert len(rows) == 1
    row = rows[0]
    assert row.omega == (0,)
    assert row.length == 1
    assert row.counts == (1, 1, 1)


def test_rank_two_table():
    rows = build_rows(RankConfig(2))
    assert rows[0].omega == (1, 1)
    assert rows[0].length == 4
    assert rows[0].c7 == len(rows)
    assert rows[-1].omega == (0, 0)


def test_build_rows_rejects_bad_input(cfg3):
    with pytest.raises(UnsupportedParameterError):
        build_rows(RankConfig(3, 5))
    with pytest.raises(KoAnalysisError):
        build_rows(cfg3, method="brute")


def test_checkpoint_resume_skips_finished_rows(rows3, cfg3, tmp_path, monkeypatch):
    checkpoint = RowCheckpoint(tmp_path / "A3_p4.jsonl", cfg3)
    checkpoint.append(rows3[0])
    checkpoint.append(rows3[1])

    calls = []
    real = ko_analysis.ko_counts

    def counting(w, ideal, cache=None):
        calls.append(w)
        return real(w, ideal, cache)

    monkeypatch.setattr(ko_analysis, "ko_counts", counting)
    rows = build_rows(cfg3, method="lifting", checkpoint=checkpoint)
    assert rows == rows3
    assert len(calls) == len(rows3) - 2
    assert len(checkpoint.load()) == len(rows3)


def test_table_row_validation():
    good = dict(y_word=(0,), epsilon=(1, 0, 0, -1), omega=(1, 0, 1), length=7,
                c5=1, c6=1, c7=2, right_set=RightSet({0}))
    assert TableRow(**good).weight.omega == (1, 0, 1)
    with pytest.raises(RowInvariantError):
        TableRow(**{**good, "c5": 3})
    with pytest.raises(RowInvariantError):
        TableRow(**{**good, "omega": (1, 1, 1)})
    with pytest.raises(RowInvariantError):
        TableRow(**{**good, "length": 8})
    assert TableRow.from_dict(TableRow(**good).to_dict()) == TableRow(**good)
