import io

import pytest

from sdpoly.closed_form import column_convex_g
from sdpoly.funceq import MIRROR_PAIRS, decompose, fixed_point_solve
from sdpoly.oracle import (
    CEILING_ENV, LABELS, S_CLASSES, Polyomino, ResourceRefusal, classify, decompose_columns,
    dump_classified, enumerate_counts, enumerate_polyominoes, refined_series,
)
from sdpoly.series import QTSeries, SeriesError, SeriesRing, jet_at_1

FIXED_COUNTS = [1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446, 135268, 505861]


def naive_polyominoes(n_max):
    """Grow every normalised cell set one neighbour at a time; slow but obviously complete."""
    level = {Polyomino.of([(0, 0)]).cells}
    out = [level]
    for _ in range(n_max - 1):
        nxt = set()
        for cells in level:
            for x, y in cells:
                for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if c not in cells:
                        nxt.add(Polyomino.of(cells | {c}).cells)
        level = nxt
        out.append(level)
    return out


def test_enumeration_is_complete_and_unique():
    seen = [p.cells for p in enumerate_polyominoes(7)]
    assert len(seen) == len(set(seen))
    by_size = naive_polyominoes(7)
    for n, expected in enumerate(by_size, start=1):
        assert {c for c in seen if len(c) == n} == expected


def test_fixed_polyomino_counts(table12):
    assert table12.by_area("all")[1:] == FIXED_COUNTS


def test_small_examples(table8):
    assert table8.total("simplex-duplex", 1) == 1
    assert table8.total("simplex-duplex", 1, duplex=0) == 1
    assert table8.total("simplex-duplex", 3) == 6 == table8.total("all", 3)
    assert table8.total("simplex-duplex", 5) == 63
    assert table8.total("simplex-duplex", 5, duplex=1) == 2
    assert table8.total("simplex-duplex", 6) == 216


def test_simplex_duplex_series(table12):
    got = refined_series(table12, "simplex-duplex", SeriesRing(12, w=1))
    assert [got.coeff(n) for n in range(1, 13)] == [
        1, 2, 6, 19, 63, 216, 758, 2693, 9608, 34269, 121946, 432701]


def test_column_convex_series(table12):
    assert refined_series(table12, "column-convex", SeriesRing(12, w=0)) == column_convex_g(12)
    assert table12.by_area("column-convex")[1:6] == [1, 2, 6, 19, 61]


def test_u_pentomino():
    p = Polyomino.of([(0, 0), (0, 1), (0, 2), (1, 0), (1, 2)])
    c = classify(p)
    assert c.decomposition.profile == (1, 2)
    assert c.decomposition.duplex_count == 1
    assert "simplex-duplex" in c.labels and "ends-duplex" in c.labels
    assert "column-convex" not in c.labels and "S" not in c.labels


def test_mirrored_u_is_alpha():
    p = Polyomino.of([(0, 0), (0, 2), (1, 0), (1, 1), (1, 2)])
    c = classify(p)
    assert "S" in c.labels
    assert c.s_class == "alpha" and "S-alpha" in c.labels


@pytest.mark.parametrize("n", [1, 2, 5])
def test_vertical_bar(n):
    c = classify(Polyomino.of([(0, y) for y in range(n)]))
    assert {"column-convex", "S", "S-alpha"} <= c.labels


def test_polyomino_validation():
    with pytest.raises(ValueError):
        Polyomino.of([(0, 0), (2, 0)])
    with pytest.raises(ValueError):
        Polyomino(frozenset())


def test_pivot_accessors_are_separate():
    # columns: simplex, duplex, simplex
    p = Polyomino.of([(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 0)])
    d = decompose_columns(p)
    assert d.second_last_column() == 1
    assert d.second_last_simplex_column() == 0
    assert (d.lower_pivot, d.upper_pivot) == ((1, 0), (1, 2))
    assert (d.lower_inner_pivot, d.upper_inner_pivot) == ((2, 0), (2, 2))
    assert d.last_height == 1


def test_every_s_member_has_exactly_one_class(table12):
    assert table12.anomalies == []
    for n in range(1, 13):
        assert table12.total("S", n) == sum(table12.total("S-" + c, n) for c in S_CLASSES)
        assert table12.total("S", n) + table12.total("ends-duplex", n) == table12.total("simplex-duplex", n)


def test_class_inclusions(table12):
    for n in range(1, 13):
        cc, sd = table12.total("column-convex", n), table12.total("simplex-duplex", n)
        cd, al = table12.total("column-duplex", n), table12.total("all", n)
        assert cc <= sd <= cd <= al


def test_mirror_pairs(table12):
    ring = SeriesRing(11)
    for left, right in MIRROR_PAIRS:
        a = refined_series(table12, "S-" + left, ring, by_height=True)
        b = refined_series(table12, "S-" + right, ring, by_height=True)
        assert a == b, (left, right)


def test_mirror_maps_classes():
    pairs = dict(MIRROR_PAIRS)
    pairs.update({v: k for k, v in MIRROR_PAIRS})
    for p in enumerate_polyominoes(8):
        c = classify(p)
        if c.s_class is None:
            continue
        m = classify(p.mirror())
        if c.s_class in pairs:
            assert m.s_class == pairs[c.s_class], str(p)
        else:
            assert m.s_class is not None


def test_classes_match_part_formulas(table12):
    ring = SeriesRing(12)
    parts = decompose(fixed_point_solve(ring), ring)
    for name in S_CLASSES:
        assert refined_series(table12, "S-" + name, ring, by_height=True) == parts[name], name


def test_s_series_jets_match_funceq(table12):
    ring = SeriesRing(12)
    sol = fixed_point_solve(ring)
    a = refined_series(table12, "S", ring, by_height=True)
    assert isinstance(a, QTSeries)
    assert a == sol.a_t
    assert jet_at_1(a) == sol.jets


def test_four_duplex_columns_in_fifteen_cells():
    # columns (bottom to top): duplex, simplex, duplex, ... ; 4 duplex columns in 15 cells
    cells = [(0, 0), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 2), (3, 2), (4, 2), (4, 4),
             (5, 2), (5, 3), (5, 4), (6, 2), (6, 4)]
    c = classify(Polyomino.of(cells))
    assert c.decomposition.profile == (2, 1, 2, 1, 2, 1, 2)
    assert c.decomposition.duplex_count == 4
    assert "simplex-duplex" in c.labels


def test_refined_series_order_error(table8):
    with pytest.raises(SeriesError):
        refined_series(table8, "simplex-duplex", SeriesRing(9))


def test_ceiling_refusal(monkeypatch):
    monkeypatch.setenv(CEILING_ENV, "6")
    with pytest.raises(ResourceRefusal):
        enumerate_counts(7)
    assert enumerate_counts(6).total("all") == sum(FIXED_COUNTS[:6])


def test_parallel_counts_equal_serial():
    serial = enumerate_counts(9)
    parallel = enumerate_counts(9, workers=2)
    assert parallel.counts == serial.counts


def test_dump_classified():
    buf = io.StringIO()
    lines = dump_classified(4, buf)
    assert lines == 1 + 2 + 6 + 19
    rows = buf.getvalue().splitlines()
    assert len(rows) == lines
    assert all(set(r.split("\t")[1].split()) <= set(LABELS) for r in rows)
