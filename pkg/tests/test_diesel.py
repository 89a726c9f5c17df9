from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hankelrays.diesel import (
    DegreeSequence,
    SelfComplementaryPartition,
    complete_intersection_socle_degree,
    corank4_dimension_bounds,
    enumerate_self_complementary,
    h_EM,
    hilbert_from_degrees,
    minimize_degrees,
    partition_degrees,
    t1_hilbert,
    t1_partition,
    t1_sequence,
    t2_hilbert,
    t2_partition,
    t2_sequence,
)

MINIMIZE_CASES = [
    ((5, 5, 5, 5, 6, 6, 8, 8, 9, 9, 9), (10, 10, 10, 10, 9, 9, 7, 7, 6, 6, 6), (5, 5, 5, 5, 8, 8, 9)),
    ((4, 5, 5, 6, 7, 7, 8, 9, 9), (11, 10, 10, 9, 8, 8, 7, 6, 6), (4, 5, 5, 7, 9)),
]


def _dim(e):
    return comb(e + 2, 2) if e >= 0 else 0


@pytest.mark.parametrize("Q,P,expected", MINIMIZE_CASES)
def test_minimize_examples(Q, P, expected):
    out = minimize_degrees(DegreeSequence(Q, P, 12))
    assert out.Q == expected
    assert len(out) % 2 == 1


def test_minimize_fixpoint():
    seq = DegreeSequence((4, 4, 4, 4, 6), (7, 7, 7, 7, 5), 8)
    assert minimize_degrees(seq) == seq


def test_sequence_validation():
    with pytest.raises(ValueError):
        DegreeSequence((1, 2), (2, 1), 2)
    with pytest.raises(ValueError):
        DegreeSequence((3, 2, 1), (1, 2, 3), 4)


def test_h_em_d4():
    seq = minimize_degrees(t1_sequence(4))
    assert seq.Q == (4, 4, 4, 4, 6)
    assert h_EM(seq) == 72 == 6 * _dim(3) + 4 * _dim(1)


def test_h_em_closed_forms():
    for d in range(5, 21):
        seq = minimize_degrees(t1_sequence(d))
        assert seq.Q == (d,) * 4 + (d + 1,) * (2 * d - 9)
        assert h_EM(seq) == 6 * d * d - 9 * d - 21
        assert h_EM(seq) == 6 * _dim(3) + 4 * (2 * d - 9) * _dim(2) + comb(2 * d - 9, 2) * _dim(1)
    for d in range(4, 13):
        seq = minimize_degrees(t2_sequence(d))
        assert seq.Q == (d - 1, d) + (d + 1,) * (2 * d - 5)
        assert h_EM(seq) == 6 * d * d - d - 20
        assert h_EM(seq) == (_dim(4) + (2 * d - 5) * (_dim(3) + _dim(2))
                             + comb(2 * d - 5, 2) * _dim(1))


def test_hilbert_from_degrees_matches_families():
    for d in range(4, 13):
        for seq, T in ((t1_sequence(d), t1_hilbert(d)), (t2_sequence(d), t2_hilbert(d))):
            assert hilbert_from_degrees(seq) == T == hilbert_from_degrees(minimize_degrees(seq))
            assert T[d] == _dim(d) - 4 and T == T[::-1]


def test_dimension_bounds_examples():
    r4 = corank4_dimension_bounds(4)
    assert r4.t1.overcount == 38 and r4.t1.dim_bound == 34
    assert r4.t1.ambient_dim == 44 and r4.t1.codim_bound == 10
    r5 = corank4_dimension_bounds(5)
    assert r5.t2.codim_bound >= 14
    r6 = corank4_dimension_bounds(6)
    assert r6.t1.dim_bound == 80 and r6.t1.ambient_dim == 90


def test_dimension_bounds_closed_forms():
    for d in range(5, 13):
        r = corank4_dimension_bounds(d)
        assert r.t1.overcount == 16 + (2 * d - 9) * (2 * d + 3)
        assert r.t1.dim_bound == 2 * d * d + 3 * d - 10
        assert r.t1.ambient_dim == 2 * d * d + 3 * d
        assert r.t1.codim_bound >= 10
    for d in range(4, 13):
        r = corank4_dimension_bounds(d)
        assert r.t2.dim_bound <= 2 * d * d + d - 4
        assert r.t2.codim_bound >= 2 * d + 4 >= 12
        assert r.t2_not_component


def test_report_json_fields():
    obj = corank4_dimension_bounds(4).to_json_obj()
    for fam in ("T1", "T2"):
        assert {"Q", "P", "Q_min", "h_EM", "dim_bound", "ambient_dim", "codim_bound"} <= set(obj[fam])
    assert obj["T1"]["h_EM"] == 72


def test_ci_socle_degree():
    assert complete_intersection_socle_degree(2, 2, 2) == 3
    # compare with the top degree of the complete intersection Hilbert series
    for degs in [(2, 3, 4), (3, 3, 3), (1, 4, 5)]:
        coeffs = [1]
        for e in degs:
            nxt = [0] * (len(coeffs) + e)
            for i, c in enumerate(coeffs):
                nxt[i] += c
                nxt[i + e] -= c
            coeffs = nxt
        series = [sum(coeffs[j] * _dim(k - j) for j in range(min(k, len(coeffs) - 1) + 1))
                  for k in range(sum(degs) + 2)]
        top = max(k for k, v in enumerate(series) if v)
        assert top == complete_intersection_socle_degree(*degs)


def _naive_self_complementary(h, w):
    out = []
    for cols in product(range(h + 1), repeat=w):
        if list(cols) != sorted(cols, reverse=True):
            continue
        if tuple(h - x for x in reversed(cols)) == cols:
            out.append(cols)
    return sorted(out, reverse=True)


def test_enumeration_against_brute_force():
    for k in range(0, 4):
        for m in range(2 * k - 2, 2 * k + 5):
            if m < 0:
                continue
            got = [p.column_heights for p in enumerate_self_complementary(k, m)]
            assert got == _naive_self_complementary(m - 2 * k + 2, 2 * k)
            for p in enumerate_self_complementary(k, m):
                assert p.is_self_complementary()


def test_empty_box():
    assert [p.column_heights for p in enumerate_self_complementary(0, 6)] == [()]
    assert enumerate_self_complementary(2, 2)[0].column_heights == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        enumerate_self_complementary(3, 2)


def test_family_partitions():
    for d in range(4, 9):
        p1 = t1_partition(d)
        assert p1.box == (2, 2 * d) and p1 in enumerate_self_complementary(d, 2 * d)
        assert partition_degrees(p1, d, 2 * d) == t1_sequence(d)
        p2 = t2_partition(d)
        assert p2.box == (4, 2 * d - 2) and p2 in enumerate_self_complementary(d - 1, 2 * d)
        assert partition_degrees(p2, d - 1, 2 * d) == t2_sequence(d)


def test_partition_validation():
    with pytest.raises(ValueError):
        SelfComplementaryPartition((2, 2), (1, 2))
    with pytest.raises(ValueError):
        SelfComplementaryPartition((2, 2), (3, 0))


@st.composite
def sequences(draw):
    socle = draw(st.integers(4, 14))
    n = draw(st.sampled_from([1, 3, 5, 7, 9]))
    Q = sorted(draw(st.lists(st.integers(1, socle + 2), min_size=n, max_size=n)))
    return DegreeSequence.from_generators(Q, socle)


@settings(max_examples=200, deadline=None)
@given(sequences())
def test_minimize_properties(seq):
    out = minimize_degrees(seq)
    assert minimize_degrees(out) == out
    assert len(out) % 2 == 1
    n = len(out)
    assert not any(out.P[i] + out.P[j] - out.Q[i] - out.Q[j] == 0
                   for i in range(n) for j in range(i + 1, n))
    # ghost pairs cancel in the Hilbert series
    assert hilbert_from_degrees(out) == hilbert_from_degrees(seq)
