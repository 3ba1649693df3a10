import random

import pytest

from quatram.catalog import (enumerate_triples, feasible_tags,
                             hasse_arf_exceptions, is_stable, member,
                             s1_values, s2_max, s2_values, s3_values,
                             stable_s3, unstable_window, witness,
                             execute_witness)
from quatram.errors import NotInCatalog, RequiresI
from quatram.quaternion import measured_b3, upper_breaks

GOLDEN = {
    ("1", 1): [(1, 2, 5)],
    ("1*", 2): [(1, 2, 3), (1, 2, 9), (1, 2, 13), (3, 5, 9)],
    ("2", 2): [(1, 5, 13), (1, 7, 15), (3, 5, 13)],
}


def test_golden_enumerations():
    for (tag, e), want in GOLDEN.items():
        got = [t.triple for t in enumerate_triples(tag, e)]
        assert got == want, (tag, e, got)


def test_tag2_e4_window():
    assert s3_values("2", 1, 5, 4) == [17, 21, 25]


def test_s1_values():
    assert list(s1_values(1)) == [1]
    assert list(s1_values(2)) == [1, 3]
    assert list(s1_values(4)) == [1, 3, 5, 7]


def test_s2_structure():
    for e in (1, 2, 3, 4):
        for s1 in s1_values(e):
            assert s2_values("1", s1, e) == s2_values("1*", s1, e)
            assert s2_max("1", s1, e) <= s2_max("2", s1, e)
            for tag in ("1", "2"):
                m = s2_max(tag, s1, e)
                vals = s2_values(tag, s1, e)
                assert vals and vals[-1] == m
                assert all(s1 < n <= m for n in vals)
                assert all(n == m or (n - s1) % 4 == 0 for n in vals)


def test_stable_unstable_dichotomy():
    rng = random.Random(41)
    for e in (1, 2, 3, 4, 5):
        for tag in ("1", "1*", "2"):
            for s1 in s1_values(e):
                for s2 in s2_values(tag, s1, e):
                    if is_stable(tag, s1, s2, e):
                        assert s3_values(tag, s1, s2, e) == \
                            [stable_s3(tag, s1, s2, e)]
                    else:
                        w = unstable_window(tag, s1, s2, e)
                        assert s3_values(tag, s1, s2, e) == w
                        assert len(w) >= 2 and w == sorted(w)
                        anchor = s2 if tag == "2" else s1
                        for n in w[1:-1]:
                            assert (n - anchor) % 8 == 0


def test_member_matches_enumeration():
    rng = random.Random(42)
    for e in (1, 2, 3):
        for tag in ("1", "1*", "2"):
            triples = {t.triple for t in enumerate_triples(tag, e)}
            for t in triples:
                assert member(tag, e, *t)
            for _ in range(200):
                t = (rng.randrange(0, 8 * e), rng.randrange(0, 8 * e),
                     rng.randrange(0, 10 * e))
                assert member(tag, e, *t) == (t in triples)


def test_triples_ordered():
    for t in enumerate_triples("2", 3):
        assert 0 < t.s1 < t.s2 < t.s3


def test_hasse_arf_exceptions():
    assert sorted(x.triple for x in hasse_arf_exceptions(2)) == \
        [(1, 2, 3), (3, 5, 9)]
    for e in (1, 2, 3, 4):
        exc = {x.triple for x in hasse_arf_exceptions(e)}
        for tag in ("1", "1*"):
            for t in enumerate_triples(tag, e):
                ub = upper_breaks(t.triple, tag)
                integral = all(x.denominator == 1 for x in ub)
                assert integral == (t.triple not in exc), t.triple
        # two-break upper breaks are always integral
        for t in enumerate_triples("2", e):
            assert all(x.denominator == 1
                       for x in upper_breaks(t.triple, "2"))


def test_feasible_tags():
    assert feasible_tags(1) == ("2",)
    assert feasible_tags(2) == ("1*", "2")
    assert feasible_tags(3) == ("1", "2")
    assert feasible_tags(4) == ("1", "1*", "2")
    assert feasible_tags(6) == ("1", "1*", "2")


def test_witness_guards(Q2i, Q2SQRT2):
    t = enumerate_triples("2", 2)[1]   # (1, 7, 15)
    with pytest.raises(RequiresI):
        witness("2", Q2SQRT2, t)
    bad = type(t)(1, 6, 15, "2", 2, True)
    with pytest.raises(NotInCatalog):
        witness("2", Q2i, bad)


def test_witness_execution(Q2i):
    t = [x for x in enumerate_triples("2", 2) if x.triple == (1, 7, 15)][0]
    q = execute_witness(witness("2", Q2i, t))
    assert q.triple == t.triple
    assert measured_b3(q) == t.s3
