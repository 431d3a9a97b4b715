import json
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from multiset_ekr.combinatorics import binomial
from multiset_ekr.families import (
    Family,
    Multiset,
    above_half_family,
    above_half_size,
    all_multisets,
    common_elements,
    conjecture_bound,
    family_from_json,
    family_from_text,
    frankl_plus_family,
    half_selection_family,
    intersection_size,
    is_t_intersecting_family,
    level_family,
    star_family,
    support,
    t_star_family,
    theorem1_bound,
    theorem2_bound,
)

from oracles import meet, multisets


def ms(elems, m):
    return Multiset.from_elements(elems, m)


def fam(m, k, lists):
    return Family.of(m, k, lists)


def pairwise_ok(members, t):
    return all(meet(a, b) >= t for a, b in combinations(members, 2))


# Multiset and intersection


def test_sequence_representation():
    a = ms([1, 2, 2, 4], 6)
    assert a.counts == (1, 2, 0, 1, 0, 0)
    assert a.k == 4
    assert str(a) == "1 2 2 4"


@pytest.mark.parametrize("elems,m,expected", [
    ([1, 2, 2, 4], 6, {1, 2, 4}),
    ([1, 1, 1], 3, {1}),
    ([1, 2, 3], 3, {1, 2, 3}),
])
def test_support(elems, m, expected):
    assert support(ms(elems, m)) == expected


@pytest.mark.parametrize("a,b,expected", [
    ([1, 1, 2], [1, 2, 2], 2),
    ([1, 1, 1], [2, 2, 2], 0),
    ([1, 2, 3], [1, 2, 3], 3),
])
def test_intersection_size(a, b, expected):
    assert intersection_size(ms(a, 3), ms(b, 3)) == expected


def test_intersection_context_mismatch():
    with pytest.raises(ValueError):
        intersection_size(ms([1, 1], 3), ms([1, 1], 4))
    with pytest.raises(ValueError):
        intersection_size(ms([1, 1], 3), ms([1, 1, 1], 3))


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_intersection_properties(m, k, data):
    pool = multisets(m, k)
    a, b = (ms(data.draw(st.sampled_from(pool)), m) for _ in range(2))
    s = intersection_size(a, b)
    assert s == intersection_size(b, a)
    assert 0 <= s <= k
    assert (s == k) == (a == b)
    assert s == meet(a.elements, b.elements)


@pytest.mark.parametrize("counts", [(0, 0), (1, -1, 1), ()])
def test_multiset_validation(counts):
    with pytest.raises(ValueError):
        Multiset(len(counts), counts)


def test_from_elements_range():
    with pytest.raises(ValueError):
        ms([0, 1], 3)
    with pytest.raises(ValueError):
        ms([4], 3)


# Family container


def test_family_is_canonical():
    f = fam(3, 2, [[2, 3], [1, 1], [2, 3], [1, 2]])
    g = fam(3, 2, [[1, 2], [1, 1], [2, 3]])
    assert f == g
    assert [a.elements for a in f] == [(1, 1), (1, 2), (2, 3)]
    assert f.ranks() == [0, 1, 4]


def test_family_context_check():
    with pytest.raises(ValueError):
        Family(3, 2, (ms([1, 1, 1], 3),))


def test_family_set_ops():
    f = fam(3, 2, [[1, 1], [1, 2]])
    g = fam(3, 2, [[1, 2], [2, 2]])
    assert len(f | g) == 3
    assert (f - g) == fam(3, 2, [[1, 1]])
    assert ms([1, 1], 3) in f
    with pytest.raises(ValueError):
        f | fam(4, 2, [])


def test_json_roundtrip():
    f = star_family(4, 3, 2)
    data = f.dumps()
    assert json.loads(data)[0] == [2, 1, 0, 0]  # {1,1,2}
    assert family_from_json(data) == f
    assert family_from_json(f.to_json()) == f


def test_json_empty_needs_context():
    with pytest.raises(ValueError):
        family_from_json("[]")
    assert len(family_from_json("[]", m=3, k=2)) == 0


def test_text_roundtrip():
    f = level_family(4, 3, 2)
    assert family_from_text(f.to_text(), 4) == f
    assert f.to_text().splitlines()[0] == "1 1 2"


# intersecting predicate


def test_is_t_intersecting_examples():
    assert not is_t_intersecting_family(fam(2, 2, [[1, 1], [1, 2], [2, 2]]), 1)
    assert is_t_intersecting_family(star_family(3, 2, 1), 1)
    assert is_t_intersecting_family(fam(3, 2, []), 1)
    assert is_t_intersecting_family(fam(3, 2, [[1, 1]]), 2)
    with pytest.raises(ValueError):
        is_t_intersecting_family(fam(3, 2, []), 0)


def test_frankl_plus_is_2_intersecting():
    f = frankl_plus_family(7, 5, 2)
    assert len(f) == 91
    assert pairwise_ok([a.elements for a in f], 2)
    assert is_t_intersecting_family(f, 2)


# constructions: sizes checked against direct enumeration


def test_star_examples():
    assert star_family(3, 2, 1) == fam(3, 2, [[1, 1], [1, 2], [1, 3]])
    assert len(star_family(4, 3, 2)) == 10 == binomial(5, 2)
    assert star_family(5, 1, 4) == fam(5, 1, [[4]])
    with pytest.raises(ValueError):
        star_family(3, 2, 4)


def test_star_sizes_exhaustive():
    for m in range(1, 9):
        for k in range(1, 9):
            for x in range(1, m + 1):
                brute = sum(1 for a in multisets(m, k) if x in a)
                assert len(star_family(m, k, x)) == brute == binomial(m + k - 2, k - 1)


def test_t_star_examples():
    assert len(t_star_family(7, 5, [1, 2])) == 84
    assert t_star_family(4, 3, [1, 2, 2]) == fam(4, 3, [[1, 2, 2]])
    assert t_star_family(3, 3, [1, 1]) == fam(3, 3, [[1, 1, 1], [1, 1, 2], [1, 1, 3]])
    with pytest.raises(ValueError):
        t_star_family(3, 2, [1, 1, 1])


def test_t_star_size_independent_of_fixed_multiset():
    for m in range(1, 7):
        for k in range(1, 7):
            for t in range(1, k + 1):
                expect = conjecture_bound(m, k, t).formula_value
                for T in combinations_with_replacement(range(1, m + 1), t):
                    brute = sum(1 for a in multisets(m, k) if all(a.count(x) >= T.count(x) for x in T))
                    assert len(t_star_family(m, k, T)) == brute == expect


def test_t_star_is_t_intersecting():
    for m, k, T in [(4, 4, [1, 2]), (3, 5, [1, 1, 2]), (5, 3, [3])]:
        assert is_t_intersecting_family(t_star_family(m, k, T), len(T))


def test_level_examples():
    assert len(level_family(4, 4, 2)) == 18
    assert level_family(3, 3, 3) == fam(3, 3, [[1, 2, 3]])
    assert level_family(2, 3, 1) == fam(2, 3, [[1, 1, 1], [2, 2, 2]])
    for bad in (0, 4):
        with pytest.raises(ValueError):
            level_family(3, 3, bad)


def test_level_sizes_exhaustive():
    for m in range(1, 9):
        for k in range(1, 9):
            for j in range(1, min(m, k) + 1):
                brute = sum(1 for a in multisets(m, k) if len(set(a)) == j)
                assert len(level_family(m, k, j)) == brute == binomial(m, j) * binomial(k - 1, k - j)


def test_above_half_examples():
    assert len(above_half_family(3, 3)) == 7
    assert len(above_half_family(3, 4)) == 12
    assert len(above_half_family(4, 4)) == 13


def test_above_half_exhaustive():
    for k in range(1, 9):
        for m in range(1, k + 1):
            f = above_half_family(m, k)
            brute = sum(1 for a in multisets(m, k) if 2 * len(set(a)) > m)
            assert len(f) == brute == above_half_size(m, k)
            assert is_t_intersecting_family(f, 1)


def test_half_selection_examples():
    assert half_selection_family(2, 3) == fam(2, 3, [[1, 1, 1]])
    assert half_selection_family(2, 2) == fam(2, 2, [[1, 1]])
    h = half_selection_family(4, 4)
    assert len(h) == 9
    union = h | above_half_family(4, 4)
    assert len(union) == 22
    assert pairwise_ok([a.elements for a in union], 1)
    with pytest.raises(ValueError):
        half_selection_family(3, 3)


def test_half_selection_rejects_bad_chooser():
    with pytest.raises(ValueError):
        half_selection_family(4, 4, chooser=lambda s: True)


def test_half_selection_custom_chooser():
    h = half_selection_family(4, 4, chooser=lambda s: 4 in s)
    assert all(4 in support(a) for a in h)
    assert len(h) == 9


def test_half_selection_union_maximal():
    for m in (2, 4):
        for k in range(m, 9):
            upper = above_half_family(m, k)
            sel = half_selection_family(m, k)
            union = upper | sel
            assert is_t_intersecting_family(union, 1)
            assert len(union) == theorem2_bound(m, k).formula_value
            for a in level_family(m, k, m // 2):
                if a not in sel:
                    assert not is_t_intersecting_family(union | Family(m, k, (a,)), 1)


def test_frankl_plus_examples():
    assert len(frankl_plus_family(7, 5, 2, {1, 2, 3, 4})) == 91
    assert len(frankl_plus_family(8, 5, 2, {1, 2, 3, 4})) == 120
    brute = [a for a in multisets(4, 3) if len(set(a) & {1, 2, 3}) >= 2]
    assert [a.elements for a in frankl_plus_family(4, 3, 1, {1, 2, 3})] == brute


def test_frankl_plus_independent_of_fixed_set():
    sizes = {len(frankl_plus_family(7, 5, 2, F)) for F in combinations(range(1, 8), 4)}
    assert sizes == {91}


def test_frankl_plus_t_intersecting_grid():
    for m in range(3, 8):
        for k in range(2, 6):
            for t in range(1, k):
                if t + 2 <= m:
                    f = frankl_plus_family(m, k, t)
                    assert pairwise_ok([a.elements for a in f], t)


@pytest.mark.parametrize("args", [(3, 3, 2), (4, 2, 2), (4, 3, 0)])
def test_frankl_plus_parameter_errors(args):
    with pytest.raises(ValueError):
        frankl_plus_family(*args)


def test_frankl_plus_bad_fixed_set():
    with pytest.raises(ValueError):
        frankl_plus_family(7, 5, 2, {1, 2, 3})
    with pytest.raises(ValueError):
        frankl_plus_family(7, 5, 2, {1, 2, 3, 9})


def test_common_elements():
    assert common_elements(star_family(4, 3, 2)) == {2}
    assert common_elements(above_half_family(3, 3)) == frozenset()


# bounds


@pytest.mark.parametrize("m,k,expected", [(4, 3, 10), (3, 2, 3), (6, 1, 1)])
def test_theorem1_bound(m, k, expected):
    r = theorem1_bound(m, k)
    assert r.formula_value == expected and r.in_regime


def test_theorem1_out_of_regime_is_reported():
    r = theorem1_bound(3, 3)
    assert not r.in_regime and r.formula_value == binomial(4, 2)


@pytest.mark.parametrize("m,k,expected", [(3, 3, 7), (4, 4, 22), (2, 3, 3), (2, 2, 2), (3, 4, 12)])
def test_theorem2_bound(m, k, expected):
    r = theorem2_bound(m, k)
    assert r.formula_value == expected and r.in_regime


def test_theorem2_out_of_regime_flag():
    assert not theorem2_bound(5, 3).in_regime


@pytest.mark.parametrize("m,k,t,value,regime", [(7, 5, 2, 84, False), (8, 5, 2, 120, True), (6, 4, 4, 1, True)])
def test_conjecture_bound(m, k, t, value, regime):
    r = conjecture_bound(m, k, t)
    assert (r.formula_value, r.in_regime) == (value, regime)


def test_conjecture_bound_rejects_t():
    for t in (0, 5):
        with pytest.raises(ValueError):
            conjecture_bound(7, 4, t)


def test_bound_reproducible_from_parameters():
    r = conjecture_bound(9, 5, 2)
    assert r == conjecture_bound(*r.parameters)
    assert r.to_json()["value"] == 165


def test_all_multisets_rank_order():
    assert [a.rank for a in all_multisets(4, 3)] == list(range(20))
