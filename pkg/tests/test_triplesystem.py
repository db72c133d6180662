import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turan34.triplesystem import TripleSystem, triple_rank, triples_by_rank
from turan34.construction import (
    conjectured_max,
    enumerate_construction4,
    complex_from_layout,
    exceptional_complex7,
    turan_original,
)


@st.composite
def triple_systems(draw, max_n=9):
    n = draw(st.integers(min_value=3, max_value=max_n))
    all_triples = list(itertools.combinations(range(n), 3))
    chosen = draw(st.sets(st.sampled_from(all_triples)))
    return TripleSystem(n, chosen)


def test_rank_is_a_bijection():
    for n in (5, 8, 12):
        ranks = [triple_rank(*t) for t in itertools.combinations(range(n), 3)]
        assert sorted(ranks) == list(range(comb(n, 3)))
        table = triples_by_rank(n)
        for t in itertools.combinations(range(n), 3):
            assert table[triple_rank(*t)] == t


def test_triangle_count_examples():
    assert TripleSystem(5).triangle_count() == 0
    assert TripleSystem(3, [(0, 1, 2)]).triangle_count() == 1
    # 7-vertex all-red construction: the bound value 5/2*8 + 4 - 1 at k=2
    assert turan_original(7).triangle_count() == 23


def test_construction_validation():
    with pytest.raises(ValueError):
        TripleSystem(3, [(0, 2, 1)])
    with pytest.raises(ValueError):
        TripleSystem(3, [(0, 1, 3)])
    with pytest.raises(ValueError):
        TripleSystem(4, [(0, 1, 2), (0, 1, 2)])


def test_find_k4():
    full = TripleSystem(4, list(itertools.combinations(range(4), 3)))
    assert full.find_k4() == frozenset({0, 1, 2, 3})
    assert TripleSystem(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)]).find_k4() is None


def test_find_k4_on_enumerated_family(families):
    for n in range(3, 15):
        for _, ts in families[n]:
            assert ts.find_k4() is None


def test_maximality():
    three = TripleSystem(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
    assert three.is_maximal_k4_free()
    assert not TripleSystem(5).is_maximal_k4_free()
    full = TripleSystem(4, list(itertools.combinations(range(4), 3)))
    with pytest.raises(ValueError):
        full.is_maximal_k4_free()


def test_missing_triples():
    assert len(turan_original(7).missing_triples()) == 12  # C(7,3)=35 minus 23
    assert TripleSystem(3, [(0, 1, 2)]).missing_triples() == frozenset()
    assert len(turan_original(6).missing_triples()) == 6  # 20 - 14


def test_vertex_triangle_count():
    ts = TripleSystem(3, [(0, 1, 2)])
    assert ts.vertex_triangle_count(0) == 1
    with pytest.raises(ValueError):
        ts.vertex_triangle_count(3)
    t6 = turan_original(6)
    # 14 triangles x 3 incidences / 6 vertices, uniform by symmetry
    assert [t6.vertex_triangle_count(v) for v in range(6)] == [7] * 6


def test_degree_sum_identity(families):
    for n in (6, 7, 8, 10):
        for _, ts in families[n]:
            total = sum(ts.vertex_triangle_count(v) for v in range(n))
            assert total == 3 * ts.triangle_count()


def test_count_plus_missing_identity(families):
    for n in (6, 7, 9, 11):
        for _, ts in families[n]:
            assert ts.triangle_count() + len(ts.missing_triples()) == comb(n, 3)


def test_delete_vertex():
    full = TripleSystem(4, list(itertools.combinations(range(4), 3)))
    assert full.delete_vertex(3) == TripleSystem(3, [(0, 1, 2)])
    e7 = exceptional_complex7()
    assert e7.delete_vertex(6) == turan_original(6)


def test_delete_vertex_respects_averaging_bound(families):
    # removing any vertex from a bound-attaining complex stays at or below
    # the bound for n-1 vertices
    for n in range(4, 15):
        for _, ts in families[n]:
            for v in range(n):
                assert ts.delete_vertex(v).triangle_count() <= conjectured_max(n - 1)


def test_render_format():
    assert TripleSystem(3, [(0, 1, 2)]).render() == "n=3\n0 1 2\n"


def test_parse_rejects_bad_input():
    for text in (
        "n=3\n2 1 0\n",
        "n=3\n0 1\n",
        "n=3\n0 1 5\n",
        "n=3\n0 1 2\n0 1 2\n",
        "0 1 2\n",
        "n=x\n",
    ):
        with pytest.raises(ValueError):
            TripleSystem.parse(text)


def test_parse_ignores_comments_and_blanks():
    ts = TripleSystem.parse("# header\nn=4\n\n0 1 2\n# done\n")
    assert ts == TripleSystem(4, [(0, 1, 2)])


@settings(max_examples=100, deadline=None)
@given(triple_systems())
def test_parse_render_round_trip(ts):
    assert TripleSystem.parse(ts.render()) == ts


@settings(max_examples=50, deadline=None)
@given(triple_systems(max_n=8), st.randoms(use_true_random=False))
def test_relabel_preserves_counts(ts, rng):
    perm = list(range(ts.n))
    rng.shuffle(perm)
    other = ts.relabel(perm)
    assert other.triangle_count() == ts.triangle_count()
    assert sorted(other.vertex_triangle_count(v) for v in range(ts.n)) == sorted(
        ts.vertex_triangle_count(v) for v in range(ts.n)
    )


def test_relabel_rejects_non_bijection():
    with pytest.raises(ValueError):
        TripleSystem(4, [(0, 1, 2)]).relabel([0, 0, 1, 2])
