import itertools
import random

import pytest

from turan34.triplesystem import TripleSystem
from turan34.construction import (
    Layout,
    RED,
    complex_from_layout,
    enumerate_construction4,
    exceptional_complex7,
    is_exceptional_construction,
    turan_original,
)
from turan34.invariants import (
    column_feet,
    column_legs,
    empty_clusters,
    empty_cores,
    empty_unions,
    fingerprint,
    indistinguishable,
    predict_column_feet,
    predict_column_legs,
    predict_empty_clusters,
    predict_empty_cores,
    predict_empty_unions,
)


def brute_clusters(ts):
    """Oracle: direct scan of all vertex subsets larger than n/3."""
    out = []
    for size in range(ts.n // 3 + 1, ts.n + 1):
        for cand in itertools.combinations(range(ts.n), size):
            sset = set(cand)
            if any(ts.has(*t) for t in itertools.combinations(cand, 3)):
                continue
            maximal = True
            for v in range(ts.n):
                if v in sset:
                    continue
                if not any(
                    ts.has(*sorted((a, b, v)))
                    for a, b in itertools.combinations(cand, 2)
                ):
                    maximal = False
                    break
            if maximal:
                out.append(frozenset(cand))
    return sorted(out, key=sorted)


def test_empty_clusters_against_subset_oracle(families):
    rng = random.Random(5)
    targets = [ts for n in (6, 7, 8, 9) for _, ts in families[n]]
    targets.append(exceptional_complex7())
    for _ in range(10):
        n = rng.randint(4, 7)
        all_t = list(itertools.combinations(range(n), 3))
        targets.append(TripleSystem(n, rng.sample(all_t, rng.randint(0, len(all_t)))))
    for ts in targets:
        assert empty_clusters(ts) == brute_clusters(ts)


def test_cluster_defining_properties(families):
    for n in (7, 8, 10):
        for _, ts in families[n]:
            for c in empty_clusters(ts):
                assert 3 * len(c) > n
                assert not any(ts.has(*t) for t in itertools.combinations(sorted(c), 3))
                for v in set(range(n)) - c:
                    assert any(
                        ts.has(*sorted((a, b, v)))
                        for a, b in itertools.combinations(c, 2)
                    )


def test_lemma5_cluster_census(families):
    counts = sorted(
        (
            sum(1 for c in empty_clusters(ts) if len(c) == 4)
            for _, ts in families[8]
        ),
        reverse=True,
    )
    assert counts == [5, 4, 3, 3, 3, 3]


def test_no_size4_cluster_in_exceptional7():
    assert all(len(c) < 4 for c in empty_clusters(exceptional_complex7()))


def test_no_oversized_clusters(families):
    for n in range(6, 15):
        k = n // 3
        for _, ts in families[n]:
            assert all(len(c) <= k + 2 for c in empty_clusters(ts))


def test_cluster_predictions_match(families):
    for n in range(6, 12):
        for lay, ts in families[n]:
            assert set(predict_empty_clusters(lay)) == set(empty_clusters(ts))


def test_core_union_leg_foot_predictions_match(families):
    # the structural characterizations hold for k >= 3 away from the two
    # exceptional colorings
    for n in (9, 10, 11):
        for lay, ts in families[n]:
            if is_exceptional_construction(lay):
                continue
            clusters = empty_clusters(ts)
            cores = empty_cores(ts, clusters)
            assert {(c.members, c.defining_size) for c in cores} == {
                (c.members, c.defining_size) for c in predict_empty_cores(lay)
            }
            unions = empty_unions(ts, clusters)
            assert {u.members for u in unions} == set(predict_empty_unions(lay))
            assert len(unions) == 3
            legs = column_legs(ts, unions)
            assert {l.members for l in legs} == set(predict_column_legs(lay))
            assert all(l.proper for l in legs)
            feet = column_feet(ts, legs)
            assert {f.members for f in feet} == set(predict_column_feet(lay))


def test_exceptional_leg_sizes(families):
    for n, want in ((10, [4, 3, 2]), (11, [4, 3, 3])):
        lay, ts = next(
            (lay, ts)
            for lay, ts in families[n]
            if is_exceptional_construction(lay)
        )
        legs = column_legs(ts)
        assert sorted((len(l.members) for l in legs), reverse=True) == want


def test_exceptional_union_census_differs(families):
    lay, ts = next(
        (lay, ts) for lay, ts in families[11] if is_exceptional_construction(lay)
    )
    assert {u.members for u in empty_unions(ts)} != set(predict_empty_unions(lay))


def test_size_k_plus_2_core_iff_mixed_second_row(families):
    for n in range(6, 12):
        k = n // 3
        for lay, ts in families[n]:
            mixed = len({lay.colors[v] for v in lay.row_vertices(2)}) > 1
            big = [c for c in empty_cores(ts) if len(c.members) == k + 2]
            assert len(big) <= 1
            assert bool(big) == mixed


def test_cores_n6_contain_their_color_set(families):
    from turan34.construction import color_sets

    lay, ts = families[6][0]
    sets = {cs.members for cs in color_sets(lay)}
    for core in empty_cores(ts):
        assert any(cs <= core.members for cs in sets)


def test_feet_match_indistinguishability(families):
    for n in (9, 10, 11):
        for lay, ts in families[n]:
            if is_exceptional_construction(lay):
                continue
            for foot in column_feet(ts):
                bottom = min(foot.leg)  # lowest ids sit in the bottom row
                expect = frozenset(
                    v
                    for v in foot.leg
                    if v == bottom or indistinguishable(ts, v, bottom)
                )
                assert foot.members == expect


def test_foot_is_whole_leg_on_ties():
    for foot in column_feet(turan_original(6)):
        if len(foot.leg) == 2:
            u, v = sorted(foot.leg)
            if indistinguishable(turan_original(6), u, v):
                assert foot.members == foot.leg


def test_indistinguishable_basics():
    t6 = turan_original(6)
    # two vertices of one column: swapping them fixes the triangle set
    assert indistinguishable(t6, 0, 3)
    ts = TripleSystem(4, [(0, 1, 2)])
    assert not indistinguishable(ts, 0, 3)
    with pytest.raises(ValueError):
        indistinguishable(ts, 1, 1)
    with pytest.raises(ValueError):
        indistinguishable(ts, 0, 9)


def test_indistinguishable_matches_transposition(families):
    for lay, ts in families[7]:
        for u, v in itertools.combinations(range(7), 2):
            perm = list(range(7))
            perm[u], perm[v] = v, u
            assert indistinguishable(ts, u, v) == (ts.relabel(perm) == ts)


def test_indistinguishable_requires_equal_degree(families):
    for _, ts in families[8]:
        for u, v in itertools.combinations(range(8), 2):
            if ts.vertex_triangle_count(u) != ts.vertex_triangle_count(v):
                assert not indistinguishable(ts, u, v)


def test_fingerprints_distinct_within_families(families):
    for n in (7, 8, 9, 10):
        records = [fingerprint(ts) for _, ts in families[n]]
        assert len({r.to_json() for r in records}) == len(records)


def test_fingerprint_lemma5_degree_stat(families):
    counts = sorted(
        sum(1 for d in fingerprint(ts).degree_sequence if d == 11)
        for _, ts in families[7]
    )
    assert counts == [0, 1, 2]


def test_fingerprint_distinguished_vertex_pairs(families):
    pairs = []
    for _, ts in families[8]:
        rec = fingerprint(ts)
        if dict(rec.cluster_size_census).get(4) == 3:
            marked = [
                deg
                for deg, memberships in rec.vertex_profile
                if dict(memberships).get(4) == 1
            ]
            assert len(marked) == 2
            pairs.append(tuple(sorted(marked, reverse=True)))
    assert sorted(pairs, reverse=True) == [(15, 14), (14, 14), (14, 13), (13, 13)]


def test_fingerprint_relabel_invariance(families):
    rng = random.Random(99)
    targets = [families[7][0][1], families[8][3][1], exceptional_complex7()]
    for ts in targets:
        base = fingerprint(ts).to_json()
        for _ in range(50):
            perm = list(range(ts.n))
            rng.shuffle(perm)
            assert fingerprint(ts.relabel(perm)).to_json() == base


def test_invariant_families_permute_under_relabeling(families):
    rng = random.Random(123)
    for lay, ts in (families[9][0], families[10][2]):
        clusters = empty_clusters(ts)
        unions = empty_unions(ts)
        for _ in range(10):
            perm = list(range(ts.n))
            rng.shuffle(perm)
            other = ts.relabel(perm)
            mapped = {frozenset(perm[v] for v in c) for c in clusters}
            assert mapped == set(empty_clusters(other))
            mapped_u = {frozenset(perm[v] for v in u.members) for u in unions}
            assert mapped_u == {u.members for u in empty_unions(other)}
