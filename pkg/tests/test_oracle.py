from ggf.core import normalize
from ggf.families import FamilySpec, family_system, lhp_closed
from ggf.oracle import (
    count_series,
    enumerate_points,
    format_dump,
    minc_compositions,
    parse_dump,
    slice_polynomial,
)


def test_basics_only_two_vars():
    S = normalize([], ["a", "b"])
    pts = list(enumerate_points(S, 2).points())
    assert sorted(pts) == sorted([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])


def test_alhc2_weight3_slice():
    S = family_system(FamilySpec("alhc", 2))
    assert slice_polynomial(S, 3) == [(1, 2), (2, 1), (3, 0)]


def test_lhp2_weight3():
    S = family_system(FamilySpec("lhp", 2))
    assert slice_polynomial(S, 3) == [(2, 1), (3, 0)]
    assert count_series(S, 3).coeffs()[3] == lhp_closed(2, 3).coeffs()[3] == 2


def test_counts_small_families():
    assert count_series(family_system(FamilySpec("alhc", 3)), 2).coeffs() == [1, 1, 2]
    assert count_series(family_system(FamilySpec("tworow", 2)), 2).coeffs()[2] == 3
    assert count_series(normalize([], ["x"]), 5).coeffs() == [1] * 6


def test_tworow2_weight2_points():
    S = family_system(FamilySpec("tworow", 2))
    # variables a1 b1 a2 b2
    assert slice_polynomial(S, 2) == [(1, 0, 1, 0), (1, 1, 0, 0), (2, 0, 0, 0)]


def test_infeasible_gives_nothing():
    S = normalize([({"a": 1}, 0, "<")], ["a"])
    assert len(enumerate_points(S, 6)) == 0


def test_equalities_both_directions():
    S = normalize([({"a": 1, "b": -2}, 0, "=")], ["a", "b"])
    pts = sorted(enumerate_points(S, 6).points())
    assert pts == [(0, 0), (2, 1), (4, 2)]


def test_points_satisfy_constraints_and_are_complete():
    S = normalize([({"a": 3, "b": -2, "c": 1}, -1, ">="), ({"b": 1, "c": -1}, 0, ">=")], ["a", "b", "c"])
    N = 7
    pts = set(enumerate_points(S, N).points())
    brute = {
        (a, b, c)
        for a in range(N + 1)
        for b in range(N + 1)
        for c in range(N + 1)
        if a + b + c <= N and S.holds((a, b, c))
    }
    assert pts == brute


def test_dump_round_trip():
    sols = enumerate_points(family_system(FamilySpec("alhc", 2)), 4)
    text = format_dump(sols, 4)
    assert text.startswith("# weight 0\n0 0\n# weight 1\n1 0\n")
    back = parse_dump(text)
    assert back.by_weight == sols.by_weight


def test_minc_direct_matches_fixed_length_systems():
    N = 10
    total = [1] + [0] * N
    for n in range(1, N + 1):
        for w, c in enumerate(count_series(family_system(FamilySpec("minc", n)), N).coeffs()):
            total[w] += c
    assert minc_compositions(N) == total


def test_minc_weight5_by_hand():
    # 3 parts summing to 5: 311, 122, 212, 221 (113 and 131 more than double)
    assert minc_compositions(5)[5] == 13
    assert count_series(family_system(FamilySpec("minc", 3)), 5).coeffs()[5] == 4
