from fractions import Fraction
from itertools import combinations

import pytest

from fairsplit.errors import InputError, ResourceBudget
from fairsplit.geometry import (PointConfiguration, gale_alternating,
                                hulls_intersect, moment_points,
                                stretched_moment_points,
                                strong_general_position_check, tverberg_search)


def test_moment_points_doubling():
    cfg = moment_points([1, 2, 3], d=1)
    assert cfg.dim == 2
    assert cfg.points == [(1, 1), (2, 4), (3, 9)]


def test_moment_points_explicit_dim():
    cfg = moment_points([2, 5], dim=3)
    assert cfg.points == [(2, 4, 8), (5, 25, 125)]


def test_moment_points_argument_errors():
    with pytest.raises(InputError):
        moment_points([1, 2], d=1, dim=2)
    with pytest.raises(InputError):
        moment_points([1, 2])
    with pytest.raises(InputError):
        moment_points([1, 2], dim=0)
    with pytest.raises(InputError):
        moment_points([2, 1], d=1)  # not increasing


def test_moment_points_rational_params():
    cfg = moment_points([Fraction(1, 2), 1], dim=2)
    assert cfg.points[0] == (Fraction(1, 2), Fraction(1, 4))


def test_stretched_parameters():
    cfg = stretched_moment_points(4, d=1)
    assert cfg.params == [4, 16, 256, 65536]
    assert cfg.base == 2
    assert cfg.points[2] == (256, 65536)


def test_stretched_base_validation():
    with pytest.raises(InputError):
        stretched_moment_points(3, d=1, base=1)
    with pytest.raises(InputError):
        stretched_moment_points(0, d=1)


def test_configuration_validation():
    with pytest.raises(InputError):
        PointConfiguration([(1, 2), (3,)])
    cfg = PointConfiguration([(1, 2), (3, 4)])
    assert cfg.subset([2]) == [(3, 4)]
    assert len(cfg) == 2


def test_gale_alternation_basic():
    assert gale_alternating((1, 3), (2, 4))
    assert not gale_alternating((1, 2), (3, 4))
    assert gale_alternating((2, 4, 6), (1, 3, 5))
    with pytest.raises(InputError):
        gale_alternating((1, 2), (2, 3))
    with pytest.raises(InputError):
        gale_alternating((1,), (2, 3))


def test_gale_matches_hull_crossings_d1():
    # on the moment curve in the plane, segments cross iff labels alternate
    cfg = moment_points(list(range(1, 7)), d=1)
    labels = range(1, 7)
    for s1 in combinations(labels, 2):
        rest = [x for x in labels if x not in s1]
        for s2 in combinations(rest, 2):
            want = gale_alternating(s1, s2)
            got = hulls_intersect([cfg.subset(s1), cfg.subset(s2)])
            assert want == got, (s1, s2)


def test_gale_matches_hull_crossings_d2():
    cfg = stretched_moment_points(7, d=2)
    labels = range(1, 8)
    checked = 0
    for s1 in combinations(labels, 3):
        rest = [x for x in labels if x not in s1]
        for s2 in combinations(rest, 3):
            if s1[0] > s2[0]:
                continue  # unordered pair, count once
            want = gale_alternating(s1, s2)
            got = hulls_intersect([cfg.subset(s1), cfg.subset(s2)])
            assert want == got, (s1, s2)
            checked += 1
    assert checked == 70


def test_strong_general_position_line():
    cfg = moment_points([1, 2, 3], dim=1)
    ok, witness = strong_general_position_check(cfg, 2)
    assert ok and witness is None


def test_strong_general_position_violated():
    # three collinear points embedded in the plane: {1,3} hull covers point 2
    cfg = PointConfiguration([(0, 0), (1, 1), (2, 2)])
    ok, witness = strong_general_position_check(cfg, 2)
    assert not ok
    assert witness == [(1, 3), (2,)]
    assert hulls_intersect([cfg.subset(witness[0]), cfg.subset(witness[1])])


def test_strong_general_position_budget():
    cfg = stretched_moment_points(8, d=2)
    with pytest.raises(ResourceBudget):
        strong_general_position_check(cfg, 3, budget=5)


def test_tverberg_radon_on_line():
    cfg = moment_points([1, 2, 3], dim=1)
    got = tverberg_search(cfg, 2)
    assert got is not None
    parts, point = got
    assert sorted(map(sorted, parts)) == [[1, 3], [2]]
    assert point == (2,)


def test_tverberg_too_few_points():
    # (q-1)(d+1) points in strong general position admit no q-fold partition
    cfg = moment_points([1, 2], dim=1)
    assert tverberg_search(cfg, 2) is None
    cfg = moment_points([1, 2, 3, 5], dim=1)
    assert tverberg_search(cfg, 3) is None


def test_tverberg_q3_on_line():
    cfg = moment_points([1, 2, 3, 4, 5], dim=1)
    got = tverberg_search(cfg, 3)
    assert got is not None
    parts, point = got
    assert len(parts) == 3 and all(parts)
    hulls = [cfg.subset(p) for p in parts]
    assert all(min(h)[0] <= point[0] <= max(h)[0] for h in hulls)


def test_tverberg_plane():
    cfg = stretched_moment_points(4, d=1)
    got = tverberg_search(cfg, 2)
    assert got is not None
    parts, point = got
    assert hulls_intersect([cfg.subset(parts[0]), cfg.subset(parts[1])])
    assert sorted(map(sorted, parts)) == [[1, 3], [2, 4]]


def test_tverberg_dim_mismatch_and_budget():
    cfg = moment_points([1, 2, 3], d=1)
    with pytest.raises(InputError):
        tverberg_search(cfg, 2, target_dim=1)
    big = moment_points(list(range(1, 10)), dim=1)
    with pytest.raises(ResourceBudget):
        tverberg_search(big, 4, budget=3)


def test_everything_is_fractions():
    cfg = stretched_moment_points(3, d=1)
    got = tverberg_search(cfg, 2)
    assert got is None  # 3 points in the plane: no Radon partition
    ok, _ = strong_general_position_check(cfg, 2)
    assert ok
    for p in cfg.points:
        assert all(isinstance(c, Fraction) for c in p)
