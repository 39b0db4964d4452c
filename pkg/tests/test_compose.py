import pytest

from fairsplit.compose import (SplitterSpec, compose, floor_identity_check,
                               power_of_two_splitting, solver_base_splitter)
from fairsplit.errors import ContractError, InputError
from fairsplit.graphs import VertexPartition, consecutive_partition, power_path
from fairsplit.splitting import Splitting, SplittingSpec, check_splitting


def test_floor_identity_exhaustive():
    for a in range(0, 501):
        for b in range(1, 11):
            for c in range(1, 11):
                assert floor_identity_check(a, b, c)
    with pytest.raises(InputError):
        floor_identity_check(-1, 2, 2)
    with pytest.raises(InputError):
        floor_identity_check(5, 0, 2)


def test_base_splitter_contract():
    base = solver_base_splitter(2, 2)
    part = consecutive_partition([4, 5])
    splitting = base.run(9, part)
    spec = base.claimed_spec()
    assert spec.q == 2 and spec.stability == 2
    assert check_splitting(power_path(9, 1), part, splitting, spec).ok


def test_base_splitter_failure_is_contract_error():
    # distance-3 sets of size 8 need a span of 22 > 17 labels
    base = solver_base_splitter(2, 3)
    with pytest.raises(ContractError):
        base.run(17, consecutive_partition([17]))


def test_compose_two_by_two():
    part = consecutive_partition([7, 8])
    base = solver_base_splitter(2, 2)
    splitting, stability = compose(15, part, base, base)
    assert stability == 4
    spec = SplittingSpec(q=4, flavor="almost_fair", stability=4)
    cert = check_splitting(power_path(15, 3), part, splitting, spec)
    assert cert.ok
    assert len(splitting.sets) == 4


def test_compose_identity_inner():
    part = consecutive_partition([5, 6])
    base = solver_base_splitter(2, 2)
    ident = SplitterSpec(q=1, stability=1,
                         run=lambda n, p: Splitting([tuple(range(1, n + 1))]))
    splitting, stability = compose(11, part, base, ident)
    assert stability == 2
    got = base.run(11, part)
    assert splitting.sets == got.sets


def test_compose_weak_outer_stability_formula():
    # outer guarantees only weak 3-stability: composed stability is
    # (s2 - 1)(w - 1) + 1, not s2 * s1
    windows = Splitting([(1, 4, 7), (2, 5), (3, 6)])
    weak_outer = SplitterSpec(q=3, stability=3, run=lambda n, p: windows,
                              weak_stability=3)
    base = solver_base_splitter(2, 2)
    part = consecutive_partition([7])
    splitting, stability = compose(7, part, weak_outer, base)
    assert stability == (2 - 1) * (3 - 1) + 1 == 3
    spec = SplittingSpec(q=6, flavor="almost_fair", stability=3)
    assert check_splitting(power_path(7, 2), part, splitting, spec).ok


def test_compose_block_size_validation():
    base = solver_base_splitter(2, 2)
    with pytest.raises(InputError):
        compose(5, consecutive_partition([2, 3]), base, base)


def test_compose_rejects_lying_outer():
    # an "outer splitter" that returns adjacent vertices in one set
    liar = SplitterSpec(q=2, stability=2,
                        run=lambda n, p: Splitting([(1, 2), (4, 6)]))
    base = solver_base_splitter(2, 2)
    with pytest.raises(ContractError) as err:
        compose(7, consecutive_partition([7]), liar, base)
    assert "outer splitter" in str(err.value)


def test_compose_rejects_outer_missing_a_block():
    # stable and disjoint, but one set never touches the second block
    def run(n, p):
        return Splitting([(1, 3, 5, 7), (2, 4, 6, 9)])

    sneaky = SplitterSpec(q=2, stability=2, run=run)
    base = solver_base_splitter(2, 2)
    part = consecutive_partition([7, 3])
    with pytest.raises(ContractError) as err:
        compose(10, part, sneaky, base)
    assert "outer splitter" in str(err.value)


def test_power_of_two_t1_matches_base():
    part = consecutive_partition([4, 5])
    got = power_of_two_splitting(9, part, 1)
    want = solver_base_splitter(2, 2).run(9, part)
    assert got.sets == want.sets


def test_power_of_two_t2():
    part = consecutive_partition([7, 8])
    splitting = power_of_two_splitting(15, part, 2)
    spec = SplittingSpec(q=4, flavor="almost_fair", stability=4)
    assert check_splitting(power_path(15, 3), part, splitting, spec).ok
    quotas = [(len(b) + 1) // 4 - 1 for b in part.blocks]
    for s in splitting.sets:
        for j, b in enumerate(part.blocks):
            assert len(set(s) & set(b)) >= quotas[j]


def test_power_of_two_validation():
    with pytest.raises(InputError):
        power_of_two_splitting(9, consecutive_partition([4, 5]), 0)
    with pytest.raises(InputError):
        # block of size 2 < 2^2 - 1
        power_of_two_splitting(6, consecutive_partition([2, 4]), 2)


def test_power_of_two_single_block():
    part = VertexPartition([tuple(range(1, 16))], 15)
    splitting = power_of_two_splitting(15, part, 2)
    spec = SplittingSpec(q=4, flavor="almost_fair", stability=4)
    assert check_splitting(power_path(15, 3), part, splitting, spec).ok
