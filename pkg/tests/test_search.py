import itertools
import random

import pytest

from fortlib.errors import PreconditionError, ResourceLimitError
from fortlib.forcing import closure, is_zero_forcing_set
from fortlib.forts import enumerate_minimal_forts, is_fort
from fortlib.graph import build_from_edge_list, complete_graph, path_graph
from fortlib.lp import fractional_zf
from fortlib.search import (
    compute_parameters,
    domination_number,
    enumerate_minimum_zfs,
    fort_number,
    is_open_packing,
    max_disjoint_rows,
    min_hitting_set,
    min_zero_forcing_number,
    no_zfs_of_size,
    open_packing_number,
    pt_spectrum,
    total_domination_number,
)
from fortlib.symmetry import canonical_set
from oracles import fill_times, max_disjoint_family, smallest_hitting, smallest_zfs_size, vset


def random_graph(rng, n, p):
    return build_from_edge_list(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def sets_of(masks, n):
    return [{v for v in range(n) if m >> v & 1} for m in masks]


def test_hitting_set_engine_random():
    rng = random.Random(1)
    for _ in range(80):
        n = rng.randint(1, 9)
        rows = [sum(1 << v for v in rng.sample(range(n), rng.randint(1, n))) for _ in range(rng.randint(0, 12))]
        k, s = min_hitting_set(n, rows)
        assert all(r & s for r in rows) and s.bit_count() == k
        assert k == smallest_hitting(n, sets_of(rows, n))


def test_packing_engine_random():
    rng = random.Random(2)
    for _ in range(80):
        n = rng.randint(1, 10)
        rows = [sum(1 << v for v in rng.sample(range(n), rng.randint(1, min(n, 4)))) for _ in range(rng.randint(0, 14))]
        picked = max_disjoint_rows(rows, n)
        used = 0
        for i in picked:
            assert not rows[i] & used
            used |= rows[i]
        assert len(picked) == max_disjoint_family(sets_of(rows, n))


@pytest.mark.parametrize("d,z", [(1, 1), (2, 2), (3, 4), (4, 8)])
def test_zero_forcing_number_with_census(q, census, d, z):
    value, witness = min_zero_forcing_number(q(d), census(d))
    assert value == z and witness.bit_count() == z
    assert is_zero_forcing_set(q(d), witness)


@pytest.mark.parametrize("d,z", [(1, 1), (2, 2), (3, 4)])
def test_zero_forcing_number_by_scan(q, d, z):
    assert min_zero_forcing_number(q(d))[0] == z == smallest_zfs_size(q(d))


def test_zero_forcing_random_graphs():
    rng = random.Random(3)
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 8), 0.4)
        expect = smallest_zfs_size(g)
        assert min_zero_forcing_number(g)[0] == expect
        assert min_zero_forcing_number(g, enumerate_minimal_forts(g))[0] == expect


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_no_smaller_zfs(q, d):
    assert no_zfs_of_size(q(d), 2 ** (d - 1) - 1)
    assert not no_zfs_of_size(q(d), 2 ** (d - 1))


def test_minimum_zfs_lists(q):
    assert enumerate_minimum_zfs(q(1), 1) == [0b01, 0b10]
    q2 = enumerate_minimum_zfs(q(2), 2)
    assert sorted(q2) == sorted(vset(a, b) for a, b in [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")])
    q3 = enumerate_minimum_zfs(q(3), 4)
    assert vset("000", "010", "011", "001") in q3 and vset("000", "010", "101", "001") in q3
    assert len(q3) == 30


def test_zfs_budget(q):
    with pytest.raises(ResourceLimitError):
        enumerate_minimum_zfs(q(5), 16)


@pytest.mark.parametrize("d,spectrum", [(2, (1,)), (3, (1, 2)), (4, (1, 2, 3, 4))])
def test_pt_spectrum(q, census, d, spectrum):
    g = q(d)
    result = pt_spectrum(g, census=census(d))
    assert result.spectrum == spectrum
    assert (result.pt_min, result.pt_max) == (spectrum[0], spectrum[-1])
    for t, s in result.witnesses.items():
        assert max(fill_times(g, [v for v in range(g.n) if s >> v & 1]).values()) == t
        assert closure(g, s).propagation_time == t


@pytest.mark.parametrize("d", [3, 4])
def test_pt_witnesses_not_automorphic(q, census, d):
    witnesses = pt_spectrum(q(d), census=census(d)).witnesses
    forms = {canonical_set(d, s) for s in witnesses.values()}
    assert len(forms) == len(witnesses)


@pytest.mark.parametrize("d,ft", [(2, 2), (3, 2), (4, 4)])
def test_fort_number(q, census, d, ft):
    value, family = fort_number(q(d), census(d))
    assert value == ft == len(family)
    assert all(is_fort(q(d), f) for f in family)


def test_fort_number_matches_oracle_on_q3(q, census):
    assert fort_number(q(3), census(3))[0] == max_disjoint_family(sets_of(census(3).minimal_forts, 8))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_sandwich(q, census, d):
    g, c = q(d), census(d)
    assert fort_number(g, c)[0] <= fractional_zf(g, c) <= min_zero_forcing_number(g, c)[0]


@pytest.mark.parametrize("d,value", [(2, 2), (4, 4)])
def test_domination_family(q, d, value):
    g = q(d)
    assert domination_number(g)[0] == value
    assert total_domination_number(g)[0] == value
    assert open_packing_number(g)[0] == value


def test_k2_domination():
    g = complete_graph(2)
    assert domination_number(g)[0] == 1
    assert total_domination_number(g)[0] == 2
    assert open_packing_number(g)[0] == 2


def test_domination_random_graphs():
    rng = random.Random(6)
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 9), 0.35)
        closed = [{v} | {u for u in range(g.n) if g.adjacency[v] >> u & 1} for v in range(g.n)]
        opened = [c - {v} for v, c in enumerate(closed)]
        assert domination_number(g)[0] == smallest_hitting(g.n, closed)
        assert open_packing_number(g)[0] == max_disjoint_family(opened)
        if all(opened):
            assert total_domination_number(g)[0] == smallest_hitting(g.n, opened)
        else:
            with pytest.raises(PreconditionError):
                total_domination_number(g)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_open_packing_gives_fort_packing(q, census, d):
    g = q(d)
    rho, s = open_packing_number(g)
    assert is_open_packing(g, s)
    nbhds = [g.adjacency[v] for v in range(g.n) if s >> v & 1]
    for a, b in itertools.combinations(nbhds, 2):
        assert not a & b
    assert all(is_fort(g, f) for f in nbhds)
    assert rho <= fort_number(g, census(d))[0]


def test_parameter_report(q, census):
    report = compute_parameters(q(4), census=census(4))
    out = report.to_dict()
    assert (out["Z"], out["zstar"], out["ft"], out["gamma"], out["gamma_t"], out["rho_open"]) == (8, "4/1", 4, 4, 4, 4)
    assert out["pt_spectrum"] == [1, 2, 3, 4]
    assert out["failed_zf"] == 12
    assert out["minimum_zfs_count"] == 2360


def test_parameter_report_rejects_unknown(q):
    with pytest.raises(PreconditionError):
        compute_parameters(q(2), ["nope"])


def test_path_parameters():
    g = path_graph(6)
    assert min_zero_forcing_number(g)[0] == 1
    assert domination_number(g)[0] == 2
