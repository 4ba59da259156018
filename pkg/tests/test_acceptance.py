"""One test per acceptance criterion, each timed against its limit.

Every test appends a ``[PASS]``/``[FAIL]`` line that the terminal summary prints.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import conftest
from fortlib.constructions import (
    bipartite_parity_fort,
    hypercube_construction_sweep,
    lift_zfs,
    product_fort,
)
from fortlib.forcing import closure, is_stalled, is_zero_forcing_set, propagation_time
from fortlib.forts import (
    confirm_failed_zf_number,
    direct_failed_zf_number,
    enumerate_forts_of_size,
    enumerate_minimal_forts,
    failed_zf_number,
    is_fort,
    is_minimal_fort,
    is_minimal_fort_bruteforce,
)
from fortlib.graph import build_hypercube
from fortlib.lp import CoveringLp, check_certificate, fractional_zf_solution
from fortlib.search import (
    domination_number,
    enumerate_minimum_zfs,
    fort_number,
    min_zero_forcing_number,
    no_zfs_of_size,
    open_packing_number,
    pt_spectrum,
    total_domination_number,
)
from fortlib.symmetry import canonical_form, classify_orbits, random_element
from oracles import vset

FIG3 = vset("0000", "1111", "0110", "1001")
FIG6 = vset("0000", "0001", "0110", "0111", "1110", "1111", "1000", "1001")
SIZE6 = vset("0100", "1000", "0010", "0101", "1001", "0011")


@contextmanager
def criterion(number, text, limit):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        elapsed = time.perf_counter() - start
        conftest.ACCEPTANCE_LINES.append(f"[FAIL] criterion {number:2d}: {text} ({elapsed:.1f}s)")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    tag = "PASS" if ok else "FAIL"
    conftest.ACCEPTANCE_LINES.append(f"[{tag}] criterion {number:2d}: {text} ({elapsed:.1f}s < {limit}s)")
    assert ok, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def test_criterion_01_minimal_fort_census():
    with criterion(1, "minimal fort counts 2, 14, 348 on Q2, Q3, Q4", 10):
        counts = [enumerate_minimal_forts(build_hypercube(d)).count for d in (2, 3, 4)]
        assert counts == [2, 14, 348]


def test_criterion_02_minimum_fort_size():
    with criterion(2, "minimum fort size is d for d = 2..6", 300):
        for d in (2, 3, 4):
            g = build_hypercube(d)
            sizes = [f for f in range(1, 1 << g.n) if is_fort(g, f)]
            assert min(f.bit_count() for f in sizes) == d
        for d in (5, 6):
            g = build_hypercube(d)
            for k in range(1, d):
                assert enumerate_forts_of_size(g, k) == []
            assert is_fort(g, g.adjacency[0]) and g.adjacency[0].bit_count() == d


def test_criterion_03_minimum_fort_classes():
    with criterion(3, "minimum forts are neighborhoods for d in {2,3,5}; two classes on Q4", 120):
        for d in (2, 3, 5):
            g = build_hypercube(d)
            found = enumerate_forts_of_size(g, d)
            assert sorted(found) == sorted({g.adjacency[v] for v in range(g.n)})
        q4 = build_hypercube(4)
        classes = classify_orbits(4, enumerate_forts_of_size(q4, 4))
        assert len(classes) == 2
        by_size = {c.orbit_size: set(c.members) for c in classes}
        assert by_size[16] == {q4.adjacency[v] for v in range(16)}
        assert FIG3 in by_size[12]


def test_criterion_04_fractional_zero_forcing():
    with criterion(4, "fractional zero forcing 2, 8/3, 4 with dual certificate", 5):
        expected = {2: Fraction(2), 3: Fraction(8, 3), 4: Fraction(4)}
        for d, value in expected.items():
            g = build_hypercube(d)
            census = enumerate_minimal_forts(g)
            sol = fractional_zf_solution(g, census)
            assert sol.value == value and isinstance(sol.value, Fraction)
            check_certificate(CoveringLp(g.n, tuple(census.minimal_forts)), sol.weights, sol.dual)
            assert sum(sol.dual) == value


def test_criterion_05_fort_number():
    with criterion(5, "fort number 2, 2, 4 on Q2, Q3, Q4", 30):
        for d, ft in ((2, 2), (3, 2), (4, 4)):
            g = build_hypercube(d)
            value, family = fort_number(g, enumerate_minimal_forts(g))
            assert value == ft
            assert all(is_fort(g, f) for f in family)
            assert all(not a & b for a, b in itertools.combinations(family, 2))


def test_criterion_06_zero_forcing_number():
    with criterion(6, "Z(Qd) = 2^(d-1) for d = 1..4, no smaller set forces", 120):
        for d in (1, 2, 3, 4):
            g = build_hypercube(d)
            z, witness = min_zero_forcing_number(g, enumerate_minimal_forts(g))
            assert z == 2 ** (d - 1) and is_zero_forcing_set(g, witness)
            assert no_zfs_of_size(g, z - 1)


def test_criterion_07_propagation_spectrum():
    with criterion(7, "pt spectrum {1}, {1,2}, {1,2,3,4} over all minimum ZFS", 180):
        for d, spectrum in ((2, (1,)), (3, (1, 2)), (4, (1, 2, 3, 4))):
            g = build_hypercube(d)
            result = pt_spectrum(g, z=2 ** (d - 1))
            assert result.spectrum == spectrum
            assert result.pt_max == 2 ** (d - 2)
            assert result.sets_examined == len(enumerate_minimum_zfs(g, 2 ** (d - 1)))


def test_criterion_08_five_parameter_equality():
    with criterion(8, "ft = Z* = rho = gamma = gamma_t on Q2 (2) and Q4 (4)", 60):
        for d, value in ((2, 2), (4, 4)):
            g = build_hypercube(d)
            census = enumerate_minimal_forts(g)
            got = [
                fort_number(g, census)[0],
                fractional_zf_solution(g, census).value,
                open_packing_number(g)[0],
                domination_number(g)[0],
                total_domination_number(g)[0],
            ]
            assert got == [value] * 5


def test_criterion_09_failed_zero_forcing():
    with criterion(9, "failed zero forcing number 2^d - d for d = 2, 3, 4", 60):
        for d in (2, 3):
            g = build_hypercube(d)
            assert direct_failed_zf_number(g) == 2 ** d - d == failed_zf_number(g)
        g = build_hypercube(4)
        value = failed_zf_number(g)
        assert value == 12
        witness = g.vertices & ~g.adjacency[0]
        assert is_stalled(g, witness)
        assert confirm_failed_zf_number(g, value, witness)
        rng = random.Random(0)
        for _ in range(2000):
            k = rng.randint(value + 1, g.n)
            assert is_zero_forcing_set(g, sum(1 << v for v in rng.sample(range(g.n), k)))


def test_criterion_10_constructions():
    with criterion(10, "worked constructions, sweep of 60 below 348, orbits 6/32/12", 60):
        q1, q2, q3, q4 = (build_hypercube(d) for d in (1, 2, 3, 4))
        r1 = product_fort(q3, vset("001", "010", "100"), q1, 0b11)
        assert r1.result == SIZE6 and r1.minimal
        r2 = bipartite_parity_fort(q3, vset("000", "100", "111", "011"), q1, 0b11)
        assert r2.result == FIG3
        r3 = product_fort(q3, vset("000", "011", "111", "100"), q1, 0b11)
        assert r3.result == FIG6 and r3.guarantee == "fort" and not is_minimal_fort(q4, FIG6)
        r4 = product_fort(q2, vset("01", "10"), q1, 0b11)
        assert r4.result == vset("010", "100", "011", "101")
        sweep = hypercube_construction_sweep(4)
        assert 60 <= len(sweep.closed) < 348
        assert canonical_form(3, vset("010", "100", "011", "101")).orbit_size == 6
        assert canonical_form(4, SIZE6).orbit_size == 32
        assert canonical_form(4, FIG3).orbit_size == 12


def test_criterion_11_lifting():
    with criterion(11, "lifting every minimum ZFS of Q2, Q3 keeps pt", 60):
        for d in (2, 3):
            g, big = build_hypercube(d), build_hypercube(d + 1)
            for s in enumerate_minimum_zfs(g, 2 ** (d - 1)):
                lifted = lift_zfs(s, d)
                assert lifted.bit_count() == 2 ** d
                assert propagation_time(big, lifted) == propagation_time(g, s)


def test_criterion_12_property_suites():
    with criterion(12, "closure, duality, fort cover, minimality and canonical form properties", 120):
        rng = random.Random(12)
        for d in (2, 3, 4, 5):
            g = build_hypercube(d)
            for _ in range(100):
                s = rng.getrandbits(g.n)
                t = s | rng.getrandbits(g.n)
                fs = closure(g, s).final
                assert fs & ~closure(g, t).final == 0
                assert closure(g, fs).steps == ()
        for d in (2, 3):
            g = build_hypercube(d)
            minimal = enumerate_minimal_forts(g).minimal_forts
            for s in range(1 << g.n):
                if s:
                    assert is_fort(g, s) == is_stalled(g, g.vertices & ~s)
                assert is_zero_forcing_set(g, s) == all(s & f for f in minimal)
            for f in range(1, 1 << g.n):
                if is_fort(g, f):
                    assert is_minimal_fort(g, f) == is_minimal_fort_bruteforce(g, f)
        for d, s in ((3, vset("000", "011", "111", "100")), (4, FIG3), (4, SIZE6), (5, 0b1011_0110)):
            cf = canonical_form(d, s)
            assert (1 << d) * math.factorial(d) % cf.orbit_size == 0
            for _ in range(100):
                assert canonical_form(d, random_element(d, rng).apply_set(s)) == cf
