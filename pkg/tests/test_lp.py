import itertools
import random
from fractions import Fraction

import pytest

from fortlib.errors import PreconditionError
from fortlib.forts import FortCensus
from fortlib.lp import CoveringLp, fractional_zf, fractional_zf_solution, solve_covering_lp
from oracles import max_disjoint_family, smallest_hitting


def rows_of(*groups):
    return tuple(sum(1 << v for v in g) for g in groups)


def assert_certificate(p, sol):
    # re-derived here rather than trusting the solver's own check
    x, y = sol.weights, sol.dual
    assert all(isinstance(w, Fraction) and w >= 0 for w in x + y)
    for r in p.rows:
        assert sum(x[v] for v in range(p.n_vars) if r >> v & 1) >= 1
    for j in range(p.n_vars):
        assert sum(y[i] for i, r in enumerate(p.rows) if r >> j & 1) <= 1
    assert sum(x) == sum(y) == sol.value


def test_q2_forts_lp():
    p = CoveringLp(4, rows_of({1, 2}, {0, 3}))
    sol = solve_covering_lp(p)
    assert sol.value == 2 and sol.status == "optimal"
    assert_certificate(p, sol)


def test_single_row():
    p = CoveringLp(3, rows_of({0, 1, 2}))
    assert solve_covering_lp(p).value == 1


def test_no_rows():
    sol = solve_covering_lp(CoveringLp(3, ()))
    assert sol.value == 0 and sol.weights == (0, 0, 0)


@pytest.mark.parametrize("rows", [((),), ({5},)])
def test_row_validation(rows):
    with pytest.raises(PreconditionError):
        CoveringLp(3, rows_of(*rows))


@pytest.mark.parametrize("rows,n,value", [
    # triangle edge cover: every vertex 1/2
    (({0, 1}, {1, 2}, {0, 2}), 3, Fraction(3, 2)),
    # five-cycle edges
    (({0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}), 5, Fraction(5, 2)),
    # lines of the Fano plane: 7 lines of size 3, each point on 3 lines
    (({0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}), 7, Fraction(7, 3)),
])
def test_known_fractional_covers(rows, n, value):
    p = CoveringLp(n, rows_of(*rows))
    sol = solve_covering_lp(p)
    assert sol.value == value
    assert_certificate(p, sol)


def test_random_instances_certificate_and_sandwich():
    rng = random.Random(2024)
    for _ in range(60):
        n = rng.randint(2, 8)
        rows = {sum(1 << v for v in rng.sample(range(n), rng.randint(1, n))) for _ in range(rng.randint(1, 10))}
        p = CoveringLp(n, tuple(sorted(rows)))
        sol = solve_covering_lp(p)
        assert_certificate(p, sol)
        sets = [{v for v in range(n) if r >> v & 1} for r in p.rows]
        assert max_disjoint_family(sets) <= sol.value <= smallest_hitting(n, sets)


def test_against_scipy_when_available():
    linprog = pytest.importorskip("scipy.optimize").linprog
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(2, 9)
        rows = [sum(1 << v for v in rng.sample(range(n), rng.randint(1, n))) for _ in range(8)]
        p = CoveringLp(n, tuple(rows))
        a = [[-(r >> j & 1) for j in range(n)] for r in rows]
        ref = linprog([1] * n, A_ub=a, b_ub=[-1] * len(rows), bounds=(0, None))
        assert abs(float(solve_covering_lp(p).value) - ref.fun) < 1e-7


@pytest.mark.parametrize("d,value", [(2, Fraction(2)), (3, Fraction(8, 3)), (4, Fraction(4))])
def test_fractional_zf_hypercubes(q, census, d, value):
    sol = fractional_zf_solution(q(d), census(d))
    assert sol.value == value
    assert_certificate(CoveringLp(q(d).n, tuple(census(d).minimal_forts)), sol)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_uniform_weights_are_optimal(q, census, d):
    w = Fraction(1, d)
    for f in census(d).minimal_forts:
        assert f.bit_count() * w >= 1
    assert q(d).n * w == fractional_zf(q(d), census(d))


def test_lp_json_uses_fractions(q, census):
    out = fractional_zf_solution(q(3), census(3)).to_dict()
    assert out["value"] == "8/3"
    assert all("/" in w for w in out["weights"])


def test_requires_complete_census(q, census):
    partial = FortCensus(q(3).graph_id, census(3).minimal_forts[:3], complete=False)
    with pytest.raises(PreconditionError):
        fractional_zf(q(3), partial)
    with pytest.raises(PreconditionError):
        fractional_zf(q(2), census(3))


def test_exhaustive_small_vertex_lp():
    # on tiny instances compare with the best vertex among all 0, 1/2, 1/3 ... grids
    rng = random.Random(4)
    grid = sorted({Fraction(a, b) for b in (1, 2, 3) for a in range(b + 1)})
    for _ in range(15):
        n = 3
        rows = tuple(sorted({sum(1 << v for v in rng.sample(range(n), rng.randint(1, 2))) for _ in range(4)}))
        best = min(sum(x) for x in itertools.product(grid, repeat=n)
                   if all(sum(x[v] for v in range(n) if r >> v & 1) >= 1 for r in rows))
        assert solve_covering_lp(CoveringLp(n, rows)).value == best
