import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskshrink.lp import LinearProgram, LpStatus, check_feasible, duality_gap, solve
from oracles import random_lp


def vertex_enumeration(lp):
    """Best objective over all basic points (bounded, small programs only)."""
    A, b, c = lp.dense()
    rows = [(A[i], b[i]) for i in range(len(b))]
    n = lp.num_vars
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        rows.append((e, lp.upper[j]))
        rows.append((-e, -lp.lower[j]))
    best = None
    for combo in itertools.combinations(range(len(rows)), n):
        M = np.array([rows[i][0] for i in combo])
        if abs(np.linalg.det(M)) < 1e-10:
            continue
        x = np.linalg.solve(M, np.array([rows[i][1] for i in combo]))
        if check_feasible(lp, x, 1e-7):
            val = float(c @ x)
            if best is None or (val > best if lp.maximize else val < best):
                best = val
    return best


def test_simple_box_program():
    lp = LinearProgram(2, [0, 0], [1, 1], objective={0: 1, 1: 1})
    lp.add({0: 1, 1: 1}, 1.5)
    res = solve(lp)
    assert res.optimal and res.value == pytest.approx(1.5)
    assert duality_gap(lp, res) == pytest.approx(0.0, abs=1e-9)


def test_infeasible_and_unbounded():
    lp = LinearProgram(1, [0], [1], objective={0: 1})
    lp.add({0: -1}, -2)  # x >= 2
    assert solve(lp).status is LpStatus.INFEASIBLE
    free = LinearProgram(1, [-math.inf], [math.inf], objective={0: 1})
    assert solve(free).status is LpStatus.UNBOUNDED


def test_invariants_rejected():
    with pytest.raises(ValueError):
        LinearProgram(1, [1], [0])
    with pytest.raises(ValueError):
        LinearProgram(1, [-math.inf], [-math.inf])
    with pytest.raises(ValueError):
        LinearProgram(1, [0], [1], constraints=[({3: 1.0}, 1.0)])


def test_deterministic():
    rng = random.Random(3)
    lp = random_lp(rng, 5, 5)
    a, b = solve(lp), solve(lp)
    assert a.status == b.status
    if a.optimal:
        assert np.array_equal(a.point, b.point)


def test_matches_vertex_enumeration():
    rng = random.Random(17)
    checked = 0
    while checked < 150:
        nv = rng.randint(1, 4)
        lp = random_lp(rng, nv, rng.randint(0, 4))
        lp.lower = [lo if math.isfinite(lo) else -3.0 for lo in lp.lower]
        lp.upper = [hi if math.isfinite(hi) else 3.0 for hi in lp.upper]
        ref = vertex_enumeration(lp)
        res = solve(lp)
        if ref is None:
            assert res.status is LpStatus.INFEASIBLE
        else:
            assert res.optimal and res.value == pytest.approx(ref, abs=1e-7)
        checked += 1


@given(st.integers(0, 10**6))
def test_certificate_holds(seed):
    lp = random_lp(random.Random(seed))
    res = solve(lp)
    if res.optimal:
        assert check_feasible(lp, res.point, 1e-7)
        assert abs(duality_gap(lp, res)) <= 1e-7
