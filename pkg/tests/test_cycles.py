import pytest
from hypothesis import given, strategies as st

from ringcollatz.cycles import find_cycle, min_rotation, primitive_period
from ringcollatz.suites import SUITES, run_suite


@given(st.integers(2, 500), st.integers(0, 499), st.integers(0, 10**6))
def test_brent_matches_naive_on_functional_graphs(m, x0, seed):
    x0 %= m

    def step(x):
        return (x * x + seed) % m

    seen, x = {}, x0
    while x not in seen:
        seen[x] = len(seen)
        x = step(x)
    mu, lam = seen[x], len(seen) - seen[x]
    rep = find_cycle(step, x0, m)
    assert rep.found and rep.preperiod == mu and len(rep.cycle) == lam
    assert rep.cycle[0] == x
    short = find_cycle(step, x0, mu + lam - 1) if mu + lam > 1 else None
    if short is not None:
        assert not short.found


def test_find_cycle_trace():
    rep = find_cycle(lambda x: (x + 1) % 5 if x < 7 else x - 3, 9, 50, keep_trace=True)
    assert rep.trace[:2] == (9, 6)
    assert len(rep.trace) == rep.preperiod + len(rep.cycle)


def test_find_cycle_rejects_bad_budget():
    with pytest.raises(ValueError):
        find_cycle(lambda x: x, 0, 0)


def test_min_rotation_and_period():
    assert min_rotation((2, 0, 1)) == (0, 1, 2)
    assert min_rotation(()) == ()
    assert min_rotation(("bb", "a"), key=len) == ("a", "bb")
    assert primitive_period((1, 0, 1, 0)) == 2
    assert primitive_period((1, 0, 0)) == 3
    assert primitive_period((0,)) == 1


def test_all_suites_pass():
    checks = run_suite("all", seed=3)
    assert checks and all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    assert "kummer" in SUITES
