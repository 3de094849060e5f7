from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkrays.errors import DomainError, OrbitLimitError
from hkrays.pell import (
    PellFundamental,
    canonical_rep,
    is_solvable,
    minimal_negative_pell,
    minimal_pell,
    pell_general,
    pell_orbit,
    square_pell_solutions,
)
from oracles import brute_general

nonsquares = st.integers(2, 3000).filter(lambda d: isqrt(d) ** 2 != d)


@pytest.mark.parametrize(
    "d, expected",
    [(3, (2, 1)), (13, (649, 180)), (61, (1766319049, 226153980)), (2, (3, 2)), (7, (8, 3))],
)
def test_minimal_pell_examples(d, expected):
    assert tuple(minimal_pell(d)) == expected


def test_minimal_pell_square_and_bad_input():
    assert minimal_pell(4) is None
    assert minimal_pell(1) is None
    with pytest.raises(DomainError):
        minimal_pell(0)
    with pytest.raises(DomainError):
        minimal_pell(-5)


def test_pell_fundamental_validates():
    with pytest.raises(DomainError):
        PellFundamental(3, 2, 2)


@given(nonsquares)
def test_minimal_pell_solves(d):
    a, b = minimal_pell(d)
    assert a * a - d * b * b == 1 and a > 0 and b > 0


def test_pell_general_examples():
    assert tuple(pell_general(11, 5)) == ((4, 1), (7, 2))
    assert not pell_general(3, 5)
    assert not pell_general(8, 5)
    # x^2 - 11y^2 = -2 has the solution (3, 1); the equation is not empty
    assert tuple(pell_general(11, -2)) == ((3, 1),)


def test_pell_general_errors():
    with pytest.raises(DomainError):
        pell_general(4, 5)
    with pytest.raises(DomainError):
        pell_general(11, 0)
    with pytest.raises(DomainError):
        pell_general(11, 5, method="guess")


def test_orbit_examples():
    unit = minimal_pell(11)
    assert pell_orbit((4, 1), unit, 1) == [(73, 22)]
    assert 73**2 - 11 * 22**2 == 5
    assert pell_orbit((1, 0), minimal_pell(3), 1) == [(2, 1)]
    assert pell_orbit((4, 1), unit, 0) == []
    with pytest.raises(DomainError):
        pell_orbit((4, 1), unit, -1)


def test_is_solvable():
    assert is_solvable(11, 5)
    assert not is_solvable(3, 5)
    assert is_solvable(7, -3)


@settings(max_examples=60, deadline=None)
@given(nonsquares, st.integers(-60, 60).filter(bool))
def test_reps_solve_and_are_canonical(d, n):
    cls = pell_general(d, n)
    for x, y in cls:
        assert x * x - d * y * y == n
        assert x >= 0 and y >= 0
        assert canonical_rep((x, y), cls.unit, n) == (x, y)
    # distinct reps lie in distinct classes
    assert len({canonical_rep(s, cls.unit, n) for s in cls}) == len(cls)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 80).filter(lambda d: isqrt(d) ** 2 != d), st.integers(-30, 30).filter(bool))
def test_window_and_lmm_agree(d, n):
    assert tuple(pell_general(d, n, method="window")) == tuple(pell_general(d, n, method="lmm"))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 300).filter(lambda d: isqrt(d) ** 2 != d), st.integers(-40, 40).filter(bool))
def test_orbit_closure_matches_brute_force(d, n):
    assert pell_general(d, n).solutions(500) == brute_general(d, [n], 500)[n]


@given(nonsquares, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_composition_law(d, x, y):
    n = x * x - d * y * y
    a, b = minimal_pell(d)
    X, Y = a * x + d * b * y, b * x + a * y
    assert X * X - d * Y * Y == n
    assert minimal_pell(d).apply_inverse((X, Y)) == (x, y)


def test_canonical_rep_moves_along_orbit():
    unit = minimal_pell(11)
    far = pell_orbit((7, 2), unit, 5)[-1]
    assert canonical_rep(far, unit, 5) == (7, 2)
    assert canonical_rep((-far[0], -far[1]), unit, 5) == (7, 2)


def test_negative_pell():
    assert minimal_negative_pell(37) == (6, 1)
    assert minimal_negative_pell(13) == (18, 5)
    assert minimal_negative_pell(7) is None


def test_large_unit_uses_lmm():
    # the fundamental unit of 181 has about 18 digits, far too many candidates to enumerate
    cls = pell_general(181, -20)
    for x, y in cls:
        assert x * x - 181 * y * y == -20


def test_square_solutions():
    assert square_pell_solutions(4, -3) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert square_pell_solutions(9, -3) == []
    for x, y in square_pell_solutions(16, 33):
        assert x * x - 16 * y * y == 33
    with pytest.raises(DomainError):
        square_pell_solutions(5, 1)


def test_orbit_cap(monkeypatch):
    monkeypatch.setenv("HKRAYS_MAX_ORBIT", "3")
    with pytest.raises(OrbitLimitError):
        pell_general.__wrapped__(2, 7**8)
    monkeypatch.setenv("HKRAYS_MAX_ORBIT", "zero")
    with pytest.raises(DomainError):
        pell_general.__wrapped__(2, 7)
