from fractions import Fraction
from math import isqrt

import pytest

from hkrays.contraction import ContractionType as T
from hkrays.errors import DomainError
from hkrays.fano import (
    admissibility_label,
    admissible_star,
    admissible_star_prime,
    analyze_fano,
    fano_divisibility,
    fano_gram,
    h_ray_witness,
    has_H_ray,
    minus_two_chamber,
    ray_profile,
)
from hkrays.lattice import pairing, q_value
from hkrays.pell import is_solvable, square_pell_solutions
from oracles import fano_minus2_box

VALID = [e for e in range(8, 501) if e % 6 in (0, 2)]


def test_gram():
    assert fano_gram(24).gram == ((6, 0), (0, -8))
    assert fano_gram(14).gram == ((6, 2), (2, -4))
    assert fano_gram(12).gram == ((6, 0), (0, -4))
    for e in (6, 4, 15, 10, 0):
        with pytest.raises(DomainError):
            fano_gram(e)


def test_divisibility():
    assert fano_divisibility(1, 0) == 2
    assert fano_divisibility(1, 2) == 2
    assert fano_divisibility(3, 5) == 1
    assert fano_divisibility(0, 1) == 1
    with pytest.raises(DomainError):
        fano_divisibility(2, 4)


def test_chamber_examples():
    assert set(minus_two_chamber(14).walls) == {(1, 2), (1, -1)}
    assert minus_two_chamber(74).walls == ()
    c8 = minus_two_chamber(8)
    assert c8.walls == ((0, 1),) and c8.isotropic_boundaries == ((1, -1),)
    assert set(minus_two_chamber(78).walls) == {(2, 1), (2, -1)}


@pytest.mark.parametrize(
    "e, tau, H, kind, deg",
    [(14, (1, -1), (3, -2), T.M3, 4), (26, (3, -2), (11, -7), T.H, 7), (56, (10, 7), (53, 37), T.B1, 74)],
)
def test_ray_profile(e, tau, H, kind, deg):
    r = ray_profile(e, tau)
    assert (r.H, r.type, r.scroll_degree) == (H, kind, deg)
    # orientation is fixed by effectivity, so the opposite sign gives the same ray
    assert ray_profile(e, (-tau[0], -tau[1])) == r


def test_ray_profile_rejects_non_root():
    with pytest.raises(DomainError):
        ray_profile(14, (1, 0))


def test_admissibility():
    assert admissible_star(14) and not admissible_star(16)
    assert admissible_star(74) and admissible_star(2)
    assert admissible_star_prime(8) and admissible_star_prime(24) and admissible_star_prime(56)
    assert not admissible_star_prime(10)
    assert not admissible_star(7) and not admissible_star_prime(7)
    assert admissibility_label(20) == "neither"


def test_h_ray_witness():
    assert h_ray_witness(14) == (1, 2)
    assert h_ray_witness(38) == (7, 30)
    assert not has_H_ray(78)
    for e in VALID:
        w = h_ray_witness(e)
        if w:
            a, n = w
            assert e * a * a == 2 * (n * n + n + 1)


def test_has_H_ray_matches_direct_equation():
    # x^2 - 2e*y^2 = -3 solved directly, with the unit of 2e rather than e/2
    for e in VALID[:60]:
        if isqrt(2 * e) ** 2 == 2 * e:
            direct = bool(square_pell_solutions(2 * e, -3))
        else:
            direct = is_solvable(2 * e, -3)
        assert has_H_ray(e) == direct, e


def test_analyze_examples():
    r = analyze_fano(42)
    assert r.types == (T.H, T.H)
    assert [x.H for x in r.rays] == [(14, 9), (14, -9)]
    assert [x.tau for x in r.rays] == [(3, 2), (3, -2)]
    assert [x.scroll_degree for x in r.rays] == [9, 9]
    assert tuple(r.pell) == (55, 12)
    r = analyze_fano(8)
    assert r.square and [(x.type, x.H, x.tau, x.scroll_degree) for x in r.rays] == [(T.B1, (1, 1), (0, 1), 2)]
    r = analyze_fano(74)
    assert not r.has_minus2 and r.rays == () and r.flopping_walls is None


def test_row_invariants():
    for e in VALID:
        row = analyze_fano(e)
        L = fano_gram(e).lattice
        for ray in row.rays:
            assert q_value(L, ray.H) == e and q_value(L, ray.tau) == -2 and pairing(L, ray.H, ray.tau) == 0
            assert ray.scroll_degree > 0
        if e % 6 == 0 and len(row.rays) == 2:
            a, b = row.rays
            assert (a.tau[0], a.tau[1]) == (b.tau[0], -b.tau[1])
            assert a.type is b.type
        for k in row.flopping_walls or ():
            assert q_value(L, k) == -10 and k[1] % 2 == 0


def test_chamber_against_box_search():
    # no (-2)-class with small coordinates may cut the open chamber, and the walls found are roots
    for e in VALID[:80]:
        row = analyze_fano(e)
        bounds = [Fraction(r.H[1], r.H[0]) for r in row.rays]
        bounds += [Fraction(v[1], v[0]) for v in row.lagrangian]
        if len(bounds) != 2:
            continue
        lo, hi = min(bounds), max(bounds)
        L = fano_gram(e).lattice
        for n in fano_minus2_box(e, 60):
            p, q = L.image(n)
            w = (q, -p) if q != 0 else (0, 1)
            if w[0] == 0:
                continue
            assert not (lo < Fraction(w[1], w[0]) < hi), (e, n)


def test_thm44_e0_mod6_no_minus10_with_H():
    for e in VALID:
        row = analyze_fano(e)
        if e % 6 == 0 and T.H in row.types:
            assert row.flopping_walls == ()
