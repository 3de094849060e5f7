"""Extremal rays of the Fano variety of lines F(Y) of a cubic fourfold Y in C_e.

Pic(F) has basis (g, gamma) with g the Pluecker class.  A class x*g + y*gamma
has q = -2 exactly when z = 3x + c*y solves z^2 - d*y^2 = -3, where d = e/2
and c = 0 or 1 for e = 0 or 2 mod 6.  The fundamental unit of x^2 - d*y^2 = 1
acts on (z, y) and hence on Pic(F) as an isometry, and every wall orbit has a
unique member in one period of that action.  Slopes t = y/x parametrize the
positive cone; all comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import factorize
from .contraction import ContractionType, check_congruence, type_from_divisibilities
from .errors import ConsistencyError, DomainError, OrbitLimitError, max_orbit
from .lattice import IntegralLattice, Vector, pairing, primitive_isotropic_rays, q_value
from .pell import PellFundamental, is_square, minimal_pell, pell_general, square_pell_solutions

T = ContractionType
G_CLASS: Vector = (1, 0)


def _check_e(e: int) -> None:
    if not isinstance(e, int) or isinstance(e, bool):
        raise DomainError(f"e must be an integer, got {e!r}")
    if e <= 6 or e % 6 not in (0, 2):
        raise DomainError(f"e must satisfy e > 6 and e = 0 or 2 mod 6, got {e}")


@dataclass(frozen=True)
class FanoPicard:
    e: int
    gram: tuple[tuple[int, int], tuple[int, int]]

    @property
    def lattice(self) -> IntegralLattice:
        return IntegralLattice(self.gram, labels=("g", "gamma"))


def fano_gram(e: int) -> FanoPicard:
    """Gram matrix of Pic(F) in the basis (g, gamma); |det| = 2e."""
    _check_e(e)
    if e % 6 == 0:
        return FanoPicard(e, ((6, 0), (0, -e // 3)))
    return FanoPicard(e, ((6, 2), (2, (2 - e) // 3)))


def fano_divisibility(r: int, s: int) -> int:
    """Divisibility of r*g + s*gamma in H^2(F, Z): 1 if s is odd, else 2."""
    if gcd(r, s) != 1:
        raise DomainError(f"({r},{s}) is not primitive")
    return 1 if s % 2 else 2


def admissible_star(e: int) -> bool:
    """(**): e even and e/2 divisible neither by 9 nor by a prime p = 2 mod 3."""
    if e < 2 or e % 2:
        return False
    f = factorize(e // 2)
    return f.get(3, 0) < 2 and all(p % 3 != 2 for p in f)


def admissible_star_prime(e: int) -> bool:
    """(**)': e even and every prime p = 2 mod 3 divides e/2 to an even power."""
    if e < 2 or e % 2:
        return False
    return all(n % 2 == 0 for p, n in factorize(e // 2).items() if p % 3 == 2)


def admissibility_label(e: int) -> str:
    if admissible_star(e):
        return "(**)"
    if admissible_star_prime(e):
        return "(**)'"
    return "neither"


def _shift(e: int) -> int:
    return 0 if e % 6 == 0 else 1


def _to_class(e: int, z: int, y: int) -> Vector | None:
    c = _shift(e)
    if (z - c * y) % 3:
        return None
    return ((z - c * y) // 3, y)


def _unit_action(e: int, unit: PellFundamental, v: Vector, inverse: bool = False) -> Vector:
    c = _shift(e)
    x, y = v
    z = 3 * x + c * y
    z, y = unit.apply_inverse((z, y)) if inverse else unit.apply((z, y))
    out = _to_class(e, z, y)
    if out is None:
        raise ConsistencyError("the Pell unit does not preserve Pic(F)")
    return out


def _perp(L: IntegralLattice, v: Vector) -> Vector:
    """Primitive generator of v^perp on the side of g."""
    p, q = L.image(v)
    w = (q, -p)
    k = gcd(*w)
    w = (w[0] // k, w[1] // k)
    if pairing(L, w, G_CLASS) < 0:
        w = (-w[0], -w[1])
    return w


def _slope(w: Vector) -> Fraction:
    return Fraction(w[1], w[0])


def _orient(L: IntegralLattice, v: Vector) -> Vector:
    """Sign making v*g^3 > 0, i.e. r > 0 (e = 0 mod 6) or 3r + s > 0 (e = 2 mod 6)."""
    return v if pairing(L, v, G_CLASS) > 0 else (-v[0], -v[1])


def _lattice_solutions(e: int, N: int, strict: bool) -> list[Vector]:
    """Lattice classes x*g + y*gamma with z^2 - d*y^2 = N, where 3q = 2N.

    For N = -3 and e = 2 mod 6 exactly one sign of z gives a lattice class;
    ``strict`` asserts that.
    """
    d = e // 2
    sols = square_pell_solutions(d, N) if is_square(d) else list(pell_general(d, N))
    out = []
    for z, y in sols:
        found = [v for v in (_to_class(e, z, y), _to_class(e, -z, y)) if v is not None]
        if strict and e % 6 == 2 and len(found) != 1:
            raise ConsistencyError(f"expected exactly one integral sign for (z,y)=({z},{y})")
        out.extend(found)
    return list(dict.fromkeys(out))


@dataclass(frozen=True)
class MinusTwoChamber:
    """Walls bounding the chamber of g, right side (t > 0) listed first."""

    walls: tuple[Vector, ...]
    isotropic_boundaries: tuple[Vector, ...]

    @property
    def has_minus2(self) -> bool:
        return bool(self.walls)


def _reduce(e: int, unit: PellFundamental, L: IntegralLattice, n: Vector, period: Fraction) -> Vector:
    """Move a class along its orbit until its wall slope lies in [0, period)."""
    cap = max_orbit()
    steps = 0
    while _slope(_perp(L, n)) < 0:
        n = _unit_action(e, unit, n)
        steps += 1
        if steps > cap:
            raise OrbitLimitError("chamber search exceeded HKRAYS_MAX_ORBIT")
    while _slope(_perp(L, n)) >= period:
        n = _unit_action(e, unit, n, inverse=True)
        steps += 1
        if steps > cap:
            raise OrbitLimitError("chamber search exceeded HKRAYS_MAX_ORBIT")
    return n


def _period(e: int, unit: PellFundamental) -> Fraction:
    return _slope(_unit_action(e, unit, G_CLASS))


def minus_two_chamber(e: int) -> MinusTwoChamber:
    """Nearest (-2)-wall on each side of g, or an isotropic boundary if a side has none."""
    L = fano_gram(e).lattice
    d = e // 2
    classes = _lattice_solutions(e, -3, strict=True)
    for n in classes:
        if q_value(L, n) != -2:
            raise ConsistencyError(f"{n} is not a (-2)-class")
    if not classes:
        return MinusTwoChamber((), ())

    if is_square(d):
        right = [n for n in classes if _slope(_perp(L, n)) > 0]
        left = [n for n in classes if _slope(_perp(L, n)) < 0]
    else:
        unit = minimal_pell(d)
        period = _period(e, unit)
        right = [_reduce(e, unit, L, n, period) for n in classes]
        left = [_unit_action(e, unit, n, inverse=True) for n in right]
    walls, iso = [], []
    if right:
        walls.append(_orient(L, min(right, key=lambda n: _slope(_perp(L, n)))))
    if left:
        walls.append(_orient(L, max(left, key=lambda n: _slope(_perp(L, n)))))
    if is_square(d):
        rays = [_orient(L, v) for v in primitive_isotropic_rays(L)]
        if not right:
            iso.append(max(rays, key=_slope))
        if not left:
            iso.append(min(rays, key=_slope))
    return MinusTwoChamber(tuple(walls), tuple(iso))


@dataclass(frozen=True)
class FanoRay:
    type: ContractionType
    H: Vector
    tau: Vector
    scroll_degree: int
    div_H: int
    div_tau: int


def ray_profile(e: int, tau: Vector) -> FanoRay:
    """Contraction class H, type and scroll degree for a (-2)-wall tau."""
    L = fano_gram(e).lattice
    if q_value(L, tau) != -2:
        raise DomainError(f"{tau} is not a (-2)-class for e={e}")
    tau = _orient(L, tau)
    H = _perp(L, tau)
    if q_value(L, H) != e:
        raise ConsistencyError(f"q(H) = {q_value(L, H)} for H={H}, expected {e}")
    div_tau = fano_divisibility(*tau)
    div_H = fano_divisibility(*H)
    kind = type_from_divisibilities(div_H, div_tau)
    check_congruence(kind, e // 2)
    # g = r*H + s*tau; det of (H, tau) is +-1 when they form a basis
    det = H[0] * tau[1] - H[1] * tau[0]
    r_num, s_num = tau[1], -H[1]
    if det == 0 or r_num % det or s_num % det:
        raise ConsistencyError(f"g is not integral in the basis H={H}, tau={tau}")
    s = s_num // det
    degree = -s if kind is T.H else -2 * s
    if degree <= 0:
        raise ConsistencyError(f"non-positive scroll degree {degree} for tau={tau}")
    return FanoRay(kind, H, tau, degree, div_H, div_tau)


def has_H_ray(e: int) -> bool:
    """Whether e = 2(n^2 + n + 1)/a^2 for integers a, n."""
    return h_ray_witness(e) is not None


def h_ray_witness(e: int) -> tuple[int, int] | None:
    """Smallest (a, n) with e*a^2 = 2(n^2 + n + 1), i.e. x^2 - 2e*a^2 = -3 with x = 2n + 1.

    Solved as z^2 - d*Y^2 = -3 with Y = 2a even, which keeps the Pell unit that of d.
    """
    _check_e(e)
    d = e // 2
    if is_square(d):
        cands = [(z, y) for z, y in square_pell_solutions(d, -3) if z > 0 and y > 0]
    else:
        unit = minimal_pell(d)
        cands = []
        for rep in pell_general(d, -3):
            # Y mod 2 along an orbit has period dividing 3
            cur = rep
            for _ in range(6):
                cands.append(cur)
                cur = unit.apply(cur)
    best = None
    for z, Y in cands:
        if Y > 0 and Y % 2 == 0 and (best is None or Y < best[1]):
            best = (z, Y)
    if best is None:
        return None
    z, Y = best
    return Y // 2, (z - 1) // 2


_TYPE_RANK = {T.H: 0, T.M3: 1, T.B1: 2, T.M1: 3, T.B0: 4}


def _row_order(ray: FanoRay):
    return (_TYPE_RANK[ray.type], ray.H[0], ray.H[1] < 0)


@dataclass(frozen=True)
class FanoRow:
    e: int
    admissibility: str
    has_minus2: bool
    pell: PellFundamental | None
    rays: tuple[FanoRay, ...]
    lagrangian: tuple[Vector, ...]
    flopping_walls: tuple[Vector, ...] | None

    @property
    def d(self) -> int:
        return self.e // 2

    @property
    def square(self) -> bool:
        return is_square(self.d)

    @property
    def types(self) -> tuple[ContractionType, ...]:
        return tuple(r.type for r in self.rays)


def _coords(u: Vector, v: Vector, w: Vector) -> Vector:
    """Coordinates of w in the basis (u, v), asserting integrality."""
    det = u[0] * v[1] - u[1] * v[0]
    a_num = w[0] * v[1] - w[1] * v[0]
    b_num = u[0] * w[1] - u[1] * w[0]
    if det == 0 or a_num % det or b_num % det:
        raise ConsistencyError(f"{w} is not integral in the basis {u}, {v}")
    return a_num // det, b_num // det


def _check_second_ray(d: int, pell: PellFundamental, first: FanoRay, second: FanoRay) -> None:
    a, b = pell
    H2 = _coords(first.H, first.tau, second.H)
    tau2 = _coords(first.H, first.tau, second.tau)
    if H2 != (a, -b * d) or tau2 != (b, -a):
        raise ConsistencyError(
            f"second ray {H2}, {tau2} in the basis of the first disagrees with "
            f"H' = aH - bd*tau, tau' = bH - a*tau for (a,b) = ({a},{b})"
        )


def _flopping_walls(e: int, L: IntegralLattice, lo: Fraction, hi: Fraction) -> tuple[Vector, ...]:
    # (-10)-classes of divisibility two with walls strictly inside (lo, hi)
    d = e // 2
    classes = _lattice_solutions(e, -15, strict=False)
    found = set()
    if is_square(d):
        cands = classes
    else:
        unit = minimal_pell(d)
        period = _period(e, unit)
        cands = []
        for k in classes:
            k = _reduce(e, unit, L, k, period)
            cands += [_unit_action(e, unit, k, inverse=True), k, _unit_action(e, unit, k)]
    for k in cands:
        # divisibility is not invariant under the unit, so filter after moving
        if k[1] % 2 == 0 and lo < _slope(_perp(L, k)) < hi:
            found.add(_orient(L, k))
    return tuple(sorted(found, key=lambda k: _slope(_perp(L, k))))


def analyze_fano(e: int) -> FanoRow:
    """Full table row for F(Y), Y in C_e."""
    L = fano_gram(e).lattice
    d = e // 2
    pell = minimal_pell(d)
    chamber = minus_two_chamber(e)
    rays = tuple(sorted((ray_profile(e, t) for t in chamber.walls), key=_row_order))
    if len(rays) == 2:
        _check_second_ray(d, pell, rays[0], rays[1])
        _check_second_ray(d, pell, rays[1], rays[0])

    bounds = [_slope(r.H) for r in rays] + [_slope(v) for v in chamber.isotropic_boundaries]
    walls = None
    if len(bounds) == 2:
        walls = _flopping_walls(e, L, min(bounds), max(bounds))
        for k in walls:
            if q_value(L, k) != -10 or fano_divisibility(*k) != 2:
                raise ConsistencyError(f"{k} is not a (-10)-class of divisibility two")
    return FanoRow(e, admissibility_label(e), chamber.has_minus2, pell, rays, chamber.isotropic_boundaries, walls)
