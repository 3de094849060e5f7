"""Second extremal ray, type classification, flopping walls and conic-bundle data.

Coordinates are in the (H, tau) basis of the first ray throughout, except for
first rays of type M1, whose Picard lattice is the index-two overlattice
generated by H and (H + tau)/2; those reports use that basis instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Union

from .arith import factorize
from .contraction import TABLE, ContractionType, check_congruence, type_from_divisibilities
from .errors import ConsistencyError, DomainError, LagrangianCase, OrbitLimitError, max_orbit
from .lattice import (
    AMBIENT,
    IntegralLattice,
    Vector,
    ambient_divisibility_rule,
    divisibility,
    embed_pair,
    is_primitive,
    normalize_sign,
    pairing,
    picard_hk,
    primitive_isotropic_rays,
    q_value,
)
from .pell import PellFundamental, is_square, minimal_pell, pell_general, square_pell_solutions

T = ContractionType
DivisibilityRule = Callable[[int, int], int]


@dataclass(frozen=True)
class RayProfile:
    """A divisorial extremal ray: big and nef class H and its (-2)-class tau."""

    H: Vector
    tau: Vector
    type: ContractionType
    div_H: int
    div_tau: int

    kind = "divisorial"

    @property
    def exceptional_multiplicity(self) -> int:
        """The exceptional divisor is 2*tau for type H and tau otherwise."""
        return 2 if self.type is T.H else 1


@dataclass(frozen=True)
class LagrangianRay:
    isotropic: Vector

    kind = "lagrangian"


RayKind = Union[RayProfile, LagrangianRay]


def profile(kind: ContractionType, H: Vector, tau: Vector) -> RayProfile:
    data = TABLE[kind]
    return RayProfile(tuple(H), tuple(tau), kind, data.div_H, data.div_tau)


@dataclass(frozen=True)
class ConicBundleInvariants:
    type: ContractionType
    hs_square: int
    brauer: tuple[Fraction, Fraction] | None
    tx_relation: str
    heegner: str


def conic_invariants(kind: ContractionType, d: int) -> ConicBundleInvariants:
    """Base-surface degree, Brauer invariants and T(X) relation for one type."""
    kind = T(kind)
    check_congruence(kind, d)
    data = TABLE[kind]
    hs = data.hs_numerator * d
    if hs % data.hs_denominator:
        raise DomainError(f"h_S^2 = {data.hs_numerator}d/{data.hs_denominator} is not integral for d={d}")
    return ConicBundleInvariants(kind, hs // data.hs_denominator, data.brauer, data.tx_relation, data.heegner)


def fm_partner_count(d: int) -> int:
    """2^(p(d) - 1), p(d) the number of distinct primes dividing d."""
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    if d == 1:
        raise DomainError("the FM partner count is only defined for d >= 2")
    return 2 ** (len(factorize(d)) - 1)


def second_ray(d: int) -> tuple[Vector, Vector, PellFundamental]:
    """H' = aH - bd*tau and tau' = bH - a*tau with (a, b) the minimal Pell solution."""
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    pell = minimal_pell(d)
    if pell is None:
        raise LagrangianCase(f"d={d} is a square: the second ray is isotropic")
    a, b = pell
    return (a, -b * d), (b, -a), pell


def lagrangian_ray(d: int) -> Vector:
    """Primitive isotropic class H - sqrt(d)*tau of <2d> + <-2>."""
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    m = isqrt(d)
    if m * m != d:
        raise DomainError(f"d={d} is not a square: no isotropic class")
    return (1, -m)


def second_type_by_parity(d: int, first: ContractionType, a: int, b: int) -> ContractionType:
    """Type of the second ray from the parities of the Pell solution."""
    first = T(first)
    if first is T.H:
        if d % 4 == 0:
            return T.B1 if b % 2 else T.H
        if d % 4 == 3:
            return T.M3 if a % 2 == 0 else T.H
        return T.H
    if first is T.B1:
        return T.H if b % 2 else T.B1
    if first is T.M3:
        return T.H if a % 2 == 0 else T.M3
    return first


def second_type_by_ambient(d: int, first: ContractionType, a: int, b: int) -> ContractionType:
    """Type of the second ray from ambient divisibilities of H' and tau'."""
    H, tau = embed_pair(first, d)
    tau2 = tuple(b * h - a * t for h, t in zip(H, tau))
    H2 = tuple(a * h - b * d * t for h, t in zip(H, tau))
    return type_from_divisibilities(divisibility(AMBIENT, H2), divisibility(AMBIENT, tau2))


def _check_flags(d: int, first: ContractionType, det_is_odd_mod4: bool, disc_group_cyclic: bool) -> None:
    if (first is T.M1) != bool(det_is_odd_mod4):
        raise DomainError("type M1 occurs exactly when |det Pic| = 1 mod 4")
    if (first is T.B0) == bool(disc_group_cyclic):
        raise DomainError("type B0 occurs exactly when the discriminant group of T(X) is not cyclic")
    check_congruence(first, d)


def _check_mixed(d: int, pair: tuple[ContractionType, ContractionType], a: int, b: int) -> None:
    kinds = set(pair)
    if kinds == {T.H, T.B1} and not (d % 8 == 0 and b % 2 == 1):
        raise ConsistencyError(f"H+B1 needs d = 0 mod 8 and b odd (d={d}, b={b})")
    if kinds == {T.H, T.M3} and not (d % 4 == 3 and a % 2 == 0 and b % 2 == 1):
        raise ConsistencyError(f"H+M3 needs d = 3 mod 4, a even, b odd (d={d}, a={a}, b={b})")


def classify_pair(
    d: int,
    first_type: ContractionType,
    det_is_odd_mod4: bool,
    disc_group_cyclic: bool,
) -> tuple[ContractionType, ContractionType]:
    """Types of both extremal rays, given the first one.

    M1 and B0 propagate to the second ray.  For H, M3 and B1 the second type is
    read off from ambient divisibilities and must agree with the parity rule.
    """
    first = T(first_type)
    _check_flags(d, first, det_is_odd_mod4, disc_group_cyclic)
    if is_square(d):
        raise LagrangianCase(f"|det Pic| is a square for d={d}: the second ray is isotropic")
    if first in (T.M1, T.B0):
        return first, first
    a, b = minimal_pell(d)
    second = second_type_by_ambient(d, first, a, b)
    parity = second_type_by_parity(d, first, a, b)
    if second is not parity:
        raise ConsistencyError(f"d={d}: ambient gives {second}, parity rule gives {parity}")
    _check_mixed(d, (first, second), a, b)
    return first, second


def hilbert_parity_rule(r: int, s: int) -> int:
    """div(rH + s*tau) on a Hilbert square: 2 exactly when r is even."""
    return 2 if r % 2 == 0 else 1


def _wall_slope(d: int, r: int, s: int) -> Fraction:
    # the wall of kappa = rH + s*tau is spanned by s*H + d*r*tau
    return Fraction(d * r, s)


def wall_ray(d: int, kappa: Vector) -> Vector:
    """Generator of the half line kappa^perp in the positive cone: s*H + d*r*tau."""
    r, s = kappa
    v = (s, d * r)
    return v if s > 0 else (-s, -d * r)


def _walls(d: int, rule: DivisibilityRule) -> list[Vector]:
    """(-10)-classes of divisibility two whose walls cut the movable cone."""
    found = []
    if is_square(d):
        boundary = Fraction(-isqrt(d))
        for s, r in square_pell_solutions(d, 5):
            if boundary < _wall_slope(d, r, s) < 0 and rule(r, s) == 2:
                found.append(normalize_sign((r, s)))
    else:
        unit = minimal_pell(d)
        boundary = Fraction(-unit.b * d, unit.a)
        cap = max_orbit()
        for rep in pell_general(d, 5):
            # [boundary, 0) is a fundamental domain for the unit acting on slopes
            s, r = rep
            steps = 0
            while _wall_slope(d, r, s) >= 0:
                s, r = unit.apply_inverse((s, r))
                steps += 1
                if steps > cap:
                    raise OrbitLimitError("wall search exceeded HKRAYS_MAX_ORBIT")
            while _wall_slope(d, r, s) < boundary:
                s, r = unit.apply((s, r))
                steps += 1
                if steps > cap:
                    raise OrbitLimitError("wall search exceeded HKRAYS_MAX_ORBIT")
            if _wall_slope(d, r, s) > boundary and rule(r, s) == 2:
                found.append(normalize_sign((r, s)))
    found = sorted(set(found), key=lambda k: -_wall_slope(d, *k))
    return found


def flopping_walls(d: int, rule: DivisibilityRule = hilbert_parity_rule) -> list[Vector]:
    """Flopping walls kappa = rH + s*tau inside the movable cone, nearest to H first.

    ``rule(r, s)`` returns the ambient divisibility of rH + s*tau; the default
    is the Hilbert-square convention.
    """
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    if is_square(d):
        raise DomainError(f"d={d} is a square; use analyze() for the Lagrangian case")
    return _walls(d, rule)


def _validate_profile(L: IntegralLattice, ray: RayProfile, d: int) -> None:
    if q_value(L, ray.H) != 2 * d or q_value(L, ray.tau) != -2 or pairing(L, ray.H, ray.tau) != 0:
        raise ConsistencyError(f"ray {ray} does not satisfy q(H)=2d, q(tau)=-2, (H,tau)=0")
    if not (is_primitive(L, ray.H) and is_primitive(L, ray.tau)):
        raise ConsistencyError(f"ray {ray} is not primitive")


@dataclass(frozen=True)
class RayPairReport:
    d: int
    first_type: ContractionType
    det_abs: int
    lattice: IntegralLattice
    pell: PellFundamental | None
    rays: tuple[RayKind, RayKind]
    flopping_walls: tuple[Vector, ...]
    fm_partner_count: int | None
    conic_bundles: tuple[ConicBundleInvariants, ...]

    @property
    def model_count(self) -> int:
        return len(self.flopping_walls) + 1

    @property
    def types(self) -> tuple[ContractionType, ...]:
        return tuple(r.type for r in self.rays if isinstance(r, RayProfile))

    @property
    def lagrangian(self) -> LagrangianRay | None:
        for r in self.rays:
            if isinstance(r, LagrangianRay):
                return r
        return None


def _minimal_norm4(d: int) -> tuple[int, int]:
    """Minimal positive solution of X^2 - d*Y^2 = 4."""
    a, b = minimal_pell(d)
    best = (2 * a, 2 * b)
    for x, y in pell_general(d, 4):
        if y > 0 and y < best[1]:
            best = (x, y)
    return best


def _analyze_m1(d: int) -> RayPairReport:
    # Pic = <H, w> with w = (H + tau)/2, so tau = 2w - H
    L = IntegralLattice(((2 * d, d), (d, (d - 1) // 2)), labels=("H", "(H+tau)/2"))
    first = profile(T.M1, (1, 0), (-1, 2))
    if is_square(d):
        iso = [v for v in primitive_isotropic_rays(L) for v in (v, tuple(-x for x in v))]
        iso = [v for v in iso if pairing(L, v, first.H) > 0 and pairing(L, v, first.tau) > 0]
        if len(iso) != 1:
            raise ConsistencyError(f"expected one isotropic boundary ray, got {iso}")
        rays = (first, LagrangianRay(iso[0]))
        pell = None
    else:
        A, B = _minimal_norm4(d)
        second = profile(T.M1, ((A + B * d) // 2, -B * d), ((A + B) // 2, -A))
        _validate_profile(L, second, d)
        rays = (first, second)
        pell = minimal_pell(d)
    fm = fm_partner_count(d) if d >= 2 else None
    conic = tuple(conic_invariants(r.type, d) for r in rays if isinstance(r, RayProfile))
    return RayPairReport(d, T.M1, d, L, pell, rays, (), fm, conic)


def analyze(
    d: int,
    first_type: ContractionType = T.H,
    *,
    det_is_odd_mod4: bool | None = None,
    disc_group_cyclic: bool | None = None,
) -> RayPairReport:
    """Both extremal rays, flopping walls and invariants for a first ray of the given type.

    The flags default to the values forced by ``first_type``.
    """
    first_kind = T(first_type)
    odd = first_kind is T.M1 if det_is_odd_mod4 is None else det_is_odd_mod4
    cyclic = first_kind is not T.B0 if disc_group_cyclic is None else disc_group_cyclic
    _check_flags(d, first_kind, odd, cyclic)
    if first_kind is T.M1:
        return _analyze_m1(d)

    L = picard_hk(d)
    first = profile(first_kind, (1, 0), (0, 1))
    if is_square(d):
        pell = None
        rays: tuple[RayKind, RayKind] = (first, LagrangianRay(lagrangian_ray(d)))
    else:
        _, second_kind = classify_pair(d, first_kind, odd, cyclic)
        H2, tau2, pell = second_ray(d)
        second = profile(second_kind, H2, tau2)
        _validate_profile(L, second, d)
        rays = (first, second)

    if first_kind is T.B0:
        # Pic embeds in the unimodular K3 lattice: no class has divisibility two
        walls: list[Vector] = []
    elif first_kind is T.H:
        walls = _walls(d, hilbert_parity_rule)
    else:
        walls = _walls(d, ambient_divisibility_rule(first_kind, d))
    for k in walls:
        if q_value(L, k) != -10:
            raise ConsistencyError(f"wall {k} is not a (-10)-class")

    fm = fm_partner_count(d) if d >= 2 else None
    conic = tuple(conic_invariants(r.type, d) for r in rays if isinstance(r, RayProfile))
    return RayPairReport(d, first_kind, 4 * d, L, pell, rays, tuple(walls), fm, conic)
