"""Exact solvers for x^2 - d*y^2 = 1 and the generalized equation x^2 - d*y^2 = N.

All arithmetic is on Python integers; Pell units grow exponentially in d so
there is no fixed-width path anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator

from .errors import DomainError, OrbitLimitError, max_orbit

Pair = tuple[int, int]


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class PellFundamental:
    """Minimal positive solution (a, b) of x^2 - d*y^2 = 1."""

    d: int
    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0 or self.a * self.a - self.d * self.b * self.b != 1:
            raise DomainError(f"({self.a},{self.b}) does not solve x^2-{self.d}y^2=1")

    def __iter__(self) -> Iterator[int]:
        yield self.a
        yield self.b

    def apply(self, sol: Pair) -> Pair:
        """Multiply x + y*sqrt(d) by the unit a + b*sqrt(d)."""
        x, y = sol
        return self.a * x + self.d * self.b * y, self.b * x + self.a * y

    def apply_inverse(self, sol: Pair) -> Pair:
        x, y = sol
        return self.a * x - self.d * self.b * y, self.a * y - self.b * x


@lru_cache(maxsize=4096)
def minimal_pell(d: int) -> PellFundamental | None:
    """Minimal positive solution of x^2 - d*y^2 = 1, or None if d is a square.

    Walks the convergents p/q of the continued fraction of sqrt(d) until
    p^2 - d*q^2 = 1; every positive solution is a convergent.

    >>> tuple(minimal_pell(13))
    (649, 180)
    """
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    r = isqrt(d)
    if r * r == d:
        return None
    m, q, ak = 0, 1, r
    p_prev, p = 1, r
    q_prev, qq = 0, 1
    while p * p - d * qq * qq != 1:
        m = ak * q - m
        q = (d - m * m) // q
        ak = (r + m) // q
        p_prev, p = p, ak * p + p_prev
        q_prev, qq = qq, ak * qq + q_prev
    return PellFundamental(d, p, qq)


def _unit(d: int) -> PellFundamental:
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    unit = minimal_pell(d)
    if unit is None:
        raise DomainError(f"d={d} is a perfect square")
    return unit


@dataclass(frozen=True)
class GeneralPellClassSet:
    """One representative per class of solutions of x^2 - d*y^2 = N.

    Classes are orbits under the fundamental unit together with the overall
    sign flip (x, y) -> (-x, -y).  Each representative is the smallest
    solution with x >= 0 and y >= 0 in its class.
    """

    d: int
    N: int
    unit: PellFundamental
    reps: tuple[Pair, ...]

    def __bool__(self) -> bool:
        return bool(self.reps)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.reps)

    def __len__(self) -> int:
        return len(self.reps)

    def solutions(self, y_bound: int) -> set[Pair]:
        """Every solution with |y| <= y_bound, generated from the class reps."""
        out: set[Pair] = set()
        for rep in self.reps:
            for step in (self.unit.apply, self.unit.apply_inverse):
                # |y| is unimodal along an orbit, so stop once it grows past the bound
                cur, prev_abs = rep, None
                while True:
                    ay = abs(cur[1])
                    if ay <= y_bound:
                        out.add(cur)
                        out.add((-cur[0], -cur[1]))
                    elif prev_abs is not None and ay > prev_abs:
                        break
                    prev_abs = ay
                    cur = step(cur)
        return out


def _positive_value(x: int, y: int, N: int) -> bool:
    """Sign of x + y*sqrt(d), decided exactly from the coordinate signs and N."""
    if x >= 0 and y >= 0:
        return True
    if x <= 0 and y <= 0:
        return False
    # mixed signs: |x| vs sqrt(d)|y| is decided by the sign of N = x^2 - d y^2
    return N > 0 if x > 0 else N < 0


def canonical_rep(sol: Pair, unit: PellFundamental, N: int) -> Pair:
    """Smallest solution with nonnegative coordinates in the class of ``sol``."""
    x, y = sol
    if not _positive_value(x, y, N):
        x, y = -x, -y
    cap = max_orbit()
    steps = 0
    while not (x >= 0 and y >= 0):
        x, y = unit.apply((x, y))
        steps += 1
        if steps > cap:
            raise OrbitLimitError("orbit walk exceeded HKRAYS_MAX_ORBIT")
    while True:
        px, py = unit.apply_inverse((x, y))
        if px < 0 or py < 0:
            return x, y
        x, y = px, py
        steps += 1
        if steps > cap:
            raise OrbitLimitError("orbit walk exceeded HKRAYS_MAX_ORBIT")


def _candidate_xs(d: int, N: int, hi: int) -> Iterator[int]:
    # x^2 = N (mod d) is necessary; sieve by residue when that is cheaper
    if hi < d:
        yield from range(hi + 1)
        return
    roots = [r for r in range(d) if (r * r - N) % d == 0]
    for r in roots:
        yield from range(r, hi + 1, d)


def minimal_negative_pell(d: int) -> Pair | None:
    """Minimal positive solution of x^2 - d*y^2 = -1, or None if unsolvable."""
    unit = _unit(d)
    r = isqrt(d)
    m, q, ak = 0, 1, r
    p_prev, p = 1, r
    q_prev, qq = 0, 1
    # the norm -1 unit, if any, is a convergent strictly before the norm +1 one
    while qq < unit.b:
        if p * p - d * qq * qq == -1:
            return p, qq
        m = ak * q - m
        q = (d - m * m) // q
        ak = (r + m) // q
        p_prev, p = p, ak * p + p_prev
        q_prev, qq = qq, ak * qq + q_prev
    return None


def _floor_quadratic(P: int, Q: int, d: int, sd: int) -> int:
    """floor((P + sqrt(d)) / Q) for non-square d, with sd = isqrt(d)."""
    if Q > 0:
        return (P + sd) // Q
    return (-P - sd - 1) // (-Q)


def _lmm_single(d: int, m: int, z: int, sd: int, cap: int) -> Pair | None:
    # PQa expansion of (z + sqrt d)/|m|; the first Q_i = +-1 (i >= 1) decides
    am = abs(m)
    P, Q = z, am
    A2, A1 = 0, 1
    B2, B1 = 1, 0
    G2, G1 = -z, am
    seen = set()
    for _ in range(cap):
        a = _floor_quadratic(P, Q, d, sd)
        A2, A1 = A1, a * A1 + A2
        B2, B1 = B1, a * B1 + B2
        G2, G1 = G1, a * G1 + G2
        P = a * Q - P
        Q = (d - P * P) // Q
        if Q in (1, -1):
            r, s = G1, B1
            val = r * r - d * s * s
            if val == m:
                return r, s
            neg = minimal_negative_pell(d)
            if val == -m and neg is not None:
                t, u = neg
                return r * t + s * u * d, r * u + s * t
            return None
        if (P, Q) in seen:
            return None
        seen.add((P, Q))
    raise OrbitLimitError("PQa expansion exceeded HKRAYS_MAX_ORBIT")


def _fundamental_lmm(d: int, N: int, cap: int) -> Iterator[Pair]:
    """Lagrange-Matthews-Mollin: one solution per class, via f^2 | N and roots z."""
    sd = isqrt(d)
    for f in range(1, isqrt(abs(N)) + 1):
        if N % (f * f):
            continue
        m = N // (f * f)
        am = abs(m)
        for z in range(-((am - 1) // 2), am // 2 + 1):
            if (z * z - d) % am:
                continue
            sol = _lmm_single(d, m, z, sd, cap)
            if sol is not None:
                yield f * sol[0], f * sol[1]


def _fundamental_window(d: int, N: int, unit: PellFundamental, cap: int) -> Iterator[Pair]:
    """Nagell window: 0 < x <= sqrt(N(a+1)/2) (N > 0), 0 <= x <= sqrt(|N|(a-1)/2) (N < 0)."""
    a = unit.a
    if N > 0:
        hi = isqrt(N * (a + 1) // 2)
    else:
        hi = isqrt(-N * (a - 1) // 2)
    for count, x in enumerate(_candidate_xs(d, N, hi)):
        if count > cap:
            raise OrbitLimitError(f"enumeration for x^2-{d}y^2={N} exceeded HKRAYS_MAX_ORBIT")
        t = x * x - N
        if t < 0 or t % d:
            continue
        y = isqrt(t // d)
        if y * y * d == t:
            yield x, y
            yield x, -y


def _window_size(d: int, N: int, unit: PellFundamental) -> int:
    hi = isqrt(abs(N) * (unit.a + 1) // 2)
    return hi + 1 if hi < d else (hi // d + 1) * d


# windows up to this many candidates are enumerated directly
WINDOW_LIMIT = 50_000


@lru_cache(maxsize=4096)
def pell_general(d: int, N: int, method: str = "auto") -> GeneralPellClassSet:
    """All solution classes of x^2 - d*y^2 = N for non-square d.

    ``method="window"`` enumerates the Nagell window of fundamental solutions,
    ``method="lmm"`` runs the PQa-based Lagrange-Matthews-Mollin search.  The
    default picks the window when it is small and LMM otherwise; both feed the
    same canonical reduction.
    """
    if N == 0:
        raise DomainError("N must be nonzero")
    unit = _unit(d)
    cap = max_orbit()
    if method == "auto":
        method = "window" if _window_size(d, N, unit) <= WINDOW_LIMIT else "lmm"
    if method == "window":
        found = _fundamental_window(d, N, unit, cap)
    elif method == "lmm":
        found = _fundamental_lmm(d, N, cap)
    else:
        raise DomainError(f"unknown method {method!r}")
    reps = {canonical_rep(sol, unit, N) for sol in found}
    ordered = tuple(sorted(reps, key=lambda s: (s[1], s[0])))
    return GeneralPellClassSet(d, N, unit, ordered)


def pell_orbit(sol: Pair, unit: PellFundamental, count: int) -> list[Pair]:
    """The next ``count`` solutions obtained by repeated composition with ``unit``."""
    if count < 0:
        raise DomainError("count must be nonnegative")
    out = []
    cur = sol
    for _ in range(count):
        cur = unit.apply(cur)
        out.append(cur)
    return out


def is_solvable(d: int, N: int) -> bool:
    return bool(pell_general(d, N))


def square_pell_solutions(d: int, N: int) -> list[Pair]:
    """All (finitely many) solutions of x^2 - d*y^2 = N when d = m^2 is a square.

    Factors N = (x - m*y)(x + m*y) over its divisors.
    """
    if N == 0:
        raise DomainError("N must be nonzero")
    m = isqrt(d)
    if d <= 0 or m * m != d:
        raise DomainError(f"d={d} is not a positive perfect square")
    out = set()
    n = abs(N)
    for u in range(1, isqrt(n) + 1):
        if n % u:
            continue
        for p in (u, n // u):
            for sp in (p, -p):
                q = N // sp
                # x - m y = sp, x + m y = q
                if (sp + q) % 2 or (q - sp) % (2 * m):
                    continue
                out.add(((sp + q) // 2, (q - sp) // (2 * m)))
    return sorted(out)
