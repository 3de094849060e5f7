"""Even integral lattices with exact pairing, discriminant and divisibility.

Vectors are plain integer tuples in the lattice's fixed basis.

The ambient lattice U^3 + E8(-1)^2 + <-2> is modelled by its summand
U + U + <-2>.  Every embedded class used here lies in that summand, and the
omitted summands U + E8(-1)^2 are orthogonal to it, so the extra entries of
gram * v are all zero for such a class and the gcd does not change.
Divisibilities computed in the rank-5 model agree with the rank-23 ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Sequence

from .contraction import ContractionType, check_congruence
from .errors import DomainError

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntegralLattice:
    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise DomainError("Gram matrix must be square and non-empty")
        for i in range(n):
            if gram[i][i] % 2:
                raise DomainError("lattice is not even")
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise DomainError("Gram matrix is not symmetric")
        if self.labels is not None and len(self.labels) != n:
            raise DomainError("one label per basis vector")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.rank:
            raise DomainError(f"vector of length {len(v)} in a rank {self.rank} lattice")

    def image(self, v: Sequence[int]) -> Vector:
        """gram * v"""
        self._check(v)
        return tuple(sum(g * x for g, x in zip(row, v)) for row in self.gram)


def q_value(L: IntegralLattice, v: Sequence[int]) -> int:
    return pairing(L, v, v)


def pairing(L: IntegralLattice, v: Sequence[int], w: Sequence[int]) -> int:
    L._check(w)
    return sum(x * y for x, y in zip(L.image(v), w))


def _nonzero(v: Sequence[int]) -> None:
    if not any(v):
        raise DomainError("zero vector")


def divisibility(L: IntegralLattice, v: Sequence[int]) -> int:
    """Positive generator of {(v, w) : w in L}, i.e. the gcd of gram * v."""
    _nonzero(v)
    g = 0
    for x in L.image(v):
        g = gcd(g, x)
    if g == 0:
        raise DomainError("vector lies in the radical of the lattice")
    return g


def is_primitive(L: IntegralLattice, v: Sequence[int]) -> bool:
    L._check(v)
    _nonzero(v)
    return content(v) == 1


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def normalize_sign(v: Sequence[int]) -> Vector:
    """Representative of +-v whose first nonzero coordinate is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def primitive_part(v: Sequence[int]) -> Vector:
    g = content(v)
    return tuple(x // g for x in v)


def discriminant(L: IntegralLattice) -> int:
    """Exact determinant of the Gram matrix (fraction-free Bareiss elimination)."""
    m = [list(row) for row in L.gram]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def primitive_isotropic_rays(L: IntegralLattice) -> list[Vector]:
    """Primitive v with q(v) = 0, one per ray up to sign, for an indefinite rank-2 L."""
    if L.rank != 2:
        raise DomainError("isotropic rays are only computed in rank two")
    (A, B), (_, C) = L.gram
    disc = B * B - A * C  # = -det
    if disc <= 0:
        raise DomainError("lattice is not indefinite")
    s = isqrt(disc)
    if s * s != disc:
        return []
    # A x^2 + 2B xy + C y^2 = 0
    if A == 0:
        candidates = [(1, 0), (C, -2 * B)]
    else:
        candidates = [(-B + s, A), (-B - s, A)]
    return sorted({normalize_sign(primitive_part(v)) for v in candidates})


def hyperbolic_plane() -> IntegralLattice:
    return IntegralLattice(((0, 1), (1, 0)))


def picard_hk(d: int) -> IntegralLattice:
    """<2d> + <-2> in the basis (H, tau)."""
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    return IntegralLattice(((2 * d, 0), (0, -2)), labels=("H", "tau"))


AMBIENT = IntegralLattice(
    (
        (0, 1, 0, 0, 0),
        (1, 0, 0, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, 1, 0, 0),
        (0, 0, 0, 0, -2),
    ),
    labels=("u1+", "u1-", "u2+", "u2-", "delta"),
)


def embed_pair(kind: ContractionType, d: int) -> tuple[Vector, Vector]:
    """Standard ambient images of (H, tau) for the types H, B1 and M3.

    H:  H = (1,d)_1,                 tau = delta
    B1: H = (1,d)_1,                 tau = (1,-d)_1 + 2(1,d/4)_2 + delta
    M3: H = 2(1,(d+1)/4)_1 + delta,  tau = (1,-1)_2
    """
    kind = ContractionType(kind)
    check_congruence(kind, d)
    if kind is ContractionType.H:
        return (1, d, 0, 0, 0), (0, 0, 0, 0, 1)
    if kind is ContractionType.B1:
        return (1, d, 0, 0, 0), (1, -d, 2, d // 2, 1)
    if kind is ContractionType.M3:
        return (2, (d + 1) // 2, 0, 0, 1), (0, 0, 1, -1, 0)
    raise DomainError(f"no ambient model for type {kind}")


def ambient_divisibility_rule(kind: ContractionType, d: int):
    """div(r*H + s*tau) computed in the ambient model of ``embed_pair(kind, d)``."""
    H, tau = embed_pair(kind, d)

    def rule(r: int, s: int) -> int:
        return divisibility(AMBIENT, tuple(r * h + s * t for h, t in zip(H, tau)))

    return rule
