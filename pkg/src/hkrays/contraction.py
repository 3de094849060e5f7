"""The five contraction types and their per-type invariants.

Heegner divisor labels are carried as opaque strings; nothing depends on them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError


class ContractionType(str, enum.Enum):
    H = "H"
    M1 = "M1"
    M3 = "M3"
    B1 = "B1"
    B0 = "B0"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TypeData:
    heegner: str
    div_H: int
    div_tau: int
    d_mod4: int | None  # required residue of d mod 4; None means any
    det_factor: int  # |det Pic| = det_factor * d
    tx_relation: str  # "T(S)" or "T(S,alpha)"
    hs_numerator: int  # h_S^2 = hs_numerator * d / hs_denominator
    hs_denominator: int
    brauer: tuple[Fraction, Fraction] | None  # (h_S.B, B^2) mod Z


HALF = Fraction(1, 2)

TABLE: dict[ContractionType, TypeData] = {
    ContractionType.H: TypeData("D^(1)_{2d,2d,alpha}", 1, 2, None, 4, "T(S)", 2, 1, None),
    ContractionType.M1: TypeData("D^(1)_{2d,2d,beta}", 1, 1, 1, 1, "T(S)", 2, 1, None),
    ContractionType.M3: TypeData("D^(2)_{2d,2d,alpha}", 2, 1, 3, 4, "T(S)", 2, 1, None),
    ContractionType.B1: TypeData("D^(1)_{2d,2d,beta}", 1, 1, 0, 4, "T(S,alpha)", 1, 2, (HALF, HALF)),
    ContractionType.B0: TypeData("D^(1)_{2d,8d,alpha}", 1, 1, None, 4, "T(S,alpha)", 2, 1, (Fraction(0), HALF)),
}


def check_congruence(kind: ContractionType, d: int) -> None:
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    need = TABLE[kind].d_mod4
    if need is not None and d % 4 != need:
        raise DomainError(f"type {kind} requires d = {need} mod 4, got d={d}")


def type_from_divisibilities(div_H: int, div_tau: int) -> ContractionType:
    """Distinguish H, M3, B1 by the divisibilities of H and tau."""
    if div_tau == 2 and div_H == 1:
        return ContractionType.H
    if div_H == 2 and div_tau == 1:
        return ContractionType.M3
    if div_H == 1 and div_tau == 1:
        return ContractionType.B1
    raise ConsistencyError(f"impossible divisibility pair div(H)={div_H}, div(tau)={div_tau}")
