"""Extremal rays of the Hilbert square S^[2] of a degree-e K3 surface of Picard rank one."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .contraction import ContractionType
from .errors import DomainError
from .lattice import Vector
from .rays import RayPairReport, RayProfile, analyze


@dataclass(frozen=True)
class HilbertRow:
    e: int
    pell: tuple[int, int] | None
    types: tuple[ContractionType, ...]
    H_prime: Vector | None
    tau_prime: Vector | None
    lagrangian: Vector | None
    flopping_walls: tuple[Vector, ...]
    report: RayPairReport

    @property
    def d(self) -> int:
        return self.e // 2

    @property
    def det_abs(self) -> int:
        return 2 * self.e

    @property
    def model_count(self) -> int:
        return len(self.flopping_walls) + 1


def analyze_hilbert_square(e: int) -> HilbertRow:
    """Row for S of degree e; S^[2] always has one ray of type H."""
    if not isinstance(e, int) or isinstance(e, bool) or e <= 0:
        raise DomainError(f"e must be a positive even integer, got {e!r}")
    if e % 2:
        raise DomainError("e must be even")
    report = analyze(e // 2, ContractionType.H)
    second = report.rays[1]
    lag = report.lagrangian
    return HilbertRow(
        e=e,
        pell=tuple(report.pell) if report.pell else None,
        types=report.types,
        H_prime=second.H if isinstance(second, RayProfile) else None,
        tau_prime=second.tau if isinstance(second, RayProfile) else None,
        lagrangian=lag.isotropic if lag else None,
        flopping_walls=report.flopping_walls,
        report=report,
    )


def hilbert_table(es: Iterable[int]) -> list[HilbertRow]:
    return [analyze_hilbert_square(e) for e in es]
