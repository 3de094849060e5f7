"""Extremal rays of the movable cone of hyper-Kaehler fourfolds of K3^[2]-type with Picard rank two."""

from .contraction import ContractionType
from .errors import ConsistencyError, DomainError, LagrangianCase, OrbitLimitError
from .fano import (
    FanoRow,
    admissible_star,
    admissible_star_prime,
    analyze_fano,
    fano_divisibility,
    fano_gram,
    has_H_ray,
    minus_two_chamber,
    ray_profile,
)
from .hilbert import HilbertRow, analyze_hilbert_square, hilbert_table
from .lattice import IntegralLattice, divisibility, embed_pair, pairing, q_value
from .pell import PellFundamental, is_solvable, minimal_pell, pell_general, pell_orbit, square_pell_solutions
from .rays import (
    RayPairReport,
    analyze,
    classify_pair,
    conic_invariants,
    flopping_walls,
    fm_partner_count,
    lagrangian_ray,
    second_ray,
)

__all__ = [
    "ConsistencyError", "ContractionType", "DomainError", "FanoRow", "HilbertRow", "IntegralLattice",
    "LagrangianCase", "OrbitLimitError", "PellFundamental", "RayPairReport", "admissible_star",
    "admissible_star_prime", "analyze", "analyze_fano", "analyze_hilbert_square", "classify_pair",
    "conic_invariants", "divisibility", "embed_pair", "fano_divisibility", "fano_gram", "flopping_walls",
    "fm_partner_count", "has_H_ray", "hilbert_table", "is_solvable", "lagrangian_ray", "minimal_pell",
    "minus_two_chamber", "pairing", "pell_general", "pell_orbit", "q_value", "ray_profile", "second_ray",
    "square_pell_solutions",
]
