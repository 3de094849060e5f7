"""Exception types shared by the library and the CLI."""

import os


class DomainError(ValueError):
    """Input outside the domain of an operation (bad e, d, congruence, ...)."""


class LagrangianCase(DomainError):
    """The second extremal ray is isotropic, so there is no second contraction."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed. Never downgrade this to a domain error."""


class OrbitLimitError(ConsistencyError):
    """An orbit walk or bounded enumeration exceeded the safety cap."""


DEFAULT_MAX_ORBIT = 10**6


def max_orbit() -> int:
    """Iteration cap for orbit walks; ``HKRAYS_MAX_ORBIT`` overrides the default."""
    raw = os.environ.get("HKRAYS_MAX_ORBIT")
    if raw is None:
        return DEFAULT_MAX_ORBIT
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"HKRAYS_MAX_ORBIT must be an integer, got {raw!r}") from None
    if value <= 0:
        raise DomainError("HKRAYS_MAX_ORBIT must be positive")
    return value
