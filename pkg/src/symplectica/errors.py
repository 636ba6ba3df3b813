"""Exception types shared across the package."""


class SymplecticaError(Exception):
    """Base class for all package-specific errors."""


class NonPhysicalBeamError(SymplecticaError):
    """The beam/bunch matrix is not physical (not positive-definite, or the
    emittance formulas produce a negative radicand / non-positive emittance)."""


class SingularMatrixError(SymplecticaError):
    """A matrix that must be inverted is singular to working precision."""


class DegenerateDirectionError(SymplecticaError):
    """A recipe formula degenerates (zero denominator direction) while its
    goal quantity is still nonzero, so no parameter choice can reach the goal."""


class DegenerateEmittanceError(SymplecticaError):
    """Two emittances coincide to working precision; the eigenvector-based
    normal decomposition requires distinct phase-space planes."""
