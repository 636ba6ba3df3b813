"""Symplectic normalization, diagonalization and decoupling of beam matrices.

The package splits by degrees of freedom:

* :mod:`symplectica.pauli` -- 1 DoF, 2x2 beam matrices (real Pauli units)
* :mod:`symplectica.dirac` -- 2 DoF, 4x4 beam matrices (real Dirac units)
* :mod:`symplectica.bunch` -- 3 DoF, 6x6 bunch matrices (eigen-based)

with :mod:`symplectica.clifford` holding the unit algebras and component
calculus, :mod:`symplectica.smallmat` the brute-force oracles,
:mod:`symplectica.viz` the stereo SVG renderer and :mod:`symplectica.cli`
the command-line entry point.
"""

from .errors import (
    DegenerateDirectionError,
    DegenerateEmittanceError,
    NonPhysicalBeamError,
    SingularMatrixError,
    SymplecticaError,
)

__version__ = "1.0.0"

__all__ = [
    "SymplecticaError",
    "NonPhysicalBeamError",
    "SingularMatrixError",
    "DegenerateDirectionError",
    "DegenerateEmittanceError",
    "__version__",
]
