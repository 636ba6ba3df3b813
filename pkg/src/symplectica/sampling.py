"""Random physical beam/bunch matrices for tests and the gen command.

A draw is M M^T for a standard-normal square M, shifted by the identity
until comfortably positive definite; draws whose phase-space planes are
too close to degenerate (ill-conditioned for the decoupling recipes) are
rejected and redrawn.
"""

from __future__ import annotations

import numpy as np

from . import bunch, dirac, pauli
from .errors import SymplecticaError

__all__ = ["random_beam2", "random_beam4", "random_bunch6", "random_matrix"]

_MAX_SHIFTS = 40
_MAX_DRAWS = 200


def random_beam2(rng: np.random.Generator) -> pauli.BeamMatrix2:
    for _ in range(_MAX_DRAWS):
        m = rng.standard_normal((2, 2))
        s = m @ m.T
        for _ in range(_MAX_SHIFTS):
            beam = pauli.BeamMatrix2.from_matrix(s)
            if beam.sigma0**2 - beam.sigma_vec @ beam.sigma_vec > 0.05:
                return beam
            s = s + np.eye(2)
    raise AssertionError("failed to draw a physical 2x2 beam")


def random_beam4(rng: np.random.Generator) -> dirac.BeamMatrix4:
    for _ in range(_MAX_DRAWS):
        m = rng.standard_normal((4, 4))
        s = m @ m.T
        for _ in range(_MAX_SHIFTS):
            beam = dirac.BeamMatrix4.from_matrix(s)
            try:
                e1, e2 = dirac.emittances4(beam)
            except SymplecticaError:
                s = s + np.eye(4)
                continue
            a = dirac.skew_of_sigma(beam)
            rad = float(a.avec0 @ a.avec0) - a.a20**2 - a.a30**2
            if e2 > 0.2 and rad > 0.05:
                if e1 - e2 > 0.05 * e1:
                    return beam
                break  # planes nearly degenerate: redraw
            s = s + np.eye(4)
    raise AssertionError("failed to draw a physical 4x4 beam")


def random_bunch6(rng: np.random.Generator) -> np.ndarray:
    for _ in range(_MAX_DRAWS):
        m = rng.standard_normal((6, 6))
        s = m @ m.T
        for _ in range(_MAX_SHIFTS):
            try:
                eps = bunch.emittances6(s)
            except SymplecticaError:
                s = s + np.eye(6)
                continue
            if min(eps) > 0.2:
                if min(eps[i] - eps[i + 1] for i in range(2)) > 0.02 * eps[0]:
                    return s
                break  # planes nearly degenerate: redraw
            s = s + np.eye(6)
    raise AssertionError("failed to draw a physical 6x6 bunch")


def random_matrix(rng: np.random.Generator, dof: int) -> np.ndarray:
    """Representative matrix of a random physical beam with 1, 2 or 3 DoF."""
    if dof == 1:
        return random_beam2(rng).matrix
    if dof == 2:
        return random_beam4(rng).matrix
    if dof == 3:
        return random_bunch6(rng)
    raise ValueError("dof must be 1, 2 or 3")
