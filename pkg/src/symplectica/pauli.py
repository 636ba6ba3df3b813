"""One degree of freedom: beam optics with real Pauli matrices.

A symmetric 2x2 beam matrix is the Cockle quaternion
``Sigma = 1*sigma0 + beta_vec . sigma_vec`` (no gamma part).  Symplectic
maps split into boosts exp(beta.e chi), which mix the scalar part with
the vector component along e hyperbolically, and rotations exp(gamma psi),
which turn the vector part clockwise by 2*psi.  The emittance
sqrt(sigma0^2 - |sigma_vec|^2) = sqrt(det Sigma) is invariant under both,
and normalization means boosting/rotating the vector part away entirely.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .clifford import CliffordElement2, decompose2
from .errors import NonPhysicalBeamError, SingularMatrixError
from .pipeline import TransformPipeline

__all__ = [
    "GAMMA2",
    "BeamMatrix2",
    "PauliTransform",
    "emittance2",
    "apply_boost2",
    "apply_rotation2",
    "diagonalize2",
    "normalize2",
    "invariance2",
    "cockle_det_eig_inv",
]

#: symplectic form of 1-DoF phase space
GAMMA2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
GAMMA2.setflags(write=False)

_BETA1 = np.array([[1.0, 0.0], [0.0, -1.0]])
_BETA2 = np.array([[0.0, 1.0], [1.0, 0.0]])


def _unit2(vec) -> np.ndarray:
    e = np.asarray(vec, dtype=float)
    if e.shape != (2,):
        raise ValueError("axis must be a 2-vector")
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise ValueError("axis must have unit norm")
    return e


def _atanh_checked(t: float) -> float:
    if abs(t) >= 1.0 - 1e-12:
        raise NonPhysicalBeamError(f"boost parameter tanh(2*chi) = {t} out of range")
    return math.atanh(t)


@dataclass(frozen=True, eq=False)
class BeamMatrix2:
    """Symmetric beam matrix, stored as scalar part + 2-vector part."""

    sigma0: float
    sigma_vec: np.ndarray

    def __post_init__(self):
        v = np.array(self.sigma_vec, dtype=float)
        if v.shape != (2,):
            raise ValueError("sigma_vec must be a 2-vector")
        v.setflags(write=False)
        object.__setattr__(self, "sigma0", float(self.sigma0))
        object.__setattr__(self, "sigma_vec", v)

    @property
    def matrix(self) -> np.ndarray:
        s0, (s1, s2) = self.sigma0, self.sigma_vec
        return np.array([[s0 + s1, s2], [s2, s0 - s1]])

    @classmethod
    def from_matrix(cls, m, tol: float = 1e-9) -> "BeamMatrix2":
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        if np.abs(m - m.T).max() > tol * max(1.0, np.abs(m).max()):
            raise ValueError("beam matrix must be symmetric")
        z = decompose2((m + m.T) / 2.0)
        return cls(z.z0, np.array([z.z1, z.z2]))


@dataclass(frozen=True, eq=False)
class PauliTransform:
    """Elementary symplectic map: boost along a unit axis, or rotation."""

    kind: str  # "boost" | "rotation"
    angle: float
    axis: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("boost", "rotation"):
            raise ValueError(f"unknown transform kind {self.kind!r}")
        if self.kind == "boost":
            object.__setattr__(self, "axis", _unit2(self.axis))
        elif self.axis is not None:
            raise ValueError("rotation takes no axis")
        object.__setattr__(self, "angle", float(self.angle))

    @property
    def matrix(self) -> np.ndarray:
        if self.kind == "rotation":
            return math.cos(self.angle) * np.eye(2) + math.sin(self.angle) * GAMMA2
        gen = self.axis[0] * _BETA1 + self.axis[1] * _BETA2
        return math.cosh(self.angle) * np.eye(2) + math.sinh(self.angle) * gen


def emittance2(beam: BeamMatrix2) -> float:
    """sqrt(sigma0^2 - |sigma_vec|^2); raises for a negative discriminant."""
    disc = beam.sigma0**2 - beam.sigma_vec @ beam.sigma_vec
    if disc < 0.0:
        raise NonPhysicalBeamError(f"negative emittance discriminant {disc}")
    return math.sqrt(disc)


def apply_boost2(beam: BeamMatrix2, axis, chi: float) -> BeamMatrix2:
    """Boost along a unit axis: scalar and parallel parts mix hyperbolically,
    the perpendicular component is untouched."""
    e = _unit2(axis)
    n = np.array([-e[1], e[0]])
    ch, sh = math.cosh(2 * chi), math.sinh(2 * chi)
    par = e @ beam.sigma_vec
    perp = n @ beam.sigma_vec
    s0 = ch * beam.sigma0 + sh * par
    par_new = ch * par + sh * beam.sigma0
    return BeamMatrix2(s0, e * par_new + n * perp)


def apply_rotation2(beam: BeamMatrix2, psi: float) -> BeamMatrix2:
    """Rotate the vector part clockwise by 2*psi; the scalar part is fixed."""
    c, s = math.cos(2 * psi), math.sin(2 * psi)
    v = beam.sigma_vec
    turned = np.array([v[1], -v[0]])
    return BeamMatrix2(beam.sigma0, c * v + s * turned)


def diagonalize2(beam: BeamMatrix2) -> tuple[PauliTransform, BeamMatrix2]:
    """Rotation with tan(2*psi) = sigma2/sigma1 that zeroes the beta2 part.

    The two-argument arctangent lands the rotated vector on the positive
    beta1 side; a beam with no vector part gets the zero rotation.
    """
    s1, s2 = beam.sigma_vec
    psi = 0.0 if (s1 == 0.0 and s2 == 0.0) else math.atan2(s2, s1) / 2.0
    rot = PauliTransform("rotation", psi)
    return rot, apply_rotation2(beam, psi)


def normalize2(beam: BeamMatrix2, strategy: str = "two_step"):
    """Symplectic transform to normal form (emittance times identity).

    strategy 'two_step' diagonalizes first and then boosts along beta1
    with tanh(2*chi) = -sigma1'/sigma0'; strategy 'direct' uses the single
    boost along sigma_vec/|sigma_vec| with tanh(2*chi) = -|sigma_vec|/sigma0.
    Returns (pipeline, normal_beam).
    """
    emittance2(beam)  # discriminant gate
    if beam.sigma0 <= 0.0:
        raise NonPhysicalBeamError("beam matrix is not positive definite")
    pipeline = TransformPipeline(order=2)
    norm_v = float(np.linalg.norm(beam.sigma_vec))
    if norm_v <= 1e-14 * max(1.0, abs(beam.sigma0)):
        return pipeline, beam
    if strategy == "two_step":
        rot, diag = diagonalize2(beam)
        pipeline = pipeline.extended(rot)
        chi = _atanh_checked(-diag.sigma_vec[0] / diag.sigma0) / 2.0
        boost = PauliTransform("boost", chi, axis=np.array([1.0, 0.0]))
        return pipeline.extended(boost), apply_boost2(diag, boost.axis, chi)
    if strategy == "direct":
        e = beam.sigma_vec / norm_v
        chi = _atanh_checked(-norm_v / beam.sigma0) / 2.0
        boost = PauliTransform("boost", chi, axis=e)
        return pipeline.extended(boost), apply_boost2(beam, e, chi)
    raise ValueError(f"unknown strategy {strategy!r}")


def invariance2(normalizer: np.ndarray, psi: float) -> np.ndarray:
    """I(psi) = N exp(gamma psi) N^-1 for a normalizer Sigma = N (eps*1) N^T.

    Every member of this one-parameter group leaves the original beam
    matrix invariant under congruence.
    """
    n = np.asarray(normalizer, dtype=float)
    rot = PauliTransform("rotation", psi).matrix
    return n @ rot @ np.linalg.inv(n)


def cockle_det_eig_inv(z: CliffordElement2):
    """Closed-form determinant, eigenvalue pair and inverse of a Cockle quaternion.

    det = z0^2 - z1^2 - z2^2 + z3^2 and lambda_pm = z0 +- sqrt(z1^2+z2^2-z3^2);
    the eigenvalues become a complex-conjugate pair when the radicand is
    negative.  The inverse is the conjugate (vector and gamma parts negated)
    divided by the determinant.
    """
    det = z.z0**2 - z.z1**2 - z.z2**2 + z.z3**2
    rad = z.z1**2 + z.z2**2 - z.z3**2
    root = math.sqrt(rad) if rad >= 0.0 else cmath.sqrt(rad)
    eigs = (z.z0 + root, z.z0 - root)
    if abs(det) <= 1e-14 * max(1.0, z.z0**2 + z.z1**2 + z.z2**2 + z.z3**2):
        raise SingularMatrixError("Cockle quaternion has zero determinant")
    inverse = CliffordElement2(z.z0 / det, -z.z1 / det, -z.z2 / det, -z.z3 / det)
    return det, eigs, inverse
