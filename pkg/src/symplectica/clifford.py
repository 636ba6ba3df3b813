"""Unit algebras behind the real Pauli and real Dirac matrices.

Two Clifford algebras are represented by real matrices:

* Cl(2,0) -- the split (Cockle) quaternions, represented by the four
  "real Pauli matrices" acting on 2x2 space: the identity, two symmetric
  traceless units ``beta1``, ``beta2`` squaring to +1, and one
  antisymmetric unit ``gamma = beta1*beta2`` squaring to -1.

* Cl(3,1) -- represented by the sixteen "real Dirac matrices" acting on
  4x4 space.  The units group into four scalars (1, gamma^1, gamma^2,
  gamma^3) and four 3-vectors (zeta_k, beta^1_k, beta^2_k, beta^3_k).
  ``gamma1`` is the symplectic form of 2-DoF particle optics.

The 4x4 representatives are fixed once and for all by tensor products of
the 2x2 units (gamma1 = 1 (x) gamma, beta2_1 = beta2 (x) beta2,
beta2_2 = 1 (x) beta1, beta2_3 = -beta1 (x) beta2, and the remaining
twelve derived through the multiplication rules).  All representatives
are integer-valued orthogonal matrices, so unit products and the
multiplication table are exact.

A 4x4 element is handled in "component form": a 4x4 array of
coefficients with the scalar at [0,0], the zeta coefficients in column 0,
the gamma coefficients in row 0, and the beta^m coefficients in column m
(rows 1..3).  This component matrix must not be confused with the
representative matrix the element stands for.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Algebra",
    "UnitId",
    "SignedUnit",
    "CliffordElement2",
    "CliffordElement4",
    "CL20_UNIT_NAMES",
    "CL31_UNIT_NAMES",
    "unit_rep",
    "mul_units",
    "compose2",
    "decompose2",
    "compose4",
    "decompose4",
    "baumgarten_map",
]


class Algebra(enum.Enum):
    CL20 = "Cl(2,0)"
    CL31 = "Cl(3,1)"


CL20_UNIT_NAMES = ("one", "beta1", "beta2", "gamma")

CL31_UNIT_NAMES = (
    "one",
    "zeta1", "zeta2", "zeta3",
    "gamma1", "gamma2", "gamma3",
    "beta1_1", "beta1_2", "beta1_3",
    "beta2_1", "beta2_2", "beta2_3",
    "beta3_1", "beta3_2", "beta3_3",
)


@dataclass(frozen=True)
class UnitId:
    """One basis unit of Cl(2,0) or Cl(3,1), e.g. UnitId(Algebra.CL31, 'beta2_3')."""

    algebra: Algebra
    name: str

    def __post_init__(self):
        names = CL20_UNIT_NAMES if self.algebra is Algebra.CL20 else CL31_UNIT_NAMES
        if self.name not in names:
            raise ValueError(f"unknown unit {self.name!r} for {self.algebra.value}")


@dataclass(frozen=True)
class SignedUnit:
    """A unit together with a sign, the closed form of any product of units."""

    sign: int
    unit: UnitId

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")


# 2x2 representatives (real Pauli matrices)
_ONE2 = np.eye(2, dtype=np.int64)
_BETA1 = np.array([[1, 0], [0, -1]], dtype=np.int64)
_BETA2 = np.array([[0, 1], [1, 0]], dtype=np.int64)
_GAMMA = np.array([[0, 1], [-1, 0]], dtype=np.int64)

_REP2 = {
    "one": _ONE2,
    "beta1": _BETA1,
    "beta2": _BETA2,
    "gamma": _GAMMA,
}

# 4x4 representatives from the tensor-product table
_REP4 = {
    "one": np.kron(_ONE2, _ONE2),
    "zeta1": -np.kron(_BETA1, _GAMMA),
    "zeta2": -np.kron(_GAMMA, _ONE2),
    "zeta3": -np.kron(_BETA2, _GAMMA),
    "gamma1": np.kron(_ONE2, _GAMMA),
    "gamma2": np.kron(_GAMMA, _BETA1),
    "gamma3": np.kron(_GAMMA, _BETA2),
    "beta1_1": np.kron(_BETA1, _ONE2),
    "beta1_2": -np.kron(_GAMMA, _GAMMA),
    "beta1_3": np.kron(_BETA2, _ONE2),
    "beta2_1": np.kron(_BETA2, _BETA2),
    "beta2_2": np.kron(_ONE2, _BETA1),
    "beta2_3": -np.kron(_BETA1, _BETA2),
    "beta3_1": -np.kron(_BETA2, _BETA1),
    "beta3_2": np.kron(_ONE2, _BETA2),
    "beta3_3": np.kron(_BETA1, _BETA1),
}

for _m in _REP2.values():
    _m.setflags(write=False)
for _m in _REP4.values():
    _m.setflags(write=False)


def _build_mul_table(reps):
    """Signed multiplication table from the integer representatives.

    Products of units close onto signed units; that closure is exact in
    integer arithmetic, so the table is found by direct matching.
    """
    table = {}
    items = list(reps.items())
    for name_a, rep_a in items:
        for name_b, rep_b in items:
            prod = rep_a @ rep_b
            for name_c, rep_c in items:
                if np.array_equal(prod, rep_c):
                    table[name_a, name_b] = (1, name_c)
                    break
                if np.array_equal(prod, -rep_c):
                    table[name_a, name_b] = (-1, name_c)
                    break
            else:
                raise AssertionError(
                    f"product {name_a}*{name_b} is not a signed unit"
                )
    return table


_MUL2 = _build_mul_table(_REP2)
_MUL4 = _build_mul_table(_REP4)


def unit_rep(u: UnitId) -> np.ndarray:
    """Float copy of the canonical representative matrix of a unit."""
    table = _REP2 if u.algebra is Algebra.CL20 else _REP4
    return table[u.name].astype(float)


def mul_units(a: UnitId, b: UnitId) -> SignedUnit:
    """Product of two units of the same algebra as a signed unit."""
    if a.algebra is not b.algebra:
        raise ValueError("cannot multiply units of different algebras")
    table = _MUL2 if a.algebra is Algebra.CL20 else _MUL4
    sign, name = table[a.name, b.name]
    return SignedUnit(sign, UnitId(a.algebra, name))


@dataclass(frozen=True)
class CliffordElement2:
    """Cockle quaternion z0*1 + z1*beta1 + z2*beta2 + z3*gamma."""

    z0: float
    z1: float
    z2: float
    z3: float

    @property
    def matrix(self) -> np.ndarray:
        """The 2x2 representative [[z0+z1, z2+z3], [z2-z3, z0-z1]]."""
        return np.array([
            [self.z0 + self.z1, self.z2 + self.z3],
            [self.z2 - self.z3, self.z0 - self.z1],
        ])

    @classmethod
    def from_matrix(cls, m) -> "CliffordElement2":
        return decompose2(m)


def compose2(z: CliffordElement2) -> np.ndarray:
    """Representative 2x2 matrix of a Cockle quaternion."""
    return z.matrix


def decompose2(m) -> CliffordElement2:
    """Coefficients of an arbitrary real 2x2 matrix on the Cl(2,0) basis.

    Each coefficient is the scalar product (u|M) = Re(u^T M) = tr(u^T M)/2;
    the units are orthonormal for this product.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    coeffs = [float(np.trace(_REP2[n].T @ m)) / 2.0 for n in CL20_UNIT_NAMES]
    return CliffordElement2(*coeffs)


# component-matrix slot (kappa, lam) -> unit name
def _slot_name(kappa: int, lam: int) -> str:
    if kappa == 0 and lam == 0:
        return "one"
    if lam == 0:
        return f"zeta{kappa}"
    if kappa == 0:
        return f"gamma{lam}"
    return f"beta{lam}_{kappa}"


_SLOT_REPS = np.array(
    [[_REP4[_slot_name(k, l)] for l in range(4)] for k in range(4)], dtype=float
)
_SLOT_REPS.setflags(write=False)


@dataclass(frozen=True, eq=False)
class CliffordElement4:
    """A real 4x4 matrix in Cl(3,1) component form.

    ``components[kappa, lam]`` holds the coefficient of the unit in slot
    (kappa, lam): scalar at (0,0), zeta_k at (k,0), gamma^m at (0,m) and
    beta^m_k at (k,m).
    """

    components: np.ndarray

    def __post_init__(self):
        comp = np.array(self.components, dtype=float)
        if comp.shape != (4, 4):
            raise ValueError("component matrix must be 4x4")
        comp.setflags(write=False)
        object.__setattr__(self, "components", comp)

    @property
    def matrix(self) -> np.ndarray:
        return compose4(self)

    @classmethod
    def from_matrix(cls, m) -> "CliffordElement4":
        return decompose4(m)

    def coefficient(self, unit: UnitId) -> float:
        """Coefficient of one Cl(3,1) unit."""
        if unit.algebra is not Algebra.CL31:
            raise ValueError("expected a Cl(3,1) unit")
        for k in range(4):
            for l in range(4):
                if _slot_name(k, l) == unit.name:
                    return float(self.components[k, l])
        raise AssertionError  # unreachable


def compose4(z: CliffordElement4) -> np.ndarray:
    """Representative 4x4 matrix: the coefficient-weighted sum of unit reps."""
    return np.tensordot(z.components, _SLOT_REPS, axes=([0, 1], [0, 1]))


def decompose4(m) -> CliffordElement4:
    """Component matrix of an arbitrary real 4x4 matrix.

    Uses the trace formula coefficient = tr(u^T M)/4, valid for any input
    because the sixteen units are orthonormal under (A|B) = Re(A^T B).
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    comp = np.tensordot(_SLOT_REPS, m, axes=([2, 3], [0, 1])) / 4.0
    return CliffordElement4(comp)


# Alternative single-index numbering gamma_n (n = 0..15) of the real Dirac
# matrices that parts of the accelerator-physics literature use.
_BAUMGARTEN = (
    (1, "gamma1"), (1, "beta2_3"), (1, "beta2_1"), (-1, "beta2_2"),
    (-1, "beta3_3"), (-1, "beta3_1"), (1, "beta3_2"), (-1, "zeta3"),
    (-1, "zeta1"), (1, "zeta2"), (1, "gamma2"), (-1, "beta1_3"),
    (-1, "beta1_1"), (1, "beta1_2"), (-1, "gamma3"), (1, "one"),
)


def baumgarten_map(n: int) -> SignedUnit:
    """Signed Cl(3,1) unit corresponding to literature index n in 0..15."""
    if not 0 <= n <= 15:
        raise ValueError("index must be in 0..15")
    sign, name = _BAUMGARTEN[n]
    return SignedUnit(sign, UnitId(Algebra.CL31, name))
