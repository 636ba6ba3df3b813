"""Two degrees of freedom: beam optics with real Dirac matrices.

The symmetric 4x4 beam matrix decomposes as
``Sigma = 1*sigma00 + beta1_vec.v1 + beta2_vec.v2 + beta3_vec.v3``:
one scalar and three 3-vectors.  Phase-space coordinates are ordered
(x, x', y, y') and ``gamma^1`` is the symplectic form.

Determinants, inverses and the two emittances have closed forms through
the antisymmetric product A = Sigma gamma^1 Sigma.  Symplectic maps are
generated by four families of elementary transformations:

* zeta-rotations  exp(zeta.e psi): turn all three vectors cw around e by 2*psi,
* gamma-rotations exp(gamma^1 phi): mix v2 and v3, fixing v1,
* beta^2-boosts   exp(beta2.e chi): mix sigma00 with v2 along e, and the
  perpendicular parts of v1 and v3,
* beta^3-boosts   exp(beta3.e chi): same with v2 and v3 exchanged (and a
  sign flip in the perpendicular mixing).

On top of the closed transformation formulas this module implements the
parameter selectors and multi-step recipes: pairwise decoupling, two
diagonalization strategies, normalization by a symplectic rescale, the
invariance group of a beam matrix, single-coordinate decoupling through
the 3D polar decomposition, and the left/right action of units on
component matrices.

Angle conventions: every tan equation is solved on the branch with the
smallest rotation angle (fold of the two-argument arctangent into
(-pi/2, pi/2] for the doubled angle), which keeps the sign of the aligned
component; tanh equations use atanh with arguments validated against
[-1, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clifford import CliffordElement4, UnitId, Algebra, decompose4, unit_rep, _REP4
from .errors import (
    DegenerateDirectionError,
    NonPhysicalBeamError,
    SingularMatrixError,
)
from .pipeline import TransformPipeline

__all__ = [
    "GAMMA4",
    "BeamMatrix4",
    "SkewA",
    "ElementaryTransform",
    "skew_of_sigma",
    "det_antisym4",
    "det_sym4",
    "det_general4",
    "inv_antisym4",
    "inv_sym4",
    "inv_general4",
    "emittances4",
    "apply_zeta",
    "apply_gamma",
    "apply_beta2",
    "apply_beta3",
    "apply_transform",
    "select_boost",
    "select_gamma_orthogonalize",
    "decouple_pair",
    "diagonalize4",
    "normalize4",
    "decouple_single",
    "polar3",
    "axis_angle_from_rotation",
    "component_side_mul",
    "invariance4",
    "PAIRINGS",
    "PAIR_GROUPS",
    "SINGLE_COORDS",
    "BOOST_GOALS",
]

#: symplectic form of 2-DoF phase space (representative of gamma^1)
GAMMA4 = unit_rep(UnitId(Algebra.CL31, "gamma1"))
GAMMA4.setflags(write=False)

_ZETA_REPS = [_REP4[f"zeta{k}"].astype(float) for k in (1, 2, 3)]
_BETA_REPS = {
    m: [_REP4[f"beta{m}_{k}"].astype(float) for k in (1, 2, 3)] for m in (1, 2, 3)
}
_GAMMA1 = _REP4["gamma1"].astype(float)

PAIRINGS = ("xx_yy", "xy_xpyp", "xyp_xpy")
SINGLE_COORDS = ("x", "xp", "y", "yp")
BOOST_GOALS = (
    "suppress_v2",
    "suppress_v3",
    "kill_v2_dot_v1",
    "kill_v3_dot_v1",
    "kill_v2_dot_v3_via_beta2",
    "kill_v3_dot_v2_via_beta3",
)

_DEGENERATE_TOL = 1e-12


def _unit3(vec) -> np.ndarray:
    e = np.asarray(vec, dtype=float)
    if e.shape != (3,):
        raise ValueError("axis must be a 3-vector")
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise ValueError("axis must have unit norm")
    return e


def _atanh_checked(t: float) -> float:
    if abs(t) >= 1.0 - 1e-12:
        raise NonPhysicalBeamError(f"boost parameter tanh(2*chi) = {t} out of range")
    return math.atanh(t)


def _principal(two_angle: float) -> float:
    """Fold a doubled angle into (-pi/2, pi/2]: the smallest-rotation branch."""
    while two_angle > math.pi / 2:
        two_angle -= math.pi
    while two_angle <= -math.pi / 2:
        two_angle += math.pi
    return two_angle


@dataclass(frozen=True, eq=False)
class BeamMatrix4:
    """Symmetric 4x4 beam matrix in component form: scalar + three 3-vectors."""

    sigma00: float
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sigma00", float(self.sigma00))
        for name in ("v1", "v2", "v3"):
            v = np.array(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @property
    def components(self) -> np.ndarray:
        """4x4 component matrix: vectors sit in columns 1..3, rows 1..3."""
        comp = np.zeros((4, 4))
        comp[0, 0] = self.sigma00
        comp[1:, 1] = self.v1
        comp[1:, 2] = self.v2
        comp[1:, 3] = self.v3
        return comp

    @property
    def matrix(self) -> np.ndarray:
        return CliffordElement4(self.components).matrix

    @classmethod
    def from_components(cls, comp, tol: float = 1e-9) -> "BeamMatrix4":
        comp = np.asarray(comp, dtype=float)
        if comp.shape != (4, 4):
            raise ValueError("component matrix must be 4x4")
        scale = max(1.0, np.abs(comp).max())
        if max(np.abs(comp[1:, 0]).max(), np.abs(comp[0, 1:]).max()) > tol * scale:
            raise ValueError(
                "component matrix has antisymmetric (zeta/gamma) content; "
                "not a beam matrix"
            )
        return cls(comp[0, 0], comp[1:, 1], comp[1:, 2], comp[1:, 3])

    @classmethod
    def from_matrix(cls, m, tol: float = 1e-9) -> "BeamMatrix4":
        m = np.asarray(m, dtype=float)
        if m.shape != (4, 4):
            raise ValueError("expected a 4x4 matrix")
        if np.abs(m - m.T).max() > tol * max(1.0, np.abs(m).max()):
            raise ValueError("beam matrix must be symmetric")
        comp = decompose4((m + m.T) / 2.0).components
        return cls(comp[0, 0], comp[1:, 1], comp[1:, 2], comp[1:, 3])

    def vector(self, m: int) -> np.ndarray:
        return (self.v1, self.v2, self.v3)[m - 1]


@dataclass(frozen=True, eq=False)
class SkewA:
    """Antisymmetric element in component form: gamma parts a10/a20/a30 and
    zeta part avec0."""

    a10: float
    a20: float
    a30: float
    avec0: np.ndarray

    def __post_init__(self):
        v = np.array(self.avec0, dtype=float)
        if v.shape != (3,):
            raise ValueError("avec0 must be a 3-vector")
        v.setflags(write=False)
        object.__setattr__(self, "avec0", v)
        for name in ("a10", "a20", "a30"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def matrix(self) -> np.ndarray:
        m = self.a10 * _GAMMA1 + self.a20 * _REP4["gamma2"] + self.a30 * _REP4["gamma3"]
        for k in range(3):
            m = m + self.avec0[k] * _ZETA_REPS[k]
        return m


def skew_of_sigma(beam: BeamMatrix4) -> SkewA:
    """Components of A = Sigma gamma^1 Sigma, evaluated in closed form.

    A transforms like the beam matrix itself (A' = R A R^T), which is what
    makes its components the raw material of all the invariants.
    """
    s00, v1, v2, v3 = beam.sigma00, beam.v1, beam.v2, beam.v3
    a10 = s00**2 + v1 @ v1 - v2 @ v2 - v3 @ v3
    a20 = 2.0 * (v2 @ v1)
    a30 = 2.0 * (v3 @ v1)
    avec0 = 2.0 * (np.cross(v2, v3) - s00 * v1)
    return SkewA(a10, a20, a30, avec0)


def det_antisym4(a: SkewA) -> float:
    """Determinant of an antisymmetric 4x4 matrix (square of its Pfaffian)."""
    pf = a.a10**2 + a.a20**2 + a.a30**2 - float(a.avec0 @ a.avec0)
    return pf**2


def det_sym4(beam: BeamMatrix4) -> float:
    """Determinant of a symmetric 4x4 matrix via its skew product."""
    a = skew_of_sigma(beam)
    return a.a10**2 + a.a20**2 + a.a30**2 - float(a.avec0 @ a.avec0)


def _skew_of_general(z: CliffordElement4) -> SkewA:
    """Components of A = Z gamma^1 Z^T for an arbitrary element."""
    c = z.components
    g = np.empty((4, 4))
    # group lambda -> its four coefficients (scalar slot first, then vector)
    g[0] = (c[0, 0], c[1, 0], c[2, 0], c[3, 0])
    for m in (1, 2, 3):
        g[m] = (c[0, m], c[1, m], c[2, m], c[3, m])
    dot = g @ g.T
    a10 = dot[0, 0] + dot[1, 1] - dot[2, 2] - dot[3, 3]
    a20 = 2.0 * (dot[2, 1] - dot[0, 3])
    a30 = 2.0 * (dot[0, 2] + dot[3, 1])
    z0, z1, z2, z3 = c[1:, 0], c[1:, 1], c[1:, 2], c[1:, 3]
    s0, s1, s2, s3 = c[0, 0], c[0, 1], c[0, 2], c[0, 3]
    avec0 = 2.0 * (
        s1 * z0 - s0 * z1 + np.cross(z0, z1)
        + s3 * z2 - s2 * z3 + np.cross(z2, z3)
    )
    return SkewA(a10, a20, a30, avec0)


def det_general4(z: CliffordElement4) -> float:
    """Determinant of an arbitrary real 4x4 matrix from its components."""
    a = _skew_of_general(z)
    return a.a10**2 + a.a20**2 + a.a30**2 - float(a.avec0 @ a.avec0)


def _inv_skew_components(a: SkewA, scale: float) -> SkewA:
    den = a.a10**2 + a.a20**2 + a.a30**2 - float(a.avec0 @ a.avec0)
    if abs(den) <= 1e-12 * max(1.0, scale):
        raise SingularMatrixError("antisymmetric matrix is singular")
    return SkewA(-a.a10 / den, -a.a20 / den, -a.a30 / den, a.avec0 / den)


def inv_antisym4(a: SkewA) -> np.ndarray:
    """Closed-form inverse of an antisymmetric 4x4 matrix."""
    scale = a.a10**2 + a.a20**2 + a.a30**2 + float(a.avec0 @ a.avec0)
    return _inv_skew_components(a, scale).matrix


def inv_sym4(beam: BeamMatrix4) -> np.ndarray:
    """Closed-form inverse of a symmetric beam matrix:
    Sigma^-1 = gamma^1 Sigma A^-1 with A = Sigma gamma^1 Sigma."""
    a = skew_of_sigma(beam)
    scale = max(1.0, np.abs(beam.matrix).max()) ** 4
    ainv = _inv_skew_components(a, scale)
    return _GAMMA1 @ beam.matrix @ ainv.matrix


def inv_general4(z: CliffordElement4) -> np.ndarray:
    """Closed-form inverse of an arbitrary 4x4 matrix:
    Z^-1 = gamma^1 Z^T A^-1 with A = Z gamma^1 Z^T."""
    a = _skew_of_general(z)
    scale = max(1.0, np.abs(z.matrix).max()) ** 4
    ainv = _inv_skew_components(a, scale)
    return _GAMMA1 @ z.matrix.T @ ainv.matrix


def emittances4(beam: BeamMatrix4) -> tuple[float, float]:
    """The two emittances, descending: eps_{I,II}^2 = a10 +- sqrt(rad) with
    rad = |avec0|^2 - a20^2 - a30^2 from the skew product components."""
    a = skew_of_sigma(beam)
    scale = max(1.0, abs(a.a10), float(np.abs(a.avec0).max()))
    rad = float(a.avec0 @ a.avec0) - a.a20**2 - a.a30**2
    if rad < 0.0:
        if rad < -1e-12 * scale**2:
            raise NonPhysicalBeamError(f"negative emittance radicand {rad}")
        rad = 0.0
    root = math.sqrt(rad)
    e1sq, e2sq = a.a10 + root, a.a10 - root
    if e2sq <= 0.0 or e1sq <= 0.0:
        raise NonPhysicalBeamError(f"non-positive squared emittances ({e1sq}, {e2sq})")
    return math.sqrt(e1sq), math.sqrt(e2sq)


@dataclass(frozen=True, eq=False)
class ElementaryTransform:
    """One elementary symplectic map; ``kind`` selects the generator family.

    zeta_rot / beta2_boost / beta3_boost carry a unit 3-vector axis and an
    angle; gamma_rot carries only an angle; scale carries the four positive
    diagonal factors of a symplectic rescale.
    """

    kind: str
    angle: float = 0.0
    axis: np.ndarray | None = None
    scales: np.ndarray | None = None

    def __post_init__(self):
        if self.kind in ("zeta_rot", "beta2_boost", "beta3_boost"):
            object.__setattr__(self, "axis", _unit3(self.axis))
        elif self.kind == "gamma_rot":
            if self.axis is not None:
                raise ValueError("gamma rotation takes no axis")
        elif self.kind == "scale":
            s = np.array(self.scales, dtype=float)
            if s.shape != (4,) or np.any(s <= 0.0):
                raise ValueError("scale transform needs 4 positive factors")
            if abs(s[0] * s[1] - 1.0) > 1e-9 or abs(s[2] * s[3] - 1.0) > 1e-9:
                raise ValueError("scale factors must be reciprocal per plane")
            s.setflags(write=False)
            object.__setattr__(self, "scales", s)
        else:
            raise ValueError(f"unknown transform kind {self.kind!r}")
        object.__setattr__(self, "angle", float(self.angle))

    @property
    def matrix(self) -> np.ndarray:
        if self.kind == "scale":
            return np.diag(self.scales)
        if self.kind == "gamma_rot":
            return math.cos(self.angle) * np.eye(4) + math.sin(self.angle) * _GAMMA1
        reps = _ZETA_REPS if self.kind == "zeta_rot" else _BETA_REPS[
            2 if self.kind == "beta2_boost" else 3
        ]
        gen = sum(self.axis[k] * reps[k] for k in range(3))
        if self.kind == "zeta_rot":
            return math.cos(self.angle) * np.eye(4) + math.sin(self.angle) * gen
        return math.cosh(self.angle) * np.eye(4) + math.sinh(self.angle) * gen


def apply_zeta(beam: BeamMatrix4, axis, psi: float) -> BeamMatrix4:
    """zeta-rotation: every vector turns clockwise around the axis by 2*psi."""
    e = _unit3(axis)
    c, s = math.cos(2 * psi), math.sin(2 * psi)

    def turn(v):
        par = e * (e @ v)
        return par + c * (v - par) - s * np.cross(e, v)

    return BeamMatrix4(beam.sigma00, turn(beam.v1), turn(beam.v2), turn(beam.v3))


def apply_gamma(beam: BeamMatrix4, phi: float) -> BeamMatrix4:
    """gamma-rotation: v2 and v3 mix by 2*phi; sigma00 and v1 are fixed."""
    c, s = math.cos(2 * phi), math.sin(2 * phi)
    return BeamMatrix4(
        beam.sigma00,
        beam.v1,
        c * beam.v2 + s * beam.v3,
        -s * beam.v2 + c * beam.v3,
    )


def apply_beta2(beam: BeamMatrix4, axis, chi: float) -> BeamMatrix4:
    """beta^2-boost: sigma00 mixes with the v2 component along the axis; the
    perpendicular parts of v1 and v3 mix through the cross products."""
    e = _unit3(axis)
    ch, sh = math.cosh(2 * chi), math.sinh(2 * chi)
    p1, p2, p3 = e @ beam.v1, e @ beam.v2, e @ beam.v3
    s00 = ch * beam.sigma00 + sh * p2
    v1 = e * p1 + sh * np.cross(e, beam.v3) + ch * (beam.v1 - e * p1)
    v2 = e * (sh * beam.sigma00 + ch * p2) + (beam.v2 - e * p2)
    v3 = e * p3 + ch * (beam.v3 - e * p3) - sh * np.cross(e, beam.v1)
    return BeamMatrix4(s00, v1, v2, v3)


def apply_beta3(beam: BeamMatrix4, axis, chi: float) -> BeamMatrix4:
    """beta^3-boost: the v2/v3 mirror image of the beta^2-boost."""
    e = _unit3(axis)
    ch, sh = math.cosh(2 * chi), math.sinh(2 * chi)
    p1, p2, p3 = e @ beam.v1, e @ beam.v2, e @ beam.v3
    s00 = ch * beam.sigma00 + sh * p3
    v1 = e * p1 - sh * np.cross(e, beam.v2) + ch * (beam.v1 - e * p1)
    v2 = e * p2 + ch * (beam.v2 - e * p2) + sh * np.cross(e, beam.v1)
    v3 = e * (sh * beam.sigma00 + ch * p3) + (beam.v3 - e * p3)
    return BeamMatrix4(s00, v1, v2, v3)


def apply_transform(beam: BeamMatrix4, t: ElementaryTransform) -> BeamMatrix4:
    if t.kind == "zeta_rot":
        return apply_zeta(beam, t.axis, t.angle)
    if t.kind == "gamma_rot":
        return apply_gamma(beam, t.angle)
    if t.kind == "beta2_boost":
        return apply_beta2(beam, t.axis, t.angle)
    if t.kind == "beta3_boost":
        return apply_beta3(beam, t.axis, t.angle)
    # scale: conjugate the representative, exact for diagonal maps
    r = t.matrix
    return BeamMatrix4.from_matrix(r @ beam.matrix @ r.T)


_IDENTITY_STEP = ElementaryTransform("zeta_rot", 0.0, axis=np.array([0.0, 0.0, 1.0]))


def select_boost(beam: BeamMatrix4, goal: str) -> ElementaryTransform:
    """Boost parameters (family, axis, angle) that reach a named goal.

    suppress_v2 / suppress_v3 wipe out a whole vector; the kill_* goals
    zero one scalar product while keeping its documented partner product
    unchanged.  When the selector direction degenerates the goal quantity
    is checked: already-met goals yield a zero-angle step, otherwise no
    boost can reach the goal and DegenerateDirectionError is raised.
    """
    s00, v1, v2, v3 = beam.sigma00, beam.v1, beam.v2, beam.v3
    if goal == "suppress_v2":
        kind, target, w = "beta2_boost", None, v2
        t_num = -float(np.linalg.norm(v2))
        den = s00
    elif goal == "suppress_v3":
        kind, target, w = "beta3_boost", None, v3
        t_num = -float(np.linalg.norm(v3))
        den = s00
    elif goal == "kill_v2_dot_v1":
        kind, w = "beta2_boost", np.cross(v2, v3) - s00 * v1
        target = float(v2 @ v1)
    elif goal == "kill_v3_dot_v1":
        kind, w = "beta3_boost", np.cross(v2, v3) - s00 * v1
        target = float(v3 @ v1)
    elif goal == "kill_v2_dot_v3_via_beta2":
        kind, w = "beta2_boost", np.cross(v1, v2) - s00 * v3
        target = float(v2 @ v3)
    elif goal == "kill_v3_dot_v2_via_beta3":
        kind, w = "beta3_boost", np.cross(v3, v1) - s00 * v2
        target = float(v3 @ v2)
    else:
        raise ValueError(f"unknown boost goal {goal!r}")

    norm_w = float(np.linalg.norm(w))
    if goal.startswith("suppress"):
        if norm_w <= _DEGENERATE_TOL:
            return _IDENTITY_STEP
        chi = _atanh_checked(t_num / den) / 2.0
        return ElementaryTransform(kind, chi, axis=w / norm_w)
    if norm_w <= _DEGENERATE_TOL:
        if abs(target) <= _DEGENERATE_TOL:
            return _IDENTITY_STEP
        raise DegenerateDirectionError(
            f"selector direction vanishes but goal quantity {goal} = {target}"
        )
    chi = _atanh_checked(target / norm_w) / 2.0
    return ElementaryTransform(kind, chi, axis=w / norm_w)


def select_gamma_orthogonalize(beam: BeamMatrix4) -> float:
    """gamma-rotation angle making v2' . v3' = 0:
    tan(4*phi) = 2 v2.v3 / (|v2|^2 - |v3|^2), smallest-angle branch."""
    num = 2.0 * float(beam.v2 @ beam.v3)
    den = float(beam.v2 @ beam.v2 - beam.v3 @ beam.v3)
    if abs(num) <= _DEGENERATE_TOL and abs(den) <= _DEGENERATE_TOL:
        return 0.0
    return _principal(math.atan2(num, den)) / 4.0


def _align_step(v: np.ndarray, axis_index: int) -> ElementaryTransform:
    """zeta-rotation aligning a vector with coordinate axis 1, 2 or 3.

    The rotation axis is perpendicular to both; the smallest-angle branch
    of tan(2*psi) = -perp/parallel preserves the sign of the component
    along the target axis.
    """
    i = axis_index
    j, k = (i + 1) % 3, (i + 2) % 3
    perp = math.hypot(v[j], v[k])
    if perp <= _DEGENERATE_TOL:
        return _IDENTITY_STEP
    e = np.zeros(3)
    e[j] = v[k]
    e[k] = -v[j]
    e /= perp
    two_psi = _principal(math.atan2(-perp, v[i]))
    return ElementaryTransform("zeta_rot", two_psi / 2.0, axis=e)


_PAIR_RECIPES = {
    # pairing -> (goal of boost 1, goal of boost 2, vector to align, axis)
    "xx_yy": ("kill_v2_dot_v1", "kill_v3_dot_v1", 1, 0),
    "xy_xpyp": ("kill_v2_dot_v1", "kill_v3_dot_v2_via_beta3", 2, 1),
    "xyp_xpy": ("kill_v3_dot_v1", "kill_v2_dot_v3_via_beta2", 3, 2),
}

#: representative-matrix index groups decoupled from each other, per pairing
PAIR_GROUPS = {
    "xx_yy": ((0, 1), (2, 3)),
    "xy_xpyp": ((0, 2), (1, 3)),
    "xyp_xpy": ((0, 3), (1, 2)),
}


def decouple_pair(beam: BeamMatrix4, pairing: str):
    """Three-step recipe decoupling two complementary coordinate pairs.

    Two boosts orthogonalize the relevant vector pairs, then one
    zeta-rotation aligns the distinguished vector with its coordinate
    axis.  Returns (pipeline, decoupled_beam).
    """
    if pairing not in _PAIR_RECIPES:
        raise ValueError(f"unknown pairing {pairing!r}; expected one of {PAIRINGS}")
    emittances4(beam)  # physicality gate
    goal1, goal2, vec_index, axis_index = _PAIR_RECIPES[pairing]
    pipeline = TransformPipeline(order=4)

    step = select_boost(beam, goal1)
    pipeline = pipeline.extended(step)
    out = apply_transform(beam, step)

    step = select_boost(out, goal2)
    pipeline = pipeline.extended(step)
    out = apply_transform(out, step)

    step = _align_step(out.vector(vec_index), axis_index)
    pipeline = pipeline.extended(step)
    out = apply_transform(out, step)

    m = out.matrix
    g0, g1 = PAIR_GROUPS[pairing]
    resid = max(abs(m[i, j]) for i in g0 for j in g1)
    if resid > 1e-9 * max(1.0, np.abs(m).max()):
        raise DegenerateDirectionError(
            f"{pairing} recipe left cross-block residual {resid:.2e}"
        )
    return pipeline, out


def polar3(m, tol: float = 1e-12):
    """3D polar decomposition M = O S with O orthogonal and S symmetric.

    Newton iteration O <- (O + O^-T)/2 onto the orthogonal factor; S is
    then O^T M.  det(O) carries the sign of det(M), so a positive
    determinant yields a proper rotation.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    scale = max(1.0, np.abs(m).max()) ** 3
    if abs(np.linalg.det(m)) <= tol * scale:
        raise SingularMatrixError("polar decomposition needs a nonsingular matrix")
    o = m.copy()
    for _ in range(200):
        nxt = 0.5 * (o + np.linalg.inv(o).T)
        if np.abs(nxt - o).max() <= 1e-15 * max(1.0, np.abs(o).max()):
            o = nxt
            break
        o = nxt
    s = o.T @ m
    return o, 0.5 * (s + s.T)


def axis_angle_from_rotation(o, tol: float = 1e-4):
    """Axis e and half-angle psi with O = exp(2*psi*K(e)), psi in [0, pi/2].

    K(e) is the cross-product matrix.  Near psi = 0 the axis is arbitrary
    and fixed to (0,0,1).  Near 2*psi = pi the antisymmetric part of O is
    noise, so the axis is recovered from the symmetric part instead
    (e_k^2 = (O_kk - cos2psi)/(1 - cos2psi), relative signs from the
    off-diagonal sums, overall sign from the antisymmetric residue).
    """
    o = np.asarray(o, dtype=float)
    if o.shape != (3, 3):
        raise ValueError("expected a 3x3 rotation")
    cos2psi = min(1.0, max(-1.0, (np.trace(o) - 1.0) / 2.0))
    two_psi = math.acos(cos2psi)
    sin2psi = math.sin(two_psi)
    antisym = np.array([o[2, 1] - o[1, 2], o[0, 2] - o[2, 0], o[1, 0] - o[0, 1]])
    if sin2psi > tol:
        e = antisym / (2.0 * sin2psi)
    elif cos2psi > 0.0:  # identity rotation
        return np.array([0.0, 0.0, 1.0]), 0.0
    else:  # (near) half-turn
        esq = np.clip((np.diag(o) - cos2psi) / (1.0 - cos2psi), 0.0, None)
        k = int(np.argmax(esq))
        e = np.zeros(3)
        e[k] = math.sqrt(esq[k])
        for j in range(3):
            if j != k:
                e[j] = (o[j, k] + o[k, j]) / (2.0 * (1.0 - cos2psi) * e[k])
        if antisym @ e < 0.0:
            e = -e
    e /= np.linalg.norm(e)
    return e, two_psi / 2.0


def _component_block_aligned(beam: BeamMatrix4, tol: float) -> bool:
    off = 0.0
    for m, v in enumerate((beam.v1, beam.v2, beam.v3)):
        for k in range(3):
            if k != m:
                off = max(off, abs(v[k]))
    return off <= tol


def _check_diagonal(beam: BeamMatrix4) -> None:
    m = beam.matrix
    resid = np.abs(m - np.diag(np.diag(m))).max()
    if resid > 1e-9 * max(1.0, np.abs(m).max()):
        raise DegenerateDirectionError(
            f"diagonalization left off-diagonal residual {resid:.2e}"
        )


def diagonalize4(beam: BeamMatrix4, strategy: str = "block_first"):
    """Mutually decouple all four phase-space coordinates.

    'block_first' runs the xx_yy pairwise recipe, then a gamma-rotation
    into the main axes of the (v2, v3) ellipse and a final rotation about
    axis 1.  'direct' orthogonalizes the three vectors with two boosts and
    a gamma-rotation and then applies a single zeta-rotation computed from
    the sign-optimized frame (the smallest rotation aligning all three
    vectors with the axes at once).  Returns (pipeline, diagonal_beam).
    """
    if strategy == "block_first":
        pipeline, out = decouple_pair(beam, "xx_yy")

        phi = select_gamma_orthogonalize(out)
        step = ElementaryTransform("gamma_rot", phi)
        pipeline = pipeline.extended(step)
        out = apply_transform(out, step)

        # rotate about axis 1: v2 and v3 now live in the 2-3 plane
        if np.linalg.norm(out.v2) > _DEGENERATE_TOL:
            two_psi = _principal(math.atan2(out.v2[2], out.v2[1]))
        elif np.linalg.norm(out.v3) > _DEGENERATE_TOL:
            two_psi = _principal(math.atan2(-out.v3[1], out.v3[2]))
        else:
            two_psi = 0.0
        step = ElementaryTransform("zeta_rot", two_psi / 2.0,
                                   axis=np.array([1.0, 0.0, 0.0]))
        pipeline = pipeline.extended(step)
        out = apply_transform(out, step)
        _check_diagonal(out)
        return pipeline, out

    if strategy != "direct":
        raise ValueError(f"unknown strategy {strategy!r}")

    emittances4(beam)
    pipeline = TransformPipeline(order=4)
    out = beam
    for goal in ("kill_v2_dot_v1", "kill_v3_dot_v1"):
        step = select_boost(out, goal)
        pipeline = pipeline.extended(step)
        out = apply_transform(out, step)
    step = ElementaryTransform("gamma_rot", select_gamma_orthogonalize(out))
    pipeline = pipeline.extended(step)
    out = apply_transform(out, step)

    if _component_block_aligned(out, _DEGENERATE_TOL):
        step = _IDENTITY_STEP
    else:
        n1, n2 = np.linalg.norm(out.v1), np.linalg.norm(out.v2)
        if n1 <= _DEGENERATE_TOL or n2 <= _DEGENERATE_TOL:
            raise DegenerateDirectionError(
                "direct diagonalization needs nonzero v1 and v2"
            )
        best = None
        for s1 in (1.0, -1.0):
            for s2 in (1.0, -1.0):
                t1 = s1 * out.v1 / n1
                t2 = s2 * out.v2 / n2
                t3 = np.cross(t1, t2)
                trace = t1[0] + t2[1] + t3[2]
                if best is None or trace > best[0] + 1e-15:
                    best = (trace, t1, t2, t3)
        _, t1, t2, t3 = best
        frame = np.column_stack([t1, t2, t3])
        e, psi = axis_angle_from_rotation(frame)
        step = ElementaryTransform("zeta_rot", psi, axis=e)
    pipeline = pipeline.extended(step)
    out = apply_transform(out, step)
    _check_diagonal(out)
    return pipeline, out


def normalize4(beam: BeamMatrix4):
    """Diagonalize, then rescale the phase-space axes symplectically so the
    representative becomes diag(eps_x, eps_x, eps_y, eps_y).

    The scale factors are fourth roots of diagonal-entry ratios, with the
    two factors of each plane reciprocal, hence symplectic.  Returns
    (pipeline, normal_beam)."""
    pipeline, out = diagonalize4(beam, strategy="block_first")
    d = np.diag(out.matrix)
    if np.any(d <= 0.0):
        raise NonPhysicalBeamError("diagonalized beam matrix is not positive")
    scales = np.array([
        (d[1] / d[0]) ** 0.25,
        (d[0] / d[1]) ** 0.25,
        (d[3] / d[2]) ** 0.25,
        (d[2] / d[3]) ** 0.25,
    ])
    step = ElementaryTransform("scale", scales=scales)
    pipeline = pipeline.extended(step)
    return pipeline, apply_transform(out, step)


def decouple_single(beam: BeamMatrix4, coord: str):
    """Decouple one phase-space coordinate from the other three.

    For x: polar-decompose the 3x3 vector-vector block of the component
    matrix, extract axis and angle from the rotation factor and apply the
    corresponding zeta-rotation; the block becomes symmetric, which is
    exactly the x-decoupled pattern.  x', y, y' follow by one extra
    quarter-turn zeta-rotation (the representative of zeta_k, which is
    symplectic).  Returns (pipeline, decoupled_beam).
    """
    if coord not in SINGLE_COORDS:
        raise ValueError(f"unknown coordinate {coord!r}; expected one of {SINGLE_COORDS}")
    emittances4(beam)
    block = beam.components[1:, 1:]
    pipeline = TransformPipeline(order=4)
    if np.abs(block - block.T).max() <= _DEGENERATE_TOL:
        step = _IDENTITY_STEP  # already x-decoupled
    else:
        o, _ = polar3(block)
        if np.linalg.det(o) < 0.0:
            o = -o  # improper factor: flip both (S flips sign too)
        e, psi = axis_angle_from_rotation(o)
        step = ElementaryTransform("zeta_rot", psi, axis=e)
    pipeline = pipeline.extended(step)
    out = apply_transform(beam, step)
    extra_axis = {"xp": 0, "y": 1, "yp": 2}.get(coord)
    if extra_axis is not None:
        axis = np.zeros(3)
        axis[extra_axis] = 1.0
        step = ElementaryTransform("zeta_rot", math.pi / 2.0, axis=axis)
        pipeline = pipeline.extended(step)
        out = apply_transform(out, step)
    return pipeline, out


def component_side_mul(z: CliffordElement4, u: UnitId, side: str) -> CliffordElement4:
    """Component matrix of (unit * Z) or (Z * unit) without leaving
    component space.

    Left/right multiplication by any unit acts on the component matrix as
    multiplication by unit representatives: e.g. left zeta_k acts as
    zeta_k itself, right zeta_k as -gamma^k from the left, and the beta
    units as signed two-sided zeta/gamma products.
    """
    if u.algebra is not Algebra.CL31:
        raise ValueError("expected a Cl(3,1) unit")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    c = z.components
    name = u.name
    if name == "one":
        return CliffordElement4(c.copy())
    if name.startswith("zeta"):
        k = int(name[-1])
        if side == "left":
            out = _ZETA_REPS[k - 1] @ c
        else:
            out = -_REP4[f"gamma{k}"].astype(float) @ c
    elif name.startswith("gamma"):
        l = int(name[-1])
        if side == "left":
            out = -c @ _ZETA_REPS[l - 1]
        else:
            out = c @ _REP4[f"gamma{l}"].astype(float)
    else:  # beta^l_k
        l, k = int(name[4]), int(name[6])
        if side == "left":
            out = -_ZETA_REPS[k - 1] @ c @ _ZETA_REPS[l - 1]
        else:
            out = -_REP4[f"gamma{k}"].astype(float) @ c @ _REP4[f"gamma{l}"].astype(float)
    return CliffordElement4(out)


def invariance4(normalizer: np.ndarray, psi: float, phi: float) -> np.ndarray:
    """I(psi, phi) = N exp(zeta_1 psi + gamma^1 phi) N^-1.

    For Sigma = N Sigma_tilde N^T with Sigma_tilde in normal form, every
    member leaves Sigma invariant: zeta_1 and gamma^1 commute and both
    rotations fix the normal form.
    """
    n = np.asarray(normalizer, dtype=float)
    rot = (
        math.cos(psi) * np.eye(4) + math.sin(psi) * _ZETA_REPS[0]
    ) @ (
        math.cos(phi) * np.eye(4) + math.sin(phi) * _GAMMA1
    )
    return n @ rot @ np.linalg.inv(n)
