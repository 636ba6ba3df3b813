"""Three degrees of freedom: eigen-based normalization of bunch matrices.

Phase space is (x, x', y, y', l, delta).  The three constant forms are
block-diagonal extensions of the 2x2 units: ALPHA6 (diag(1,-1) blocks),
BETA6 (antidiagonal blocks) and the symplectic form GAMMA6, with
ALPHA6 @ BETA6 = GAMMA6, ALPHA6^2 = BETA6^2 = 1 and GAMMA6^2 = -1.

A symmetric positive-definite bunch matrix S has one emittance invariant
per plane: the characteristic polynomial of S @ GAMMA6 is even and its
lambda^2-roots are the negated squared emittances.  Emittances are
computed here from that polynomial in closed form (a cubic in lambda^2),
and eigenvectors by direct null-space solves of (S @ GAMMA6 - lambda),
so no general eigensolver is involved.

The normal decomposition S = N St N^T with
St = diag(eI, eI, eII, eII, eIII, eIII) follows the eigenvector route:
order the eigenpairs plane by plane with the -i*eps member first, rescale
each conjugate pair of eigenvectors so E^T GAMMA E = GAMMA (real
transpose), and form N = E (1 + i BETA)/sqrt(2), which comes out real for
a physical bunch.  The procedure is order-agnostic; the same engine runs
on 4x4 beam matrices (two planes, quadratic in lambda^2) and is exposed
through :func:`normal_decomposition`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEmittanceError, NonPhysicalBeamError

__all__ = [
    "ALPHA6",
    "BETA6",
    "GAMMA6",
    "NormalDecomposition6",
    "emittances6",
    "eig_sigma_gamma",
    "symplectic_normalize_eigvecs",
    "normalize6",
    "normal_decomposition",
    "invariance6",
    "plane_rotation6",
]


def _block_diag(block, planes: int) -> np.ndarray:
    out = np.zeros((2 * planes, 2 * planes))
    for r in range(planes):
        out[2 * r:2 * r + 2, 2 * r:2 * r + 2] = block
    out.setflags(write=False)
    return out


def _forms(order: int):
    planes = order // 2
    alpha = _block_diag([[1.0, 0.0], [0.0, -1.0]], planes)
    beta = _block_diag([[0.0, 1.0], [1.0, 0.0]], planes)
    gamma = _block_diag([[0.0, 1.0], [-1.0, 0.0]], planes)
    return alpha, beta, gamma


ALPHA6, BETA6, GAMMA6 = _forms(6)

_DEGENERACY_REL_TOL = 1e-8


def _check_bunch(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] not in (4, 6):
        raise ValueError("expected a 4x4 or 6x6 bunch matrix")
    if np.abs(s - s.T).max() > 1e-9 * max(1.0, np.abs(s).max()):
        raise ValueError("bunch matrix must be symmetric")
    return 0.5 * (s + s.T)


def _charpoly(m: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda*1 - M), leading first (Faddeev-LeVerrier)."""
    n = m.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    aux = np.zeros_like(m)
    for k in range(1, n + 1):
        aux = m @ aux + coeffs[k - 1] * np.eye(n)
        coeffs[k] = -np.trace(m @ aux) / k
    return coeffs


def _cubic_roots(b: float, c: float, d: float) -> list[float]:
    """Real roots of u^3 + b u^2 + c u + d (trigonometric form).

    The characteristic cubic of a physical bunch always has three real
    roots; complex roots signal a nonphysical input.
    """
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    if p >= 0.0:
        if abs(p) < 1e-12 * max(1.0, b * b) and abs(q) < 1e-12 * max(1.0, abs(b) ** 3):
            return [-b / 3.0] * 3
        raise NonPhysicalBeamError("characteristic cubic has complex roots")
    mmag = 2.0 * math.sqrt(-p / 3.0)
    arg = min(1.0, max(-1.0, 3.0 * q / (p * mmag)))
    theta = math.acos(arg) / 3.0
    return [mmag * math.cos(theta - 2.0 * math.pi * k / 3.0) - b / 3.0 for k in range(3)]


def _quadratic_roots(b: float, c: float) -> list[float]:
    disc = b * b - 4.0 * c
    if disc < 0.0:
        raise NonPhysicalBeamError("characteristic quadratic has complex roots")
    root = math.sqrt(disc)
    return [(-b + root) / 2.0, (-b - root) / 2.0]


def _emittances_any(s: np.ndarray) -> tuple[float, ...]:
    order = s.shape[0]
    gamma = _forms(order)[2]
    coeffs = _charpoly(s @ gamma)
    scale = max(1.0, np.abs(s).max()) ** order
    if max(abs(coeffs[k]) for k in range(1, order + 1, 2)) > 1e-9 * scale:
        raise NonPhysicalBeamError("characteristic polynomial is not even")
    if order == 6:
        roots = _cubic_roots(coeffs[2], coeffs[4], coeffs[6])
    else:
        roots = _quadratic_roots(coeffs[2], coeffs[4])
    if max(roots) >= 0.0:
        raise NonPhysicalBeamError("characteristic roots are not all negative")
    return tuple(sorted((math.sqrt(-u) for u in roots), reverse=True))


def emittances6(s) -> tuple[float, float, float]:
    """The three emittances, descending, from the even characteristic
    polynomial of S @ GAMMA6; raises for nonphysical bunches."""
    s = _check_bunch(s)
    if s.shape[0] != 6:
        raise ValueError("emittances6 expects a 6x6 matrix")
    return _emittances_any(s)


def _null_vector(m: np.ndarray) -> np.ndarray:
    """Unit vector spanning the one-dimensional null space of a complex
    matrix, by Gauss-Jordan elimination with partial pivoting."""
    a = m.astype(complex).copy()
    n = a.shape[0]
    scale = max(1.0, np.abs(a).max())
    pivots = []
    row = 0
    for col in range(n):
        pick = int(np.argmax(np.abs(a[row:, col]))) + row
        if abs(a[pick, col]) < 1e-9 * scale:
            continue
        a[[row, pick]] = a[[pick, row]]
        a[row] /= a[row, col]
        for r in range(n):
            if r != row:
                a[r] -= a[r, col] * a[row]
        pivots.append(col)
        row += 1
        if row == n:
            break
    free = [c for c in range(n) if c not in pivots]
    if not free:
        raise NonPhysicalBeamError("eigenvalue residual too large for a null vector")
    v = np.zeros(n, dtype=complex)
    v[free[0]] = 1.0
    for r, col in enumerate(pivots):
        v[col] = -a[r, free[0]]
    return v / np.linalg.norm(v)


def _reject_degenerate(eps) -> None:
    top = max(eps)
    for i in range(len(eps)):
        for j in range(i + 1, len(eps)):
            if abs(eps[i] - eps[j]) <= _DEGENERACY_REL_TOL * top:
                raise DegenerateEmittanceError(
                    f"emittances {eps[i]} and {eps[j]} coincide to working precision"
                )


def _eig_any(s: np.ndarray):
    order = s.shape[0]
    gamma = _forms(order)[2]
    eps = _emittances_any(s)
    _reject_degenerate(eps)
    sg = s @ gamma
    vals = np.zeros(order, dtype=complex)
    vecs = np.zeros((order, order), dtype=complex)
    for r, e in enumerate(eps):
        lam = -1j * e
        v = _null_vector(sg - lam * np.eye(order))
        vals[2 * r] = lam
        vals[2 * r + 1] = lam.conjugate()
        vecs[:, 2 * r] = v
        vecs[:, 2 * r + 1] = v.conjugate()
    return vals, vecs


def eig_sigma_gamma(s):
    """Ordered eigen-decomposition of S @ GAMMA6.

    Returns (eigvals, E) with eigvals = (-i eI, +i eI, -i eII, +i eII,
    -i eIII, +i eIII) and E's columns the matching eigenvectors; the +i
    member of each plane is the complex conjugate of the -i member.
    """
    s = _check_bunch(s)
    if s.shape[0] != 6:
        raise ValueError("eig_sigma_gamma expects a 6x6 matrix")
    return _eig_any(s)


def symplectic_normalize_eigvecs(e: np.ndarray) -> np.ndarray:
    """Rescale conjugate eigenvector pairs so E^T GAMMA E = GAMMA.

    The real transpose is used throughout.  Each pair (u, conj(u)) has
    u^T GAMMA conj(u) = i*t with t real and positive for a physical
    bunch; dividing both members by sqrt(i*t) makes the pair symplectic.
    """
    e = np.asarray(e, dtype=complex)
    if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] not in (4, 6):
        raise ValueError("expected a square 4x4 or 6x6 eigenvector matrix")
    gamma = _forms(e.shape[0])[2]
    h = e.T @ gamma @ e
    divisors = np.empty(e.shape[0], dtype=complex)
    for r in range(e.shape[0] // 2):
        pairing = h[2 * r, 2 * r + 1]
        if abs(pairing) < 1e-12:
            raise DegenerateEmittanceError("eigenvector pair has zero symplectic pairing")
        d = np.sqrt(pairing)
        divisors[2 * r] = d
        divisors[2 * r + 1] = d
    return e / divisors


@dataclass(frozen=True, eq=False)
class NormalDecomposition6:
    """Result of the normal decomposition: S = matrix @ normal_form @ matrix.T."""

    matrix: np.ndarray               # real symplectic N
    emittances: tuple
    normal_form: np.ndarray          # diag(eI, eI, eII, eII, ...)
    imag_residue: float              # |Im N| before discarding

    def __post_init__(self):
        for name in ("matrix", "normal_form"):
            v = np.array(getattr(self, name), dtype=float)
            v.setflags(write=False)
            object.__setattr__(self, name, v)


def normal_decomposition(s) -> NormalDecomposition6:
    """Normal decomposition of a physical 4x4 or 6x6 bunch matrix.

    Steps: eigen-decompose S @ GAMMA, order the pairs, normalize the
    eigenvectors to symplectic, then N = E (1 + i BETA)/sqrt(2).  N is
    returned real; its imaginary residue before truncation is reported.
    """
    s = _check_bunch(s)
    order = s.shape[0]
    beta = _forms(order)[1]
    _, e = _eig_any(s)
    e = symplectic_normalize_eigvecs(e)
    q = (np.eye(order) + 1j * beta) / math.sqrt(2.0)
    n_complex = e @ q
    imag = float(np.abs(n_complex.imag).max())
    n = n_complex.real
    eps = _emittances_any(s)
    st = np.diag([eps[k // 2] for k in range(order)])
    return NormalDecomposition6(n, eps, st, imag)


def normalize6(s) -> NormalDecomposition6:
    """normal_decomposition restricted to 6x6 bunch matrices."""
    s = _check_bunch(s)
    if s.shape[0] != 6:
        raise ValueError("normalize6 expects a 6x6 matrix")
    return normal_decomposition(s)


def plane_rotation6(psi_1: float, psi_2: float, psi_3: float) -> np.ndarray:
    """exp of the three per-plane symplectic-form restrictions: independent
    phase rotations in the (x,x'), (y,y'), (l,delta) subspaces."""
    out = np.zeros((6, 6))
    for r, psi in enumerate((psi_1, psi_2, psi_3)):
        c, sn = math.cos(psi), math.sin(psi)
        out[2 * r:2 * r + 2, 2 * r:2 * r + 2] = [[c, sn], [-sn, c]]
    return out


def invariance6(normalizer, psi_1: float, psi_2: float, psi_3: float) -> np.ndarray:
    """I = N exp(gamma^I psi_1 + gamma^II psi_2 + gamma^III psi_3) N^-1;
    leaves the bunch matrix normalized by N invariant."""
    n = np.asarray(normalizer, dtype=float)
    return n @ plane_rotation6(psi_1, psi_2, psi_3) @ np.linalg.inv(n)
