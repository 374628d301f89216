"""Dense 4D algebraic curvature tensors, contractions and frame changes.

Conventions follow R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y] Z with
components R_ijkl = g(R(e_i,e_j)e_k, e_l) in an orthonormal frame; with this
sign the sectional curvature of the plane (e_i, e_j) equals R_ijji.  The
convention is pinned by a unit test reproducing the solvable-group tensor with
Ricci eigenvalues (-8, 0, 2, -2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import FrameNotOrthogonal, SymmetryViolation

DIM = 4

_FRAME_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Curvature4:
    """All 256 components of an algebraic curvature tensor at a point.

    Construct through make_curvature or project_to_curvature; the pair
    antisymmetries and the pair-exchange symmetry hold exactly, the first
    Bianchi identity to construction tolerance.
    """

    comp: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "comp", _frozen(self.comp))

    @property
    def scale(self) -> float:
        """Tolerance scale s = max(1, max |R_ijkl|)."""
        return max(1.0, float(np.abs(self.comp).max()))


@dataclass(frozen=True)
class Frame4:
    """Orthonormal frame: rows are the new frame vectors in reference coordinates."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (DIM, DIM) or not np.all(np.isfinite(m)):
            raise FrameNotOrthogonal("frame must be a finite 4x4 matrix")
        err = np.abs(m @ m.T - np.eye(DIM)).max()
        if err > _FRAME_TOL * 10:
            raise FrameNotOrthogonal(f"frame not orthogonal: |F F^T - I| = {err:.3e}")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def orientation(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0 else -1


def identity_frame() -> Frame4:
    return Frame4(np.eye(DIM))


def compose(g: Frame4, f: Frame4) -> Frame4:
    """Frame obtained by applying g on top of f (rotate(rotate(R,f),g) = rotate(R, compose(g,f)))."""
    return Frame4(g.matrix @ f.matrix)


def random_frame(rng: np.random.Generator) -> Frame4:
    """Seeded random special-orthogonal frame (det +1)."""
    q, r = np.linalg.qr(rng.normal(size=(DIM, DIM)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, [2, 3]] = q[:, [3, 2]]
    return Frame4(q.T)


class ScalarSummary(NamedTuple):
    normR2: float
    normRho2: float
    tau: float


def _pair_symmetrize(raw: np.ndarray) -> np.ndarray:
    """Enforce the pair antisymmetries and the pair-exchange symmetry exactly."""
    t = 0.25 * (
        raw
        - raw.transpose(1, 0, 2, 3)
        - raw.transpose(0, 1, 3, 2)
        + raw.transpose(1, 0, 3, 2)
    )
    return 0.5 * (t + t.transpose(2, 3, 0, 1))


def _bianchi_sum(t: np.ndarray) -> np.ndarray:
    return t + t.transpose(0, 2, 3, 1) + t.transpose(0, 3, 1, 2)


def make_curvature(raw: np.ndarray) -> Curvature4:
    """Validate a raw 4x4x4x4 array as an algebraic curvature tensor.

    Raises SymmetryViolation naming the failed identity, the worst index
    tuple and its magnitude.  On success the pair symmetries are re-enforced
    exactly by symmetrization.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.shape != (DIM,) * 4:
        raise SymmetryViolation("shape", raw.shape, float("nan"))
    if not np.all(np.isfinite(raw)):
        raise SymmetryViolation("finiteness", (), float("nan"))
    tol = 1e-10 * max(1.0, float(np.abs(raw).max()))
    checks = [
        ("antisymmetry in first pair", raw + raw.transpose(1, 0, 2, 3)),
        ("antisymmetry in last pair", raw + raw.transpose(0, 1, 3, 2)),
        ("pair-exchange symmetry", raw - raw.transpose(2, 3, 0, 1)),
        ("first Bianchi identity", _bianchi_sum(raw)),
    ]
    for name, resid in checks:
        worst = np.abs(resid).max()
        if worst > tol:
            idx = np.unravel_index(np.abs(resid).argmax(), resid.shape)
            raise SymmetryViolation(name, tuple(int(i) for i in idx), float(worst))
    return Curvature4(_pair_symmetrize(raw))


def project_to_curvature(raw: np.ndarray) -> Curvature4:
    """Orthogonal projection of an arbitrary array onto algebraic curvature tensors.

    Antisymmetrizes both pairs, symmetrizes pair exchange, then removes the
    totally alternating part to enforce the first Bianchi identity.  Idempotent
    and the identity on inputs that already satisfy the invariants.
    """
    raw = np.asarray(raw, dtype=float)
    t = _pair_symmetrize(raw)
    t = t - _bianchi_sum(t) / 3.0
    return Curvature4(t)


def ricci(R: Curvature4) -> np.ndarray:
    """Ricci tensor, contraction rho_ij = sum_a R_aija (symmetric 4x4 matrix)."""
    rho = np.einsum("aija->ij", R.comp)
    return 0.5 * (rho + rho.T)


def summary(R: Curvature4) -> ScalarSummary:
    rho = ricci(R)
    return ScalarSummary(
        normR2=float(np.sum(R.comp * R.comp)),
        normRho2=float(np.sum(rho * rho)),
        tau=float(np.trace(rho)),
    )


def derived_tensors(R: Curvature4) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Rcheck, rhocheck, Lrho) with
    Rcheck_ij = sum_abc R_abci R_abcj, rhocheck = rho.rho,
    (Lrho)_ij = 2 sum_ab R_iabj rho_ab.
    """
    rho = ricci(R)
    rcheck = np.einsum("abci,abcj->ij", R.comp, R.comp)
    lrho = 2.0 * np.einsum("iabj,ab->ij", R.comp, rho)
    return rcheck, rho @ rho, 0.5 * (lrho + lrho.T)


def rotate(R: Curvature4, F: Frame4) -> Curvature4:
    """Components of R in the frame F: R'_ijkl = R(e'_i, e'_j, e'_k, e'_l)."""
    m = F.matrix
    c = R.comp
    for axis in range(4):
        c = np.tensordot(m, c, axes=([1], [axis]))
        c = np.moveaxis(c, 0, axis)
    return Curvature4(c)
