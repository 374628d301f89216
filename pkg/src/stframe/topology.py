"""Gauss-Bonnet / Pontryagin integrand vectors in a generalized Singer-Thorpe
frame, per-case closed forms for the deficit f, and the Euler number /
Pontryagin number / lower-bound round trip for constant-integrand inputs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CaseRelationViolated, NotSTFrame, OrientationReversed
from .frames import _case_relation, penalty_tolerance, st_penalty
from .tensor import Curvature4, Frame4, rotate


@dataclass(frozen=True)
class STVectors:
    """Plane-curvature and double-plane component vectors read off an oriented
    generalized Singer-Thorpe frame."""

    a_prime: np.ndarray   # (R'_1212, R'_1313, R'_1414)
    a_dprime: np.ndarray  # (R'_3434, R'_2424, R'_2323)
    b: np.ndarray         # (R'_1234, R'_1342, R'_1423)

    @property
    def a(self) -> np.ndarray:
        return 0.5 * (self.a_prime + self.a_dprime)


@dataclass(frozen=True)
class InvariantReport:
    chi_density: float
    p1_density: float
    f: float
    volume: float | None = None
    chi: float | None = None
    p1: float | None = None
    C: float | None = None
    bound_plus_ok: bool | None = None
    bound_minus_ok: bool | None = None
    hitchin_ok: bool | None = None


def st_vectors(R: Curvature4, F: Frame4) -> STVectors:
    """Read the a', a'', b vectors off rotate(R, F).

    Requires an ST frame with orientation +1 (the b vector flips sign under
    orientation reversal).  The first-Bianchi constraint b1+b2+b3 = 0 is
    asserted.
    """
    if F.orientation < 0:
        raise OrientationReversed("b is only defined in a det +1 frame")
    if st_penalty(R, F) > penalty_tolerance(R):
        raise NotSTFrame("frame penalty above tolerance")
    c = rotate(R, F).comp
    v = STVectors(
        a_prime=np.array([c[0, 1, 0, 1], c[0, 2, 0, 2], c[0, 3, 0, 3]]),
        a_dprime=np.array([c[2, 3, 2, 3], c[1, 3, 1, 3], c[1, 2, 1, 2]]),
        b=np.array([c[0, 1, 2, 3], c[0, 2, 3, 1], c[0, 3, 1, 2]]),
    )
    assert abs(v.b.sum()) <= 1e-10 * R.scale, "first Bianchi violated for b"
    return v


def f_value(v: STVectors) -> float:
    """Non-positive deficit f = |a|^2 - |a'|^2; zero exactly at Einstein points."""
    return float(v.a @ v.a - v.a_prime @ v.a_prime)


def f_by_case(eigenvalues, case: str, tol: float = 1e-8) -> float:
    """Closed-form f from the Ricci eigenvalues of the eight sign cases.

    The eigenvalues must be ordered as in the classifying frame; the case's
    eigenvalue relation is checked (CaseRelationViolated otherwise).
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.shape != (4,):
        raise ValueError("expected four eigenvalues")
    scale = max(1.0, float(np.abs(lam).max()))
    if _case_relation(case, lam) > tol * scale:
        raise CaseRelationViolated(
            f"eigenvalues violate the relation of case ({case})"
        )
    l1, l2, l3, l4 = lam
    if case == "i":
        return 0.0
    if case == "ii":
        return -0.25 * (l1 - l3) ** 2
    if case == "iii":
        return -0.25 * (l1 - l2) ** 2
    if case == "iv":
        return -0.25 * (l1 - l3) ** 2
    if case == "v":
        return -0.25 * ((l1 - l3) ** 2 + (l1 - l4) ** 2)
    if case == "vi":
        return -0.25 * ((l1 - l2) ** 2 + (l1 - l4) ** 2)
    if case == "vii":
        return -0.25 * ((l1 - l2) ** 2 + (l1 - l3) ** 2)
    if case == "viii":
        return -0.25 * ((l1 + l2) ** 2 + (l1 + l3) ** 2 + (l1 + l4) ** 2)
    raise ValueError(f"unknown sign case {case!r}")


def densities(v: STVectors) -> tuple[float, float]:
    """Pointwise Euler and Pontryagin integrands:
    chi density (<a',a''> + |b|^2) / (4 pi^2), p1 density <a'+a'', b> / (2 pi^2)."""
    chi_d = (float(v.a_prime @ v.a_dprime) + float(v.b @ v.b)) / (4 * math.pi ** 2)
    p1_d = float((v.a_prime + v.a_dprime) @ v.b) / (2 * math.pi ** 2)
    return chi_d, p1_d


def homogeneous_invariants(
    R: Curvature4, F: Frame4, volume: float | None = None, tol: float = 1e-9
) -> InvariantReport:
    """Closed-form invariants for a constant-curvature-field input.

    With a caller-supplied total volume: chi, p1, the bound constant
    C = f * volume / (2 pi^2), both Theorem-C bound flags 2 chi +- p1 >= C and
    the Hitchin flag 2 chi >= 3 |sigma| with sigma = p1 / 3.
    """
    v = st_vectors(R, F)
    chi_d, p1_d = densities(v)
    f = f_value(v)
    scale = R.scale
    if volume is None:
        return InvariantReport(chi_density=chi_d, p1_density=p1_d, f=f)
    if volume <= 0:
        raise ValueError("volume must be positive")
    chi = chi_d * volume
    p1 = p1_d * volume
    C = f * volume / (2 * math.pi ** 2)
    slack = tol * max(1.0, scale ** 2) * volume
    return InvariantReport(
        chi_density=chi_d,
        p1_density=p1_d,
        f=f,
        volume=volume,
        chi=chi,
        p1=p1,
        C=C,
        bound_plus_ok=bool(2 * chi + p1 >= C - slack),
        bound_minus_ok=bool(2 * chi - p1 >= C - slack),
        hitchin_ok=bool(2 * chi >= abs(p1) - slack),
    )
