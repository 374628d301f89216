"""Universal identity, Einstein / weakly-Einstein residuals and forbidden
Ricci-eigenvalue patterns."""

import numpy as np
import pytest

import stframe as sf

from conftest import loop_lrho, loop_norm_r2, loop_rcheck, loop_ricci


def loop_identity_residual(comp: np.ndarray) -> np.ndarray:
    """Independent plain-loop evaluation of the universal identity residual."""
    rho = loop_ricci(comp)
    rcheck = loop_rcheck(comp)
    lrho = loop_lrho(comp)
    tau = float(np.trace(rho))
    norm_r2 = loop_norm_r2(comp)
    norm_rho2 = float(np.sum(rho * rho))
    return (
        rcheck
        - 2.0 * rho @ rho
        - lrho
        + tau * rho
        - 0.25 * (norm_r2 - 4.0 * norm_rho2 + tau ** 2) * np.eye(4)
    )


def test_identity_residual_matches_loop_oracle():
    R = sf.random_curvature(31)
    rep = sf.identity_residual(R)
    assert np.abs(rep.matrix - loop_identity_residual(R.comp)).max() < 1e-12


def test_identity_residual_vanishes_on_random_tensors():
    for seed in range(25):
        rep = sf.identity_residual(sf.random_curvature(seed))
        assert rep.passes
        assert rep.relative < 1e-12


def test_identity_residual_vanishes_on_gallery():
    for name in sf.GALLERY_NAMES:
        R, _ = sf.gallery(name)
        assert sf.identity_residual(R).relative < 1e-12


def test_residual_report_fields_are_consistent():
    R = sf.surface_product(1.0, 2.0)
    rep = sf.weakly_einstein_residual(R, tol=1e-9)
    assert rep.max_abs == pytest.approx(float(np.abs(rep.matrix).max()))
    assert rep.relative == pytest.approx(rep.max_abs / max(1.0, sf.summary(R).normR2))
    assert rep.tol == 1e-9
    assert rep.passes == (rep.relative < 1e-9)


def test_weakly_einstein_residual_known_matrix():
    # two-surface product with Gauss curvatures 1 and 2
    rep = sf.weakly_einstein_residual(sf.surface_product(1.0, 2.0))
    assert np.abs(rep.matrix - np.diag([-3.0, -3.0, 3.0, 3.0])).max() < 1e-10
    assert not rep.passes


def test_weakly_einstein_residual_passes_on_opposite_surfaces():
    for c in (1.0, 3.0):
        rep = sf.weakly_einstein_residual(sf.surface_product(c, -c))
        assert rep.passes
        assert rep.relative < 1e-12


def test_einstein_residual_detects_einstein_tensors():
    assert sf.einstein_residual(sf.constant_curvature(1.0)).passes
    assert sf.einstein_residual(sf.surface_product(1.0, 1.0)).passes
    assert not sf.einstein_residual(sf.surface_product(1.0, -1.0)).passes


def test_einstein_residual_known_matrix():
    R, _ = sf.gallery("example4", a=1.0, b=0.0)
    rho = sf.ricci(R)
    assert rho[0, 0] == pytest.approx(-3.0, abs=1e-12)
    assert rho[1, 1] == pytest.approx(1.0, abs=1e-12)
    rep = sf.einstein_residual(R)
    assert not rep.passes
    tau = sf.summary(R).tau
    assert np.abs(rep.matrix - (rho - 0.25 * tau * np.eye(4))).max() < 1e-14


def test_reduced_identity_passes_iff_weakly_einstein():
    weakly = [sf.surface_product(1.0, -1.0), sf.gallery("example4", a=1.0)[0]]
    not_weakly = [sf.surface_product(1.0, 2.0), sf.space_form_product(1.0)]
    for R in weakly:
        assert sf.reduced_identity_residual(R).passes
    for R in not_weakly:
        assert not sf.reduced_identity_residual(R).passes


def test_reduced_identity_equals_identity_minus_weak_part():
    R = sf.random_curvature(37)
    full = sf.identity_residual(R).matrix
    weak = sf.weakly_einstein_residual(R).matrix
    reduced = sf.reduced_identity_residual(R).matrix
    assert np.abs(full - (weak - reduced)).max() < 1e-12


def test_forbidden_pattern_by_zero_position():
    assert sf.forbidden_pattern([2.0, 2.0, 2.0, 0.0], 1e-6) == 1
    assert sf.forbidden_pattern([1.0, 1.0, 0.0, 1.0], 1e-6) == 2
    assert sf.forbidden_pattern([-1.0, 0.0, -1.0, -1.0], 1e-6) == 3
    assert sf.forbidden_pattern([0.0, -2.0, -2.0, -2.0], 1e-6) == 4


def test_forbidden_pattern_rejects_non_matching_spectra():
    assert sf.forbidden_pattern([1.0, 2.0, 3.0, 0.0], 1e-6) is None
    assert sf.forbidden_pattern([0.0, 0.0, 0.0, 0.0], 1e-6) is None
    assert sf.forbidden_pattern([1.0, 1.0, 1.0, 1.0], 1e-6) is None
    with pytest.raises(ValueError):
        sf.forbidden_pattern([1.0, 2.0, 3.0], 1e-6)


def test_forbidden_pattern_on_space_form_product():
    R = sf.space_form_product(1.0)
    eig = np.sort(np.linalg.eigvalsh(sf.ricci(R)))[::-1]
    assert sf.forbidden_pattern(eig, 1e-6) == 1
    rep = sf.weakly_einstein_residual(R)
    assert rep.matrix[3, 3] == pytest.approx(-3.0, abs=1e-10)
    assert not rep.passes
