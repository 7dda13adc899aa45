# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import numpy as np
import pytest

from latticeprobe import errmodel, estimator, network, qstate
from latticeprobe.errors import (InvalidParameterError, RankDeficientError, SingularCorrectorError,
                                 EXIT_SINGULAR)
from latticeprobe.purity import purity_profile, subset_purities

ROUND_TRIP_TOL = {estimator.EXPLICIT: 1e-8, estimator.LEAST_SQUARES: 1e-9}


def _observed(state, p, q):
    profile = purity_profile(state)
    pj = network.singles_distribution(profile)
    return profile, errmodel.apply_combined_error(pj, p, q)


@pytest.mark.parametrize('method', estimator.METHODS)
@pytest.mark.parametrize('n', [1, 4, 8])
@pytest.mark.parametrize('p,q', [(0.0, 0.0), (0.05, 0.0), (0.0, 0.1), (0.2, 0.2)])
def test_combined_round_trip(method, n, p, q):
    profile, observed = _observed(qstate.make_phi_state(n, 0.7), p, q)
    corrected = estimator.correct_combined(observed, p, q, method)
    assert corrected.method == method
    assert np.abs(corrected.as_array() - profile.as_array()).max() < ROUND_TRIP_TOL[method]


@pytest.mark.parametrize('method', estimator.METHODS)
def test_combined_round_trip_large(method):
    profile, observed = _observed(qstate.make_ghz(12), 0.1, 0.1)
    corrected = estimator.correct_combined(observed, 0.1, 0.1, method)
    assert np.abs(corrected.as_array() - profile.as_array()).max() < ROUND_TRIP_TOL[method]


@pytest.mark.parametrize('n', [2, 5])
def test_inverses_undo_channels(n):
    eye = np.eye(n + 1)
    assert np.abs(estimator.bs_inverse_matrix(n, 0.15).compose(errmodel.bs_error_matrix(n, 0.15)) - eye).max() < 1e-10
    for method in estimator.METHODS:
        inverse = estimator.detector_inverse_matrix(n, 0.1, method)
        assert inverse.method == method
        assert np.abs(inverse.compose(errmodel.detector_error_matrix(n, 0.1)) - eye).max() < 1e-10
    combined = estimator.combined_corrector(n, 0.1, 0.15).compose(errmodel.combined_error_matrix(n, 0.1, 0.15))
    assert np.abs(combined - network.avpur_matrix(n)).max() < 1e-10


def test_bs_only_estimators():
    profile = purity_profile(qstate.make_cluster_state(5))
    pj = network.singles_distribution(profile)
    observed = errmodel.apply_bs_error(pj, 0.1)
    assert np.abs(estimator.invert_bs_error(observed, 0.1).probs - pj.probs).max() < 1e-12
    for k in range(6):
        assert abs(estimator.avpur_corrected_bs(observed, 0.1, k) - profile[k]) < 1e-12
    with pytest.raises(InvalidParameterError):
        estimator.avpur_corrected_bs(observed, 0.1, 6)


def test_detector_only_estimators():
    pj = network.singles_distribution(purity_profile(qstate.make_ghz(4)))
    observed = errmodel.apply_detector_error(pj, 0.2)
    assert np.abs(estimator.invert_detector_error_explicit(observed, 0.2).probs - pj.probs).max() < 1e-12
    lsq = estimator.invert_detector_error(observed, 0.2, estimator.LEAST_SQUARES)
    assert np.abs(lsq.probs - pj.probs).max() < 1e-10


@pytest.mark.parametrize('k', [1, 2, 4])
def test_subset_coefficients_invert_channels(k):
    p, q = 0.1, 0.2
    forward = errmodel.subset_detector_error_matrix(k, p) @ errmodel.bs_error_matrix(k, q)
    parity = np.array([(-1)**i for i in range(k + 1)])
    assert np.abs(estimator.subset_estimator_coefficients(k, p, q) @ forward - parity).max() < 1e-12
    assert np.abs(estimator.subset_bs_coefficients(k, q) @ errmodel.bs_error_matrix(k, q) - parity).max() < 1e-12


def test_subset_pipeline():
    dist = network.sign_pattern_distribution(subset_purities(qstate.make_ghz(4)))
    P_B = network.subset_count_distribution(dist, [1, 2])
    after_bs = errmodel.apply_subset_bs_error(P_B, 0.1)
    assert abs(estimator.subset_purity_corrected(after_bs, 0.1) - 0.5) < 1e-12
    after_detector = errmodel.apply_subset_detector_error(P_B, 0.2)
    assert abs(estimator.subset_purity_detector_corrected(after_detector, 0.2) - 0.5) < 1e-12
    observed = errmodel.apply_subset_detector_error(after_bs, 0.2)
    assert abs(estimator.subset_estimator_coefficients(2, 0.2, 0.1) @ observed - 0.5) < 1e-12


def test_singular_corrector():
    with pytest.raises(SingularCorrectorError) as e:
        estimator.bs_inverse_matrix(3, 1.0)
    assert e.value.status == EXIT_SINGULAR
    with pytest.raises(SingularCorrectorError):
        estimator.combined_corrector(3, 1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        estimator.bs_avpur_matrix(3, 1.5)


def test_rank_deficient():
    with pytest.raises(RankDeficientError):
        estimator.least_squares_inverse(np.ones((3, 2)))
    with pytest.raises(RankDeficientError):
        estimator.least_squares_inverse(np.ones((2, 3)))


def test_least_squares_matches_pseudo_inverse():
    forward = errmodel.detector_error_matrix(3, 0.25)
    assert np.abs(estimator.least_squares_inverse(forward) - np.linalg.pinv(forward)).max() < 1e-10


def test_spatial_explicit_is_left_inverse():
    kernel = errmodel.gaussian_position_kernel(0.3, 1.0, 3)
    blur, outcomes = errmodel.spatial_blur_matrix(3, kernel)
    corrector, corrector_outcomes = estimator.spatial_explicit_matrix(3, kernel)
    assert corrector_outcomes == outcomes
    assert np.abs(corrector.compose(blur) - np.eye(8)).max() < 1e-9


@pytest.mark.parametrize('method', estimator.METHODS)
def test_spatial_round_trip(method):
    n = 3
    kernel = errmodel.gaussian_position_kernel(0.25, 1.0, n)
    dist = network.sign_pattern_distribution(subset_purities(qstate.make_cluster_state(n)))
    observed = errmodel.apply_spatial_blur(dist, kernel)
    if method == estimator.EXPLICIT:
        recovered = estimator.invert_spatial_explicit(observed, kernel)
    else:
        recovered = estimator.invert_spatial_least_squares(observed, kernel)
    assert np.abs(recovered - dist.probs).max() < 1e-9
    for bits in range(2**n):
        assert abs(estimator.parity_row(n, bits) @ recovered - subset_purities(qstate.make_cluster_state(n))[bits]) < 1e-9


def test_spatial_needs_positions():
    with pytest.raises(InvalidParameterError):
        estimator.invert_spatial_explicit([0.5, 0.5], np.eye(1))


def test_singular_kernel():
    with pytest.raises(SingularCorrectorError):
        estimator.kernel_inverse(np.ones((2, 2)) / 2)


def test_apply_length_mismatch():
    with pytest.raises(InvalidParameterError):
        estimator.bs_inverse_matrix(3, 0.1).apply([0.5, 0.5])


def test_unknown_method():
    with pytest.raises(InvalidParameterError):
        estimator.detector_inverse_matrix(3, 0.1, 'magic')
    with pytest.raises(InvalidParameterError):
        estimator.spatial_corrector(2, np.eye(2), 'magic')


def test_corrector_export():
    corrector = estimator.combined_corrector(2, 0.1, 0.1)
    assert corrector.shape == (3, 5)
    assert corrector.csv_header() == ['row', 'c0', 'c1', 'c2', 'c3', 'c4']
    assert len(corrector.to_csv_rows()) == 3
    assert np.array_equal(estimator.estimator_coefficients(2, 2, 0.1, 0.1), corrector.matrix[2])


def test_least_squares_against_any_channel():
    pj = network.singles_distribution(purity_profile(qstate.make_ghz(3)))
    forward = errmodel.combined_error_matrix(3, 0.1, 0.05)
    observed = errmodel.apply_combined_error(pj, 0.1, 0.05)
    assert np.abs(estimator.invert_least_squares(observed, forward) - pj.probs).max() < 1e-10
