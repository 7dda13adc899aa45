# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import numpy as np
import pytest

from latticeprobe import network, qstate
from latticeprobe.errors import InvalidParameterError, InvalidStateError
from latticeprobe.purity import PurityProfile, SubsetMask, purity_profile, subset_purities


def test_sign_patterns_reproduce_purities():
    values = subset_purities(qstate.make_ghz(3))
    dist = network.sign_pattern_distribution(values)
    assert dist.is_valid()
    for bits in range(8):
        assert abs(network.purity_from_patterns(dist, bits) - values[bits]) < 1e-12


def test_sign_patterns_from_mask_keyed_map():
    values = subset_purities(qstate.make_cluster_state(3))
    keyed = {SubsetMask(3, bits): values[bits] for bits in range(8)}
    dist = network.sign_pattern_distribution(keyed)
    assert dist.n == 3
    assert np.abs(dist.probs - network.sign_pattern_distribution(values).probs).max() < 1e-15


def test_partial_map_is_not_read_as_smaller_register():
    values = subset_purities(qstate.make_ghz(3))
    partial = {bits: values[bits] for bits in range(4)}
    with pytest.raises(InvalidParameterError, match="Incomplete subset map"):
        network.sign_pattern_distribution(partial, n=3)
    with pytest.raises(InvalidParameterError, match="Incomplete subset map"):
        network.sign_pattern_distribution({SubsetMask(3, b): v for b, v in partial.items()})

@pytest.mark.parametrize('seed', range(20))
def test_two_copy_oracle(seed):
    n = seed % 3 + 1
    state = qstate.random_mixed_state(n, seed)
    values = subset_purities(state)
    literal = network.two_copy_pattern_distribution(state.data)
    assert np.abs(literal.probs - network.sign_pattern_distribution(values).probs).max() < 1e-12
    for bits in range(2**n):
        assert abs(network.purity_from_patterns(literal, bits) - values[bits]) < 1e-12


def test_two_copy_oracle_size_cap():
    with pytest.raises(InvalidStateError):
        network.two_copy_pattern_distribution(np.eye(16) / 16)


def test_pattern_marginal_matches_singles():
    state = qstate.make_cluster_state(5)
    dist = network.sign_pattern_distribution(subset_purities(state))
    singles = network.singles_distribution(purity_profile(state))
    assert np.abs(network.pattern_singles(dist).probs - singles.probs).max() < 1e-12


def test_subset_count_distribution():
    dist = network.sign_pattern_distribution(subset_purities(qstate.make_ghz(4)))
    counts = network.subset_count_distribution(dist, [1, 2])
    assert counts.shape == (3,)
    assert abs(counts.sum() - 1) < 1e-12
    # pur({1,2}) = P(even) - P(odd)
    assert abs(counts[0] - counts[1] + counts[2] - 0.5) < 1e-12


def test_ghz_singles_round_trip():
    profile = purity_profile(qstate.make_ghz(10))
    pj = network.singles_distribution(profile)
    assert pj.is_valid()
    assert np.abs(pj.probs[1::2]).max() < 1e-12
    back = network.avpur_from_pj(pj)
    assert np.abs(back.as_array() - profile.as_array()).max() < 1e-12


def test_maximally_mixed_qubit():
    pj = network.singles_distribution(PurityProfile(1, [1, 0.5]))
    assert np.abs(pj.probs - [0.75, 0.25]).max() < 1e-15


def test_product_state_never_leaves_sites_singly_occupied():
    pj = network.singles_distribution(PurityProfile(4, [1] * 5))
    assert np.abs(pj.probs - [1, 0, 0, 0, 0]).max() < 1e-15


def test_inconsistent_profile():
    with pytest.raises(InvalidParameterError, match="Inconsistent purity profile"):
        network.singles_distribution(PurityProfile(2, [1, 1, 0.25]))


def test_linear_maps_are_inverse():
    product = network.singles_matrix(8) @ network.avpur_matrix(8)
    assert np.abs(product - np.eye(9)).max() < 1e-9


def test_distribution_length_checked():
    with pytest.raises(InvalidParameterError):
        network.OutcomeDistribution(network.SINGLES, 3, [0.5, 0.5])


def test_pattern_exports():
    dist = network.sign_pattern_distribution(subset_purities(qstate.make_ghz(2)))
    doc = dist.to_json()
    assert set(doc['probs']) == {'00', '01', '10', '11'}
    assert abs(doc['probs']['00'] - 0.75) < 1e-12
    assert [row[0] for row in dist.to_csv_rows()] == ['00', '01', '10', '11']
