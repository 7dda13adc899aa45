# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Forward error channels from ideal to observed outcome distributions.

Errors at different sites are independent. A symmetric pair fails to bunch
with probability q and then looks like an antisymmetric site; each atom is
missed by the detector with probability p; observed positions are blurred
by a Gaussian of width sigma.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import ndtr

from latticeprobe import bham
from latticeprobe.errors import InvalidParameterError, check_probability
from latticeprobe.network import OutcomeDistribution, probabilities, PAIR_COUNTS, ATOM_COUNTS, POSITIONS
from latticeprobe.util import comb, popcount, permanents

MAX_SPATIAL_QUBITS = 6
GAUSS_NODES = 32
GAUSS_SPAN = 4.0


@dataclass(frozen=True)
class ErrorParams:
    p: float = 0.0
    q: float = 0.0
    sigma: float = 0.0
    wavelength: float = 1.0

    def __post_init__(self):
        check_probability('p', self.p, allow_one=True)
        check_probability('q', self.q, allow_one=True)
        if self.sigma < 0:
            raise InvalidParameterError("Invalid position spread", submsg="sigma=%r < 0" % self.sigma)
        if not self.wavelength > 0:
            raise InvalidParameterError("Invalid wavelength", submsg="%r" % self.wavelength)


@dataclass(frozen=True)
class JDistribution:
    """Quadrature nodes and weights for a run-to-run distribution of J."""
    nodes: tuple
    weights: tuple

    def __post_init__(self):
        nodes = tuple(float(x) for x in self.nodes)
        weights = tuple(float(w) for w in self.weights)
        if len(nodes) != len(weights) or not nodes:
            raise InvalidParameterError("Invalid quadrature weights",
                submsg="%d nodes, %d weights" % (len(nodes), len(weights)))
        if min(weights) < 0 or abs(math.fsum(weights) - 1) > 1e-10:
            raise InvalidParameterError("Invalid quadrature weights",
                submsg="weights must be non-negative and sum to 1, sum %r" % math.fsum(weights))
        if min(nodes) <= 0:
            raise InvalidParameterError("Invalid quadrature nodes", submsg="J must stay positive, min %r" % min(nodes))
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def point(cls, J):
        return cls((J,), (1.0,))

    @classmethod
    def discrete(cls, nodes, weights):
        return cls(tuple(nodes), tuple(weights))

    @classmethod
    def gaussian(cls, mean, std, order=GAUSS_NODES):
        """Gauss-Legendre rule over mean +- 4 std, renormalized to the window."""
        if std == 0:
            return cls.point(mean)
        x, w = leggauss(order)
        nodes = mean + GAUSS_SPAN * std * x
        weights = w * np.exp(-0.5 * (GAUSS_SPAN * x)**2)
        return cls(tuple(nodes), tuple(weights / math.fsum(weights)))

    @classmethod
    def from_fluctuation(cls, J, dJ):
        """Gaussian whose average bunching failure matches the small-dJ formula.

        At the splitter time of the mean, q(J) ~ pi^2/4 ((J - mean)/mean)^2,
        so the standard deviation is dJ/sqrt(2).
        """
        return cls.gaussian(J, dJ / math.sqrt(2))

    @property
    def mean(self):
        return math.fsum(x * w for x, w in zip(self.nodes, self.weights))


def _singles(P):
    probs = probabilities(P)
    if probs.ndim != 1 or probs.size < 2:
        raise InvalidParameterError("Invalid distribution", submsg="shape %s" % (probs.shape,))
    return probs, probs.size - 1


@lru_cache(maxsize=64)
def _bs_error_matrix(n, q):
    m = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i + 1):
            m[i, j] = comb(n - j, i - j) * q**(i - j) * (1 - q)**(n - i)
    m.flags.writeable = False
    return m


def bs_error_matrix(n, q):
    """M[i, j]: probability of 2i detected atoms given j antisymmetric sites."""
    check_probability('q', q, allow_one=True)
    return _bs_error_matrix(n, float(q))


@lru_cache(maxsize=64)
def _detector_error_matrix(n, p):
    m = np.zeros((2 * n + 1, n + 1))
    for j in range(n + 1):
        for i in range(2 * j + 1):
            m[i, j] = comb(2 * j, i) * p**(2 * j - i) * (1 - p)**i
    m.flags.writeable = False
    return m


def detector_error_matrix(n, p):
    """D[i, j]: probability of seeing i atoms given 2j atoms in singly occupied sites."""
    check_probability('p', p, allow_one=True)
    return _detector_error_matrix(n, float(p))


def combined_error_matrix(n, p, q):
    """Detector error after beam-splitter error."""
    return detector_error_matrix(n, p) @ bs_error_matrix(n, q)


def apply_bs_error(P, q):
    probs, n = _singles(P)
    return OutcomeDistribution(PAIR_COUNTS, n, bs_error_matrix(n, q) @ probs)


def apply_detector_error(P, p):
    """Accepts ideal P(j) or pair counts that already carry beam-splitter error."""
    probs, n = _singles(P)
    return OutcomeDistribution(ATOM_COUNTS, n, detector_error_matrix(n, p) @ probs)


def apply_combined_error(P, p, q):
    return apply_detector_error(apply_bs_error(P, q), p)


def effective_qs(jdist, U):
    """Bunching failure at every node, all timed for the mean J."""
    t = bham.optimal_bs_time(jdist.mean, U)
    return [bham.qbs_exact(J, U, t) for J in jdist.nodes]


def effective_q(jdist, U):
    return math.fsum(w * q for w, q in zip(jdist.weights, effective_qs(jdist, U)))


def random_j_error_matrix(n, jdist, U):
    return sum(w * bs_error_matrix(n, q) for w, q in zip(jdist.weights, effective_qs(jdist, U)))


def apply_bs_error_random_J(P, jdist, U):
    """Beam-splitter error averaged over a fluctuating hopping energy."""
    if not isinstance(jdist, JDistribution):
        raise InvalidParameterError("Invalid quadrature weights", submsg="expected a JDistribution")
    probs, n = _singles(P)
    return OutcomeDistribution(PAIR_COUNTS, n, random_j_error_matrix(n, jdist, U) @ probs)


def apply_subset_bs_error(P_B, q):
    """Beam-splitter error on the antisymmetric-count distribution of one subset."""
    return bs_error_matrix(len(P_B) - 1, q) @ np.asarray(P_B, dtype=float)


def subset_detector_error_matrix(k, p):
    """An antisymmetric site of B is lost only when both of its atoms are missed."""
    check_probability('p', p, allow_one=True)
    miss = p**2
    m = np.zeros((k + 1, k + 1))
    for j in range(k + 1):
        for i in range(j + 1):
            m[i, j] = comb(j, i) * (1 - miss)**i * miss**(j - i)
    return m


def apply_subset_detector_error(P_B, p):
    return subset_detector_error_matrix(len(P_B) - 1, p) @ np.asarray(P_B, dtype=float)


def gaussian_position_kernel(sigma, wavelength, n):
    """f[x, y]: probability of observing in bin x an atom sitting at site y.

    Sites sit at y*wavelength/2 and bins of width wavelength/2 are centred
    on them; the two edge bins extend to infinity, so every column sums to 1.
    """
    if sigma < 0:
        raise InvalidParameterError("Invalid position spread", submsg="sigma=%r < 0" % sigma)
    if sigma == 0:
        return np.eye(n)
    half = wavelength / 2
    edges = (np.arange(n + 1) - 0.5) * half
    upper = (edges[1:, None] - np.arange(n)[None, :] * half) / sigma
    lower = (edges[:-1, None] - np.arange(n)[None, :] * half) / sigma
    upper[-1, :] = np.inf
    lower[0, :] = -np.inf
    return ndtr(upper) - ndtr(lower)


def position_multisets(n, k):
    """Sorted tuples of 2k observed bins."""
    return list(itertools.combinations_with_replacement(range(n), 2 * k))


def symmetry_factor(A):
    """Permutations of the observed list that leave it unchanged."""
    factor = 1
    for _, group in itertools.groupby(sorted(A)):
        factor *= math.factorial(len(list(group)))
    return factor


def doubled_sites(n, bits):
    """Sites of B (0-based, column 1 first) with every site listed twice."""
    sites = [c for c in range(n) if bits >> (n - 1 - c) & 1]
    return sites + sites


def spatial_outcomes(n):
    """Every observable multiset, grouped by k = |A|/2."""
    if n > MAX_SPATIAL_QUBITS:
        raise InvalidParameterError("Too many qubits for spatial resolution",
            submsg="n=%d > %d" % (n, MAX_SPATIAL_QUBITS))
    return tuple(a for k in range(n + 1) for a in position_multisets(n, k))


def spatial_blur_matrix(n, kernel):
    """(F, outcomes) with P_exp = F @ P over masks, F[A, B] = perm(f[A, b]) / s(A)."""
    kernel = np.asarray(kernel, dtype=float)
    outcomes = spatial_outcomes(n)
    rows = {a: r for r, a in enumerate(outcomes)}
    blur = np.zeros((len(outcomes), 2**n))
    for bits in range(2**n):
        k = popcount(bits)
        sites = doubled_sites(n, bits)
        block = position_multisets(n, k)
        mats = np.array([kernel[np.ix_(a, sites)] for a in block]).reshape(len(block), 2 * k, 2 * k)
        values = permanents(mats) / np.array([symmetry_factor(a) for a in block])
        for a, v in zip(block, values):
            blur[rows[a], bits] = v
    logging.debug("Spatial blur matrix for n=%d: %d outcomes", n, len(outcomes))
    return blur, outcomes


def apply_spatial_blur(P, kernel):
    """Observed position-multiset distribution from P over antisymmetric-site masks."""
    probs = probabilities(P)
    n = probs.size.bit_length() - 1
    if probs.size != 2**n:
        raise InvalidParameterError("Mismatched lengths", submsg="%d entries is not 2^n" % probs.size)
    blur, outcomes = spatial_blur_matrix(n, kernel)
    return OutcomeDistribution(POSITIONS, n, blur @ probs, outcomes=outcomes)
