# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Correctors that undo the error channels.

Every estimator here is linear in the observed distribution, so each one is
a CorrectionMatrix whose rows are the coefficients the variance module
squares. Explicit correctors follow the closed-form inverses; the
least-squares ones solve the over-determined channel equations through a QR
factorization and impose no positivity.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr, solve_triangular

from latticeprobe import errmodel
from latticeprobe.errors import InvalidParameterError, SingularCorrectorError, RankDeficientError
from latticeprobe.network import probabilities, OutcomeDistribution, SINGLES, POSITIONS
from latticeprobe.purity import PurityProfile
from latticeprobe.util import MAX_QUBITS, comb, popcount, permanents

EXPLICIT = 'explicit'
LEAST_SQUARES = 'least-squares'
METHODS = (EXPLICIT, LEAST_SQUARES)
RANK_TOL = 1e-12
MAX_KERNEL_CONDITION = 1e12


@dataclass(frozen=True)
class CorrectionMatrix:
    """Linear corrector; row r gives estimate r from the observed probabilities."""
    name: str
    matrix: np.ndarray
    method: str = EXPLICIT
    params: tuple = ()

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        matrix.flags.writeable = False
        object.__setattr__(self, 'matrix', matrix)

    @property
    def shape(self):
        return self.matrix.shape

    def apply(self, observed):
        probs = probabilities(observed)
        if probs.shape != (self.matrix.shape[1],):
            raise InvalidParameterError("Mismatched lengths",
                submsg="%s corrector takes %d outcomes, got %d" % (self.name, self.matrix.shape[1], probs.size))
        return np.array([math.fsum(row * probs) for row in self.matrix])

    def coefficients_for(self, row):
        return self.matrix[row]

    def compose(self, forward):
        return self.matrix @ np.asarray(forward)

    def csv_header(self):
        return ['row'] + ['c%d' % i for i in range(self.matrix.shape[1])]

    def to_csv_rows(self):
        return [[r] + list(row) for r, row in enumerate(self.matrix)]


def _check_method(method):
    if method not in METHODS:
        raise InvalidParameterError("Unknown correction method", submsg=repr(method))


def _check_n(n):
    if not 1 <= n <= MAX_QUBITS:
        raise InvalidParameterError("Invalid qubit count", submsg="n=%r outside 1..%d" % (n, MAX_QUBITS))


def _check_correctable(name, value):
    if value == 1:
        raise SingularCorrectorError("Singular corrector", submsg="%s = 1 destroys all information" % name)
    if not 0 <= value < 1:
        raise InvalidParameterError("Invalid %s" % name, submsg="%s=%r outside [0, 1)" % (name, value))


def _ratio(x):
    return (1 + x) / (1 - x)


def least_squares_inverse(matrix):
    """R^-1 Q^T of the economic QR factorization; fails on rank deficiency."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape[0] < matrix.shape[1]:
        raise RankDeficientError("Rank-deficient channel matrix",
            submsg="%d equations for %d unknowns" % matrix.shape)
    q, r = qr(matrix, mode='economic')
    diag = np.abs(np.diag(r))
    if diag.min() <= RANK_TOL * max(diag.max(), 1.0) * max(matrix.shape):
        raise RankDeficientError("Rank-deficient channel matrix", submsg="min |R_ii| = %g" % diag.min())
    return solve_triangular(r, q.T)


def invert_least_squares(observed, forward):
    """Minimizer of |forward @ x - observed|^2."""
    return least_squares_inverse(forward) @ probabilities(observed)


def bs_inverse_matrix(n, q):
    _check_n(n)
    _check_correctable('q', q)
    m = np.zeros((n + 1, n + 1))
    for j in range(n + 1):
        for i in range(j + 1):
            m[j, i] = comb(n - i, n - j) * (-q)**(j - i) / (1 - q)**(n - i)
    return CorrectionMatrix('bs_inverse', m, params=(('n', n), ('q', q)))


def invert_bs_error(observed, q):
    """P(j) from the probabilities P_exp(2i) of detecting 2i atoms."""
    probs = probabilities(observed)
    n = probs.size - 1
    return OutcomeDistribution(SINGLES, n, bs_inverse_matrix(n, q).apply(probs))


def bs_avpur_matrix(n, q):
    """A[k, i] = C(n,k)^-1 sum_l (-1)^l r^(k-l) C(i,l) C(n-i,k-l), r = (1+q)/(1-q)."""
    _check_n(n)
    _check_correctable('q', q)
    r = _ratio(q)
    m = np.zeros((n + 1, n + 1))
    for k in range(n + 1):
        for i in range(n + 1):
            m[k, i] = math.fsum((-1)**l * r**(k - l) * comb(i, l) * comb(n - i, k - l)
                                for l in range(min(i, k) + 1)) / comb(n, k)
    return CorrectionMatrix('bs_avpur', m, params=(('n', n), ('q', q)))


def avpur_corrected_bs(observed, q, k):
    probs = probabilities(observed)
    n = probs.size - 1
    if not 0 <= k <= n:
        raise InvalidParameterError("Invalid subset size", submsg="k=%r for n=%d" % (k, n))
    return math.fsum(bs_avpur_matrix(n, q).coefficients_for(k) * probs)


def subset_bs_coefficients(k, q):
    """((1+q)/(1-q))^(k-i) (-1)^i for i = 0..k antisymmetric sites seen in B."""
    _check_correctable('q', q)
    r = _ratio(q)
    return np.array([r**(k - i) * (-1)**i for i in range(k + 1)])


def subset_purity_corrected(observed_B, q):
    probs = probabilities(observed_B)
    return math.fsum(subset_bs_coefficients(probs.size - 1, q) * probs)


def detector_inverse_matrix(n, p, method=EXPLICIT):
    """Maps observed atom counts i = 0..2n back to P(j)."""
    _check_n(n)
    _check_method(method)
    _check_correctable('p', p)
    if method == LEAST_SQUARES:
        return CorrectionMatrix('detector_inverse', least_squares_inverse(errmodel.detector_error_matrix(n, p)),
                                LEAST_SQUARES, (('n', n), ('p', p)))
    m = np.zeros((n + 1, 2 * n + 1))
    for j in range(n + 1):
        for i in range(2 * j, 2 * n + 1):
            m[j, i] = comb(i, 2 * j) * (-p)**(i - 2 * j) / (1 - p)**i
    return CorrectionMatrix('detector_inverse', m, EXPLICIT, (('n', n), ('p', p)))


def _atom_count_qubits(probs):
    if probs.size < 3 or probs.size % 2 == 0:
        raise InvalidParameterError("Mismatched lengths", submsg="%d atom-count entries" % probs.size)
    return (probs.size - 1) // 2


def invert_detector_error_explicit(observed, p):
    probs = probabilities(observed)
    n = _atom_count_qubits(probs)
    return OutcomeDistribution(SINGLES, n, detector_inverse_matrix(n, p, EXPLICIT).apply(probs))


def invert_detector_error(observed, p, method=EXPLICIT):
    probs = probabilities(observed)
    n = _atom_count_qubits(probs)
    return OutcomeDistribution(SINGLES, n, detector_inverse_matrix(n, p, method).apply(probs))


def combined_corrector(n, p, q, method=EXPLICIT):
    """Rows k = 0..n of the avpur_k estimator over observed atom counts."""
    detector = detector_inverse_matrix(n, p, method)
    return CorrectionMatrix('combined', bs_avpur_matrix(n, q).matrix @ detector.matrix, method,
                            (('n', n), ('p', p), ('q', q)))


def estimator_coefficients(n, k, p, q, method=EXPLICIT):
    return combined_corrector(n, p, q, method).coefficients_for(k)


def correct_combined(observed, p, q, method=EXPLICIT):
    """Undo detector error, then beam-splitter error, giving the whole profile."""
    probs = probabilities(observed)
    n = _atom_count_qubits(probs)
    pairs = detector_inverse_matrix(n, p, method).apply(probs)
    avpur = bs_avpur_matrix(n, q).apply(pairs)
    logging.debug("Corrected profile (%s, p=%g, q=%g): %s", method, p, q, avpur)
    return PurityProfile(n, avpur, method=method)


def subset_detector_inverse_matrix(k, p):
    _check_correctable('p', p)
    miss = p**2
    m = np.zeros((k + 1, k + 1))
    for j in range(k + 1):
        for i in range(j, k + 1):
            m[j, i] = comb(i, j) * (-miss)**(i - j) / (1 - miss)**i
    return m


def subset_purity_detector_corrected(observed_B, p):
    """sum_i (-1)^i ((1+p^2)/(1-p^2))^i P_exp(i) for spatially resolved subsets."""
    probs = probabilities(observed_B)
    r = _ratio(p**2)
    return math.fsum((-1)**i * r**i * v for i, v in enumerate(probs))


def subset_estimator_coefficients(k, p, q):
    """Coefficients of pur(B) over i = 0..|B| sites of B seen antisymmetric."""
    return subset_bs_coefficients(k, q) @ subset_detector_inverse_matrix(k, p)


def kernel_inverse(kernel):
    kernel = np.asarray(kernel, dtype=float)
    cond = np.linalg.cond(kernel)
    if not cond < MAX_KERNEL_CONDITION:
        raise SingularCorrectorError("Singular position kernel", submsg="condition number %.3g" % cond)
    return np.linalg.inv(kernel)


def spatial_explicit_matrix(n, kernel):
    """E[B, A] = perm(f^-1[b, A]) / 2^k, b listing every site of B twice."""
    inverse = kernel_inverse(kernel)
    outcomes = errmodel.spatial_outcomes(n)
    columns = {a: c for c, a in enumerate(outcomes)}
    m = np.zeros((2**n, len(outcomes)))
    for bits in range(2**n):
        k = popcount(bits)
        sites = errmodel.doubled_sites(n, bits)
        block = errmodel.position_multisets(n, k)
        mats = np.array([inverse[np.ix_(sites, a)] for a in block]).reshape(len(block), 2 * k, 2 * k)
        for a, v in zip(block, permanents(mats) / 2**k):
            m[bits, columns[a]] = v
    return CorrectionMatrix('spatial_inverse', m, EXPLICIT, (('n', n),)), outcomes


def spatial_least_squares_matrix(n, kernel):
    blur, outcomes = errmodel.spatial_blur_matrix(n, kernel)
    return CorrectionMatrix('spatial_inverse', least_squares_inverse(blur), LEAST_SQUARES, (('n', n),)), outcomes


def spatial_corrector(n, kernel, method=EXPLICIT):
    _check_method(method)
    if method == LEAST_SQUARES:
        return spatial_least_squares_matrix(n, kernel)
    return spatial_explicit_matrix(n, kernel)


def _positions(observed):
    if isinstance(observed, OutcomeDistribution):
        if observed.mode != POSITIONS:
            raise InvalidParameterError("Wrong distribution mode", submsg="%s, expected %s" % (observed.mode, POSITIONS))
        return observed.probs, observed.n
    raise InvalidParameterError("Spatial correction needs a position distribution")


def invert_spatial_explicit(observed, kernel):
    """P(B) over antisymmetric-site masks from observed position multisets."""
    probs, n = _positions(observed)
    return spatial_explicit_matrix(n, kernel)[0].apply(probs)


def invert_spatial_least_squares(observed, kernel):
    probs, n = _positions(observed)
    return spatial_least_squares_matrix(n, kernel)[0].apply(probs)


def parity_row(n, bits):
    """pur(B) = sum over masks of (-1)^|mask & B| P(mask)."""
    return np.array([(-1)**popcount(s & bits) for s in range(2**n)], dtype=float)
