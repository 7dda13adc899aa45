# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""The error-free detection network.

Every column of two state copies meets at a beam splitter; a column ends
either doubly occupied (+, symmetric) or with one atom per row (-,
antisymmetric). Sign patterns index outcomes by mask bits with 1 meaning
'-' in that column.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from latticeprobe.errors import InvalidParameterError, InvalidStateError
from latticeprobe.purity import PurityProfile, subset_array, mask_bits
from latticeprobe.util import comb, krawtchouk_matrix, popcount, bitstring, walsh_hadamard

MAX_PATTERN_QUBITS = 10
MAX_ORACLE_QUBITS = 3
NEGATIVE_TOL = 1e-12
SUM_TOL = 1e-10
INCONSISTENT_TOL = 1e-9

SIGN_PATTERN = 'sign_pattern'
SINGLES = 'singles'
PAIR_COUNTS = 'pair_counts'
ATOM_COUNTS = 'atom_counts'
POSITIONS = 'positions'


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities over one of the outcome spaces.

    SINGLES holds P(j) for j = 0..n singly occupied sites, PAIR_COUNTS the
    probability of detecting 2i atoms, ATOM_COUNTS the probability of
    detecting i = 0..2n atoms. POSITIONS carries `outcomes`, the observed
    position multisets (sorted tuples of bins) matching `probs`.
    """
    mode: str
    n: int
    probs: np.ndarray
    outcomes: tuple = None

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        probs.flags.writeable = False
        object.__setattr__(self, 'probs', probs)
        expected = {SIGN_PATTERN: 2**self.n, SINGLES: self.n + 1, PAIR_COUNTS: self.n + 1,
                    ATOM_COUNTS: 2 * self.n + 1}.get(self.mode)
        if self.mode == POSITIONS:
            expected = len(self.outcomes or ())
        elif expected is None:
            raise InvalidParameterError("Unknown distribution mode", submsg=repr(self.mode))
        if probs.shape != (expected,):
            raise InvalidParameterError("Mismatched lengths",
                submsg="%s distribution for n=%d needs %d entries, got %s" % (self.mode, self.n, expected, probs.shape))

    def __len__(self):
        return len(self.probs)

    def is_valid(self, negative_tol=NEGATIVE_TOL, sum_tol=SUM_TOL):
        return bool(self.probs.min() >= -negative_tol and abs(self.probs.sum() - 1) <= sum_tol)

    def to_csv_rows(self):
        if self.mode == SIGN_PATTERN:
            return [(bitstring(self.n, s), p) for s, p in enumerate(self.probs)]
        if self.mode == POSITIONS:
            return [(' '.join(str(x) for x in a), p) for a, p in zip(self.outcomes, self.probs)]
        return list(enumerate(self.probs))

    def to_json(self):
        if self.mode == SIGN_PATTERN:
            return {'mode': self.mode, 'n': self.n,
                    'probs': {bitstring(self.n, s): float(p) for s, p in enumerate(self.probs)}}
        doc = {'mode': self.mode, 'n': self.n, 'probs': [float(p) for p in self.probs]}
        if self.outcomes is not None:
            doc['outcomes'] = [list(a) for a in self.outcomes]
        return doc


def probabilities(dist, mode=None):
    """The probability array of an OutcomeDistribution or a plain sequence."""
    if isinstance(dist, OutcomeDistribution):
        if mode is not None and dist.mode != mode:
            raise InvalidParameterError("Wrong distribution mode", submsg="%s, expected %s" % (dist.mode, mode))
        return dist.probs
    return np.asarray(dist, dtype=float)


def _qubits_for(length):
    n = length - 1
    if n < 1:
        raise InvalidParameterError("Distribution too short", submsg="%d entries" % length)
    return n


def sign_pattern_distribution(purities, n=None):
    """P_s = 2^-n sum_B (prod_{i in B} s_i) pur(B) from a complete subset map."""
    values = subset_array(purities, n)
    n = values.size.bit_length() - 1
    if n > MAX_PATTERN_QUBITS:
        raise InvalidParameterError("Too many qubits for sign patterns", submsg="n=%d > %d" % (n, MAX_PATTERN_QUBITS))
    if values[0] != 1:
        raise InvalidParameterError("Incomplete subset purity map", submsg="pur(empty set) = %r" % values[0])
    return OutcomeDistribution(SIGN_PATTERN, n, walsh_hadamard(values) / 2**n)


def purity_from_patterns(dist, B):
    """P(even number of '-' inside B) - P(odd number)."""
    probs = probabilities(dist, SIGN_PATTERN)
    n = probs.size.bit_length() - 1
    bits = mask_bits(n, B)
    signs = np.array([(-1)**popcount(s & bits) for s in range(probs.size)])
    return float(signs @ probs)


def subset_count_distribution(dist, B):
    """Distribution of the number of antisymmetric columns inside B."""
    probs = probabilities(dist, SIGN_PATTERN)
    n = probs.size.bit_length() - 1
    bits = mask_bits(n, B)
    out = np.zeros(popcount(bits) + 1)
    for s, p in enumerate(probs):
        out[popcount(s & bits)] += p
    return out


def pattern_singles(dist):
    """Marginal over the total number of '-' columns."""
    probs = probabilities(dist, SIGN_PATTERN)
    n = probs.size.bit_length() - 1
    out = np.zeros(n + 1)
    for s, p in enumerate(probs):
        out[popcount(s)] += p
    return OutcomeDistribution(SINGLES, n, out)


def _exact(values):
    return [Fraction(float(v)) for v in values]


def singles_distribution(profile, check=True):
    """P(j) = 2^-n sum_k K[j][k] C(n,k) avpur_k, accumulated exactly."""
    n = profile.n
    avpur = _exact(profile.avpur)
    kraw = krawtchouk_matrix(n)
    probs = [float(sum(kraw[j][k] * comb(n, k) * avpur[k] for k in range(n + 1)) / 2**n)
             for j in range(n + 1)]
    if check and min(probs) < -INCONSISTENT_TOL:
        raise InvalidParameterError("Inconsistent purity profile",
            submsg="P(j) = %r for j = %d" % (min(probs), int(np.argmin(probs))))
    return OutcomeDistribution(SINGLES, n, probs)


def avpur_from_pj(dist):
    """Inverse of singles_distribution: avpur_k = C(n,k)^-1 sum_j K[k][j] P(j)."""
    probs = _exact(probabilities(dist))
    n = _qubits_for(len(probs))
    kraw = krawtchouk_matrix(n)
    return PurityProfile(n, [float(sum(kraw[k][j] * probs[j] for j in range(n + 1)) / comb(n, k))
                             for k in range(n + 1)])


def singles_matrix(n):
    """S with P = S @ avpur."""
    kraw = np.array(krawtchouk_matrix(n), dtype=float)
    binom = np.array([comb(n, k) for k in range(n + 1)], dtype=float)
    return kraw * binom[None, :] / 2**n


def avpur_matrix(n):
    """A with avpur = A @ P; the inverse of singles_matrix(n)."""
    kraw = np.array(krawtchouk_matrix(n), dtype=float)
    binom = np.array([comb(n, k) for k in range(n + 1)], dtype=float)
    return kraw / binom[:, None]


def _swap_permutation(n, column):
    """Basis permutation of two n-qubit copies swapping `column` between them."""
    size = 4**n
    hi = 1 << (2 * n - column)
    lo = 1 << (n - column)
    idx = np.arange(size)
    a = (idx & hi) != 0
    b = (idx & lo) != 0
    return np.where(a != b, idx ^ hi ^ lo, idx)


def two_copy_pattern_distribution(rho):
    """Literal Tr[(prod_i (I + s_i V_i)/2) rho (x) rho] for small registers."""
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0].bit_length() - 1
    if n > MAX_ORACLE_QUBITS:
        raise InvalidStateError("Too many qubits for the two-copy construction",
            submsg="n=%d > %d" % (n, MAX_ORACLE_QUBITS))
    pair = np.kron(rho, rho)
    eye = np.eye(4**n)
    swaps = [eye[_swap_permutation(n, c)] for c in range(1, n + 1)]
    probs = np.zeros(2**n)
    for s in range(2**n):
        projector = eye
        for c in range(1, n + 1):
            sign = -1 if s >> (n - c) & 1 else 1
            projector = projector @ (eye + sign * swaps[c - 1]) / 2
        probs[s] = np.trace(projector @ pair).real
    logging.debug("Two-copy distribution for n=%d: %s", n, probs)
    return OutcomeDistribution(SIGN_PATTERN, n, probs)
