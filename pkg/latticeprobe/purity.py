# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Subset purities, average purities and the separability inequalities.

A separable state never has a larger subsystem purer than one of its
parts; any violation of that ordering certifies entanglement.
"""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from latticeprobe import qstate
from latticeprobe.errors import InvalidParameterError
from latticeprobe.util import comb, popcount, column_bit, mask_from_columns, columns_from_mask, \
    bitstring, walsh_hadamard
from latticeprobe.worker import get_worker

VIOLATION_TOL = 1e-9
SPOT_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class SubsetMask:
    """Columns of B as a bitmask; column 1 is the most significant bit."""
    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < 2**self.n:
            raise InvalidParameterError("Invalid subset mask", submsg="%r for n=%d" % (self.bits, self.n))

    @classmethod
    def from_columns(cls, n, columns):
        try:
            return cls(n, mask_from_columns(n, columns))
        except ValueError as e:
            raise InvalidParameterError("Invalid subset", submsg=str(e))

    @property
    def size(self):
        return popcount(self.bits)

    @property
    def columns(self):
        return columns_from_mask(self.n, self.bits)

    def complement(self):
        return SubsetMask(self.n, (2**self.n - 1) ^ self.bits)

    def issubset(self, other):
        return self.bits & ~other.bits == 0

    def __str__(self):
        return bitstring(self.n, self.bits)


@dataclass(frozen=True)
class PurityProfile:
    """Average purities avpur_0..avpur_n.

    Estimated profiles may leave the physical box; is_physical() tells.
    """
    n: int
    avpur: tuple
    method: str = None

    def __post_init__(self):
        if len(self.avpur) != self.n + 1:
            raise InvalidParameterError("Profile length mismatch",
                submsg="%d values for n=%d" % (len(self.avpur), self.n))
        object.__setattr__(self, 'avpur', tuple(float(v) for v in self.avpur))

    def __getitem__(self, k):
        return self.avpur[k]

    def as_array(self):
        return np.array(self.avpur)

    def is_physical(self, tol=1e-12):
        if abs(self.avpur[0] - 1) > tol:
            return False
        return all(2.0**-k - tol <= v <= 1 + tol for k, v in enumerate(self.avpur))

    def to_csv_rows(self):
        return [(k, v) for k, v in enumerate(self.avpur)]


@dataclass(frozen=True)
class InequalityVerdict:
    """Largest violation found; witness is (k, k') or (A, B) as masks."""
    violated: bool
    witness: tuple
    margin: float
    level: str = 'average'

    def to_json(self):
        return {'violated': self.violated, 'witness': list(self.witness) if self.witness else None,
                'margin': self.margin, 'level': self.level}


def mask_bits(n, B):
    if isinstance(B, SubsetMask):
        if B.n != n:
            raise InvalidParameterError("Subset width mismatch", submsg="mask for n=%d, state n=%d" % (B.n, n))
        return B.bits
    if isinstance(B, (int, np.integer)):
        return SubsetMask(n, int(B)).bits
    return SubsetMask.from_columns(n, B).bits


def _split(psi, n, bits):
    """Amplitudes as a 2^|B| x 2^(n-|B|) matrix, rows indexed by B."""
    inside = [c - 1 for c in columns_from_mask(n, bits)]
    outside = [c - 1 for c in range(1, n + 1) if not bits & column_bit(n, c)]
    tensor = psi.reshape([2] * n).transpose(inside + outside)
    return tensor.reshape(2**len(inside), 2**len(outside))


def _pure_purity(m):
    if m.shape[0] <= m.shape[1]:
        g = m @ m.conj().T
    else:
        g = m.conj().T @ m
    return float(np.sum(np.abs(g)**2))


def _dephased_purity(m, d):
    k = int(m.shape[0]).bit_length() - 1
    r = int(m.shape[1]).bit_length() - 1
    damping = (1 - d)**2
    if 3 * k <= 2 * (k + r):
        rho = m @ m.conj().T
        return float(np.sum(qstate.dephasing_weights(k, damping) * np.abs(rho)**2))
    # sum over flip sets C of q(C) ||M^dag Z_C M||_F^2, with q the dephasing
    # distribution whose damping is (1-d)^2
    products = (m.conj()[:, :, None] * m[:, None, :]).reshape(2**k, -1)
    norms = np.sum(np.abs(walsh_hadamard(products))**2, axis=1)
    flip = (1 - damping) / 2
    weights = np.array([1.0])
    for _ in range(k):
        weights = np.kron(weights, [1 - flip, flip])
    return float(weights @ norms)


def _dense_reduced(rho, n, bits):
    inside = [c - 1 for c in columns_from_mask(n, bits)]
    outside = [c - 1 for c in range(1, n + 1) if not bits & column_bit(n, c)]
    k = len(inside)
    t = rho.reshape([2] * (2 * n)).transpose(inside + outside + [n + i for i in inside] + [n + i for i in outside])
    t = t.reshape(2**k, 2**(n - k), 2**k, 2**(n - k))
    return np.einsum('ajbj->ab', t)


def reduced_density_matrix(state, B):
    bits = mask_bits(state.n, B)
    if state.kind == qstate.DENSE:
        return _dense_reduced(state.data, state.n, bits)
    m = _split(state.data, state.n, bits)
    rho = m @ m.conj().T
    if state.kind == qstate.PURE_DEPHASED:
        rho = rho * qstate.dephasing_weights(popcount(bits), 1 - state.d)
    return rho


def reduced_purity(state, B):
    """Tr(rho_B^2); the empty subset has purity 1."""
    bits = mask_bits(state.n, B)
    if bits == 0:
        return 1.0
    if state.kind == qstate.DENSE:
        return float(np.sum(np.abs(_dense_reduced(state.data, state.n, bits))**2))
    m = _split(state.data, state.n, bits)
    if state.kind == qstate.PURE_DEPHASED and state.d > 0:
        return _dephased_purity(m, state.d)
    return _pure_purity(m)


def full_purity(state):
    if state.kind == qstate.PURE:
        return 1.0
    if state.kind == qstate.PURE_DEPHASED:
        return reduced_purity(state, 2**state.n - 1)
    return float(np.sum(np.abs(state.data)**2))


def macro_purity_closed_form(n, gamma, k):
    """Purity of any k-qubit subsystem of the macroscopic superposition."""
    if not 0 <= k <= n:
        raise InvalidParameterError("Invalid subset size", submsg="k=%r for n=%d" % (k, n))
    gamma = complex(gamma)
    if abs(gamma) > 1 + 1e-15:
        raise InvalidParameterError("Invalid macroscopic superposition parameter",
            submsg="|gamma|=%r > 1" % abs(gamma))
    norm2 = qstate.macro_normalization(n, gamma)
    a2 = abs(gamma)**2
    gn = gamma**n
    numerator = 2 + 2 * a2**k + 2 * a2**(n - k) + 8 * gn.real + 2 * (gn * gn).real
    return numerator / norm2**2


# Chain evaluation for the phi family. Per site the four-copy indices
# (x, y, x', y') of |rho_B(x, y)|^2 reduce to a pair (a, b): (a, b, a, b) on
# a site of B and (a, a, b, b) on a traced site. Neighbouring pairs pick up
# the phase exp(i phi [t(x) - t(y) - t(x') + t(y')]) with t(u, v) = [u=0][v=1].

def _chain_matrices(phi, d):
    damping = (1 - d)**2
    def quad(s, inside):
        a, b = s >> 1, s & 1
        return (a, b, a, b) if inside else (a, a, b, b)
    t = lambda u, v: 1 if (u == 0 and v == 1) else 0
    transfer = np.zeros((4, 4, 4), dtype=complex)
    for m1 in (0, 1):
        for m2 in (0, 1):
            for s in range(4):
                for s2 in range(4):
                    x, y, xp, yp = quad(s, m1)
                    x2, y2, xp2, yp2 = quad(s2, m2)
                    delta = t(x, x2) - t(y, y2) - t(xp, xp2) + t(yp, yp2)
                    transfer[2 * m1 + m2, s, s2] = np.exp(1j * phi * delta)
    site = np.array([[1.0, 1.0, 1.0, 1.0],
                     [1.0, damping, damping, 1.0]]) / 4
    return transfer, site


def phi_chain_purities(n, phi, d=0.0, masks=None):
    """Reduced purities of the (dephased) phi state for many masks at once."""
    masks = np.arange(2**n) if masks is None else np.asarray(masks)
    transfer, site = _chain_matrices(phi, d)
    inside = (masks[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    v = site[inside[:, 0]].astype(complex)
    for i in range(n - 1):
        step = transfer[2 * inside[:, i] + inside[:, i + 1]]
        v = np.einsum('ms,mst->mt', v, step) * site[inside[:, i + 1]]
    return np.sum(v, axis=1).real


def _uses_chain(state):
    return state.family == 'phi' and state.kind != qstate.DENSE


def _uses_macro_closed_form(state):
    return state.family == 'macro' and state.kind == qstate.PURE


def phi_class_key(n, bits):
    """Canonical subset shape under which phi-state purities coincide.

    Diagonal neighbour gates acting only on traced qubits drop out, so a
    leading or trailing traced run acts like one qubit, an inner run of two
    or more like two, and reading the row backwards changes only local
    phases.
    """
    s = bitstring(n, bits)
    runs = s.split('1')
    if len(runs) == 1:
        return ''
    runs[0] = runs[0][:1]
    runs[-1] = runs[-1][:1]
    for i in range(1, len(runs) - 1):
        runs[i] = runs[i][:2]
    key = '1'.join(runs)
    return min(key, key[::-1])


def _masks_of_size(n, k):
    return [sum(column_bit(n, c) for c in cols) for cols in itertools.combinations(range(1, n + 1), k)]


def _evaluate(state, masks):
    return get_worker().map(lambda bits: reduced_purity(state, bits), masks)


def _phi_class_average(state, masks):
    classes = {}
    for bits in masks:
        classes.setdefault(phi_class_key(state.n, bits), []).append(bits)
    total = []
    for key, members in sorted(classes.items()):
        values = _evaluate(state, members[:2])
        if len(values) == 2 and abs(values[0] - values[1]) > SPOT_CHECK_TOL:
            logging.warning("Spot check failed for class %s (%r vs %r), evaluating all members",
                            key, values[0], values[1])
            total.extend(_evaluate(state, members))
        else:
            total.append(values[0] * len(members))
    logging.debug("Averaged %d subsets through %d classes", len(masks), len(classes))
    return math.fsum(total) / len(masks)


def average_purity(state, k, method='auto'):
    """Mean purity over all C(n, k) subsets of size k.

    method 'auto' uses the closed form for pure macroscopic superpositions
    and chain evaluation for phi states, 'classes' evaluates one
    spot-checked representative per phi-state subset class, and 'subsets'
    enumerates every subset.
    """
    n = state.n
    if not 0 <= k <= n:
        raise InvalidParameterError("Invalid subset size", submsg="k=%r for n=%d" % (k, n))
    if k == 0:
        return 1.0
    if k == n:
        return full_purity(state)
    if method == 'auto' and _uses_macro_closed_form(state):
        return macro_purity_closed_form(n, state.param('gamma'), k)
    masks = _masks_of_size(n, k)
    if method == 'auto' and _uses_chain(state):
        values = phi_chain_purities(n, state.param('phi'), state.d, masks)
        return math.fsum(values) / len(masks)
    if method == 'classes' and _uses_chain(state):
        return _phi_class_average(state, masks)
    return math.fsum(_evaluate(state, masks)) / len(masks)


def subset_purities(state, method='auto'):
    """Purity of every subset, as an array indexed by mask bits."""
    n = state.n
    if method == 'auto' and _uses_chain(state):
        values = phi_chain_purities(n, state.param('phi'), state.d)
        values[0] = 1.0
        return values
    return np.array(_evaluate(state, range(2**n)))


def profile_from_subsets(n, purities):
    purities = np.asarray(purities)
    sizes = np.array([popcount(b) for b in range(2**n)])
    return PurityProfile(n, [math.fsum(purities[sizes == k]) / comb(n, k) for k in range(n + 1)])


def purity_profile(state, method='auto'):
    n = state.n
    if method == 'auto' and _uses_macro_closed_form(state):
        return PurityProfile(n, [macro_purity_closed_form(n, state.param('gamma'), k) for k in range(n + 1)])
    if method == 'auto' and _uses_chain(state):
        return profile_from_subsets(n, subset_purities(state))
    return PurityProfile(n, [average_purity(state, k, method) for k in range(n + 1)])


def check_subset_inequalities(purities, tol=VIOLATION_TOL, n=None):
    """Largest violation of the purity ordering.

    Given a PurityProfile, looks for avpur_k < avpur_k' with k < k'. Given a
    complete subset map (array indexed by mask, or dict), looks for
    pur(A) < pur(B) with A a proper subset of B.
    """
    if isinstance(purities, PurityProfile):
        values = purities.avpur
        margin, witness = 0.0, None
        for k in range(len(values)):
            for kp in range(k + 1, len(values)):
                if values[kp] - values[k] > margin:
                    margin, witness = values[kp] - values[k], (k, kp)
        return InequalityVerdict(margin > tol, witness, margin, 'average')

    values = subset_array(purities, n)
    size = len(values)
    # smallest purity among all subsets of each mask, with its argmin
    low = values.copy()
    arg = np.arange(size)
    bit = 1
    while bit < size:
        has = (np.arange(size) & bit) != 0
        cand = np.where(has, low[np.arange(size) ^ bit], np.inf)
        better = cand < low
        low = np.where(better, cand, low)
        arg = np.where(better, arg[np.arange(size) ^ bit], arg)
        bit <<= 1
    margin, witness = 0.0, None
    best_low = np.full(size, np.inf)
    best_arg = np.zeros(size, dtype=int)
    bit = 1
    while bit < size:
        has = (np.arange(size) & bit) != 0
        cand = np.where(has, low[np.arange(size) ^ bit], np.inf)
        better = cand < best_low
        best_low = np.where(better, cand, best_low)
        best_arg = np.where(better, arg[np.arange(size) ^ bit], best_arg)
        bit <<= 1
    gaps = np.where(np.isfinite(best_low), values - best_low, -np.inf)
    b = int(np.argmax(gaps))
    if gaps[b] > 0:
        margin, witness = float(gaps[b]), (int(best_arg[b]), b)
    return InequalityVerdict(margin > tol, witness, margin, 'subset')


def subset_array(purities, n=None):
    """Subset purities as an array indexed by mask.

    Dict keys may be ints or SubsetMask; n comes from the argument, else from
    SubsetMask keys, else from the largest key. Every one of the 2^n subsets
    except the empty one must be present.
    """
    if isinstance(purities, dict):
        entries = {}
        for key, v in purities.items():
            if isinstance(key, SubsetMask):
                if n is None:
                    n = key.n
                elif key.n != n:
                    raise InvalidParameterError("Subset width mismatch", submsg="mask for n=%d in a map for n=%d" % (key.n, n))
                key = key.bits
            elif not isinstance(key, (int, np.integer)):
                raise InvalidParameterError("Invalid subset key", submsg=repr(key))
            entries[int(key)] = v
        if n is None:
            n = max(entries).bit_length() if entries else 0
        size = 2**n
        values = np.full(size, np.nan)
        for bits, v in entries.items():
            if not 0 <= bits < size:
                raise InvalidParameterError("Invalid subset mask", submsg="%r for n=%d" % (bits, n))
            values[bits] = v
        values[0] = entries.get(0, 1.0)
    else:
        values = np.array(purities, dtype=float)
        if n is not None and values.size != 2**n:
            raise InvalidParameterError("Incomplete subset map", submsg="%d entries for n=%d" % (values.size, n))
    if values.size < 2 or values.size & (values.size - 1) or np.isnan(values).any():
        raise InvalidParameterError("Incomplete subset map", submsg="%d of %d entries" % (np.count_nonzero(~np.isnan(values)), values.size))
    return values


def werner_detection_threshold(n):
    """Noise weight below which the Werner state violates the averaged inequality."""
    if not 2 <= n <= qstate.MAX_DENSE_QUBITS:
        raise InvalidParameterError("Invalid qubit count", submsg="n=%r outside 2..%d" % (n, qstate.MAX_DENSE_QUBITS))
    return 1 - (2**(n - 1) + 1)**-0.5


def detection_threshold(profile_at, lo=0.0, hi=1.0, tol=1e-7, tolerance=VIOLATION_TOL):
    """Bisect for the noise level at which profile_at(d) stops violating.

    profile_at(lo) must violate and profile_at(hi) must not.
    """
    if not check_subset_inequalities(profile_at(lo), tolerance).violated:
        raise InvalidParameterError("No violation at the lower end", submsg="d=%r" % lo)
    if check_subset_inequalities(profile_at(hi), tolerance).violated:
        raise InvalidParameterError("Violation persists at the upper end", submsg="d=%r" % hi)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if check_subset_inequalities(profile_at(mid), tolerance).violated:
            lo = mid
        else:
            hi = mid
    logging.debug("Detection threshold bracketed in [%r, %r]", lo, hi)
    return (lo + hi) / 2


def werner_threshold_bisection(n, tol=1e-8):
    werner_detection_threshold(n)
    return detection_threshold(lambda d: purity_profile(qstate.make_werner(n, d)), tol=tol)


def dephasing_detection_threshold(make_state, tol=1e-4):
    """Smallest dephasing at which make_state()'s profile becomes non-increasing."""
    base = make_state()
    return detection_threshold(lambda d: purity_profile(qstate.apply_dephasing(base, d)), tol=tol)


def product_average_purities(sizes, profiles):
    """Average purities of a product state from those of its factors.

    avpur_k = C(n,k)^-1 sum over k_1+...+k_L = k of prod_i C(n_i,k_i) avpur^(i)_{k_i}.
    """
    if len(sizes) != len(profiles):
        raise InvalidParameterError("Mismatched lengths", submsg="%d sizes, %d profiles" % (len(sizes), len(profiles)))
    poly = np.array([1.0])
    for n_i, prof in zip(sizes, profiles):
        values = prof.avpur if isinstance(prof, PurityProfile) else prof
        if len(values) != n_i + 1:
            raise InvalidParameterError("Profile length mismatch", submsg="%d values for n=%d" % (len(values), n_i))
        poly = np.convolve(poly, [comb(n_i, k) * v for k, v in enumerate(values)])
    n = sum(sizes)
    return PurityProfile(n, [poly[k] / comb(n, k) for k in range(n + 1)])


def _fit(model, profile, lo, hi, grid=65):
    target = profile.as_array()
    def loss(x):
        return float(np.sum((model(x) - target)**2))
    xs = np.linspace(lo, hi, grid)
    i = int(np.argmin([loss(x) for x in xs]))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)]
    result = minimize_scalar(loss, bounds=(a, b), method='bounded', options={'xatol': 1e-10})
    return float(result.x), float(result.fun)


def phi_profile(n, phi, d=0.0):
    return profile_from_subsets(n, phi_chain_purities(n, phi, d)).as_array()


def fit_phi(profile, d=0.0):
    """Phase in [0, pi] whose phi state best matches the profile (phi and -phi are indistinguishable)."""
    return _fit(lambda x: phi_profile(profile.n, x, d), profile, 0.0, np.pi)[0]


def fit_gamma(profile):
    """Real gamma in [0, 1] whose macroscopic superposition best matches the profile."""
    n = profile.n
    model = lambda g: np.array([macro_purity_closed_form(n, g, k) for k in range(n + 1)])
    return _fit(model, profile, 0.0, 1.0)[0]


def fit_dephasing(profile, phi):
    return _fit(lambda d: phi_profile(profile.n, phi, d), profile, 0.0, 1.0)[0]


def verdict_for_state(state, subsets=False, tol=VIOLATION_TOL):
    if subsets:
        return check_subset_inequalities(subset_purities(state), tol)
    return check_subset_inequalities(purity_profile(state), tol)
