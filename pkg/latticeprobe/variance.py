# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Single-run variances of the linear estimators, their bounds and worst
cases, and seeded Monte Carlo runs of finite experiments.

After N runs an estimator with single-run variance V has standard error
sqrt(V/N).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, minimize_scalar, linprog

from latticeprobe import errmodel, estimator, network
from latticeprobe.errors import InvalidParameterError, check_probability
from latticeprobe.purity import PurityProfile, purity_profile, subset_purities, mask_bits
from latticeprobe.util import comb, popcount
from latticeprobe.worker import get_worker

BS = 'bs'
DETECTOR = 'detector'
COMBINED = 'combined'
SPATIAL = 'spatial'
BOUND_MODES = (BS, DETECTOR, COMBINED, SPATIAL)
WORST_CASE_STARTS = 32
FEASIBILITY_TOL = 1e-9
MAX_TRAJECTORY_QUBITS = 6

CSV_HEADER = ['k', 'V', 'bound', 'method', 'n', 'p', 'q', 'sigma']


@dataclass(frozen=True)
class VarianceReport:
    k: object
    V: float
    bound: float
    method: str
    n: int
    p: float = 0.0
    q: float = 0.0
    sigma: float = 0.0

    def to_csv_row(self):
        return [self.k, self.V, self.bound, self.method, self.n, self.p, self.q, self.sigma]


@dataclass(frozen=True)
class ExperimentSample:
    """Observed outcome index of every run; reproducible from the seed."""
    seed: object
    N: int
    outcomes: np.ndarray

    def counts(self, size):
        return np.bincount(self.outcomes, minlength=size)


@dataclass(frozen=True)
class MonteCarloResult:
    profile: PurityProfile
    variances: np.ndarray
    standard_errors: np.ndarray
    sample: ExperimentSample


def variance_vk(observed, coefficients, estimate=None):
    """sum_i P_exp(i) c_i^2 - estimate^2, the estimate defaulting to c . P_exp."""
    probs = network.probabilities(observed)
    c = np.asarray(coefficients, dtype=float)
    if c.shape != probs.shape:
        raise InvalidParameterError("Mismatched lengths", submsg="%d coefficients for %d outcomes" % (c.size, probs.size))
    if estimate is None:
        estimate = math.fsum(c * probs)
    return math.fsum(probs * c**2) - estimate**2


def _ratio(x):
    return (1 + x) / (1 - x)


def analytic_bounds(n, k, p, q, mode=COMBINED):
    """Upper bound on the single-run variance of the matching estimator.

    For SPATIAL, k is |B| and detector misses act with probability p^2.
    """
    check_probability('p', p)
    check_probability('q', q)
    if mode == BS:
        return _ratio(q)**(2 * k)
    if mode == DETECTOR:
        return _ratio(p)**(4 * n)
    if mode == COMBINED:
        return _ratio(q)**(2 * k) * _ratio(p)**(4 * n)
    if mode == SPATIAL:
        return _ratio(p**2)**(2 * k)
    raise InvalidParameterError("Unknown bound mode", submsg=repr(mode))


def subset_variance_bound(k, p, q):
    """Bound for the spatially resolved pur(B) corrector with |B| = k."""
    return _ratio(q)**(2 * k) * _ratio(p**2)**(2 * k)


def observed_distribution(profile, p=0.0, q=0.0):
    """Exact atom-count distribution of a profile after both channels."""
    pj = network.singles_distribution(profile)
    return errmodel.apply_combined_error(pj, p, q)


def state_variance(profile, k, p=0.0, q=0.0, method=estimator.EXPLICIT):
    """V_k of the combined avpur_k estimator on exact data."""
    observed = observed_distribution(profile, p, q)
    return variance_vk(observed, estimator.estimator_coefficients(profile.n, k, p, q, method))


def variance_report(profile, k, p=0.0, q=0.0, method=estimator.EXPLICIT):
    V = state_variance(profile, k, p, q, method)
    return VarianceReport(k, V, analytic_bounds(profile.n, k, p, q, COMBINED), method, profile.n, p, q)


def subset_variance(P_B, p=0.0, q=0.0):
    """Variance of the spatially resolved pur(B) estimator from the ideal count distribution in B."""
    P_B = np.asarray(P_B, dtype=float)
    k = P_B.size - 1
    observed = errmodel.apply_subset_detector_error(errmodel.apply_subset_bs_error(P_B, q), p)
    return variance_vk(observed, estimator.subset_estimator_coefficients(k, p, q))


# Every variance here is V(x) = u.x - (w.x)^2 with x a probability vector
# over ideal outcomes, so it is concave and its only curved direction is the
# estimator mean w.x.

class _RankOneProblem:

    def __init__(self, u, w, a_ub, b_ub, nonnegative):
        self.u = np.asarray(u, dtype=float)
        self.w = np.asarray(w, dtype=float)
        self.a_ub = np.asarray(a_ub, dtype=float)
        self.b_ub = np.asarray(b_ub, dtype=float)
        self.nonnegative = nonnegative
        self.size = self.u.size

    def value(self, x):
        return float(self.u @ x - (self.w @ x)**2)

    def full(self, y):
        return np.concatenate(([1 - y.sum()], y))

    def feasible(self, x):
        if (self.a_ub @ x > self.b_ub + FEASIBILITY_TOL).any():
            return False
        return not self.nonnegative or x.min() >= -FEASIBILITY_TOL

    def cobyla(self, start):
        constraints = [{'type': 'ineq', 'fun': lambda y: self.b_ub - self.a_ub @ self.full(y)}]
        if self.nonnegative:
            constraints.append({'type': 'ineq', 'fun': self.full})
        result = minimize(lambda y: -self.value(self.full(y)), np.asarray(start)[1:], method='COBYLA',
                          constraints=constraints, tol=1e-12, options={'maxiter': 5000, 'rhobeg': 0.05})
        x = self.full(result.x)
        return (self.value(x), x) if self.feasible(x) else (-np.inf, None)

    def _linprog(self, c, a_eq, b_eq):
        bounds = [(0, None) if self.nonnegative else (None, None)] * self.size
        return linprog(c, A_ub=self.a_ub, b_ub=self.b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds, method='highs')

    def best_at_mean(self, s):
        result = self._linprog(-self.u, np.vstack([np.ones(self.size), self.w]), [1.0, s])
        if result.status != 0:
            return -np.inf, None
        return -result.fun - s**2, result.x

    def refine_along_mean(self):
        """Exact maximum: an LP for fixed estimator mean, then a 1-D search over the mean."""
        ones = np.ones((1, self.size))
        low = self._linprog(self.w, ones, [1.0])
        high = self._linprog(-self.w, ones, [1.0])
        if low.status != 0 or high.status != 0:
            logging.warning("Worst-case refinement skipped: feasible set not found")
            return -np.inf, None
        lo, hi = float(self.w @ low.x), float(self.w @ high.x)
        if hi - lo < 1e-14:
            return self.best_at_mean(lo)
        result = minimize_scalar(lambda s: -self.best_at_mean(s)[0], bounds=(lo, hi), method='bounded',
                                 options={'xatol': 1e-12})
        return self.best_at_mean(result.x)

    def maximize(self, starts):
        found = get_worker().map(self.cobyla, starts)
        found.append(self.refine_along_mean())
        value, x = max(found, key=lambda item: item[0])
        logging.debug("Worst case %r from %d starts", value, len(starts))
        return value, x


def _seeded_starts(size, seed, count):
    rng = np.random.default_rng(seed)
    return list(rng.dirichlet(np.ones(size), size=count))


def _profile_box(n, to_avpur):
    """Rows of 2^-m <= avpur_m <= 1 as A x <= b for m = 1..n."""
    rows, bounds = [], []
    for m in range(1, n + 1):
        rows.append(to_avpur[m])
        bounds.append(1.0)
        rows.append(-to_avpur[m])
        bounds.append(-2.0**-m)
    return np.array(rows), np.array(bounds)


def worst_case_variance(n, k, p=0.0, q=0.0, method=estimator.EXPLICIT, constrained=True, seed=0,
                        starts=WORST_CASE_STARTS):
    """Largest V_k over purity profiles inside the physical box.

    With constrained=True the profile must also give P(j) >= 0. Returns
    (V_max, argmax profile).
    """
    if not 0 <= k <= n:
        raise InvalidParameterError("Invalid subset size", submsg="k=%r for n=%d" % (k, n))
    forward = errmodel.combined_error_matrix(n, p, q)
    c = estimator.estimator_coefficients(n, k, p, q, method)
    to_avpur = network.avpur_matrix(n)
    a_ub, b_ub = _profile_box(n, to_avpur)
    problem = _RankOneProblem(forward.T @ c**2, forward.T @ c, a_ub, b_ub, constrained)

    product = np.eye(n + 1)[0]
    mixed = np.array([comb(n, j) * 0.25**j * 0.75**(n - j) for j in range(n + 1)])
    ghz = network.singles_matrix(n) @ np.array([1.0] + [0.5] * (n - 1) + [1.0]) if n > 1 else mixed
    value, x = problem.maximize([product, mixed, ghz] + _seeded_starts(n + 1, seed, starts))
    bound = analytic_bounds(n, k, p, q, COMBINED)
    if value > bound + 1e-9:
        logging.warning("Worst case %r exceeds the analytic bound %r", value, bound)
    return value, PurityProfile(n, to_avpur @ x, method=method)


def spatial_variance(P, kernel, B, method=estimator.EXPLICIT):
    """V_B of the spatially resolved pur(B) estimator for P over antisymmetric-site masks."""
    P = network.probabilities(P)
    n = P.size.bit_length() - 1
    blur, _ = errmodel.spatial_blur_matrix(n, kernel)
    inverse, _ = estimator.spatial_corrector(n, kernel, method)
    c = estimator.parity_row(n, mask_bits(n, B)) @ inverse.matrix
    return variance_vk(blur @ P, c)


def worst_case_spatial_variance(n, kernel, B, method=estimator.EXPLICIT, constrained=True, seed=0,
                                starts=WORST_CASE_STARTS):
    """Largest V_B over mask distributions whose subset purities stay in [2^-|B'|, 1]."""
    blur, _ = errmodel.spatial_blur_matrix(n, kernel)
    inverse, _ = estimator.spatial_corrector(n, kernel, method)
    c = estimator.parity_row(n, mask_bits(n, B)) @ inverse.matrix
    parity = np.array([estimator.parity_row(n, b) for b in range(2**n)])
    rows, bounds = [], []
    for b in range(1, 2**n):
        rows += [parity[b], -parity[b]]
        bounds += [1.0, -2.0**-popcount(b)]
    problem = _RankOneProblem(blur.T @ c**2, blur.T @ c, np.array(rows), np.array(bounds), constrained)
    empty = np.eye(2**n)[0]
    mixed = np.array([0.25**popcount(s) * 0.75**(n - popcount(s)) for s in range(2**n)])
    value, x = problem.maximize([empty, mixed] + _seeded_starts(2**n, seed, starts))
    return value, x


def _seed_sequence(seed):
    return seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)


def monte_carlo_estimate(state, params, N, seed, method=estimator.EXPLICIT):
    """Simulate N runs, correct the observed frequencies and report per-k variances.

    `state` may be a QubitRegisterState or a PurityProfile. The variances are
    the sample variances of the single-run estimator values, i.e. estimates
    of V_k.
    """
    profile = state if isinstance(state, PurityProfile) else purity_profile(state)
    corrector = estimator.combined_corrector(profile.n, params.p, params.q, method)
    observed = observed_distribution(profile, params.p, params.q).probs
    return _sample_corrected(observed, corrector.matrix, N, seed, method)


def _sample_corrected(observed, rows, N, seed, method):
    if N < 1:
        raise InvalidParameterError("Invalid run count", submsg="N=%r" % N)
    observed = np.clip(observed, 0, None)
    observed = observed / observed.sum()
    rng = np.random.default_rng(_seed_sequence(seed))
    sample = ExperimentSample(seed, N, rng.choice(observed.size, size=N, p=observed))
    counts = sample.counts(observed.size)
    estimates = np.array([math.fsum(row * counts) / N for row in rows])
    if N > 1:
        variances = ((rows - estimates[:, None])**2 @ counts) / (N - 1)
    else:
        variances = np.zeros(len(rows))
    n = len(rows) - 1
    return MonteCarloResult(PurityProfile(n, estimates, method=method), variances, np.sqrt(variances / N), sample)


def average_parity_rows(n):
    """Rows k = 0..n averaging the parity rows of every subset of size k."""
    sizes = np.array([popcount(b) for b in range(2**n)])
    parity = np.array([estimator.parity_row(n, b) for b in range(2**n)])
    return np.array([parity[sizes == k].mean(axis=0) for k in range(n + 1)])


def monte_carlo_spatial(state, params, N, seed, method=estimator.EXPLICIT):
    """Monte Carlo of the spatially resolved experiment: positions blurred by params.sigma.

    Detector and beam-splitter errors are not modelled here; p and q must be 0.
    """
    if params.p or params.q:
        raise InvalidParameterError("Spatial simulation models position blur only",
            submsg="p=%r, q=%r must be 0" % (params.p, params.q))
    n = state.n
    kernel = errmodel.gaussian_position_kernel(params.sigma, params.wavelength, n)
    masks = network.sign_pattern_distribution(subset_purities(state))
    inverse, _ = estimator.spatial_corrector(n, kernel, method)
    observed = errmodel.apply_spatial_blur(masks, kernel).probs
    return _sample_corrected(observed, average_parity_rows(n) @ inverse.matrix, N, seed, method)


def monte_carlo_replicates(state, params, N, seed, replicates, method=estimator.EXPLICIT):
    """Independent runs, each seeded from its own child of the master seed."""
    profile = state if isinstance(state, PurityProfile) else purity_profile(state)
    children = np.random.SeedSequence(seed).spawn(replicates)
    return get_worker().map(lambda child: monte_carlo_estimate(profile, params, N, child, method), children)


def sample_trajectories(profile, params, N, seed):
    """Per-run atom counts from simulating every pair and atom separately."""
    n = profile.n
    if n > MAX_TRAJECTORY_QUBITS:
        raise InvalidParameterError("Too many qubits for trajectory sampling",
            submsg="n=%d > %d" % (n, MAX_TRAJECTORY_QUBITS))
    pj = np.clip(network.singles_distribution(profile).probs, 0, None)
    rng = np.random.default_rng(_seed_sequence(seed))
    j = rng.choice(n + 1, size=N, p=pj / pj.sum())
    pairs = j + rng.binomial(n - j, params.q)
    return rng.binomial(2 * pairs, 1 - params.p)


def fit_exponent(xs, values):
    """Least-squares slope of log(values) against xs."""
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=float)
    distinct = np.unique(xs).size
    if distinct < 4:
        raise InvalidParameterError("Degenerate grid", submsg="need at least 4 distinct points, got %d" % distinct)
    if values.min() <= 0:
        raise InvalidParameterError("Degenerate grid", submsg="variances must be positive to take logs")
    return float(np.polyfit(xs, np.log(values), 1)[0])


def beta_fit(n, family, ps, method=estimator.EXPLICIT, k=None):
    """beta in V_k ~ exp(beta n p) for the detector corrector (k defaults to n).

    `family` builds the register from n (qstate.make_cluster_state, say) or is
    already an n-qubit state or PurityProfile.
    """
    profile = family(n) if callable(family) else family
    if not isinstance(profile, PurityProfile):
        profile = purity_profile(profile)
    if profile.n != n:
        raise InvalidParameterError("Qubit count mismatch", submsg="family gave n=%d, expected %d" % (profile.n, n))
    k = n if k is None else k
    values = [state_variance(profile, k, p, 0.0, method) for p in ps]
    return fit_exponent([n * p for p in ps], values)
