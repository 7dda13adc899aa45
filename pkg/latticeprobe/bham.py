# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Two-site Bose-Hubbard beam splitter and the loss stage.

Two atoms, one from each copy, sit in rows I and II of a column. Modes are
ordered (a_I, b_I, a_II, b_II), a and b being the internal states that
carry |0> and |1>. Energies and inverse times use units with hbar = 1;
loss time constants are in ms.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from latticeprobe.errors import InvalidParameterError, InvalidStateError

MODES = ('a_I', 'b_I', 'a_II', 'b_II')
ROW_I = (0, 1)
ROW_II = (2, 3)
APPROX_VALIDITY = 0.3


@dataclass(frozen=True)
class PhysicalParams:
    J: float = 1.0
    dJ: float = 0.0
    U: float = 0.0
    tau_d: float = 1.3
    tau_s: float = 500.0

    def __post_init__(self):
        if not self.J > 0:
            raise InvalidParameterError("Invalid hopping energy", submsg="J=%r must be positive" % self.J)
        if self.dJ < 0 or self.U < 0:
            raise InvalidParameterError("Invalid physical parameters",
                submsg="dJ=%r and U=%r must be non-negative" % (self.dJ, self.U))
        _check_loss_times(self.tau_d, self.tau_s)


def _check_loss_times(tau_d, tau_s):
    if not tau_s > 3 * tau_d > 0:
        raise InvalidParameterError("Invalid loss time constants",
            submsg="need tau_s > 3 tau_d > 0, got tau_d=%r, tau_s=%r" % (tau_d, tau_s))


@lru_cache(maxsize=None)
def fock_basis():
    """The ten occupation tuples of four modes holding two atoms."""
    return tuple(occ for occ in itertools.product(range(3), repeat=4) if sum(occ) == 2)


def _index():
    return {occ: i for i, occ in enumerate(fock_basis())}


def hopping_operator(i, j):
    """Matrix of c_i^dag c_j on the two-atom space."""
    basis = fock_basis()
    index = _index()
    op = np.zeros((len(basis), len(basis)))
    for col, occ in enumerate(basis):
        if occ[j] == 0:
            continue
        amp = math.sqrt(occ[j])
        new = list(occ)
        new[j] -= 1
        amp *= math.sqrt(new[i] + 1)
        new[i] += 1
        op[index[tuple(new)], col] += amp
    return op


def row_occupations():
    basis = np.array(fock_basis())
    return basis[:, list(ROW_I)].sum(axis=1), basis[:, list(ROW_II)].sum(axis=1)


def two_site_hamiltonian(J, U):
    """H_BS + H_U = -J sum_alpha (alpha_I^dag alpha_II + h.c.) + U/2 sum_rows N(N-1)."""
    h_bs = -J * (hopping_operator(0, 2) + hopping_operator(2, 0) + hopping_operator(1, 3) + hopping_operator(3, 1))
    n_one, n_two = row_occupations()
    h_u = np.diag(U / 2 * (n_one * (n_one - 1) + n_two * (n_two - 1)))
    return h_bs + h_u


def two_atom_state(amplitudes):
    """Normalized sum_ij T_ij c_i^dag c_j^dag |vac> for a 4x4 matrix T."""
    t = np.asarray(amplitudes, dtype=complex)
    if t.shape != (4, 4):
        raise InvalidStateError("Two-atom amplitudes must be 4x4", submsg=str(t.shape))
    index = _index()
    psi = np.zeros(len(index), dtype=complex)
    for i in range(4):
        for j in range(i, 4):
            occ = [0] * 4
            occ[i] += 1
            occ[j] += 1
            if i == j:
                psi[index[tuple(occ)]] = math.sqrt(2) * t[i, i]
            else:
                psi[index[tuple(occ)]] = t[i, j] + t[j, i]
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise InvalidStateError("Zero two-atom state")
    return psi / norm


def pair_state(u, v):
    """One atom in row I with internal state u, one in row II with v."""
    t = np.zeros((4, 4), dtype=complex)
    t[np.ix_(ROW_I, ROW_II)] = np.outer(u, v)
    return two_atom_state(t)


def symmetric_pair_states():
    """The three row-symmetric states with one atom per row."""
    zero, one = np.array([1, 0]), np.array([0, 1])
    mixed = np.zeros((4, 4))
    mixed[0, 3] = mixed[1, 2] = 1
    return [pair_state(zero, zero), pair_state(one, one), two_atom_state(mixed)]


def antisymmetric_pair_state():
    t = np.zeros((4, 4))
    t[0, 3] = 1
    t[1, 2] = -1
    return two_atom_state(t)


def _check_two_atoms(psi):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (len(fock_basis()),):
        raise InvalidStateError("Wrong particle number",
            submsg="expected a state over the %d two-atom Fock states" % len(fock_basis()))
    return psi


def evolve(psi, J, U, t):
    """exp(+i H t) psi."""
    psi = _check_two_atoms(psi)
    return expm(1j * two_site_hamiltonian(J, U) * t) @ psi


def ideal_bs_map(psi, J, t):
    """Interaction-free evolution; a perfect 50:50 splitter at t = pi/(4J)."""
    return evolve(psi, J, 0.0, t)


def outcome_probabilities(psi):
    """(probability of a doubly occupied row, probability of one atom per row)."""
    psi = _check_two_atoms(psi)
    n_one, _ = row_occupations()
    weights = np.abs(psi)**2
    single = float(weights[n_one == 1].sum())
    return 1 - single, single


def two_qubit_bs_outcome(spectrum):
    """(P_plus, P_minus) = (1 - l1 l2, l1 l2) for single-qubit eigenvalues (l1, l2)."""
    l1, l2 = spectrum
    if min(l1, l2) < -1e-12 or abs(l1 + l2 - 1) > 1e-12:
        raise InvalidParameterError("Invalid spectrum", submsg="(%r, %r)" % (l1, l2))
    return 1 - l1 * l2, l1 * l2


def bs_outcome_from_ensemble(rho, J=1.0):
    """(P_plus, P_minus) from running each branch of rho (x) rho through the splitter."""
    values, vectors = np.linalg.eigh(np.asarray(rho, dtype=complex))
    t = math.pi / (4 * J)
    minus = 0.0
    for i, j in itertools.product(range(2), repeat=2):
        out = ideal_bs_map(pair_state(vectors[:, i], vectors[:, j]), J, t)
        minus += values[i] * values[j] * outcome_probabilities(out)[1]
    return 1 - minus, minus


def optimal_bs_time(J, U):
    return math.pi / math.sqrt(16 * J**2 + U**2)


def qbs_exact(J, U, t):
    """Probability that a symmetric pair fails to bunch after time t."""
    if not J > 0:
        raise InvalidParameterError("Invalid hopping energy", submsg="J=%r must be positive" % J)
    omega2 = 16 * J**2 + U**2
    return 16 * J**2 / omega2 * math.cos(math.sqrt(omega2) * t / 2)**2 + U**2 / omega2


def qbs_approx(J, dJ, U):
    """pi^2/8 (dJ/J)^2 + (U/J)^2/16, valid for small dJ/J and U/J."""
    if dJ / J > APPROX_VALIDITY or U / J > APPROX_VALIDITY:
        logging.warning("qbs_approx outside its validity region: dJ/J=%g, U/J=%g", dJ / J, U / J)
    return math.pi**2 / 8 * (dJ / J)**2 + (U / J)**2 / 16


def bunching_failure_numeric(J, U, t, psi=None):
    """Probability of one atom per row after evolving psi (default: both atoms in a)."""
    if psi is None:
        psi = symmetric_pair_states()[0]
    return outcome_probabilities(evolve(psi, J, U, t))[1]


def loss_stage(tau_d, tau_s):
    """(t_l, q_l, p_l) of the pair-removal stage, with t_l minimizing p_l + q_l."""
    _check_loss_times(tau_d, tau_s)
    t_l = math.log(tau_s / (3 * tau_d)) / (1 / (3 * tau_d) - 1 / tau_s)
    q_l, p_l = loss_errors(tau_d, tau_s, t_l)
    return t_l, q_l, p_l


def loss_errors(tau_d, tau_s, t):
    """(q_l, p_l) after a loss stage of duration t."""
    return math.exp(-t / (3 * tau_d)), 1 - math.exp(-t / tau_s)


def physics_summary(params):
    t_bs = optimal_bs_time(params.J, params.U)
    if params.dJ > 0:
        q_bs = qbs_approx(params.J, params.dJ, params.U)
    else:
        q_bs = qbs_exact(params.J, params.U, t_bs)
    t_l, q_l, p_l = loss_stage(params.tau_d, params.tau_s)
    return {'t_bs': t_bs, 'q_bs': q_bs, 't_l': t_l, 'q_l': q_l, 'p_l': p_l, 'q': q_bs + q_l}
