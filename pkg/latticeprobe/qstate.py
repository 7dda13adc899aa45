# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Multi-qubit registers and the state families studied by the network.

Basis index x reads qubit 1 as its most significant bit, so bitstring(x)
lists the columns of a row from left to right.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from latticeprobe.errors import InvalidStateError, DegenerateNormalizationError, InvalidParameterError
from latticeprobe.util import MAX_QUBITS

MAX_DENSE_QUBITS = 10
NORM_TOL = 1e-12
INPUT_TOL = 1e-10

PURE = 'pure'
PURE_DEPHASED = 'pure_dephased'
DENSE = 'dense'
KINDS = (PURE, PURE_DEPHASED, DENSE)


@dataclass(frozen=True)
class QubitRegisterState:
    """Immutable n-qubit state.

    `data` holds 2^n amplitudes for PURE and PURE_DEPHASED states and a
    2^n x 2^n density matrix for DENSE ones. PURE_DEPHASED means the pure
    state followed by independent dephasing of strength `d` on every qubit.
    `family` and `params` record how the state was made, which lets purity
    code pick structure-aware evaluation.
    """
    n: int
    kind: str
    data: np.ndarray = field(repr=False)
    d: float = 0.0
    family: str = None
    params: tuple = ()

    def __post_init__(self):
        _check_n(self.n, MAX_DENSE_QUBITS if self.kind == DENSE else MAX_QUBITS)
        if self.kind not in KINDS:
            raise InvalidStateError("Unknown state kind", submsg=repr(self.kind))
        if not 0 <= self.d <= 1:
            raise InvalidParameterError("Invalid dephasing parameter", submsg="d=%r outside [0, 1]" % self.d)
        dim = 2**self.n
        data = self.data
        if self.kind == DENSE:
            if data.shape != (dim, dim):
                raise InvalidStateError("Wrong matrix shape", submsg="%s for n=%d" % (data.shape, self.n))
            if abs(np.trace(data) - 1) > INPUT_TOL:
                raise InvalidStateError("Density matrix trace is not 1", submsg=repr(np.trace(data)))
            if np.abs(data - data.conj().T).max() > INPUT_TOL:
                raise InvalidStateError("Density matrix is not Hermitian")
        else:
            if data.shape != (dim,):
                raise InvalidStateError("Wrong amplitude count", submsg="%s for n=%d" % (data.shape, self.n))
            if abs(np.vdot(data, data).real - 1) > INPUT_TOL:
                raise InvalidStateError("State vector is not normalized",
                    submsg="squared norm %r" % np.vdot(data, data).real)
        data.flags.writeable = False

    @property
    def is_pure(self):
        return self.kind == PURE

    @property
    def amplitudes(self):
        if self.kind == DENSE:
            raise InvalidStateError("Dense states have no amplitude vector")
        return self.data

    def param(self, name, default=None):
        return dict(self.params).get(name, default)

    def density_matrix(self):
        """Dense matrix of the state (dephasing materialized); n <= 10 only."""
        if self.kind == DENSE:
            return self.data
        if self.n > MAX_DENSE_QUBITS:
            raise InvalidStateError("State too large for a dense matrix",
                submsg="n=%d > %d" % (self.n, MAX_DENSE_QUBITS))
        rho = np.outer(self.data, self.data.conj())
        if self.kind == PURE_DEPHASED and self.d > 0:
            rho = rho * dephasing_weights(self.n, 1 - self.d)
        return rho

    def norm(self):
        if self.kind == DENSE:
            return np.trace(self.data).real
        return np.vdot(self.data, self.data).real


def _check_n(n, limit):
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= limit:
        raise InvalidStateError("Invalid qubit count", submsg="n=%r outside 1..%d" % (n, limit))


def dephasing_weights(n, damping):
    """Matrix with entry (x, y) equal to damping**hamming(x, y)."""
    single = np.array([[1.0, damping], [damping, 1.0]])
    return reduce(np.kron, [single] * n)


def basis_bits(n):
    """Array of shape (2^n, n); column i holds the bit of qubit i+1."""
    x = np.arange(2**n)
    return (x[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1


def count_01(n):
    """c(x): occurrences of '01' in the n-bit expansion of every x."""
    bits = basis_bits(n)
    if n < 2:
        return np.zeros(2**n, dtype=int)
    return np.sum((bits[:, :-1] == 0) & (bits[:, 1:] == 1), axis=1)


def from_amplitudes(amplitudes, normalize=False):
    psi = np.array(amplitudes, dtype=complex)
    if psi.ndim != 1 or psi.size < 2 or psi.size & (psi.size - 1):
        raise InvalidStateError("Amplitude count must be a power of two", submsg=str(psi.shape))
    if normalize:
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InvalidStateError("Zero vector")
        psi = psi / norm
    return QubitRegisterState(psi.size.bit_length() - 1, PURE, psi)


def from_density_matrix(rho):
    rho = np.array(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] & (rho.shape[0] - 1):
        raise InvalidStateError("Density matrix must be square with power-of-two size", submsg=str(rho.shape))
    return QubitRegisterState(rho.shape[0].bit_length() - 1, DENSE, rho)


def make_product_state(vectors):
    """Pure product of single-qubit vectors (each normalized here)."""
    vecs = [np.asarray(v, dtype=complex) / np.linalg.norm(v) for v in vectors]
    psi = reduce(np.kron, vecs)
    return QubitRegisterState(len(vecs), PURE, psi, family='product')


def make_macro_superposition(n, gamma):
    """(|0>^n + (gamma|0> + sqrt(1-|gamma|^2)|1>)^n) / sqrt(2 + gamma^n + conj(gamma)^n)."""
    _check_n(n, MAX_QUBITS)
    gamma = complex(gamma)
    if abs(gamma) > 1 + 1e-15:
        raise InvalidParameterError("Invalid macroscopic superposition parameter",
            submsg="|gamma|=%r > 1" % abs(gamma))
    norm2 = macro_normalization(n, gamma)
    v = np.array([gamma, np.sqrt(max(0.0, 1 - abs(gamma)**2))], dtype=complex)
    zero = np.zeros(2**n, dtype=complex)
    zero[0] = 1
    psi = (zero + reduce(np.kron, [v] * n)) / np.sqrt(norm2)
    return QubitRegisterState(n, PURE, psi, family='macro', params=(('gamma', gamma),))


def macro_normalization(n, gamma):
    norm2 = (2 + gamma**n + np.conj(gamma)**n).real
    if norm2 < 1e-12:
        raise DegenerateNormalizationError("degenerate normalization",
            submsg="gamma^n = -1 for gamma=%r, n=%d" % (gamma, n))
    return norm2


def make_ghz(n):
    return make_macro_superposition(n, 0)


def make_phi_state(n, phi):
    """Uniform superposition with phase exp(i phi c(x)); a cluster state at phi = pi."""
    _check_n(n, MAX_QUBITS)
    psi = np.exp(1j * phi * count_01(n)) / np.sqrt(2**n)
    return QubitRegisterState(n, PURE, psi, family='phi', params=(('phi', float(phi)),))


def make_cluster_state(n):
    return make_phi_state(n, np.pi)


def apply_dephasing(state, d):
    """Independent phase-flip noise of strength d on every qubit.

    Pure inputs come back as PURE_DEPHASED carrying d (dephasing twice
    composes as (1-d) -> (1-d1)(1-d2)); dense inputs get the channel applied
    to the matrix.
    """
    if not 0 <= d <= 1:
        raise InvalidParameterError("Invalid dephasing parameter", submsg="d=%r outside [0, 1]" % d)
    if d == 0:
        return state
    if state.kind == DENSE:
        rho = state.data.copy()
        diag = 1 - 2 * basis_bits(state.n)
        for j in range(state.n):
            z = diag[:, j]
            rho = (1 - d / 2) * rho + (d / 2) * (rho * np.outer(z, z))
        return QubitRegisterState(state.n, DENSE, rho, family=state.family, params=state.params)
    total = 1 - (1 - state.d) * (1 - d)
    return QubitRegisterState(state.n, PURE_DEPHASED, state.data, d=total,
                              family=state.family, params=state.params)


def dephase_subset_sum(rho, n, d, qubits=None):
    """Literal sum over phase-flip sets A of the chosen qubits (small n)."""
    qubits = list(range(1, n + 1)) if qubits is None else list(qubits)
    m = len(qubits)
    bits = basis_bits(n)
    out = np.zeros_like(rho, dtype=complex)
    for a in range(2**m):
        flipped = [qubits[i] for i in range(m) if a >> i & 1]
        weight = (1 - d / 2)**(m - len(flipped)) * (d / 2)**len(flipped)
        z = np.ones(2**n)
        for q in flipped:
            z = z * (1 - 2 * bits[:, q - 1])
        out += weight * rho * np.outer(z, z)
    return out


def _check_dense(n):
    _check_n(n, MAX_QUBITS)
    if n > MAX_DENSE_QUBITS:
        raise InvalidStateError("State too large for a dense matrix",
            submsg="n=%d > %d" % (n, MAX_DENSE_QUBITS))


def make_werner(n, d):
    """(1-d)|GHZ><GHZ| + d 2^-n I."""
    _check_dense(n)
    if not 0 <= d <= 1:
        raise InvalidParameterError("Invalid Werner noise weight", submsg="d=%r outside [0, 1]" % d)
    ghz = make_ghz(n).data
    rho = (1 - d) * np.outer(ghz, ghz.conj()) + d * np.eye(2**n) / 2**n
    return QubitRegisterState(n, DENSE, rho, family='werner', params=(('d', float(d)),))


def make_classical_correlated(n):
    """(|0..0><0..0| + |1..1><1..1|) / 2."""
    _check_dense(n)
    rho = np.zeros((2**n, 2**n), dtype=complex)
    rho[0, 0] = rho[-1, -1] = 0.5
    return QubitRegisterState(n, DENSE, rho, family='classical')


def make_maximally_mixed(n):
    _check_dense(n)
    return QubitRegisterState(n, DENSE, np.eye(2**n, dtype=complex) / 2**n, family='mixed')


def tensor(a, b):
    """Register of a's qubits followed by b's."""
    if a.kind == PURE and b.kind == PURE:
        return QubitRegisterState(a.n + b.n, PURE, np.kron(a.data, b.data), family='product')
    return QubitRegisterState(a.n + b.n, DENSE, np.kron(a.density_matrix(), b.density_matrix()),
                              family='product')


def random_pure_state(n, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return from_amplitudes(psi, normalize=True)


def random_mixed_state(n, seed, rank=None):
    """Random density matrix of the given rank (full rank by default)."""
    _check_dense(n)
    rng = np.random.default_rng(seed)
    dim = 2**n
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return from_density_matrix(rho / np.trace(rho).real)


def to_json(state):
    doc = {'n': state.n, 'kind': state.kind}
    if state.kind == DENSE:
        doc['matrix'] = [[[z.real, z.imag] for z in row] for row in state.data]
    else:
        doc['amplitudes'] = [[z.real, z.imag] for z in state.data]
        if state.kind == PURE_DEPHASED:
            doc['d'] = state.d
    if state.family:
        doc['family'] = state.family
        doc['params'] = {k: ([v.real, v.imag] if isinstance(v, complex) else v) for k, v in state.params}
    return json.dumps(doc)


def from_json(text):
    doc = json.loads(text)
    try:
        n, kind = doc['n'], doc['kind']
        params = tuple((k, complex(*v) if isinstance(v, list) else v)
                       for k, v in sorted(doc.get('params', {}).items()))
        if kind == DENSE:
            data = np.array([[complex(re, im) for re, im in row] for row in doc['matrix']])
        else:
            data = np.array([complex(re, im) for re, im in doc['amplitudes']])
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidStateError("Malformed state document", submsg=str(e))
    logging.debug("Loaded %s state with n=%d", kind, n)
    return QubitRegisterState(n, kind, data, d=doc.get('d', 0.0), family=doc.get('family'), params=params)
