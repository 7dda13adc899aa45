# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import itertools
import threading

import numpy as np
import pytest

from latticeprobe import util, worker
from latticeprobe.errors import ConfigError, InvalidParameterError, check_probability
from latticeprobe.latticeprobeconfig import coerce, get_thread_count, THREADS_ENV


def test_walsh_hadamard_matches_definition():
    rng = np.random.default_rng(1)
    a = rng.normal(size=16)
    explicit = np.array([sum((-1)**util.popcount(s & x) * a[x] for x in range(16)) for s in range(16)])
    assert np.abs(util.walsh_hadamard(a) - explicit).max() < 1e-12
    with pytest.raises(ValueError):
        util.walsh_hadamard(np.ones(6))


def test_walsh_hadamard_batches():
    a = np.arange(24, dtype=float).reshape(8, 3)
    out = util.walsh_hadamard(a)
    for col in range(3):
        assert np.array_equal(out[:, col], util.walsh_hadamard(a[:, col]))


def _brute_permanent(m):
    size = m.shape[0]
    return sum(np.prod([m[i, s[i]] for i in range(size)]) for s in itertools.permutations(range(size)))


def test_permanents():
    rng = np.random.default_rng(2)
    mats = rng.normal(size=(5, 4, 4))
    got = util.permanents(mats, chunk=2)
    assert np.abs(got - [_brute_permanent(m) for m in mats]).max() < 1e-10
    assert np.array_equal(util.permanents(np.zeros((3, 0, 0))), np.ones(3))
    assert abs(util.permanents(np.ones((1, 3, 3)))[0] - 6) < 1e-12


def test_columns_and_masks():
    assert util.mask_from_columns(4, [1, 4]) == 0b1001
    assert util.columns_from_mask(4, 0b0110) == [2, 3]
    assert util.bitstring(4, 5) == '0101'
    with pytest.raises(ValueError):
        util.mask_from_columns(3, [4])


def test_krawtchouk_inverse():
    n = 5
    k = np.array(util.krawtchouk_matrix(n), dtype=float)
    assert np.abs(k @ k - 2**n * np.eye(n + 1)).max() < 1e-9


def test_csv_round_trip(tmp_path):
    path = tmp_path / 'rows.csv'
    util.write_csv([[0, 0.1], [1, np.float64(0.25)]], ['k', 'v'], str(path))
    header, rows = util.read_csv(str(path))
    assert header == ['k', 'v']
    assert rows == [['0', '0.1'], ['1', '0.25']]


def test_json_conversion():
    doc = util.to_jsonable({'a': np.arange(2), 'b': np.float64(0.5), 'c': 1 + 2j, 3: np.bool_(True)})
    assert doc == {'a': [0, 1], 'b': 0.5, 'c': [1.0, 2.0], '3': True}


def test_check_probability():
    check_probability('p', 0.5)
    with pytest.raises(InvalidParameterError):
        check_probability('p', 1.0)
    check_probability('p', 1.0, allow_one=True)
    with pytest.raises(InvalidParameterError):
        check_probability('p', -0.1, allow_one=True)


@pytest.mark.parametrize('key,val,expected', [
    ('n', 3.0, 3),
    ('gamma', '0.5+0.5j', 0.5 + 0.5j),
    ('p', 1, 1.0),
    ('k', None, None),
    ('unknown', 'x', 'x'),
])
def test_coerce(key, val, expected):
    assert coerce(key, val) == expected


@pytest.mark.parametrize('key,val', [('n', 3.5), ('subsets', 'yes'), ('p', 'often')])
def test_coerce_rejects(key, val):
    with pytest.raises(ConfigError):
        coerce(key, val)


def test_thread_count(monkeypatch):
    assert get_thread_count() == 1
    assert get_thread_count(3) == 3
    monkeypatch.setenv(THREADS_ENV, '4')
    assert get_thread_count() == 4
    monkeypatch.setenv(THREADS_ENV, 'many')
    with pytest.raises(ConfigError):
        get_thread_count()
    with pytest.raises(ConfigError):
        get_thread_count(0)


def test_worker_map_keeps_order():
    pool = worker.Worker(3)
    try:
        assert pool.map(lambda x: x * x, range(20)) == [x * x for x in range(20)]
    finally:
        pool.stop()


def test_worker_map_raises_first_error():
    def fail_on_three(x):
        if x == 3:
            raise InvalidParameterError("three")
        return x

    pool = worker.Worker(2)
    try:
        with pytest.raises(InvalidParameterError):
            pool.map(fail_on_three, range(6))
    finally:
        pool.stop()


def test_worker_map_runs_inline_inside_task():
    pool = worker.Worker(2)
    try:
        inner = pool.map(lambda x: pool.map(lambda y: (y, threading.current_thread().name), [x, x]), [1, 2])
        for pairs in inner:
            assert pairs[0][1] == pairs[1][1]
    finally:
        pool.stop()


def test_shared_worker_follows_thread_count():
    worker.set_thread_count(2)
    try:
        assert len(worker.get_worker().threads) == 2
    finally:
        worker.set_thread_count(1)
    assert len(worker.get_worker().threads) == 1
