# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import csv
import json
import logging
import math
import sys
from functools import lru_cache

import numpy as np

MAX_QUBITS = 15


def comb(a, b):
    """Exact binomial with C(a, b) = 0 outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


@lru_cache(maxsize=None)
def krawtchouk_matrix(n):
    """Integer matrix K[a][b] = sum_l (-1)^l C(b, l) C(n-b, a-l)."""
    return tuple(
        tuple(sum((-1)**l * comb(b, l) * comb(n - b, a - l) for l in range(0, min(a, b) + 1))
              for b in range(n + 1))
        for a in range(n + 1))


def popcount(x):
    return bin(x).count('1')


def column_bit(n, column):
    """Bit of 1-based column `column`; column 1 is the most significant."""
    return 1 << (n - column)


def mask_from_columns(n, columns):
    mask = 0
    for c in columns:
        if not 1 <= c <= n:
            raise ValueError("column %r outside 1..%d" % (c, n))
        mask |= column_bit(n, c)
    return mask


def columns_from_mask(n, mask):
    return [c for c in range(1, n + 1) if mask & column_bit(n, c)]


def bitstring(n, x):
    return format(x, '0%db' % n) if n else ''


def write_csv(rows, header, filename=None):
    """Write rows with a single header line to `filename` or stdout."""
    if filename is None or filename == '-':
        _write_rows(sys.stdout, header, rows)
        return
    with open(filename, 'w', newline='') as f:
        _write_rows(f, header, rows)
    logging.info("Wrote %d rows to %s", len(rows), filename)


def _write_rows(f, header, rows):
    writer = csv.writer(f, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])


def format_cell(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (np.integer,)):
        return str(int(value))
    return value


def read_csv(filename):
    """Return (header, rows) of a CSV file written by write_csv."""
    with open(filename, newline='') as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [row for row in reader if row]
    return header, rows


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dump_json(obj, filename=None):
    text = json.dumps(to_jsonable(obj), sort_keys=True)
    if filename is None:
        print(text, file=sys.stderr)
    else:
        with open(filename, 'w') as f:
            f.write(text + '\n')
    return text


def render_svg(header, rows, filename, title=None):
    """Line chart of every column against the first one."""
    import matplotlib
    matplotlib.use('svg')
    import matplotlib.pyplot as plt

    data = np.array([[float(v) for v in row] for row in rows])
    fig, ax = plt.subplots(figsize=(6, 4))
    for col in range(1, data.shape[1]):
        ax.plot(data[:, 0], data[:, col], label=header[col])
    ax.set_xlabel(header[0])
    if title:
        ax.set_title(title)
    ax.legend(fontsize='small')
    fig.tight_layout()
    fig.savefig(filename, format='svg')
    plt.close(fig)
    logging.info("Rendered %s", filename)


def walsh_hadamard(a):
    """Unnormalized Walsh-Hadamard transform along the first axis.

    out[s] = sum_x (-1)^popcount(s & x) a[x]; the first axis must have
    power-of-two length.
    """
    a = np.asarray(a)
    shape = a.shape
    size = shape[0]
    if size & (size - 1):
        raise ValueError("length %d is not a power of two" % size)
    out = a.reshape(size, -1).astype(np.result_type(a, float))
    h = 1
    while h < size:
        blocks = out.reshape(size // (2 * h), 2, h, -1)
        out = np.stack((blocks[:, 0] + blocks[:, 1], blocks[:, 0] - blocks[:, 1]), axis=1).reshape(size, -1)
        h *= 2
    return out.reshape(shape)


def permanents(matrices, chunk=256):
    """Permanents of a stack of square matrices by Ryser's formula."""
    matrices = np.asarray(matrices, dtype=float)
    batch, m = matrices.shape[0], matrices.shape[-1]
    if m == 0:
        return np.ones(batch)
    subsets = (np.arange(2**m)[:, None] >> np.arange(m)[None, :]) & 1
    signs = (-1.0)**(m - subsets.sum(axis=1))
    out = np.empty(batch)
    for start in range(0, batch, chunk):
        rowsums = matrices[start:start + chunk] @ subsets.T
        out[start:start + chunk] = np.prod(rowsums, axis=1) @ signs
    return out
