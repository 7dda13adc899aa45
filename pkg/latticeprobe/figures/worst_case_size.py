# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE
import math

from latticeprobe import data, variance
from latticeprobe.plugin import FigurePlugin

BS = 'bs'
DETECTOR = 'detector'


class WorstCaseSizeFigure(FigurePlugin):
    """Worst-case V_k against n at q = 1/k (bs) or p = 1/(2k) (detector).

    Cells with k > n are nan. The bs series carries the bound exp(4kq) = e^4.
    """
    index = 6
    title = "Worst-case variance against register size"
    defaults = {'n': data.CHAIN_N, 'which': BS, 'method': 'least-squares'}
    choices = (BS, DETECTOR)

    def on_generate(self, config):
        which = config['which']
        ks = data.WORST_BS_KS if which == BS else data.WORST_DETECTOR_KS
        header = ['n'] + ['k=%s' % ('n' if k is None else k) for k in ks]
        rows = []
        for n in range(2, config['n'] + 1):
            row = [n]
            for k in ks:
                k = data.resolve_k(k, n)
                if k > n:
                    row.append(math.nan)
                    continue
                p, q = (0.0, 1 / k) if which == BS else (1 / (2 * k), 0.0)
                row.append(variance.worst_case_variance(n, k, p, q, config['method'], config['constrained'],
                                                        config['seed'])[0])
            if which == BS:
                row.append(math.exp(4))
            rows.append(row)
        if which == BS:
            header.append('bound')
        return header, rows
