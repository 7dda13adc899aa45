# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

from latticeprobe import data, qstate, variance
from latticeprobe.plugin import FigurePlugin
from latticeprobe.purity import purity_profile

WORST = 'worst'
CLUSTER = 'cluster'


def variance_rows(config, errors, channel):
    """One row per error value, one column per k; channel is 'p' or 'q'."""
    n = config['n']
    ks = [k for k in data.VARIANCE_KS if k <= n]
    profile = None if config['which'] == WORST else purity_profile(qstate.make_cluster_state(n))
    rows = []
    for e in errors:
        p, q = (e, 0.0) if channel == 'p' else (0.0, e)
        if profile is None:
            values = [variance.worst_case_variance(n, k, p, q, config['method'], config['constrained'],
                                                   config['seed'])[0] for k in ks]
        else:
            values = [variance.state_variance(profile, k, p, q, config['method']) for k in ks]
        rows.append([e] + values)
    return [channel] + ['k=%d' % k for k in ks], rows


class BSVarianceFigure(FigurePlugin):
    """V_k against beam-splitter error for the worst case or the cluster state."""
    index = 5
    title = "Variance against beam-splitter error"
    defaults = {'n': data.CHAIN_N, 'which': CLUSTER}
    choices = (WORST, CLUSTER)

    def on_generate(self, config):
        points = config['points'] or (11 if config['which'] == WORST else data.DEFAULT_POINTS)
        return variance_rows(config, data.grid(0.0, 0.2, points), 'q')
