# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import math

from latticeprobe import data
from latticeprobe.plugin import FigurePlugin
from latticeprobe.purity import phi_profile


class ClusterDephasingFigure(FigurePlugin):
    """Average purities of the dephased cluster state against d."""
    index = 4
    title = "Dephased cluster state"
    defaults = {'n': data.CHAIN_N}

    def on_generate(self, config):
        n = config['n']
        ks = sorted({k if k <= n else n for k in data.DEPHASING_KS})
        rows = []
        for d in data.grid(0.0, 1.0, config['points'] or data.DEFAULT_POINTS):
            avpur = phi_profile(n, math.pi, d)
            rows.append([d] + [avpur[k] for k in ks])
        return ['d'] + ['k=%d' % k for k in ks], rows
