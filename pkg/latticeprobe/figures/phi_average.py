# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

from latticeprobe import data
from latticeprobe.plugin import FigurePlugin
from latticeprobe.purity import phi_profile


class PhiAverageFigure(FigurePlugin):
    index = 3
    title = "Average purities of the phi state against phi"
    defaults = {'n': data.CHAIN_N}

    def on_generate(self, config):
        n = config['n']
        ks = [k for k in data.PHI_AVERAGE_KS if k <= n]
        rows = []
        for phi in data.phi_grid(config['points'] or data.DEFAULT_POINTS):
            avpur = phi_profile(n, phi)
            rows.append([phi] + [avpur[k] for k in ks])
        return ['phi'] + ['k=%d' % k for k in ks], rows
