# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import numpy as np

from latticeprobe import data
from latticeprobe.plugin import FigurePlugin
from latticeprobe.purity import phi_chain_purities
from latticeprobe.util import mask_from_columns


class PhiClassesFigure(FigurePlugin):
    """Reduced purity of the four subset classes of the phi state against phi."""
    index = 1
    title = "Subset purities of the phi state"
    defaults = {'n': data.PHI_CLASS_N}

    def on_prepare(self, config):
        if config['n'] < 6:
            return "the subset classes need n >= 6, got %d" % config['n']

    def on_generate(self, config):
        n = config['n']
        masks = np.array([mask_from_columns(n, cols) for cols in data.PHI_CLASS_SUBSETS])
        rows = []
        for phi in data.phi_grid(config['points'] or 65):
            rows.append([phi] + list(phi_chain_purities(n, phi, masks=masks)))
        return ['phi'] + list(data.PHI_CLASS_LABELS), rows
