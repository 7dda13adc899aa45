# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

from latticeprobe import data
from latticeprobe.figures.bs_variance import variance_rows, WORST, CLUSTER
from latticeprobe.plugin import FigurePlugin


class DetectorVarianceFigure(FigurePlugin):
    """V_k against detector error; --method picks the detector corrector."""
    index = 7
    title = "Variance against detection error"
    defaults = {'n': data.CHAIN_N, 'which': CLUSTER}
    choices = (WORST, CLUSTER)

    def on_generate(self, config):
        points = config['points'] or (11 if config['which'] == WORST else data.DEFAULT_POINTS)
        return variance_rows(config, data.grid(0.0, 0.1, points), 'p')
