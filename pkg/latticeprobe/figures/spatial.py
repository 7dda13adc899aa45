# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

from latticeprobe import data, errmodel, network, qstate, variance
from latticeprobe.plugin import FigurePlugin
from latticeprobe.purity import subset_purities

WORST = 'worst'
GHZ = 'ghz'


class SpatialVarianceFigure(FigurePlugin):
    """Variance of pur(B) against the position spread sigma (in units of the wavelength)."""
    index = 8
    title = "Spatially resolved variance against position spread"
    defaults = {'n': data.SPATIAL_N, 'which': WORST}
    choices = (WORST, GHZ)

    def on_prepare(self, config):
        if config['n'] < 3 or config['n'] > errmodel.MAX_SPATIAL_QUBITS:
            return "spatial figure needs 3 <= n <= %d" % errmodel.MAX_SPATIAL_QUBITS

    def on_generate(self, config):
        n = config['n']
        wavelength = config['wavelength']
        masks = None
        if config['which'] == GHZ:
            masks = network.sign_pattern_distribution(subset_purities(qstate.make_ghz(n)))
        rows = []
        for s in data.grid(0.0, data.SPATIAL_MAX_SIGMA, config['points'] or 13):
            kernel = errmodel.gaussian_position_kernel(s * wavelength, wavelength, n)
            row = [s]
            for B in data.SPATIAL_SUBSETS:
                if masks is None:
                    row.append(variance.worst_case_spatial_variance(n, kernel, B, config['method'],
                                                                    config['constrained'], config['seed'])[0])
                else:
                    row.append(variance.spatial_variance(masks, kernel, B, config['method']))
            rows.append(row)
        return ['sigma'] + ['B=%s' % ''.join(str(c) for c in B) for B in data.SPATIAL_SUBSETS], rows
