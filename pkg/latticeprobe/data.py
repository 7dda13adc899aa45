# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Parameter tables of the standard figure series.

Subsets are column lists with column 1 at the left end of a row; None in a
k list stands for k = n.
"""

import math

# one interior atom, two interior atoms with two or more between them, an
# interior run of consecutive atoms, a run touching one end
PHI_CLASS_SUBSETS = ((2,), (2, 5), (2, 3, 4, 5), (1, 2, 3, 4, 5))
PHI_CLASS_LABELS = ('interior_single', 'interior_separated', 'interior_run', 'end_run')
PHI_CLASS_N = 8

PROFILE_N = 10
PROFILE_FAMILIES = ('classical', 'ghz', 'cluster', 'dephased')
PROFILE_DEPHASING = 0.1

CHAIN_N = 15
PHI_AVERAGE_KS = (1, 2, 3, 7)
DEPHASING_KS = (1, 2, 8, 14, 15)

VARIANCE_KS = (1, 4, 7, 11, 15)
WORST_BS_KS = (2, 4, 7, None)
WORST_DETECTOR_KS = (1, 2, 3, None)
WORST_CASE_N = tuple(range(2, 16))

SPATIAL_N = 4
SPATIAL_SUBSETS = ((2,), (2, 3), (1, 3), (1, 2, 3))
SPATIAL_MAX_SIGMA = 1.5

DEFAULT_POINTS = 33


def grid(lo, hi, points):
    if points < 2:
        return [lo]
    return [lo + (hi - lo) * i / (points - 1) for i in range(points)]


def phi_grid(points):
    return grid(0.0, 2 * math.pi, points)


def resolve_k(k, n):
    return n if k is None else k
