# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

from latticeprobe import data, network, qstate
from latticeprobe.plugin import FigurePlugin
from latticeprobe.purity import purity_profile


def profile_state(which, n, dephase):
    if which == 'classical':
        return qstate.make_classical_correlated(n)
    if which == 'ghz':
        return qstate.make_ghz(n)
    cluster = qstate.make_cluster_state(n)
    if which == 'dephased':
        return qstate.apply_dephasing(cluster, dephase)
    return cluster


class ProfilesFigure(FigurePlugin):
    """avpur_k against k next to P(j) against j for one state."""
    index = 2
    title = "Average purities and singly occupied site counts"
    defaults = {'n': data.PROFILE_N, 'which': 'ghz', 'dephase': data.PROFILE_DEPHASING}
    choices = data.PROFILE_FAMILIES

    def on_generate(self, config):
        state = profile_state(config['which'], config['n'], config['dephase'])
        profile = purity_profile(state)
        pj = network.singles_distribution(profile)
        rows = [[k, v, p] for (k, v), p in zip(profile.to_csv_rows(), pj.probs)]
        return ['k', 'avpur', 'P'], rows
