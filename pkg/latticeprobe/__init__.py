# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Simulator and estimators for the pairwise beam-splitter entanglement
detection network in optical lattices."""

from latticeprobe.latticeprobeconfig import VERSION as __version__
