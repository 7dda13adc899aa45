# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

EXIT_INVALID_CONFIG = 2
EXIT_SINGULAR = 3


class LatticeProbeError(ValueError):
    status = EXIT_INVALID_CONFIG

    def __init__(self, message, submsg=None, status=None):
        super().__init__(message)
        self.message = message
        self.submsg = submsg
        if status is not None:
            self.status = status

    def __str__(self):
        if self.submsg:
            return "%s: %s" % (self.message, self.submsg)
        return self.message


class InvalidStateError(LatticeProbeError): pass
class DegenerateNormalizationError(InvalidStateError): pass
class InvalidParameterError(LatticeProbeError): pass
class ConfigError(LatticeProbeError): pass


class SingularCorrectorError(LatticeProbeError):
    status = EXIT_SINGULAR


class RankDeficientError(SingularCorrectorError): pass


def check_probability(name, value, allow_one=False):
    """Raise InvalidParameterError unless 0 <= value < 1 (or <= 1)."""
    upper_ok = value <= 1 if allow_one else value < 1
    if not (value >= 0 and upper_ok):
        raise InvalidParameterError("Invalid %s" % name,
            submsg="%s=%r outside [0, 1%s" % (name, value, "]" if allow_one else ")"))
