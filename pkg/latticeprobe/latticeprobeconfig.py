# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

VERSION = '0.3.0'

import os
import json
import logging

from latticeprobe.errors import ConfigError

THREADS_ENV = 'LATTICEPROBE_THREADS'

# RunConfig keys with their default values. Anything read from a config
# file or the command line overwrites these.
DEFAULTS = {
    "command": None,
    "family": "ghz",
    "n": 4,
    "gamma": 0.0,
    "phi": 3.141592653589793,
    "dephase": 0.0,
    "werner": 0.0,
    "p": 0.0,
    "q": 0.0,
    "sigma": 0.0,
    "wavelength": 1.0,
    "J": 1.0,
    "dJ": 0.0,
    "U": 0.0,
    "tau_d": 1.3,
    "tau_s": 500.0,
    "N": 100000,
    "seed": 0,
    "method": "explicit",
    "k": None,
    "subsets": False,
    "replicates": 0,
    "constrained": True,
    "output": None,
    "json": None,
    "svg": None,
    "threads": None,
    "which": None,
    "index": None,
    "input": None,
    "points": None,
}

_TYPES = {
    "family": str, "n": int, "gamma": complex, "phi": float, "dephase": float, "werner": float,
    "p": float, "q": float, "sigma": float, "wavelength": float, "J": float,
    "dJ": float, "U": float, "tau_d": float, "tau_s": float, "N": int,
    "seed": int, "method": str, "k": int, "subsets": bool, "replicates": int,
    "constrained": bool, "threads": int, "which": str, "index": int, "input": str, "output": str, "json": str, "svg": str,
    "points": int,
}

FAMILIES = ('ghz', 'macro', 'phi', 'cluster', 'werner', 'classical', 'product')
METHODS = ('explicit', 'least-squares')


def get_config_dir():
    config_home = os.environ.get('XDG_CONFIG_HOME') or os.path.join(os.path.expanduser('~'), '.config')
    return os.path.join(config_home, 'latticeprobe')


def get_default_config_file():
    return os.path.join(get_config_dir(), 'config.json')


def load_config_file(filename):
    """Read a JSON RunConfig document and return the recognised keys."""
    try:
        with open(filename) as f:
            raw = json.load(f)
    except IOError as e:
        raise ConfigError("Cannot read config file", submsg="%s (%s)" % (filename, e.strerror))
    except ValueError as e:
        raise ConfigError("Malformed config file", submsg="%s: %s" % (filename, e))

    if not isinstance(raw, dict):
        raise ConfigError("Malformed config file", submsg="%s: top level must be an object" % filename)

    config = {}
    for key, val in raw.items():
        if key not in DEFAULTS:
            logging.info("Ignoring unknown config key %s", key)
            continue
        config[key] = coerce(key, val)
    return config


def coerce(key, val):
    kind = _TYPES.get(key)
    if val is None or kind is None:
        return val
    try:
        if kind is bool and not isinstance(val, bool):
            raise ValueError(val)
        if kind is int and isinstance(val, float) and not val.is_integer():
            raise ValueError(val)
        return kind(val)
    except (TypeError, ValueError):
        raise ConfigError("Invalid config value", submsg="%s=%r is not %s" % (key, val, kind.__name__))


def build_config(overrides, config_file=None, base=None):
    """Defaults, then `base`, then the config file (explicit or the user one), then overrides."""
    config = dict(DEFAULTS)
    if base:
        config.update(base)
    if config_file is None and os.path.exists(get_default_config_file()):
        config_file = get_default_config_file()
    if config_file:
        logging.info("Loading config from %s", config_file)
        config.update(load_config_file(config_file))
    for key, val in overrides.items():
        if val is not None:
            config[key] = val
    return config


def get_thread_count(option=None):
    if option is not None:
        threads = option
    else:
        env = os.environ.get(THREADS_ENV)
        if not env:
            return 1
        try:
            threads = int(env)
        except ValueError:
            raise ConfigError("Invalid %s" % THREADS_ENV, submsg=repr(env))
    if threads < 1:
        raise ConfigError("Invalid thread count", submsg=str(threads))
    return threads


if __name__ == '__main__':
    print(VERSION)
