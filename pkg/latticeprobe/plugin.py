# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import glob
import importlib
import logging
import os

from latticeprobe.errors import ConfigError


class FigurePlugin(object):
    """Generator of one figure's data series.

    Subclasses set `index`, `title`, `defaults` (RunConfig keys that differ
    from the global defaults) and implement `on_generate(config)` returning
    (header, rows) with the x value in the first column.
    """
    _LATTICEPROBE_FIGURE = True # used to find the figure class in a module
    index = None
    title = None
    defaults = {}
    choices = ()

    def __init__(self, name):
        self.name = name
        self.prepared = False
        self.error = None

    def prepare(self, config):
        if not self.prepared:
            self.error = self.on_prepare(config)
            self.prepared = True
        return self.error

    def generate(self, config):
        if self.prepare(config):
            raise ConfigError("Figure %s unavailable" % self.name, submsg=self.error)
        which = config.get('which')
        if self.choices and which is not None and which not in self.choices:
            raise ConfigError("Unknown series for figure %s" % self.index,
                submsg="%r not in %s" % (which, ', '.join(self.choices)))
        logging.info("Generating figure %s (%s)", self.index, self.name)
        return self.on_generate(config)

    def on_prepare(self, config):
        pass

    def on_generate(self, config):
        raise NotImplementedError


class ErrorFigure(FigurePlugin):
    def __init__(self, name, error):
        logging.error("Error loading figure %s: %s", name, error)
        self.prepared = True
        self.error = error
        self.name = name


def load_figure(name):
    try:
        module = importlib.import_module('latticeprobe.figures.' + name)
    except ImportError as e:
        return ErrorFigure(name, str(e))

    # find the class object for the actual figure
    for key, item in module.__dict__.items():
        if hasattr(item, '_LATTICEPROBE_FIGURE') and key not in ("FigurePlugin", "ErrorFigure"):
            return item(name)
    return ErrorFigure(name, "Could not find figure class")


def discover_figures():
    figures_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "figures")
    names = sorted(os.path.basename(f)[:-3] for f in glob.glob(os.path.join(figures_dir, "*.py")))
    return [name for name in names if not name.startswith("__")]


def find_figure(index):
    """The figure whose `index` attribute matches."""
    for name in discover_figures():
        figure = load_figure(name)
        if figure.index == index:
            return figure
    raise ConfigError("Unknown figure", submsg="index %r" % index)
