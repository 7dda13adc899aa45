#!/usr/bin/env python3

import os
import sys

# Store config locally
config_dir = os.path.abspath('./config')
os.environ['XDG_CONFIG_HOME'] = config_dir

if not os.path.exists(config_dir):
    os.makedirs(config_dir)

# Enable debug logging on a small run
if len(sys.argv) == 1:
    sys.argv += ['simulate', '-vv', '--family', 'cluster', '--n', '4', '--p', '0.05', '--q', '0.05', '--N', '10000']

from latticeprobe import cli

sys.exit(cli.main(sys.argv[1:]))
