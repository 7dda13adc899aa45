# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

"""Command-line surface.

Every command writes one CSV document (single header line) to --output or
stdout and a JSON summary to --json or stderr. Exit status is 0 on
success, 2 for invalid configuration and 3 for singular correctors.
"""

import argparse
import logging
import sys

from latticeprobe import bham, errmodel, estimator, network, plugin, purity, qstate, variance
from latticeprobe.errors import LatticeProbeError, ConfigError, check_probability
from latticeprobe.latticeprobeconfig import VERSION, FAMILIES, METHODS, build_config
from latticeprobe.util import MAX_QUBITS, bitstring, popcount, read_csv, render_svg, write_csv, dump_json
from latticeprobe.worker import set_thread_count

COMMANDS = ('purities', 'pj', 'physics', 'simulate', 'correct', 'variance', 'worstcase', 'figure')
HELP = {
    "purities": "Average (or every subset) purity of a state with the inequality verdict",
    "pj": "Distribution of singly occupied sites, optionally through the error channels",
    "physics": "Beam-splitter and loss-stage error budget from physical parameters",
    "simulate": "Monte Carlo of N runs followed by correction",
    "correct": "Corrected profile from an observed atom-count distribution",
    "variance": "Single-run estimator variances and their bounds",
    "worstcase": "Worst-case variance over physical purity profiles",
}


def make_state(config):
    """The register described by family, n and the family parameters, dephased if asked."""
    family, n = config['family'], config['n']
    if family == 'ghz':
        state = qstate.make_ghz(n)
    elif family == 'macro':
        state = qstate.make_macro_superposition(n, config['gamma'])
    elif family == 'phi':
        state = qstate.make_phi_state(n, config['phi'])
    elif family == 'cluster':
        state = qstate.make_cluster_state(n)
    elif family == 'werner':
        state = qstate.make_werner(n, config['werner'])
    elif family == 'classical':
        state = qstate.make_classical_correlated(n)
    else:
        state = qstate.make_product_state([[1, 0]] * n)
    return qstate.apply_dephasing(state, config['dephase'])


def error_params(config):
    return errmodel.ErrorParams(config['p'], config['q'], config['sigma'], config['wavelength'])


def physical_params(config):
    return bham.PhysicalParams(config['J'], config['dJ'], config['U'], config['tau_d'], config['tau_s'])


def validate_config(config):
    """Check RunConfig values before any computation; raises ConfigError."""
    def fail(submsg):
        raise ConfigError("Invalid configuration", submsg=submsg)

    if config['command'] not in COMMANDS:
        fail("unknown command %r" % config['command'])
    if not isinstance(config['n'], int) or not 1 <= config['n'] <= MAX_QUBITS:
        fail("n=%r outside 1..%d" % (config['n'], MAX_QUBITS))
    if config['family'] not in FAMILIES:
        fail("unknown family %r" % config['family'])
    if config['method'] not in METHODS:
        fail("unknown method %r" % config['method'])
    for key in ('dephase', 'werner'):
        if not 0 <= config[key] <= 1:
            fail("%s=%r outside [0, 1]" % (key, config[key]))
    for key in ('p', 'q'):
        try:
            check_probability(key, config[key], allow_one=True)
        except LatticeProbeError as e:
            fail(e.submsg)
    if config['sigma'] < 0 or not config['wavelength'] > 0:
        fail("need sigma >= 0 and wavelength > 0")
    if config['N'] < 1 or config['replicates'] < 0:
        fail("need N >= 1 and replicates >= 0")
    if config['k'] is not None and not 0 <= config['k'] <= config['n']:
        fail("k=%r outside 0..%d" % (config['k'], config['n']))
    if config['points'] is not None and config['points'] < 1:
        fail("points=%r < 1" % config['points'])


def _emit(config, header, rows, summary=None, title=None):
    write_csv(rows, header, config['output'])
    if summary is not None:
        dump_json(summary, config['json'])
    if config['svg']:
        render_svg(header, rows, config['svg'], title)


def cmd_purities(config):
    state = make_state(config)
    profile = purity.purity_profile(state)
    if config['subsets']:
        values = purity.subset_purities(state)
        verdict = purity.check_subset_inequalities(values)
        rows = [[bitstring(state.n, b), popcount(b), v] for b, v in enumerate(values)]
        _emit(config, ['mask', 'size', 'purity'], rows, {'verdict': verdict.to_json(), 'avpur': profile.avpur})
        return
    verdict = purity.check_subset_inequalities(profile)
    _emit(config, ['k', 'avpur'], profile.to_csv_rows(), {'verdict': verdict.to_json()}, "Average purities")


def cmd_pj(config):
    profile = purity.purity_profile(make_state(config))
    pj = network.singles_distribution(profile)
    if config['p'] or config['q']:
        observed = errmodel.apply_combined_error(pj, config['p'], config['q'])
        _emit(config, ['i', 'P_exp'], observed.to_csv_rows(), observed.to_json())
    else:
        _emit(config, ['j', 'P'], pj.to_csv_rows(), pj.to_json())


def cmd_physics(config):
    summary = bham.physics_summary(physical_params(config))
    _emit(config, ['quantity', 'value'], list(summary.items()), summary)


def cmd_simulate(config):
    state = make_state(config)
    params = error_params(config)
    method = config['method']
    exact = purity.purity_profile(state)
    if params.sigma > 0:
        result = variance.monte_carlo_spatial(state, params, config['N'], config['seed'], method)
        predicted = [float('nan')] * (state.n + 1)
    else:
        result = variance.monte_carlo_estimate(exact, params, config['N'], config['seed'], method)
        predicted = [variance.state_variance(exact, k, params.p, params.q, method) / config['N']
                     for k in range(state.n + 1)]
    rows = [[k, result.profile[k], result.standard_errors[k], exact[k], predicted[k]] for k in range(state.n + 1)]
    summary = {'verdict': purity.check_subset_inequalities(result.profile).to_json(),
               'N': config['N'], 'seed': config['seed'], 'method': method,
               'variances': result.variances}
    if config['replicates'] and params.sigma == 0:
        runs = variance.monte_carlo_replicates(exact, params, config['N'], config['seed'], config['replicates'], method)
        summary['replicates'] = [run.profile.avpur for run in runs]
    _emit(config, ['k', 'estimate', 'stderr', 'exact', 'V_over_N'], rows, summary)


def cmd_correct(config):
    """Corrected profile from an observed atom-count CSV (i, P_exp rows)."""
    if not config['input']:
        raise ConfigError("Missing input", submsg="correct needs --input with the observed distribution")
    try:
        _, rows = read_csv(config['input'])
        probs = [float(row[1]) for row in rows]
    except (IOError, IndexError, ValueError) as e:
        raise ConfigError("Cannot read observed distribution", submsg="%s: %s" % (config['input'], e))
    profile = estimator.correct_combined(probs, config['p'], config['q'], config['method'])
    verdict = purity.check_subset_inequalities(profile)
    _emit(config, ['k', 'avpur'], profile.to_csv_rows(),
          {'verdict': verdict.to_json(), 'method': profile.method, 'physical': profile.is_physical()})


def cmd_variance(config):
    profile = purity.purity_profile(make_state(config))
    ks = range(profile.n + 1) if config['k'] is None else [config['k']]
    reports = [variance.variance_report(profile, k, config['p'], config['q'], config['method']) for k in ks]
    _emit(config, variance.CSV_HEADER, [r.to_csv_row() for r in reports])


def cmd_worstcase(config):
    n = config['n']
    k = n if config['k'] is None else config['k']
    value, profile = variance.worst_case_variance(n, k, config['p'], config['q'], config['method'],
                                                  config['constrained'], config['seed'])
    bound = variance.analytic_bounds(n, k, config['p'], config['q'])
    _emit(config, ['k', 'avpur'], profile.to_csv_rows(),
          {'V_max': value, 'bound': bound, 'k': k, 'method': config['method'], 'constrained': config['constrained']})


def cmd_figure(config, figure):
    header, rows = figure.generate(config)
    _emit(config, header, rows, title=figure.title)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, dest="verbose", help="Show debug messages")
    common.add_argument("--config", help="JSON file with RunConfig keys")
    common.add_argument("--threads", type=int, help="Worker threads (default $LATTICEPROBE_THREADS or 1)")
    common.add_argument("--output", help="CSV destination (default stdout)")
    common.add_argument("--json", help="JSON summary destination (default stderr)")
    common.add_argument("--svg", help="Also render the CSV as an SVG line chart (needs matplotlib)")
    common.add_argument("--family", help="State family: %s" % ', '.join(FAMILIES))
    common.add_argument("--n", type=int, help="Number of qubits")
    common.add_argument("--gamma", type=complex, help="Macroscopic superposition parameter")
    common.add_argument("--phi", type=float, help="Entangling phase of the phi family")
    common.add_argument("--dephase", type=float, help="Dephasing strength d applied to the state")
    common.add_argument("--werner", type=float, help="Noise weight of the Werner state")
    common.add_argument("--p", type=float, help="Detector error probability")
    common.add_argument("--q", type=float, help="Beam-splitter error probability")
    common.add_argument("--sigma", type=float, help="Position spread")
    common.add_argument("--wavelength", type=float, help="Lattice laser wavelength")
    common.add_argument("--J", type=float, help="Hopping energy")
    common.add_argument("--dJ", type=float, help="Run-to-run fluctuation of J")
    common.add_argument("--U", type=float, help="Residual interaction energy")
    common.add_argument("--tau-d", type=float, dest="tau_d", help="Pair loss time constant (ms)")
    common.add_argument("--tau-s", type=float, dest="tau_s", help="Single-atom loss time constant (ms)")
    common.add_argument("--N", type=int, help="Number of experimental runs")
    common.add_argument("--seed", type=int, help="Master random seed")
    common.add_argument("--method", help="Correction method: %s" % ', '.join(METHODS))
    common.add_argument("--k", type=int, help="Subset size")
    common.add_argument("--subsets", action="store_true", default=None, help="Report every subset purity")
    common.add_argument("--replicates", type=int, help="Independent replicate runs to report")
    common.add_argument("--unconstrained", action="store_false", default=None, dest="constrained",
                        help="Worst case over the purity box only, without P(j) >= 0")
    common.add_argument("--points", type=int, help="Grid points of figure series")
    common.add_argument("--input", help="Observed distribution CSV for 'correct'")

    parser = argparse.ArgumentParser(prog="latticeprobe", description="Beam-splitter entanglement detection simulator")
    parser.add_argument("--version", action="version", version="%(prog)s " + VERSION)
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    for name in COMMANDS[:-1]:
        commands.add_parser(name, parents=[common], help=HELP[name])
    figure = commands.add_parser("figure", parents=[common], help="Data series of one of the standard figures")
    figure.add_argument("index", type=int, help="Figure number 1..8")
    figure.add_argument("--which", help="Series variant of the figure")
    return parser


def setup_logging(verbose):
    # drop handlers left by earlier logging calls so basicConfig applies
    logging.root.handlers = []

    if verbose > 1:
        log_level = logging.DEBUG
    elif verbose == 1:
        log_level = logging.INFO
    else:
        log_level = logging.WARN

    logging.basicConfig(level=log_level, format='%(levelname)s - %(module)s:%(funcName)s:%(lineno)d - %(message)s')


def run(options):
    overrides = {key: val for key, val in vars(options).items() if key not in ('verbose', 'config')}
    figure = None
    base = None
    if options.command == 'figure':
        figure = plugin.find_figure(options.index)
        base = figure.defaults
    config = build_config(overrides, options.config, base)
    validate_config(config)
    set_thread_count(config['threads'])
    logging.info("latticeprobe %s: %s", VERSION, config['command'])
    if figure is not None:
        cmd_figure(config, figure)
    else:
        globals()['cmd_' + config['command']](config)


def main(argv=None):
    options = build_parser().parse_args(argv)
    setup_logging(options.verbose)
    try:
        run(options)
    except LatticeProbeError as e:
        print("latticeprobe: %s" % e, file=sys.stderr)
        return e.status
    return 0


if __name__ == '__main__':
    sys.exit(main())
